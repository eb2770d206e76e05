import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sepqkd.config import (
    DEFAULT_OUTPUTS,
    Axis,
    ConfigError,
    describe_params,
    format_value,
    parse_config,
)
from sepqkd.params import ProtocolParams

BASE = "tau = 1.151292546\neta = 0.1\n"


def errors_of(text, overrides=None):
    with pytest.raises(ConfigError) as info:
        parse_config(text, overrides)
    return info.value.errors


class TestParse:
    def test_minimal(self):
        p = parse_config(BASE).params()
        assert p.x == pytest.approx(4.5, abs=1e-8)
        assert p.x_is_bound
        assert p.variant == "separable"

    def test_variance_key(self):
        p = parse_config("v = 5.05\ndistance_km = 50\n").params()
        assert p.tau == pytest.approx(math.log(10) / 2)
        assert p.transmittance == pytest.approx(0.1)

    def test_comments_and_blank_lines(self):
        cfg = parse_config("# header\n\n" + BASE + "xi = 0.9  # efficiency\n")
        assert cfg.params().xi == 0.9

    def test_empty_reports_missing(self):
        (err,) = errors_of("")
        assert "tau (or v)" in err and "eta (or distance_km)" in err

    def test_conflict_names_both(self):
        errs = errors_of(BASE + "distance_km = 20\n")
        assert any("'eta'" in e and "'distance_km'" in e and "line 2" in e and "line 3" in e for e in errs)

    def test_unknown_key_line(self):
        assert errors_of(BASE + "\nsqueeze = 3\n") == ["line 4: unknown key 'squeeze'"]

    def test_duplicate(self):
        (err,) = errors_of(BASE + "eta = 0.2\n")
        assert err.startswith("line 3: duplicate key 'eta'")

    def test_malformed_number(self):
        (err,) = errors_of("tau = 1.2.3\neta = 0.1\n")
        assert err.startswith("line 1:") and "malformed" in err

    def test_missing_equals(self):
        assert any(e.startswith("line 3:") for e in errors_of(BASE + "tau\n"))

    def test_collects_all_errors(self):
        assert len(errors_of("foo = 1\nbar = 2\n")) == 3

    def test_bad_choice(self):
        (err,) = errors_of(BASE + "variant = quantum\n")
        assert "line 3" in err and "separable" in err

    def test_out_of_domain_value(self):
        (err,) = errors_of("tau = 1\neta = 1.5\n")
        assert "invalid parameters" in err

    def test_flag_overrides_file(self):
        cfg = parse_config(BASE, {"eta": "0.5"})
        assert cfg.params().transmittance == 0.5
        assert cfg.sources["eta"] == "flag --eta"

    def test_flag_conflict(self):
        errs = errors_of(BASE, {"distance_km": "10"})
        assert any("line 2" in e and "flag --distance-km" in e for e in errs)

    def test_seed_and_output(self):
        cfg = parse_config(BASE + "seed = 7\noutput_path = out.csv\n")
        assert (cfg.seed, cfg.output_path) == (7, "out.csv")


class TestSweep:
    def test_grid_order(self):
        cfg = parse_config("tau = 1\nsweep = distance_km:0:100:3\nsweep2 = n0:1:2:2\n")
        pts = cfg.sweep.grid()
        assert pts == [
            {"distance_km": 0.0, "n0": 1.0}, {"distance_km": 0.0, "n0": 2.0},
            {"distance_km": 50.0, "n0": 1.0}, {"distance_km": 50.0, "n0": 2.0},
            {"distance_km": 100.0, "n0": 1.0}, {"distance_km": 100.0, "n0": 2.0},
        ]
        assert len(cfg.grid_params()) == 6

    def test_sweep_counts_as_required_key(self):
        cfg = parse_config("v = 30\nsweep = eta:0.1:1:10\n")
        assert cfg.sweep.axis1.values()[-1] == 1.0

    def test_axis_both_fixed_and_swept(self):
        (err,) = errors_of(BASE + "sweep = eta:0.1:0.5:3\n")
        assert "both fixed" in err

    def test_steps_at_least_two(self):
        assert any("steps" in e for e in errors_of(BASE + "sweep = n0:1:2:1\n"))

    def test_unknown_axis(self):
        assert any("cannot sweep" in e for e in errors_of(BASE + "sweep = colour:1:2:3\n"))

    def test_outputs(self):
        cfg = parse_config(BASE + "sweep = n0:1:2:2\noutputs = L, rate, e_n\n")
        assert cfg.sweep.outputs == ("L", "rate", "e_n")
        assert parse_config(BASE).outputs == DEFAULT_OUTPUTS

    def test_bad_outputs(self):
        assert any("unknown output columns" in e for e in errors_of(BASE + "outputs = rate,speed\n"))

    def test_sweep2_without_sweep(self):
        assert any("sweep2 given without sweep" in e for e in errors_of(BASE + "sweep2 = n0:1:2:2\n"))

    @given(st.floats(-10, 10), st.floats(-10, 10), st.integers(2, 50))
    def test_axis_endpoints(self, start, stop, steps):
        values = Axis("n0", start, stop, steps).values()
        assert len(values) == steps
        assert values[0] == start and values[-1] == stop


class TestFormatting:
    def test_values(self):
        assert format_value(0.0) == "0"
        assert format_value(-0.0) == "0"
        assert format_value(1 / 3) == "0.3333333333"
        assert format_value(math.inf) == "inf"
        assert format_value(True) == "true"
        assert format_value("none") == "none"
        assert format_value(12345678901.0) == "1.23456789e+10"

    def test_describe(self):
        text = describe_params(ProtocolParams(tau=1, eta=0.5))
        assert "x_is_bound=true" in text and "eta=0.5" in text and "variant=separable" in text
