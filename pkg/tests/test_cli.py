import csv
import io

import pytest

from sepqkd.cli import main
from sepqkd.presets import PRESETS, figure_preset
from sepqkd.errors import ValidationError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def read_rows(text):
    body = "\n".join(line for line in text.splitlines() if not line.startswith("#"))
    return list(csv.reader(io.StringIO(body)))


class TestPoint:
    def test_anchor(self, capsys):
        code, out, _ = run(capsys, "point", "--v", "5.05", "--x", "4.5", "--eta", "0.1")
        assert code == 0
        assert "omega         16.10395011" in out
        assert "x_is_bound=false" in out

    def test_traditional_lossless(self, capsys):
        code, out, _ = run(capsys, "point", "--v", "5.05", "--eta", "1", "--variant", "traditional")
        assert code == 0
        assert "chi_be        0\n" in out
        assert "plob          inf" in out

    def test_config_file_and_override(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("v = 5.05\neta = 0.5\n")
        code, out, _ = run(capsys, "point", "--config", str(cfg), "--eta", "0.1")
        assert code == 0
        assert "eta=0.1 " in out

    def test_writes_csv(self, capsys, tmp_path):
        path = tmp_path / "p.csv"
        assert run(capsys, "point", "--tau", "1", "--eta", "0.3", "--out", str(path))[0] == 0
        rows = read_rows(path.read_text())
        assert rows[0][:3] == ["L", "eta", "omega"]
        assert len(rows) == 2

    def test_point_rejects_sweep(self, tmp_path, capsys):
        cfg = tmp_path / "s.cfg"
        cfg.write_text("tau = 1\nsweep = eta:0.1:1:3\n")
        assert run(capsys, "point", "--config", str(cfg))[0] == 2


class TestExitCodes:
    def test_config_error(self, capsys):
        code, _, err = run(capsys, "point", "--tau", "1")
        assert code == 2
        assert "missing required keys: eta (or distance_km)" in err

    def test_unreadable_config(self, capsys):
        assert run(capsys, "point", "--config", "/nonexistent/run.cfg")[0] == 2

    def test_mutually_exclusive_flags(self, capsys, tmp_path):
        out = tmp_path / "never.csv"
        with pytest.raises(SystemExit) as info:
            main(["sweep", "--eta", "0.1", "--distance-km", "5", "--out", str(out)])
        assert info.value.code == 2
        assert not out.exists()

    def test_numerical_error(self, capsys):
        # at this squeezing the conditional variance b - c²/a cancels to zero in double precision
        code, _, err = run(capsys, "point", "--tau", "30", "--eta", "1", "--variant", "traditional")
        assert code == 3
        assert "numerical error" in err

    def test_overflowing_squeezing(self, capsys):
        assert run(capsys, "point", "--tau", "400", "--eta", "0.5")[0] == 2

    def test_io_error(self, capsys):
        code, _, err = run(capsys, "sweep", "--tau", "1", "--sweep", "eta:0.1:1:3", "--out", "/nonexistent/dir/x.csv")
        assert code == 4
        assert "I/O error" in err

    def test_unknown_preset(self, capsys, tmp_path):
        assert run(capsys, "figure", "fig99", "--out", str(tmp_path / "f.csv"))[0] == 2
        with pytest.raises(ValidationError):
            figure_preset("fig99")


class TestSweep:
    def test_rows_and_header(self, capsys):
        code, out, _ = run(capsys, "sweep", "--v", "30", "--n0", "1.01", "--xi", "0.95",
                           "--sweep", "distance_km:0:250:26", "--outputs", "L,eta,rate,plob")
        assert code == 0
        rows = read_rows(out)
        assert rows[0] == ["L", "eta", "rate", "plob"]
        assert len(rows) == 27
        assert [r[0] for r in rows[1:4]] == ["0", "10", "20"]

    def test_two_axes(self, capsys):
        code, out, _ = run(capsys, "sweep", "--v", "10", "--sweep", "eta:0.2:1:5", "--sweep2", "n0:1:3:3",
                           "--outputs", "eta,n0,rate,e_n")
        assert code == 0
        rows = read_rows(out)[1:]
        assert len(rows) == 15
        assert [r[1] for r in rows[:3]] == ["1", "2", "3"]

    def test_serial_equals_parallel(self, capsys, tmp_path):
        args = ["sweep", "--v", "30", "--sweep", "distance_km:0:200:21", "--sweep2", "n0:1:2:3",
                "--outputs", "L,n0,omega,i_ab,rate_raw,nu_min,e_n"]
        serial, parallel = tmp_path / "s.csv", tmp_path / "p.csv"
        assert main(args + ["--out", str(serial)]) == 0
        assert main(args + ["--out", str(parallel), "--workers", "3"]) == 0
        assert serial.read_bytes() == parallel.read_bytes()

    def test_requires_sweep(self, capsys):
        assert run(capsys, "sweep", "--tau", "1", "--eta", "0.5")[0] == 2


class TestOtherCommands:
    def test_certify(self, capsys):
        code, out, _ = run(capsys, "certify", "--v", "5.05", "--eta", "0.1")
        assert code == 0
        lines = [l.split() for l in out.splitlines() if l.startswith("gamma")]
        assert len(lines) == 12
        gamma2_c = next(l for l in lines if l[0] == "gamma2" and l[1] == "C|AB")
        assert gamma2_c[3] == "true"

    def test_sample(self, capsys, tmp_path):
        path = tmp_path / "d.csv"
        code, out, _ = run(capsys, "sample", "--x", "1", "--count", "20000", "--seed", "5", "--out", str(path))
        assert code == 0
        err = float(out.split("relative_frobenius_error")[1])
        assert err < 0.05
        assert len(read_rows(path.read_text())) == 20001

    def test_figure(self, capsys, tmp_path):
        path = tmp_path / "fig8.csv"
        assert run(capsys, "figure", "fig8", "--out", str(path))[0] == 0
        rows = read_rows(path.read_text())
        assert rows[0] == ["n0", "eta", "omega_proposed", "omega_original"]
        assert len(rows) == 1 + 3 * 101


class TestPresets:
    def test_all_registered(self):
        assert set(PRESETS) == {"fig2a", "fig2b", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"}

    def test_fig2a(self):
        t = figure_preset("fig2a")
        assert len(t.rows) == 101
        assert t.column("x")[0] == "0"
        assert float(t.column("nu_min")[0]) == pytest.approx(0.8187307531, rel=1e-9)

    def test_fig8_original_at_full_transmission(self):
        t = figure_preset("fig8")
        rows = [r for r in t.rows if r[1] == "1"]
        assert [r[3] for r in rows] == ["0.5", "0.5", "0.5"]

    def test_fig9_rate_and_bound(self):
        t = figure_preset("fig9")
        assert len(t.rows) == 3 * 99
        assert all(float(r) >= 0 for r in t.column("plob"))

    def test_deterministic(self):
        assert figure_preset("fig7").to_csv() == figure_preset("fig7").to_csv()
