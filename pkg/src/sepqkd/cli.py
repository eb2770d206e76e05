"""Command-line front end.

Exit codes: 0 success, 2 configuration or validation error, 3 numerical
error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .config import ConfigError, describe_params, format_value, parse_config
from .errors import DomainError, NumericalError, ValidationError
from .optics import displacement_matrix_P, sample_correlated_displacements
from .presets import PRESETS, figure_preset
from .protocol import run_cvqkd_pipeline
from .separability import certify_bipartitions
from .sweep import evaluate_columns, render_csv, sweep_csv, write_text

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_IO = 0, 2, 3, 4

POINT_COLUMNS = ("L", "eta", "omega", "i_ab", "i_ab_formula", "i_ab_cm", "chi_be", "rate_raw", "rate", "plob")

# flag name -> config key
PARAM_FLAGS = {
    "tau": "tau",
    "v": "v",
    "x": "x",
    "eta": "eta",
    "distance_km": "distance_km",
    "n0": "n0",
    "xi": "xi",
    "phi": "phi",
    "variant": "variant",
    "detection": "detection",
    "mi_path": "mi_path",
    "out": "output_path",
    "sweep": "sweep",
    "sweep2": "sweep2",
    "outputs": "outputs",
}


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value configuration file; flags override it")
    p.add_argument("--tau", help="squeezing parameter")
    p.add_argument("--v", help="local variance cosh(2 tau), alternative to --tau")
    p.add_argument("--x", help="displacement strength, or 'bound'")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--eta", help="channel transmittance")
    g.add_argument("--distance-km", dest="distance_km", help="fibre length, eta = 10^(-L/50)")
    p.add_argument("--n0", help="channel thermal-noise variance")
    p.add_argument("--xi", help="reconciliation efficiency")
    p.add_argument("--phi", help="modulation variance for the equivalent-noise formula")
    p.add_argument("--variant", help="separable or traditional")
    p.add_argument("--detection", help="homodyne or heterodyne")
    p.add_argument("--mi-path", dest="mi_path", help="cm or formula")
    p.add_argument("--out", help="output path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sepqkd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("point", help="evaluate one operating point")
    _add_param_flags(p)

    s = sub.add_parser("sweep", help="evaluate a parameter grid and write CSV")
    _add_param_flags(s)
    s.add_argument("--sweep", help="name:start:stop:steps (outer axis)")
    s.add_argument("--sweep2", help="name:start:stop:steps (inner axis)")
    s.add_argument("--outputs", help="comma-separated column list")
    s.add_argument("--workers", type=int, default=1, help="parallel worker processes")

    f = sub.add_parser("figure", help="emit the data of a figure preset as CSV")
    f.add_argument("name", help=", ".join(PRESETS))
    f.add_argument("--out", help="output path (default <name>.csv)")

    c = sub.add_parser("certify", help="PPT test of every cut at each pipeline stage")
    _add_param_flags(c)

    m = sub.add_parser("sample", help="draw correlated displacements and check their covariance")
    m.add_argument("--x", type=float, default=1.0)
    m.add_argument("--count", type=int, default=100_000)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--out", help="optional CSV of the samples")
    return parser


def _load_config(args):
    text = ""
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError([f"cannot read config {args.config}: {exc}"]) from exc
    overrides = {
        key: getattr(args, flag)
        for flag, key in PARAM_FLAGS.items()
        if getattr(args, flag, None) is not None
    }
    return parse_config(text, overrides)


def _print_table(pairs) -> None:
    width = max(len(k) for k, _ in pairs)
    for k, v in pairs:
        print(f"{k:<{width}}  {v}")


def cmd_point(args) -> int:
    config = _load_config(args)
    if config.sweep is not None:
        raise ConfigError(["'point' does not take a sweep; use the 'sweep' command"])
    params = config.params()
    values = evaluate_columns(params, POINT_COLUMNS)
    print("# " + describe_params(params))
    _print_table([(k, format_value(values[k])) for k in POINT_COLUMNS])
    if config.output_path:
        write_text(config.output_path, render_csv(POINT_COLUMNS, [[format_value(values[k]) for k in POINT_COLUMNS]],
                                                  [describe_params(params)]))
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = _load_config(args)
    if config.sweep is None:
        raise ConfigError(["no sweep given; set sweep=name:start:stop:steps or --sweep"])
    text = sweep_csv(config, workers=args.workers)
    if config.output_path:
        write_text(config.output_path, text)
        print(f"wrote {len(config.sweep.grid())} rows to {config.output_path}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_figure(args) -> int:
    table = figure_preset(args.name)
    path = args.out or f"{args.name}.csv"
    write_text(path, table.to_csv())
    print(f"wrote {len(table.rows)} rows to {path}")
    return EXIT_OK


def cmd_certify(args) -> int:
    config = _load_config(args)
    params = config.params()
    trace = run_cvqkd_pipeline(params)
    print("# " + describe_params(params))
    print(f"{'stage':<8}{'cut':<6}{'nu_min':>16}  {'ppt':<6}{'E_N':>14}")
    for stage in ("gamma1", "gamma2", "gamma3", "gamma4"):
        for r in certify_bipartitions(getattr(trace, stage)):
            print(f"{stage:<8}{r.cut:<6}{format_value(r.nu_min):>16}  {str(r.is_ppt).lower():<6}"
                  f"{format_value(r.log_negativity):>14}")
    return EXIT_OK


def cmd_sample(args) -> int:
    samples = sample_correlated_displacements(args.x, args.count, args.seed)
    target = args.x * displacement_matrix_P()
    emp = samples.T @ samples / len(samples)
    err = np.linalg.norm(emp - target) / np.linalg.norm(target) if args.x > 0 else float(np.linalg.norm(emp))
    _print_table([("x", format_value(args.x)), ("count", str(args.count)), ("seed", str(args.seed)),
                  ("relative_frobenius_error", format_value(err))])
    if args.out:
        header = ("xA", "pA", "xB", "pB", "xC", "pC")
        write_text(args.out, render_csv(header, ([format_value(v) for v in row] for row in samples),
                                        [f"correlated displacements x={format_value(args.x)} seed={args.seed}"]))
    return EXIT_OK


COMMANDS = {"point": cmd_point, "sweep": cmd_sweep, "figure": cmd_figure, "certify": cmd_certify, "sample": cmd_sample}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.cmd](args)
    except ConfigError as exc:
        for line in exc.errors:
            print(f"error: {line}", file=sys.stderr)
        return EXIT_CONFIG
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DomainError, NumericalError, OverflowError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
