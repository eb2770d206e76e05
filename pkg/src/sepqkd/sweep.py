"""Grid evaluation and deterministic CSV emission."""

from __future__ import annotations

import io
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Sequence

from .config import RunConfig, describe_params, format_value
from .gaussian import log_negativity, min_pt_symplectic_eigenvalue
from .keyrate import key_rate
from .params import ProtocolParams
from .protocol import run_cvqkd_pipeline, run_traditional_pipeline
from .separability import kappa_min_closed_form, nu_min_closed_form

_POINT_COLUMNS = {
    "L": lambda p, k: p.distance,
    "eta": lambda p, k: p.transmittance,
    "omega": lambda p, k: k.omega,
    "i_ab": lambda p, k: k.i_ab,
    "i_ab_formula": lambda p, k: k.i_ab_formula,
    "i_ab_cm": lambda p, k: k.i_ab_cm,
    "chi_be": lambda p, k: k.chi_be,
    "rate_raw": lambda p, k: k.rate_raw,
    "rate": lambda p, k: k.rate,
    "plob": lambda p, k: k.plob,
    "nu_min": lambda p, k: nu_min_closed_form(p.tau, p.x),
    "kappa_min": lambda p, k: kappa_min_closed_form(p.tau, p.x),
    "tau": lambda p, k: p.tau,
    "V": lambda p, k: p.V,
    "x": lambda p, k: p.x,
    "n0": lambda p, k: p.n0,
    "xi": lambda p, k: p.xi,
    "phi": lambda p, k: p.phi,
}


def distributed_log_negativity(params: ProtocolParams) -> float:
    """Log-negativity of the Alice-Bob state delivered by the configured variant."""
    if params.variant == "separable":
        gamma_ab = run_cvqkd_pipeline(params).gamma_ab
    else:
        gamma_ab = run_traditional_pipeline(params)
    return log_negativity(min_pt_symplectic_eigenvalue(gamma_ab, [1]))


def evaluate_columns(params: ProtocolParams, columns: Sequence[str]) -> dict[str, float]:
    point = key_rate(params)
    out = {}
    for col in columns:
        if col == "e_n":
            out[col] = distributed_log_negativity(params)
        else:
            out[col] = _POINT_COLUMNS[col](params, point)
    return out


def _row(args) -> list[str]:
    params, columns = args
    values = evaluate_columns(params, columns)
    return [format_value(values[c]) for c in columns]


def evaluate_grid(points: Sequence[ProtocolParams], columns: Sequence[str], workers: int = 1) -> list[list[str]]:
    """Formatted rows in grid order; ``workers > 1`` evaluates in separate processes."""
    jobs = [(p, tuple(columns)) for p in points]
    if workers <= 1:
        return [_row(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_row, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def render_csv(header: Sequence[str], rows: Iterable[Sequence[str]], meta: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    for line in meta:
        buf.write(f"# {line}\n")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


def sweep_csv(config: RunConfig, workers: int = 1) -> str:
    """Run the configured sweep and return the CSV document."""
    if config.sweep is None:
        raise ValueError("configuration has no sweep")
    spec = config.sweep
    meta = ["sepqkd sweep"]
    for axis in spec.axes():
        meta.append(f"axis {axis.name}: {format_value(axis.start)} .. {format_value(axis.stop)}, {axis.steps} points")
    meta.append("fixed: " + " ".join(f"{k}={format_value(v)}" for k, v in sorted(config.fixed.items())))
    points = config.grid_params()
    meta.append("first point: " + describe_params(points[0]))
    rows = evaluate_grid(points, spec.outputs, workers)
    return render_csv(spec.outputs, rows, meta)


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
