"""Separability of the three-mode state: closed-form eigenvalues and PPT certification."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .gaussian import (
    DISCRIMINANT_TOL,
    PHYSICAL_TOL,
    check_cm,
    log_negativity,
    min_pt_symplectic_eigenvalue,
    reduce,
)
from .params import separable_bound_x

__all__ = [
    "BipartitionReport",
    "certify_bipartitions",
    "distributed_entanglement",
    "kappa_min_closed_form",
    "nu_min_closed_form",
    "separable_bound_x",
]

CUTS = ("A|BC", "B|AC", "C|AB")


@dataclass(frozen=True)
class BipartitionReport:
    cut: str
    nu_min: float
    is_ppt: bool
    log_negativity: float


def _check(tau: float, x: float):
    if not tau >= 0 or not x >= 0:
        raise DomainError(f"need tau >= 0 and x >= 0, got tau={tau}, x={x}")


def nu_min_closed_form(tau: float, x: float) -> float:
    """Closed-form symplectic eigenvalue of the C-transposed displaced state."""
    _check(tau, x)
    em = math.exp(-2 * tau)
    rad = (1 + 6 * x + em) ** 2 - 32 * x * x
    if rad < 0:
        if rad < -DISCRIMINANT_TOL:
            raise DomainError(f"negative radicand {rad:.3e} at tau={tau}, x={x}")
        rad = 0.0
    return (math.sqrt(rad) - (1 + 2 * x - em)) / 2


def kappa_min_closed_form(tau: float, x: float) -> float:
    """Closed-form A-transposed eigenvalue expression, evaluated as is.

    Diagnostic only: it goes negative at small ``x`` and so cannot be a
    symplectic eigenvalue everywhere. Use :func:`certify_bipartitions` for the
    A|BC cut.
    """
    _check(tau, x)
    return (1 + 6 * x + math.exp(-2 * tau) - math.sqrt((1 + 2 * x - math.exp(2 * tau)) ** 2 + 32 * x * x)) / 2


def certify_bipartitions(gamma) -> list[BipartitionReport]:
    """PPT test on each single-mode cut of a three-mode state."""
    gamma = check_cm(gamma)
    if gamma.shape != (6, 6):
        raise ValidationError(f"expected a three-mode CM, got shape {gamma.shape}")
    reports = []
    for mode, cut in enumerate(CUTS):
        nu = min_pt_symplectic_eigenvalue(gamma, [mode])
        reports.append(BipartitionReport(cut, nu, nu >= 1 - PHYSICAL_TOL, log_negativity(nu)))
    return reports


def distributed_entanglement(tau: float, x: float) -> tuple[float, float]:
    """PT symplectic eigenvalue and log-negativity of the A-B state after distribution."""
    from .protocol import A, B, run_distribution_pipeline

    _check(tau, x)
    gamma_ab = reduce(run_distribution_pipeline(tau, x), [A, B])
    nu = min_pt_symplectic_eigenvalue(gamma_ab, [1])
    return nu, log_negativity(nu)


def eigenvalue_curves(tau: float, xs) -> np.ndarray:
    """Rows ``(x, nu_min, kappa_min)`` for a grid of displacement strengths."""
    return np.array([(x, nu_min_closed_form(tau, x), kappa_min_closed_form(tau, x)) for x in xs])
