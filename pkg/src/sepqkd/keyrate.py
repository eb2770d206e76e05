"""Secret key rates for the separable-state and traditional CVQKD protocols."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DomainError, NumericalError
from .gaussian import (
    conditional_eigenvalue_nu3,
    entropy_G,
    symplectic_eigenvalues_two_mode,
    two_mode_blocks,
)
from .params import ProtocolParams, distance_to_transmittance
from .protocol import run_cvqkd_pipeline, run_traditional_pipeline

__all__ = [
    "KeyRatePoint",
    "distance_cutoff",
    "distance_to_transmittance",
    "energy_bound_check",
    "equivalent_noise_omega",
    "excess_noise_to_n0",
    "holevo_chi_be",
    "is_saturated",
    "key_rate",
    "mutual_information_formula",
    "mutual_information_from_cm",
    "plob_bound",
]

PURE_TOL = 1e-9


@dataclass(frozen=True)
class KeyRatePoint:
    params: ProtocolParams
    i_ab: float
    i_ab_formula: float
    i_ab_cm: float
    chi_be: float
    rate_raw: float
    omega: float
    plob: float

    @property
    def rate(self) -> float:
        return max(0.0, self.rate_raw)


def equivalent_noise_omega(eta: float, n0: float, x: float) -> float:
    """Equivalent noise ``(1 + (1-η)N0 + 4x(2-√η)) / 2``; ``x = 0`` gives the undisplaced protocol."""
    return (1 + (1 - eta) * n0 + 4 * x * (2 - math.sqrt(eta))) / 2


def excess_noise_to_n0(eta: float, epsilon: float) -> float:
    """Thermal variance ``1 + ηε/(1-η)`` equivalent to input-referred excess noise ``ε``.

    Convention choice for translating an ``ε``-style figure setting; the
    lossless point ``η = 1`` maps to ``N0 = 1``.
    """
    if eta >= 1:
        return 1.0
    return 1 + eta * epsilon / (1 - eta)


def mutual_information_formula(phi: float, omega: float) -> float:
    """``log2((φ + 1) / ω)``; negative when the noise dominates."""
    if phi <= 0 or omega <= 0:
        raise DomainError(f"phi and omega must be positive, got phi={phi}, omega={omega}")
    return math.log2((phi + 1) / omega)


def mutual_information_from_cm(gamma_ab, detection: str = "homodyne") -> float:
    """Alice-Bob mutual information from a two-mode CM in ``(a, b, c)`` block form."""
    a, b, c = two_mode_blocks(gamma_ab)
    cond = b - c * c / a
    if cond <= 0:
        raise DomainError(f"degenerate conditional variance b - c²/a = {cond:.3e}")
    if detection == "homodyne":
        return 0.5 * math.log2(b / cond)
    if detection == "heterodyne":
        return math.log2((b + 1) / (cond + 1))
    raise DomainError(f"unknown detection {detection!r}")


def holevo_chi_be(gamma_ab, detection: str = "homodyne") -> float:
    """Holevo bound ``G(ν1) + G(ν2) - G(ν3)``, clamped at zero.

    ``ν3`` is the symplectic eigenvalue of B conditioned on Alice's
    measurement: ``sqrt(b(b - c²/a))`` for homodyne, ``b - c²/(a+1)`` for
    heterodyne. Eigenvalues within ``PURE_TOL`` of one are taken as exactly
    one, since ``ab - c²`` loses that much to cancellation for pure states.
    """
    a, b, c = two_mode_blocks(gamma_ab)
    nu1, nu2 = symplectic_eigenvalues_two_mode(a, b, c)
    if detection == "homodyne":
        nu3 = conditional_eigenvalue_nu3(a, b, c)
    elif detection == "heterodyne":
        nu3 = b - c * c / (a + 1)
    else:
        raise DomainError(f"unknown detection {detection!r}")
    nus = [1.0 if abs(nu - 1) <= PURE_TOL else nu for nu in (nu1, nu2, nu3)]
    return max(0.0, entropy_G(nus[0]) + entropy_G(nus[1]) - entropy_G(nus[2]))


def plob_bound(eta: float) -> float:
    """Repeaterless capacity ``-log2(1 - η)`` of the pure-loss channel."""
    if not 0 <= eta < 1:
        raise DomainError(f"PLOB bound needs 0 <= eta < 1, got {eta}")
    return -math.log2(1 - eta)


def key_rate(params: ProtocolParams) -> KeyRatePoint:
    eta = params.transmittance
    omega = equivalent_noise_omega(eta, params.n0, params.x)
    plob = plob_bound(eta) if eta < 1 else math.inf
    i_formula = mutual_information_formula(params.phi, omega)
    if params.variant == "separable":
        gamma_ab = run_cvqkd_pipeline(params).gamma_ab
        i_cm = mutual_information_from_cm(gamma_ab, params.detection)
        i_ab = i_cm if params.mi_path == "cm" else i_formula
        chi = 0.0
    else:
        gamma_ab = run_traditional_pipeline(params)
        i_cm = mutual_information_from_cm(gamma_ab, params.detection)
        i_ab = i_cm
        chi = holevo_chi_be(gamma_ab, params.detection)
    return KeyRatePoint(
        params=params,
        i_ab=i_ab,
        i_ab_formula=i_formula,
        i_ab_cm=i_cm,
        chi_be=chi,
        rate_raw=params.xi * i_ab - chi,
        omega=omega,
        plob=plob,
    )


def _linked(params: ProtocolParams, phi: float) -> ProtocolParams:
    return params.with_(tau=math.acosh(phi) / 2, x="bound", phi=phi)


def energy_bound_check(
    params: ProtocolParams,
    phi_grid: Sequence[float],
    link: Callable[[ProtocolParams, float], ProtocolParams] | None = None,
) -> list[float]:
    """Raw key rate along a grid of modulation variances.

    By default each ``φ`` sets ``V = φ`` and puts ``x`` at the separable bound,
    so the displacement noise grows with the signal. Pass ``link`` to use a
    different coupling, e.g. one that keeps the noise fixed.
    """
    phi_grid = list(phi_grid)
    if len(phi_grid) < 3 or any(b <= a for a, b in zip(phi_grid, phi_grid[1:])):
        raise DomainError("phi_grid must be strictly ascending with at least 3 points")
    link = link or _linked
    return [key_rate(link(params, phi)).rate_raw for phi in phi_grid]


def is_saturated(rates: Sequence[float], rel_tol: float = 0.01) -> bool:
    """True when the last step of ``rates`` changes by less than ``rel_tol`` relative."""
    last, prev = rates[-1], rates[-2]
    scale = max(abs(last), abs(prev))
    if scale == 0:
        return True
    return abs(last - prev) / scale < rel_tol


def distance_cutoff(params: ProtocolParams, max_km: float = 500.0, tol_km: float = 0.01) -> float | None:
    """Distance where the raw key rate first crosses zero, by bisection.

    Returns ``0.0`` if the rate is already non-positive at zero distance and
    ``None`` if it stays positive up to ``max_km``.
    """

    def rate_at(km: float) -> float:
        return key_rate(params.with_(distance_km=km)).rate_raw

    if rate_at(0.0) <= 0:
        return 0.0
    if rate_at(max_km) > 0:
        return None
    lo, hi = 0.0, float(max_km)
    for _ in range(200):
        if hi - lo <= tol_km:
            return 0.5 * (lo + hi)
        mid = 0.5 * (lo + hi)
        if rate_at(mid) > 0:
            lo = mid
        else:
            hi = mid
    raise NumericalError("bisection for the distance cutoff did not converge")
