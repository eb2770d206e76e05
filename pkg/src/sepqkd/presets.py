"""Figure data presets.

Every preset returns a :class:`Table`. Its ``meta`` lines record the fixed
parameters, the default linkage (``V = φ``, ``τ = arccosh(V)/2``, ``x`` at the
separable bound) and any ranges picked as defaults.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .config import format_value
from .errors import ValidationError
from .gaussian import min_pt_symplectic_eigenvalue
from .keyrate import (
    distance_cutoff,
    equivalent_noise_omega,
    excess_noise_to_n0,
    key_rate,
    plob_bound,
)
from .optics import add_correlated_displacement
from .params import ProtocolParams, distance_to_transmittance, separable_bound_x
from .protocol import build_gamma1
from .separability import kappa_min_closed_form, nu_min_closed_form
from .sweep import render_csv

XI = 0.95
EPSILON = 0.05
LINKAGE = "linkage: V=phi, tau=arccosh(V)/2, x=separable bound"


@dataclass
class Table:
    header: tuple[str, ...]
    rows: list[list[str]] = field(default_factory=list)
    meta: list[str] = field(default_factory=list)

    def add(self, *values) -> None:
        self.rows.append([v if isinstance(v, str) else format_value(v) for v in values])

    def column(self, name: str) -> list[str]:
        k = self.header.index(name)
        return [r[k] for r in self.rows]

    def to_csv(self) -> str:
        return render_csv(self.header, self.rows, self.meta)


def _distances(stop: float = 300.0, step: float = 5.0) -> list[float]:
    return [k * step for k in range(int(round(stop / step)) + 1)]


def _eigenvalues(tau: float, name: str) -> Table:
    t = Table(("x", "nu_min", "kappa_min", "nu_min_generic", "separable_bound"))
    t.meta = [f"{name}: PT eigenvalues vs displacement strength", f"tau={format_value(tau)}", "x range 0..10 (chosen default)"]
    gamma1 = build_gamma1(tau)
    bound = separable_bound_x(tau)
    for k in range(101):
        x = k / 10
        generic = min_pt_symplectic_eigenvalue(add_correlated_displacement(gamma1, x), [2])
        t.add(x, nu_min_closed_form(tau, x), kappa_min_closed_form(tau, x), generic, bound)
    return t


def fig2a() -> Table:
    return _eigenvalues(0.1, "fig2a")


def fig2b() -> Table:
    return _eigenvalues(1.0, "fig2b")


def fig4() -> Table:
    """Separable protocol, key rate vs distance for several modulation variances."""
    t = Table(("V", "L", "eta", "n0", "i_ab", "rate_raw", "rate"))
    t.meta = [
        "fig4: separable protocol, rate vs distance, homodyne, CM mutual information",
        f"xi={XI} epsilon={EPSILON} mapped to n0=1+eta*eps/(1-eta) (convention)",
        LINKAGE,
        "distance range 0..300 km (chosen default)",
    ]
    for v in (2, 10, 30, 100):
        for L in _distances():
            eta = distance_to_transmittance(L)
            n0 = excess_noise_to_n0(eta, EPSILON)
            k = key_rate(ProtocolParams.from_variance(v, distance_km=L, n0=n0, xi=XI))
            t.add(v, L, eta, n0, k.i_ab, k.rate_raw, k.rate)
    return t


def fig5() -> Table:
    """Separable protocol, key rate vs channel transmittance."""
    t = Table(("V", "n0", "eta", "i_ab", "rate_raw", "rate"))
    t.meta = ["fig5: separable protocol, rate vs transmittance", f"xi={XI}", LINKAGE, "eta grid 0.01..1 (chosen default)"]
    for v in (10, 100):
        for n0 in (1, 2, 4):
            for k in range(1, 101):
                eta = k / 100
                p = key_rate(ProtocolParams.from_variance(v, eta=eta, n0=n0, xi=XI))
                t.add(v, n0, eta, p.i_ab, p.rate_raw, p.rate)
    return t


def _comparison_params(variant: str, n0: float, L: float = 0.0) -> ProtocolParams:
    return ProtocolParams.from_variance(30, distance_km=L, n0=n0, xi=XI, variant=variant)


def fig6() -> Table:
    """Separable vs traditional protocol at V = 30, key rate vs distance."""
    t = Table(("variant", "n0", "L", "eta", "i_ab", "chi_be", "rate_raw", "rate"))
    t.meta = [
        "fig6: separable vs traditional, rate vs distance, V=30",
        f"xi={XI}",
        LINKAGE,
        "traditional: TMSV with variance V, same channel; Holevo bound from the A-conditioned eigenvalue",
        "distance range 0..300 km (chosen default)",
    ]
    for variant in ("separable", "traditional"):
        for n0 in (1.01, 2):
            for L in _distances():
                p = key_rate(_comparison_params(variant, n0, L))
                t.add(variant, n0, L, p.params.transmittance, p.i_ab, p.chi_be, p.rate_raw, p.rate)
    return t


def fig7() -> Table:
    """Zero-crossing distance of every curve in :func:`fig6`."""
    t = Table(("variant", "n0", "cutoff_km"))
    t.meta = [
        "fig7: distance where the raw rate crosses zero (bisection to 0.01 km, search up to 500 km)",
        "cutoff_km=none means the rate stays positive over the whole search range",
        LINKAGE,
    ]
    for variant in ("separable", "traditional"):
        for n0 in (1.01, 2):
            cut = distance_cutoff(_comparison_params(variant, n0))
            t.add(variant, n0, "none" if cut is None else cut)
    return t


def fig8() -> Table:
    """Equivalent noise vs transmittance, with and without displacement."""
    tau = math.log(10) / 2
    x = separable_bound_x(tau)
    t = Table(("n0", "eta", "omega_proposed", "omega_original"))
    t.meta = [
        "fig8: equivalent noise vs transmittance; original protocol = same formula at x=0",
        f"proposed uses e^(2 tau)=10, x=separable bound={format_value(x)} (chosen default)",
    ]
    for n0 in (1, 3, 5):
        for k in range(101):
            eta = k / 100
            t.add(n0, eta, equivalent_noise_omega(eta, n0, x), equivalent_noise_omega(eta, n0, 0.0))
    return t


def fig9() -> Table:
    """Separable protocol vs the repeaterless PLOB bound."""
    t = Table(("n0", "eta", "L", "rate", "plob"))
    t.meta = ["fig9: separable protocol vs PLOB bound, V=30 (chosen default)", f"xi={XI}", LINKAGE, "eta grid 0.01..0.99"]
    for n0 in (1, 2, 3):
        for k in range(1, 100):
            eta = k / 100
            p = key_rate(ProtocolParams.from_variance(30, eta=eta, n0=n0, xi=XI))
            t.add(n0, eta, p.params.distance, p.rate, plob_bound(eta))
    return t


PRESETS = {
    "fig2a": fig2a,
    "fig2b": fig2b,
    "fig4": fig4,
    "fig5": fig5,
    "fig6": fig6,
    "fig7": fig7,
    "fig8": fig8,
    "fig9": fig9,
}


def figure_preset(name: str) -> Table:
    if name not in PRESETS:
        raise ValidationError(f"unknown figure preset {name!r}; choose from {', '.join(PRESETS)}")
    return PRESETS[name]()
