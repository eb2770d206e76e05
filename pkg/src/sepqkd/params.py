"""Parameter bundle shared by the protocol pipelines and the key-rate module."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import DomainError, ValidationError

DETECTIONS = ("homodyne", "heterodyne")
VARIANTS = ("separable", "traditional")
MI_PATHS = ("cm", "formula")


def distance_to_transmittance(distance_km: float) -> float:
    """Fibre transmittance ``10^(-L/50)`` for a link of ``distance_km`` kilometres."""
    if not distance_km >= 0 or not math.isfinite(distance_km):
        raise DomainError(f"distance must be >= 0 km, got {distance_km}")
    return 10.0 ** (-distance_km / 50.0)


def tau_from_variance(v: float) -> float:
    """Squeezing parameter whose two-mode squeezed state has local variance ``v``."""
    if not v >= 1:
        raise DomainError(f"variance must be >= 1, got {v}")
    return math.acosh(v) / 2


def separable_bound_x(tau: float) -> float:
    """Smallest displacement strength ``(e^{2τ} - 1)/2`` that makes C separable from AB."""
    if not tau >= 0:
        raise DomainError(f"squeezing parameter must be >= 0, got {tau}")
    try:
        return (math.exp(2 * tau) - 1) / 2
    except OverflowError:
        raise DomainError(f"squeezing parameter {tau} overflows e^(2 tau)") from None


@dataclass(frozen=True)
class ProtocolParams:
    """One operating point.

    ``x`` may be the string ``"bound"``, resolved to :func:`separable_bound_x`.
    Exactly one of ``eta`` and ``distance_km`` must be given. ``phi`` defaults
    to the local variance ``cosh 2τ``.
    """

    tau: float
    x: float | str = "bound"
    eta: float | None = None
    distance_km: float | None = None
    n0: float = 1.0
    xi: float = 0.95
    phi: float | None = None
    detection: str = "homodyne"
    variant: str = "separable"
    mi_path: str = "cm"
    x_is_bound: bool = field(default=False, compare=False)
    phi_is_default: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.tau, (int, float)) or not self.tau >= 0 or not math.isfinite(self.tau):
            raise DomainError(f"tau must be a finite number >= 0, got {self.tau!r}")
        if self.x == "bound":
            object.__setattr__(self, "x", separable_bound_x(self.tau))
            object.__setattr__(self, "x_is_bound", True)
        else:
            object.__setattr__(self, "x_is_bound", False)
        if isinstance(self.x, str):
            raise ValidationError(f"x must be a number or 'bound', got {self.x!r}")
        elif not self.x >= 0 or not math.isfinite(self.x):
            raise DomainError(f"x must be >= 0, got {self.x}")
        if (self.eta is None) == (self.distance_km is None):
            raise ValidationError("exactly one of eta and distance_km must be set")
        if self.eta is not None and not 0 < self.eta <= 1:
            raise DomainError(f"eta must lie in (0, 1], got {self.eta}")
        if self.distance_km is not None:
            distance_to_transmittance(self.distance_km)
        if not self.n0 >= 1 or not math.isfinite(self.n0):
            raise DomainError(f"n0 must be >= 1, got {self.n0}")
        if not 0 < self.xi <= 1:
            raise DomainError(f"xi must lie in (0, 1], got {self.xi}")
        object.__setattr__(self, "phi_is_default", self.phi is None)
        if self.phi is None:
            object.__setattr__(self, "phi", self.V)
        elif not self.phi > 0:
            raise DomainError(f"phi must be > 0, got {self.phi}")
        for name, allowed in (("detection", DETECTIONS), ("variant", VARIANTS), ("mi_path", MI_PATHS)):
            if getattr(self, name) not in allowed:
                raise ValidationError(f"{name} must be one of {allowed}, got {getattr(self, name)!r}")

    @classmethod
    def from_variance(cls, v: float, **kwargs) -> "ProtocolParams":
        """Default figure linkage: ``τ = arccosh(V)/2``, ``x`` at the separable bound, ``φ = V``."""
        kwargs.setdefault("x", "bound")
        kwargs.setdefault("phi", v)
        return cls(tau=tau_from_variance(v), **kwargs)

    @property
    def V(self) -> float:
        return math.cosh(2 * self.tau)

    @property
    def transmittance(self) -> float:
        if self.eta is not None:
            return float(self.eta)
        return distance_to_transmittance(self.distance_km)

    @property
    def distance(self) -> float:
        if self.distance_km is not None:
            return float(self.distance_km)
        return -50.0 * math.log10(self.eta)

    def with_(self, **changes) -> "ProtocolParams":
        """Copy with changes; switching between eta and distance_km clears the other."""
        if "eta" in changes and "distance_km" not in changes:
            changes["distance_km"] = None
        if "distance_km" in changes and "eta" not in changes:
            changes["eta"] = None
        if "tau" in changes:
            if self.x_is_bound and "x" not in changes:
                changes["x"] = "bound"
            if self.phi_is_default and "phi" not in changes:
                changes["phi"] = None
        return replace(self, **changes)
