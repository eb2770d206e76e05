"""Constructors for the Gaussian states, transforms and channels used by the protocols."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .gaussian import I2, SIGMA_Z, check_cm, reduce, symmetrize

# Vectors spanning the correlated-displacement subspace, ordering (xA, pA, xB, pB, xC, pC).
Q1 = np.array([0.0, 1.0, 0.0, -2.0, 0.0, 1.0])
Q2 = np.array([1.0, 0.0, 2.0, 0.0, -1.0, 0.0])


@dataclass(frozen=True)
class ChannelParams:
    """Lossy thermal channel: transmittance ``eta`` and environment variance ``n0``."""

    eta: float
    n0: float = 1.0

    def __post_init__(self):
        if not 0 < self.eta <= 1:
            raise DomainError(f"transmittance must lie in (0, 1], got {self.eta}")
        if not self.n0 >= 1 or not math.isfinite(self.n0):
            raise DomainError(f"thermal noise variance must be >= 1, got {self.n0}")


def vacuum_cm(n: int) -> np.ndarray:
    if int(n) != n or n < 1:
        raise ValidationError(f"number of modes must be a positive integer, got {n!r}")
    return np.eye(2 * int(n))


def _check_tau(tau: float) -> float:
    if not tau >= 0 or not math.isfinite(tau):
        raise DomainError(f"squeezing parameter must be >= 0, got {tau}")
    return float(tau)


def squeezed_vacuum_cm(tau: float, axis: str = "position") -> np.ndarray:
    """Single-mode squeezed vacuum.

    ``axis="position"`` gives ``diag(e^{2τ}, e^{-2τ})`` (anti-squeezed in x, as
    in the state Alice keeps); ``axis="momentum"`` gives the swapped diagonal.
    """
    tau = _check_tau(tau)
    big, small = math.exp(2 * tau), math.exp(-2 * tau)
    if axis == "position":
        return np.diag([big, small])
    if axis == "momentum":
        return np.diag([small, big])
    raise ValidationError(f"axis must be 'position' or 'momentum', got {axis!r}")


def two_mode_squeezed_cm(tau: float) -> np.ndarray:
    tau = _check_tau(tau)
    ch, sh = math.cosh(2 * tau), math.sinh(2 * tau)
    return np.block([[ch * I2, sh * SIGMA_Z], [sh * SIGMA_Z, ch * I2]])


def direct_sum(*blocks: np.ndarray) -> np.ndarray:
    size = sum(b.shape[0] for b in blocks)
    out = np.zeros((size, size))
    k = 0
    for b in blocks:
        d = b.shape[0]
        out[k:k + d, k:k + d] = b
        k += d
    return out


def permute_modes(gamma, order) -> np.ndarray:
    """Reorder modes so that new mode ``k`` is old mode ``order[k]``."""
    gamma = check_cm(gamma)
    n = gamma.shape[0] // 2
    if sorted(order) != list(range(n)):
        raise ValidationError(f"{order!r} is not a permutation of {n} modes")
    return reduce(gamma, order)


def _embed(n: int, modes: tuple[int, ...], block: np.ndarray) -> np.ndarray:
    S = np.eye(2 * n)
    idx = [2 * m + q for m in modes for q in (0, 1)]
    S[np.ix_(idx, idx)] = block
    return S


def _check_pair(n: int, i: int, j: int):
    for m in (i, j):
        if int(m) != m or not 0 <= m < n:
            raise ValidationError(f"mode index {m!r} out of range for {n} modes")
    if i == j:
        raise ValidationError("beam splitter needs two distinct modes")


def beam_splitter(n: int, i: int, j: int, eta: float) -> np.ndarray:
    """Beam splitter of transmittance ``eta`` between modes ``i`` and ``j``.

    Acts as ``x_i -> √η x_i + √(1-η) x_j`` and ``x_j -> -√(1-η) x_i + √η x_j``
    on both quadratures, identity elsewhere.
    """
    _check_pair(n, i, j)
    if not 0 <= eta <= 1:
        raise DomainError(f"beam splitter transmittance must lie in [0, 1], got {eta}")
    t, r = math.sqrt(eta), math.sqrt(1 - eta)
    return _embed(n, (i, j), np.block([[t * I2, r * I2], [-r * I2, t * I2]]))


def squeezer(n: int, mode: int, r: float) -> np.ndarray:
    """Single-mode squeezer ``diag(e^{-r}, e^{r})`` on ``mode``."""
    if not 0 <= mode < n:
        raise ValidationError(f"mode index {mode!r} out of range for {n} modes")
    return _embed(n, (mode,), np.diag([math.exp(-r), math.exp(r)]))


def phase_rotation(n: int, mode: int, theta: float) -> np.ndarray:
    if not 0 <= mode < n:
        raise ValidationError(f"mode index {mode!r} out of range for {n} modes")
    c, s = math.cos(theta), math.sin(theta)
    return _embed(n, (mode,), np.array([[c, s], [-s, c]]))


def apply_transform(gamma, S) -> np.ndarray:
    """Conjugate ``gamma -> S γ Sᵀ``, re-symmetrizing to remove round-off."""
    gamma = check_cm(gamma)
    S = np.asarray(S, dtype=float)
    if S.shape != gamma.shape:
        raise ValidationError(f"transform shape {S.shape} does not match CM shape {gamma.shape}")
    return symmetrize(S @ gamma @ S.T)


def displacement_matrix_P() -> np.ndarray:
    """Rank-two matrix ``q1 q1ᵀ + q2 q2ᵀ`` of the correlated displacements."""
    return np.outer(Q1, Q1) + np.outer(Q2, Q2)


def add_correlated_displacement(gamma, x: float) -> np.ndarray:
    """Classical correlated noise ``γ + x P`` on a three-mode state (A, B, C)."""
    gamma = check_cm(gamma)
    if gamma.shape != (6, 6):
        raise ValidationError(f"correlated displacement needs a three-mode CM, got shape {gamma.shape}")
    if not x >= 0 or not math.isfinite(x):
        raise DomainError(f"displacement strength must be >= 0, got {x}")
    return gamma + x * displacement_matrix_P()


def lossy_thermal_channel(gamma, channel: ChannelParams, target: int) -> np.ndarray:
    """Send mode ``target`` through a thermal-loss channel.

    An environment mode of variance ``n0`` is adjoined, mixed with the target on
    a beam splitter of transmittance ``eta`` and traced out again.
    """
    gamma = check_cm(gamma)
    n = gamma.shape[0] // 2
    if int(target) != target or not 0 <= target < n:
        raise ValidationError(f"mode index {target!r} out of range for {n} modes")
    extended = direct_sum(gamma, channel.n0 * I2)
    out = apply_transform(extended, beam_splitter(n + 1, target, n, channel.eta))
    return reduce(out, list(range(n)))


def sample_correlated_displacements(x: float, count: int, seed: int) -> np.ndarray:
    """Draw ``count`` six-component displacements with covariance ``x P``.

    Each row is ``√x (g1 q1 + g2 q2)`` with independent standard normals.
    """
    if not x >= 0 or not math.isfinite(x):
        raise DomainError(f"displacement strength must be >= 0, got {x}")
    if int(count) != count or count < 1:
        raise ValidationError(f"count must be a positive integer, got {count!r}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((int(count), 2))
    return math.sqrt(x) * (g @ np.vstack([Q1, Q2]))
