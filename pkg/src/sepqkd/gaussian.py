"""Covariance-matrix toolkit for Gaussian states.

Covariance matrices are plain ``numpy`` arrays in shot-noise units with
quadratures ordered ``(x1, p1, x2, p2, ...)``; the vacuum of one mode is the
2x2 identity.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, NumericalError, ValidationError

SYMMETRY_TOL = 1e-12
PHYSICAL_TOL = 1e-9
DISCRIMINANT_TOL = 1e-12
PAIR_TOL = 1e-8

I2 = np.eye(2)
SIGMA_Z = np.diag([1.0, -1.0])


def n_modes(gamma: np.ndarray) -> int:
    """Number of modes of a covariance matrix."""
    return check_cm(gamma).shape[0] // 2


def check_cm(gamma, symmetric: bool = True) -> np.ndarray:
    """Return ``gamma`` as a float array after validating shape and symmetry.

    Raises
    ------
    ValidationError
        If the matrix is not square with even dimension, contains non-finite
        entries, or is asymmetric beyond ``SYMMETRY_TOL``.
    """
    gamma = np.asarray(gamma, dtype=float)
    if gamma.ndim != 2 or gamma.shape[0] != gamma.shape[1] or gamma.shape[0] % 2:
        raise ValidationError(f"covariance matrix must be 2n x 2n, got shape {gamma.shape}")
    if gamma.shape[0] == 0:
        raise ValidationError("covariance matrix must describe at least one mode")
    if not np.all(np.isfinite(gamma)):
        raise ValidationError("covariance matrix contains non-finite entries")
    if symmetric and np.max(np.abs(gamma - gamma.T)) > SYMMETRY_TOL:
        raise ValidationError(
            f"covariance matrix is not symmetric (max asymmetry "
            f"{np.max(np.abs(gamma - gamma.T)):.3e})"
        )
    return gamma


def symmetrize(gamma: np.ndarray) -> np.ndarray:
    return 0.5 * (gamma + gamma.T)


def symplectic_form(n: int) -> np.ndarray:
    """Block-diagonal symplectic form ``⊕ [[0, 1], [-1, 0]]`` for ``n`` modes."""
    if int(n) != n or n < 1:
        raise ValidationError(f"number of modes must be a positive integer, got {n!r}")
    return np.kron(np.eye(int(n)), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def is_symplectic(S: np.ndarray, tol: float = 1e-10) -> bool:
    S = np.asarray(S, dtype=float)
    omega = symplectic_form(S.shape[0] // 2)
    return bool(np.max(np.abs(S @ omega @ S.T - omega)) <= tol)


def symplectic_eigenvalues(gamma) -> np.ndarray:
    """Symplectic spectrum of ``gamma``, sorted ascending, one value per mode.

    The values are the moduli of the eigenvalues of ``iΩγ``; each of them
    appears twice and the pairs are collapsed after checking that they agree.
    """
    gamma = check_cm(gamma)
    n = gamma.shape[0] // 2
    try:
        ev = np.linalg.eigvals(1j * symplectic_form(n) @ gamma)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigen-solver failed on matrix\n{gamma!r}") from exc
    mods = np.sort(np.abs(ev))
    lo, hi = mods[0::2], mods[1::2]
    scale = np.maximum(np.maximum(lo, hi), 1.0)
    if np.any(np.abs(hi - lo) > PAIR_TOL * scale):
        raise NumericalError(f"symplectic eigenvalues are not paired: {mods} for matrix\n{gamma!r}")
    return 0.5 * (lo + hi)


def symplectic_eigenvalues_two_mode(a: float, b: float, c: float) -> tuple[float, float]:
    """Closed-form spectrum of ``[[a I, c σz], [c σz, b I]]`` as ``(ν1, ν2)``, ν1 ≥ ν2."""
    if a <= 0 or b <= 0:
        raise DomainError(f"diagonal blocks must be positive, got a={a}, b={b}")
    delta = a * a + b * b - 2 * c * c
    det = a * b - c * c
    disc = delta * delta - 4 * det * det
    if disc < 0:
        if disc < -DISCRIMINANT_TOL:
            raise DomainError(f"inconsistent covariance matrix: Δ² - 4D² = {disc:.3e}")
        disc = 0.0
    root = math.sqrt(disc)
    nu1_sq = (delta + root) / 2
    nu2_sq = max((delta - root) / 2, 0.0)
    return math.sqrt(nu1_sq), math.sqrt(nu2_sq)


def conditional_eigenvalue_nu3(a: float, b: float, c: float) -> float:
    """Symplectic eigenvalue ``sqrt(b (b - c²/a))`` of B conditioned on a homodyne of A."""
    if a <= 0:
        raise DomainError(f"a must be positive, got {a}")
    cond = b - c * c / a
    if cond < 0:
        if cond < -DISCRIMINANT_TOL:
            raise DomainError(f"conditional variance b - c²/a = {cond:.3e} is negative")
        cond = 0.0
    return math.sqrt(b * cond)


def _check_modes(modes: Iterable[int], n: int, allow_repeats: bool = True) -> list[int]:
    modes = list(modes)
    if not modes:
        raise ValidationError("mode selection must be non-empty")
    for m in modes:
        if int(m) != m or not 0 <= m < n:
            raise ValidationError(f"mode index {m!r} out of range for {n} modes")
    if not allow_repeats and len(set(modes)) != len(modes):
        raise ValidationError(f"mode indices must be distinct, got {modes}")
    return [int(m) for m in modes]


def partial_transpose(gamma, modes: Iterable[int]) -> np.ndarray:
    """Flip the sign of the momentum quadrature of each mode in ``modes``."""
    gamma = check_cm(gamma)
    n = gamma.shape[0] // 2
    flip = np.ones(2 * n)
    for m in set(_check_modes(modes, n)):
        flip[2 * m + 1] = -1.0
    return gamma * np.outer(flip, flip)


def min_pt_symplectic_eigenvalue(gamma, modes: Iterable[int]) -> float:
    """Smallest symplectic eigenvalue of the partial transpose over ``modes``.

    A value below one witnesses entanglement across the cut.
    """
    return float(symplectic_eigenvalues(partial_transpose(gamma, modes))[0])


def log_negativity(nu_min: float) -> float:
    """Logarithmic negativity in ebits from the smallest PT symplectic eigenvalue."""
    if nu_min <= 0:
        raise DomainError(f"nu_min must be positive, got {nu_min}")
    # inside the PPT tolerance band the state counts as separable
    if nu_min >= 1 - PHYSICAL_TOL:
        return 0.0
    return -math.log2(nu_min)


def entropy_G(x: float) -> float:
    """Von Neumann entropy (bits) of a thermal mode with symplectic eigenvalue ``x``."""
    if x < 1 - PHYSICAL_TOL:
        raise DomainError(f"entropy function needs x >= 1, got {x}")
    if x <= 1:
        return 0.0
    plus, minus = (x + 1) / 2, (x - 1) / 2
    return plus * math.log2(plus) - minus * math.log2(minus)


def reduce(gamma, keep: Sequence[int]) -> np.ndarray:
    """Marginal covariance matrix of the modes in ``keep``, in the given order."""
    gamma = check_cm(gamma)
    keep = _check_modes(keep, gamma.shape[0] // 2, allow_repeats=False)
    idx = [2 * m + q for m in keep for q in (0, 1)]
    return gamma[np.ix_(idx, idx)].copy()


def is_physical(gamma, tol: float = PHYSICAL_TOL) -> bool:
    """True when every symplectic eigenvalue is at least ``1 - tol``."""
    return bool(symplectic_eigenvalues(gamma)[0] >= 1 - tol)


def two_mode_blocks(gamma, tol: float = 1e-9) -> tuple[float, float, float]:
    """Extract ``(a, b, c)`` from a CM of the form ``[[a I, c σz], [c σz, b I]]``."""
    gamma = check_cm(gamma)
    if gamma.shape != (4, 4):
        raise ValidationError(f"expected a two-mode covariance matrix, got shape {gamma.shape}")
    a, b, c = gamma[0, 0], gamma[2, 2], gamma[0, 2]
    expected = np.block([[a * I2, c * SIGMA_Z], [c * SIGMA_Z, b * I2]])
    scale = max(1.0, float(np.max(np.abs(gamma))))
    if np.max(np.abs(gamma - expected)) > tol * scale:
        raise ValidationError("covariance matrix is not in [[aI, cσz], [cσz, bI]] form")
    return float(a), float(b), float(c)


def two_mode_cm(a: float, b: float, c: float) -> np.ndarray:
    """Assemble ``[[a I, c σz], [c σz, b I]]``."""
    return np.block([[a * I2, c * SIGMA_Z], [c * SIGMA_Z, b * I2]])
