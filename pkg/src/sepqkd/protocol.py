"""State-evolution pipelines for entanglement distribution and separable-state CVQKD.

Modes are labelled canonically as A (kept by Alice), B (Bob's local mode) and
C (the ancilla that travels through the channel), in that order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gaussian import I2, SIGMA_Z, check_cm, reduce
from .optics import (
    ChannelParams,
    add_correlated_displacement,
    apply_transform,
    beam_splitter,
    direct_sum,
    lossy_thermal_channel,
    permute_modes,
    two_mode_squeezed_cm,
)
from .params import ProtocolParams

A, B, C = 0, 1, 2

# Alternative layout with the displaced vacuum in the last slot: (A, C, B) in canonical labels.
DISPLACED_LAST_LAYOUT = (A, C, B)


@dataclass(frozen=True)
class PipelineTrace:
    gamma1: np.ndarray
    gamma2: np.ndarray
    gamma3: np.ndarray
    gamma4: np.ndarray
    gamma_ab: np.ndarray

    def snapshots(self) -> dict[str, np.ndarray]:
        return {
            "gamma1": self.gamma1,
            "gamma2": self.gamma2,
            "gamma3": self.gamma3,
            "gamma4": self.gamma4,
            "gamma_ab": self.gamma_ab,
        }


def build_gamma1(tau: float) -> np.ndarray:
    """Two-mode squeezed vacuum on (A, C) with B in vacuum."""
    return permute_modes(direct_sum(two_mode_squeezed_cm(tau), I2), [0, 2, 1])


def build_gamma2(tau: float, x: float) -> np.ndarray:
    """``build_gamma1`` plus the correlated classical displacement ``x P``."""
    return add_correlated_displacement(build_gamma1(tau), x)


def bob_splitter() -> np.ndarray:
    """Balanced beam splitter between B and C; B's output port is the one kept."""
    return beam_splitter(3, B, C, 0.5)


def run_distribution_pipeline(tau: float, x: float) -> np.ndarray:
    """Three-mode CM after Bob mixes the received ancilla with his displaced mode."""
    return apply_transform(build_gamma2(tau, x), bob_splitter())


def distribution_cm_closed_form(tau: float, x: float) -> np.ndarray:
    """Block formulas for the distribution output, in the convention without the C phase flip.

    The pipeline output differs from this only by a phase flip ``-I`` on mode C;
    see :func:`flip_mode`.
    """
    a = math.cosh(2 * tau) + x
    b = math.sinh(2 * tau) - x
    r2 = math.sqrt(2)
    return np.block([
        [a * I2, (2 * x + b) / r2 * SIGMA_Z, (2 * x - b) / r2 * SIGMA_Z],
        [(2 * x + b) / r2 * SIGMA_Z, (1 + a) / 2 * I2, (1 + 4 * x - a) / 2 * I2],
        [(2 * x - b) / r2 * SIGMA_Z, (1 + 4 * x - a) / 2 * I2, (1 + 8 * x + a) / 2 * I2],
    ])


def flip_mode(gamma, mode: int) -> np.ndarray:
    """Apply the π phase rotation ``-I`` to one mode (a local symplectic map)."""
    gamma = check_cm(gamma)
    sign = np.ones(gamma.shape[0])
    sign[2 * mode:2 * mode + 2] = -1.0
    return gamma * np.outer(sign, sign)


def gamma3_closed_form(tau: float, x: float, eta: float, n0: float) -> np.ndarray:
    """Three-mode CM after the channel acts on C, canonical order (A, B, C)."""
    v = math.cosh(2 * tau)
    a = v + x
    b = math.sqrt(v * v - 1) - x
    se = math.sqrt(eta)
    return np.block([
        [a * I2, 2 * x * SIGMA_Z, b * se * SIGMA_Z],
        [2 * x * SIGMA_Z, (1 + 4 * x) * I2, -2 * x * se * I2],
        [b * se * SIGMA_Z, -2 * x * se * I2, (a * eta + (1 - eta) * n0) * I2],
    ])


def gamma_ab_closed_form(tau: float, x: float, eta: float, n0: float) -> np.ndarray:
    """Alice-Bob CM at the end of the separable-state protocol, by block formula."""
    v = math.cosh(2 * tau)
    a = v + x
    b = math.sqrt(v * v - 1) - x
    se = math.sqrt(eta)
    c = (2 * x + b * se) / math.sqrt(2)
    vb = (1 + n0 + 4 * x * (1 - se) + a * eta - n0 * eta) / 2
    return np.block([[a * I2, c * SIGMA_Z], [c * SIGMA_Z, vb * I2]])


def run_cvqkd_pipeline(params: ProtocolParams) -> PipelineTrace:
    """Propagate the separable-state protocol explicitly, stage by stage."""
    g1 = build_gamma1(params.tau)
    g2 = add_correlated_displacement(g1, params.x)
    g3 = lossy_thermal_channel(g2, ChannelParams(params.transmittance, params.n0), C)
    g4 = apply_transform(g3, bob_splitter())
    return PipelineTrace(g1, g2, g3, g4, reduce(g4, [A, B]))


def run_traditional_pipeline(params: ProtocolParams) -> np.ndarray:
    """Entanglement-based baseline: a TMSV with one arm sent through the channel."""
    return lossy_thermal_channel(
        two_mode_squeezed_cm(params.tau), ChannelParams(params.transmittance, params.n0), 1
    )
