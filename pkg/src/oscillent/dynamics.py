"""
Time evolution of an initially separable bare state |m1>|m2>.

The bare state is expanded over the normal modes of its manifold N = m1 + m2,
each mode picks up its own phase, and the result is projected back on the
bare basis:

    d_k(t) = sum_n M[n][m1] M[n][k] exp(-i phi_n(t)),   lambda_k = |d_k|^2.

With the approximate phase law phi_n = n * t~ (t~ = epsilon t) everything is
2 pi periodic in t~. The exact law uses the full energy differences; on one
manifold these differ from n * epsilon * t only by a common phase, so both
modes give the same probabilities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, NamedTuple, Sequence

import numpy as np

from .errors import EmptyGrid, LevelTooHigh
from .model import OscillatorParams, eigen_energy, normal_modes
from .schmidt import DEFAULT_MAX_LEVEL, ModePair, SchmidtSpectrum, coefficient_matrix

__all__ = [
    "InitialState",
    "EntropySeries",
    "PhaseMode",
    "evolution_coefficients",
    "time_spectrum",
    "entropy_timeseries",
    "transition_amplitude",
    "transition_probability",
]

PhaseMode = Literal["approx", "exact"]


class InitialState(NamedTuple):
    m1: int
    m2: int

    @property
    def level(self) -> int:
        return self.m1 + self.m2


@dataclass(frozen=True)
class EntropySeries:
    sin_theta: float
    initial: InitialState
    t_grid: np.ndarray
    lambdas: np.ndarray  # shape (len(t_grid), m1 + m2 + 1)
    entropy: np.ndarray


def _initial(state, max_level: int) -> InitialState:
    m1, m2 = state
    if m1 < 0 or m2 < 0:
        raise ValueError(f"bare quantum numbers must be >= 0, got ({m1}, {m2})")
    if m1 + m2 > max_level:
        raise LevelTooHigh(f"m1 + m2 = {m1 + m2} exceeds max level {max_level}")
    return InitialState(int(m1), int(m2))


def _phases(
    N: int,
    bare: tuple[int, int],
    t_tilde: np.ndarray,
    phase_mode: PhaseMode,
    params: OscillatorParams | None,
) -> np.ndarray:
    """phi[t, n] for every time sample and normal-mode index n = 0..N."""
    n = np.arange(N + 1)
    if phase_mode == "approx":
        return np.outer(t_tilde, n)
    if phase_mode != "exact":
        raise ValueError(f"phase_mode must be 'approx' or 'exact', got {phase_mode!r}")
    if params is None:
        raise ValueError("exact phases need the physical parameters")
    modes = normal_modes(params)
    k, l = bare
    delta_e = np.array(
        [
            eigen_energy(j, N - j, modes) - params.omega1 * (k + 0.5) - params.omega2 * (l + 0.5)
            for j in n
        ]
    )
    t_phys = t_tilde / modes.epsilon
    return np.outer(t_phys, delta_e)


def _amplitudes(
    state: InitialState,
    sin_theta: float,
    t_tilde: np.ndarray,
    phase_mode: PhaseMode,
    params: OscillatorParams | None,
    max_level: int,
) -> np.ndarray:
    N = state.level
    M = coefficient_matrix(N, sin_theta, max_level=max_level).entries
    phi = _phases(N, tuple(state), t_tilde, phase_mode, params)
    # d[t, k] = sum_n M[n, m1] M[n, k] exp(-i phi[t, n])
    return (np.exp(-1j * phi) * M[:, state.m1]) @ M


def evolution_coefficients(
    initial,
    sin_theta: float,
    t_tilde: float,
    *,
    phase_mode: PhaseMode = "approx",
    params: OscillatorParams | None = None,
    max_level: int = DEFAULT_MAX_LEVEL,
) -> np.ndarray:
    """Complex d_k(t~), k = 0..m1+m2, for the bare start |m1>|m2>."""
    state = _initial(initial, max_level)
    t = np.array([float(t_tilde)])
    return _amplitudes(state, sin_theta, t, phase_mode, params, max_level)[0]


def time_spectrum(
    initial,
    sin_theta: float,
    t_tilde: float,
    *,
    phase_mode: PhaseMode = "approx",
    params: OscillatorParams | None = None,
    max_level: int = DEFAULT_MAX_LEVEL,
) -> SchmidtSpectrum:
    d = evolution_coefficients(
        initial, sin_theta, t_tilde, phase_mode=phase_mode, params=params, max_level=max_level
    )
    state = InitialState(*initial)
    return SchmidtSpectrum(ModePair(state.m1, state.m2), float(sin_theta), np.abs(d) ** 2)


def _entropy_rows(lam: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(lam > 0.0, lam * np.log(lam), 0.0)
    return np.maximum(0.0, -terms.sum(axis=1))


def entropy_timeseries(
    initial,
    sin_theta: float,
    t_grid: Sequence[float],
    *,
    phase_mode: PhaseMode = "approx",
    params: OscillatorParams | None = None,
    max_level: int = DEFAULT_MAX_LEVEL,
) -> EntropySeries:
    """Schmidt modes and von Neumann entropy on a monotone time grid."""
    state = _initial(initial, max_level)
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise EmptyGrid("time grid must be a non-empty 1-d sequence")
    if t.size > 1 and not (np.all(np.diff(t) > 0) or np.all(np.diff(t) < 0)):
        raise ValueError("time grid must be strictly monotone")
    d = _amplitudes(state, sin_theta, t, phase_mode, params, max_level)
    lam = np.abs(d) ** 2
    return EntropySeries(float(sin_theta), state, t, lam, _entropy_rows(lam))


def transition_amplitude(
    source: tuple[int, int],
    target: tuple[int, int],
    sin_theta: float,
    t_tilde: float,
    *,
    phase_mode: PhaseMode = "approx",
    params: OscillatorParams | None = None,
    max_level: int = DEFAULT_MAX_LEVEL,
) -> complex:
    """Amplitude to find the bare state ``target`` after starting in ``source``."""
    k, l = source
    p1, p2 = target
    if k + l != p1 + p2:
        return 0j
    d = evolution_coefficients(
        (k, l), sin_theta, t_tilde, phase_mode=phase_mode, params=params, max_level=max_level
    )
    return complex(d[p1])


def transition_probability(
    source: tuple[int, int],
    target: tuple[int, int],
    sin_theta: float,
    t_tilde: float,
    *,
    phase_mode: PhaseMode = "approx",
    params: OscillatorParams | None = None,
    max_level: int = DEFAULT_MAX_LEVEL,
) -> float:
    """|a|^2; exactly 0 when source and target lie on different manifolds."""
    a = transition_amplitude(
        source, target, sin_theta, t_tilde, phase_mode=phase_mode, params=params, max_level=max_level
    )
    return min(1.0, abs(a) ** 2)
