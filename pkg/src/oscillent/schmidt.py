"""
Closed-form Schmidt coefficients on the degenerate manifold n + m = N.

For the normal-mode eigenstate |n, m> the weight of the bare product state
|l>|N - l> is

    A(n, m; l) = (-1)^m sqrt(l! (N-l)! / (2^(N-2l) n! m!))
                 * P_l^(n-l, m-l)(s) (1-s)^((n-l)/2) (1+s)^((m-l)/2),

with s = sin(theta). The Jacobi factor and the two half powers are combined
term by term before evaluation: every exponent in the merged sum is
non-negative, so the expression stays finite as s -> +-1. The endpoints
themselves are returned directly as the separable delta spectra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import mpmath
import numpy as np

from .errors import IndexOutOfManifold, LevelTooHigh, NotNormalized
from .special import log_factorial

__all__ = [
    "DEFAULT_MAX_LEVEL",
    "ModePair",
    "SchmidtSpectrum",
    "CoefficientMatrix",
    "EntanglementMeasures",
    "schmidt_coefficient",
    "schmidt_spectrum",
    "coefficient_matrix",
    "von_neumann_entropy",
    "schmidt_number",
    "entanglement_measures",
]

DEFAULT_MAX_LEVEL = 64

# Above this log-magnitude of the largest summand, double precision loses
# more than ~1e-14 to cancellation and the sum is redone in mpmath.
_CANCELLATION_LOG_LIMIT = 3.0


class ModePair(NamedTuple):
    n: int
    m: int

    @property
    def level(self) -> int:
        return self.n + self.m


@dataclass(frozen=True)
class SchmidtSpectrum:
    pair: ModePair
    sin_theta: float
    lambdas: np.ndarray

    def __len__(self) -> int:
        return len(self.lambdas)


@dataclass(frozen=True)
class CoefficientMatrix:
    """M[n][l] = A(n, N - n; l); rows are normal-mode states, columns bare ones."""

    N: int
    sin_theta: float
    entries: np.ndarray

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)


@dataclass(frozen=True)
class EntanglementMeasures:
    entropy: float
    schmidt_number: float


def _check_pair(n: int, m: int, max_level: int) -> ModePair:
    if n < 0 or m < 0 or int(n) != n or int(m) != m:
        raise ValueError(f"quantum numbers must be non-negative integers, got ({n}, {m})")
    if n + m > max_level:
        raise LevelTooHigh(f"n + m = {n + m} exceeds max level {max_level}")
    return ModePair(int(n), int(m))


def _check_sin(sin_theta: float) -> float:
    s = float(sin_theta)
    if not -1.0 <= s <= 1.0:
        raise ValueError(f"sin_theta must lie in [-1, 1], got {s!r}")
    return s


def _terms(n: int, m: int, l: int, s: float):
    """Yield (sign, log|term|) of the merged sum, prefactor included; |s| < 1."""
    N = n + m
    log_pref = 0.5 * (
        log_factorial(l) + log_factorial(N - l) - log_factorial(n) - log_factorial(m)
    ) - 0.5 * (N - 2 * l) * math.log(2.0) - l * math.log(2.0)
    log_lo = math.log1p(-s)
    log_hi = math.log1p(s)
    for v in range(max(0, l - m), min(l, n) + 1):
        # (1-s) and (1+s) exponents after absorbing the half powers
        e1 = (n + l) / 2.0 - v
        e2 = v + (m - l) / 2.0
        logmag = log_pref + math.log(math.comb(n, v)) + math.log(math.comb(m, l - v))
        if e1:
            logmag += e1 * log_lo
        if e2:
            logmag += e2 * log_hi
        sign = -1 if (l - v + m) % 2 else 1
        yield sign, logmag


def _coefficient_mp(n: int, m: int, l: int, s: float, digits: int) -> float:
    N = n + m
    with mpmath.workdps(digits):
        ms = mpmath.mpf(s)
        lo, hi = 1 - ms, 1 + ms
        pref = mpmath.sqrt(
            mpmath.factorial(l) * mpmath.factorial(N - l)
            / (mpmath.mpf(2) ** (N - 2 * l) * mpmath.factorial(n) * mpmath.factorial(m))
        ) / mpmath.mpf(2) ** l
        total = mpmath.mpf(0)
        for v in range(max(0, l - m), min(l, n) + 1):
            e1 = mpmath.mpf(n + l) / 2 - v
            e2 = v + mpmath.mpf(m - l) / 2
            t = math.comb(n, v) * math.comb(m, l - v) * lo**e1 * hi**e2
            total += -t if (l - v) % 2 else t
        return float((-1) ** m * pref * total)


def schmidt_coefficient(
    n: int, m: int, l: int, sin_theta: float, *, max_level: int = DEFAULT_MAX_LEVEL
) -> float:
    """Real Schmidt coefficient A(n, m; l) for bare index l of oscillator 1."""
    n, m = _check_pair(n, m, max_level)
    if l < 0 or l > n + m:
        raise IndexOutOfManifold(f"l = {l} outside 0..{n + m}")
    s = _check_sin(sin_theta)
    if s == 1.0:
        return float((-1) ** m) if l == n else 0.0
    if s == -1.0:
        return 1.0 if l == m else 0.0
    terms = list(_terms(n, m, l, s))
    if not terms:
        return 0.0
    biggest = max(t[1] for t in terms)
    if biggest > _CANCELLATION_LOG_LIMIT:
        digits = 20 + int(math.ceil(biggest / math.log(10.0)))
        return _coefficient_mp(n, m, l, s, digits)
    return math.fsum(sign * math.exp(logmag) for sign, logmag in terms)


def schmidt_spectrum(
    pair: ModePair | tuple[int, int], sin_theta: float, *, max_level: int = DEFAULT_MAX_LEVEL
) -> SchmidtSpectrum:
    """Schmidt modes lambda_l = A(n, m; l)^2, l = 0..n+m."""
    n, m = _check_pair(*pair, max_level)
    s = _check_sin(sin_theta)
    coeffs = np.array(
        [schmidt_coefficient(n, m, l, s, max_level=max_level) for l in range(n + m + 1)]
    )
    return SchmidtSpectrum(ModePair(n, m), s, coeffs**2)


@lru_cache(maxsize=256)
def _matrix_cached(N: int, s: float, max_level: int) -> np.ndarray:
    M = np.empty((N + 1, N + 1))
    for n in range(N + 1):
        for l in range(N + 1):
            M[n, l] = schmidt_coefficient(n, N - n, l, s, max_level=max_level)
    M.setflags(write=False)
    return M


def coefficient_matrix(
    N: int, sin_theta: float, *, max_level: int = DEFAULT_MAX_LEVEL
) -> CoefficientMatrix:
    """All coefficients of manifold N; the matrix is orthogonal."""
    if N < 0:
        raise ValueError("N must be >= 0")
    if N > max_level:
        raise LevelTooHigh(f"N = {N} exceeds max level {max_level}")
    s = _check_sin(sin_theta)
    return CoefficientMatrix(N, s, _matrix_cached(int(N), s, max_level))


def _as_lambdas(spectrum: SchmidtSpectrum | Sequence[float] | np.ndarray) -> np.ndarray:
    lam = spectrum.lambdas if isinstance(spectrum, SchmidtSpectrum) else spectrum
    lam = np.asarray(lam, dtype=float)
    total = lam.sum()
    if abs(total - 1.0) > 1e-8:
        raise NotNormalized(f"Schmidt modes sum to {total!r}, not 1")
    return lam


def von_neumann_entropy(spectrum) -> float:
    """S = -sum lambda ln lambda in nats, with 0 ln 0 = 0."""
    lam = _as_lambdas(spectrum)
    lam = lam[lam > 0.0]
    return float(max(0.0, -np.sum(lam * np.log(lam))))


def schmidt_number(spectrum) -> float:
    """K = 1 / sum lambda^2."""
    lam = _as_lambdas(spectrum)
    return float(1.0 / np.sum(lam**2))


def entanglement_measures(spectrum) -> EntanglementMeasures:
    return EntanglementMeasures(von_neumann_entropy(spectrum), schmidt_number(spectrum))
