"""
Physical model of two oscillators coupled through an angular-momentum term

    H = (p1^2 + p2^2)/2 + (w1^2 x1^2 + w2^2 x2^2)/2 + wc (x1 p2 - x2 p1)

Parameters are validated once, up front, so that everything downstream can
assume real normal frequencies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CouplingTooLarge, DegenerateCoupling, NonPositiveFrequency, Unstable

__all__ = [
    "OscillatorParams",
    "NormalModeData",
    "TransformMatrix",
    "validate_params",
    "mixing_angle",
    "normal_frequency_squares",
    "normal_frequencies",
    "normal_modes",
    "eigen_energy",
    "build_transform_matrix",
    "symplectic_form",
]


@dataclass(frozen=True)
class OscillatorParams:
    omega1: float
    omega2: float
    omega_c: float

    @property
    def r(self) -> float:
        """Coupling ratio wc / w2."""
        return self.omega_c / self.omega2

    @property
    def R(self) -> float:
        """Anisotropy w1^2 / w2^2."""
        return self.omega1**2 / self.omega2**2


@dataclass(frozen=True)
class NormalModeData:
    theta: float
    sigma1: float
    sigma2: float
    varpi: float
    eta: float
    m_plus: float
    m_minus: float
    approximation: bool = True

    @property
    def epsilon(self) -> float:
        """Beat frequency sigma1 - sigma2; sets the unit of dimensionless time."""
        return self.sigma1 - self.sigma2

    @property
    def sin_theta(self) -> float:
        return math.sin(self.theta)


@dataclass(frozen=True)
class TransformMatrix:
    """Linear canonical map (x1, x2, p1, p2) -> (Q1, Q2, P1, P2)."""

    entries: np.ndarray

    def __getitem__(self, idx):
        return self.entries[idx]

    def element(self, i: int, j: int) -> float:
        """One-based accessor matching the S_ij labels (S11, S14, ...)."""
        return float(self.entries[i - 1, j - 1])

    def is_symplectic(self, tol: float = 1e-12) -> bool:
        J = symplectic_form()
        S = self.entries
        return bool(np.max(np.abs(S @ J @ S.T - J)) <= tol)


def symplectic_form() -> np.ndarray:
    """Standard J for the ordering (x1, x2, p1, p2)."""
    J = np.zeros((4, 4))
    J[:2, 2:] = np.eye(2)
    J[2:, :2] = -np.eye(2)
    return J


def normal_frequency_squares(omega1: float, omega2: float, omega_c: float) -> tuple[float, float]:
    """Both branches sigma_{1,2}^2 without a stability check.

    The discriminant carries the (1 - r^2) factor on the anisotropy term that
    comes out of the equal-mass rotation of the rescaled Hamiltonian; it agrees
    with the symplectic eigenvalues of the full 4x4 problem.
    """
    r = omega_c / omega2
    mean = 0.5 * (omega1**2 + omega2**2 + 2.0 * omega_c**2)
    disc = r**2 * (3.0 * omega2**2 + omega1**2) ** 2 + (1.0 - r**2) * (omega1**2 - omega2**2) ** 2
    half = 0.5 * math.sqrt(disc)
    return mean + half, mean - half


def validate_params(omega1: float, omega2: float, omega_c: float) -> OscillatorParams:
    """Check raw frequencies and return an :class:`OscillatorParams`.

    Raises
    ------
    NonPositiveFrequency
        if omega1 or omega2 is not strictly positive, or omega_c < 0.
    CouplingTooLarge
        if r = omega_c / omega2 >= 1.
    Unstable
        if the lower normal frequency squared is not positive.
    """
    omega1, omega2, omega_c = float(omega1), float(omega2), float(omega_c)
    for name, value in (("omega1", omega1), ("omega2", omega2)):
        if not (value > 0.0) or not math.isfinite(value):
            raise NonPositiveFrequency(f"{name} must be a finite positive number, got {value!r}")
    if not (omega_c >= 0.0) or not math.isfinite(omega_c):
        raise NonPositiveFrequency(f"omega_c must be finite and >= 0, got {omega_c!r}")
    r = omega_c / omega2
    if r >= 1.0:
        raise CouplingTooLarge(f"r = omega_c/omega2 = {r:.6g} must be < 1")
    _, s2sq = normal_frequency_squares(omega1, omega2, omega_c)
    if s2sq <= 0.0:
        raise Unstable(f"sigma2^2 = {s2sq:.6g} <= 0; no bound normal mode")
    return OscillatorParams(omega1, omega2, omega_c)


def mixing_angle(R: float, r: float, *, limit: bool = False, exact: bool = False) -> float:
    """Rotation angle that removes the residual q1*q2 coupling.

    tan(theta) = (1 - R) sqrt(1 - r^2) / ((1 + 3R) r), evaluated with atan2 so
    that sign(theta) = sign(1 - R) and theta lies in (-pi/2, pi/2).

    ``exact=True`` uses (3 + R) in the denominator instead, which is the angle
    that actually diagonalises the rescaled Hamiltonian for any anisotropy;
    the two agree at R = 1 and differ by O(1 - R) nearby.

    r = 0 with R != 1 only has the limit +-pi/2; pass ``limit=True`` to get it.
    """
    if r >= 1.0:
        raise CouplingTooLarge(f"r = {r:.6g} must be < 1")
    if r < 0.0 or R <= 0.0:
        raise NonPositiveFrequency(f"need r >= 0 and R > 0, got r={r!r}, R={R!r}")
    num = (1.0 - R) * math.sqrt(1.0 - r * r)
    if r == 0.0:
        if num == 0.0:
            return 0.0
        if not limit:
            raise DegenerateCoupling("r = 0 with R != 1 has no regular mixing angle; use limit=True")
        return math.copysign(math.pi / 2, num)
    den = ((3.0 + R) if exact else (1.0 + 3.0 * R)) * r
    return math.atan2(num, den)


def normal_frequencies(params: OscillatorParams) -> tuple[float, float]:
    s1sq, s2sq = normal_frequency_squares(params.omega1, params.omega2, params.omega_c)
    if s2sq <= 0.0:
        raise Unstable(f"sigma2^2 = {s2sq:.6g} <= 0")
    return math.sqrt(s1sq), math.sqrt(s2sq)


def normal_modes(
    params: OscillatorParams,
    *,
    approximation: bool = True,
    limit: bool = False,
    exact_angle: bool = False,
) -> NormalModeData:
    """Bundle mixing angle, normal frequencies and effective masses.

    In the approximation regime (the default) the effective masses are set
    to one and the squeeze phase eta to zero, which is what every closed
    form for the Schmidt coefficients assumes.
    """
    theta = mixing_angle(params.R, params.r, limit=limit, exact=exact_angle)
    sigma1, sigma2 = normal_frequencies(params)
    varpi = math.sqrt(sigma1 * sigma2)
    if approximation:
        eta, m_plus, m_minus = 0.0, 1.0, 1.0
    else:
        eta = math.log(varpi / sigma1)
        m_plus = 1.0 / (1.0 - params.r)
        m_minus = 1.0 / (1.0 + params.r)
    return NormalModeData(theta, sigma1, sigma2, varpi, eta, m_plus, m_minus, approximation)


def eigen_energy(n: int, m: int, modes: NormalModeData | tuple[float, float]) -> float:
    """E = sigma1 (n + 1/2) + sigma2 (m + 1/2)."""
    if isinstance(modes, NormalModeData):
        sigma1, sigma2 = modes.sigma1, modes.sigma2
    else:
        sigma1, sigma2 = modes
    return sigma1 * (n + 0.5) + sigma2 * (m + 0.5)


def build_transform_matrix(
    params: OscillatorParams, theta: float, *, approximation: bool = True
) -> TransformMatrix:
    """Assemble S = S3 S2 S1.

    S1 mixes (x1, p2) and (x2, p1) into symmetric/antisymmetric pairs, S2
    equalises the effective masses and S3 rotates by theta/2. The x2 column of
    S1 carries a minus sign so the (x2, p1) block is conjugate to the (x1, p2)
    block; without it S1 does not preserve J.
    """
    w2 = params.omega2
    h = 1.0 / math.sqrt(2.0)
    S1 = np.array(
        [
            [h, 0.0, 0.0, h / w2],
            [h, 0.0, 0.0, -h / w2],
            [0.0, -w2 * h, h, 0.0],
            [0.0, w2 * h, h, 0.0],
        ]
    )
    if approximation:
        g = 1.0
    else:
        m_plus = 1.0 / (1.0 - params.r)
        m_minus = 1.0 / (1.0 + params.r)
        g = (m_minus / m_plus) ** 0.25
    S2 = np.diag([g, 1.0 / g, 1.0 / g, g])
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    rot = np.array([[c, s], [-s, c]])
    S3 = np.zeros((4, 4))
    S3[:2, :2] = rot
    S3[2:, 2:] = rot
    return TransformMatrix(S3 @ S2 @ S1)
