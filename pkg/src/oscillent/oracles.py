"""
Brute-force reference computations. None of these are used on the
production path; they exist so the closed forms can be checked against
something that shares no code with them.

* :func:`combinatorial_coefficient` expands the generating polynomial with
  exact rationals and reads off one monomial.
* :func:`quadrature_coefficient` integrates the Hermite-function overlap on a
  tensor Gauss-Hermite grid.
* :func:`symplectic_frequencies` diagonalises the linearised flow of the full
  4x4 quadratic Hamiltonian.
* :func:`jacobi_derivative_construction` rebuilds P_l^(n-l, m-l) from the
  l-th derivative of u^n (1-u)^m.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .errors import InsufficientNodes, Unstable

__all__ = [
    "combinatorial_coefficient",
    "bivariate_expansion",
    "quadrature_coefficient",
    "gauss_hermite",
    "symplectic_frequencies",
    "jacobi_derivative_construction",
]


# Bivariate polynomials are dicts {(i, j): Fraction} for sum c_ij w^i s^j.

def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v != 0}


def _poly_pow(p: dict, e: int) -> dict:
    out = {(0, 0): Fraction(1)}
    for _ in range(e):
        out = _poly_mul(out, p)
    return out


_ORACLE_DPS = 60


def _to_fraction(x: mpmath.mpf) -> Fraction:
    man, exp = mpmath.mpf(x).man_exp
    return Fraction(man) * Fraction(2) ** exp


@lru_cache(maxsize=512)
def bivariate_expansion(n: int, m: int, theta: float) -> dict:
    """Exact coefficients of (w + t s)^n ((2/cos th) s - w - t s)^m, t = S21/S11.

    The two irrational inputs are rounded to 60 significant digits and turned
    into exact rationals; the expansion itself is exact.
    """
    with mpmath.workdps(_ORACLE_DPS):
        th = mpmath.mpf(theta)
        c, s = mpmath.cos(th / 2), mpmath.sin(th / 2)
        t = _to_fraction((c - s) / (c + s))
        two_sec = _to_fraction(2 / mpmath.cos(th))
    first = {(1, 0): Fraction(1), (0, 1): t}
    second = {(1, 0): Fraction(-1), (0, 1): two_sec - t}
    return _poly_mul(_poly_pow(first, n), _poly_pow(second, m))


def combinatorial_coefficient(n: int, m: int, k: int, l: int, theta: float) -> float:
    """Schmidt coefficient from the monomial s^k w^l of the generating polynomial.

    l is the bare index of oscillator 1 (the w variable), k that of the
    momentum side. Returns exactly 0 when k + l != n + m.
    """
    if abs(theta) >= math.pi / 2:
        raise ValueError("theta must lie in (-pi/2, pi/2)")
    if k + l != n + m:
        return 0.0
    poly = bivariate_expansion(n, m, theta)
    mono = poly.get((l, k), Fraction(0)) * math.factorial(k) * math.factorial(l)
    if mono == 0:
        return 0.0
    with mpmath.workdps(_ORACLE_DPS):
        th = mpmath.mpf(theta)
        c, s = mpmath.cos(th / 2), mpmath.sin(th / 2)
        s11 = (c + s) / mpmath.sqrt(2)
        s21 = (c - s) / mpmath.sqrt(2)
        pref = mpmath.sqrt(
            mpmath.mpf(2) ** (n + m)
            / (mpmath.mpf(2) ** (k + l) * mpmath.factorial(n) * mpmath.factorial(m)
               * mpmath.factorial(k) * mpmath.factorial(l))
        )
        mono_mp = mpmath.mpf(mono.numerator) / mono.denominator
        return float((-1) ** m * pref * s11**n * s21**m * mono_mp)


def gauss_hermite(node_count: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for the weight exp(-x^2).

    Nodes come from the Golub-Welsch tridiagonal eigenproblem. Weights use
    the Christoffel form 1 / sum_k p_k(x)^2 over orthonormal polynomials,
    which keeps full relative accuracy in the far tails where eigenvector
    components underflow.
    """
    k = np.arange(1, node_count)
    off = np.sqrt(k / 2.0)
    jac = np.diag(off, 1) + np.diag(off, -1)
    nodes = np.linalg.eigvalsh(jac)
    p_prev = np.zeros_like(nodes)
    p = np.full_like(nodes, math.pi ** -0.25)
    total = p**2
    for j in range(node_count - 1):
        # x p_j = sqrt((j+1)/2) p_{j+1} + sqrt(j/2) p_{j-1}
        p_prev, p = p, (nodes * p - math.sqrt(j / 2.0) * p_prev) / math.sqrt((j + 1) / 2.0)
        total += p**2
    return nodes, 1.0 / total


def _hermite_table(nmax: int, x: np.ndarray) -> list[np.ndarray]:
    table = [np.ones_like(x), 2.0 * x]
    for j in range(1, nmax):
        table.append(2.0 * x * table[j] - 2.0 * j * table[j - 1])
    return table[: nmax + 1]


def quadrature_coefficient(
    n: int, m: int, k: int, l: int, theta: float, node_count: int = 64
) -> float:
    """Overlap integral of |n, m> with |l>|k> in the approximation regime.

    Variables are u = sqrt(varpi) x1 and v = p2 / sqrt(varpi); the normal-mode
    arguments are a u + b v and b u - a v with a = (cos + sin)(theta/2)/sqrt2,
    b = (cos - sin)(theta/2)/sqrt2.
    """
    if node_count < 2 * (n + m) + 20:
        raise InsufficientNodes(f"need at least {2 * (n + m) + 20} nodes, got {node_count}")
    x, wts = gauss_hermite(node_count)
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    a = (c + s) / math.sqrt(2.0)
    b = (c - s) / math.sqrt(2.0)
    U, V = np.meshgrid(x, x, indexing="ij")
    W = np.outer(wts, wts)
    hn = _hermite_table(max(n, 1), a * U + b * V)[n]
    hm = _hermite_table(max(m, 1), b * U - a * V)[m]
    hl = _hermite_table(max(l, 1), x)[l][:, None]
    hk = _hermite_table(max(k, 1), x)[k][None, :]
    integral = np.sum(W * hn * hm * hl * hk) / math.pi
    norm = math.sqrt(
        2.0 ** (n + m + k + l)
        * math.factorial(n) * math.factorial(m) * math.factorial(k) * math.factorial(l)
    )
    return float(integral / norm)


def symplectic_frequencies(omega1: float, omega2: float, omega_c: float) -> tuple[float, float]:
    """Normal frequencies from the eigenvalues of J * Hessian(H).

    Raises :class:`Unstable` if any eigenvalue has a real part above 1e-10.
    """
    hess = np.zeros((4, 4))
    hess[0, 0] = omega1**2
    hess[1, 1] = omega2**2
    hess[2, 2] = hess[3, 3] = 1.0
    # wc (x1 p2 - x2 p1)
    hess[0, 3] = hess[3, 0] = omega_c
    hess[1, 2] = hess[2, 1] = -omega_c
    J = np.zeros((4, 4))
    J[:2, 2:] = np.eye(2)
    J[2:, :2] = -np.eye(2)
    ev = np.linalg.eigvals(J @ hess)
    if np.max(np.abs(ev.real)) > 1e-10:
        raise Unstable(f"flow matrix has eigenvalues off the imaginary axis: {ev}")
    freqs = np.sort(np.abs(ev.imag))[::-1]
    # eigenvalues come in +-i*sigma pairs
    return float(freqs[0]), float(freqs[2])


def jacobi_derivative_construction(n: int, m: int, l: int, x: float) -> float:
    """P_l^(n-l, m-l)(x) from d^l/du^l [u^n (1-u)^m] at u = (1 - x)/2.

    Uses d^l/du^l [u^n (1-u)^m] = l! u^(n-l) (1-u)^(m-l) P_l^(n-l, m-l)(1 - 2u),
    with the polynomial differentiated exactly. Requires |x| < 1.
    """
    if not -1.0 < x < 1.0:
        raise ValueError("x must lie strictly inside (-1, 1)")
    # coefficients of u^n (1-u)^m in powers of u
    coeffs = [Fraction(0)] * (n + m + 1)
    for j in range(m + 1):
        coeffs[n + j] = Fraction((-1) ** j * math.comb(m, j))
    for _ in range(l):
        coeffs = [coeffs[p] * p for p in range(1, len(coeffs))] or [Fraction(0)]
    u = Fraction(1) / 2 - Fraction(x) / 2
    value = sum(cf * u**p for p, cf in enumerate(coeffs))
    value /= math.factorial(l) * u ** (n - l) * (1 - u) ** (m - l)
    return float(value)
