"""Hermite and Jacobi polynomials plus factorial helpers.

Jacobi polynomials are needed here with negative integer parameters
(alpha = n - l, beta = m - l). In that regime the hypergeometric series and
the usual three-term recurrence stop agreeing with the Rodrigues/derivative
construction, so :func:`jacobi` evaluates the finite binomial sum

    P_l^(a,b)(x) = sum_v C(l+a, v) C(l+b, l-v) ((x-1)/2)^(l-v) ((x+1)/2)^v

with the product-form binomial C, which stays correct for every integer top
argument.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "hermite",
    "jacobi",
    "jacobi_recurrence",
    "generalized_binomial",
    "log_factorial",
]


def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n(x) by upward recurrence.

    Accepts scalars or numpy arrays.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h if h.ndim else float(h)


def generalized_binomial(a: int, k: int) -> int:
    """a (a-1) ... (a-k+1) / k! for any integer a and k >= 0.

    The result is always an integer, so it is returned exactly.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    num = 1
    for j in range(k):
        num *= a - j
    return num // math.factorial(k)


def log_factorial(n: int) -> float:
    if n < 0:
        raise ValueError("n must be >= 0")
    return math.lgamma(n + 1.0)


def jacobi(l: int, alpha: int, beta: int, x: float) -> float:
    """Jacobi polynomial P_l^(alpha, beta)(x) for integer parameters >= -l."""
    if l < 0:
        raise ValueError("degree must be >= 0")
    if alpha < -l or beta < -l:
        raise ValueError(f"need alpha, beta >= -l; got alpha={alpha}, beta={beta}, l={l}")
    lo = (x - 1.0) / 2.0
    hi = (x + 1.0) / 2.0
    terms = []
    for v in range(l + 1):
        c = generalized_binomial(l + alpha, v) * generalized_binomial(l + beta, l - v)
        if c:
            terms.append(c * lo ** (l - v) * hi**v)
    return math.fsum(terms)


def jacobi_recurrence(l: int, alpha: float, beta: float, x: float) -> float:
    """Standard three-term recurrence; only valid for alpha, beta > -1."""
    if alpha <= -1 or beta <= -1:
        raise ValueError("recurrence requires alpha, beta > -1")
    p_prev = 1.0
    if l == 0:
        return p_prev
    p = (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0
    for k in range(2, l + 1):
        s = 2 * k + alpha + beta
        a1 = 2 * k * (k + alpha + beta) * (s - 2)
        a2 = (s - 1) * (alpha**2 - beta**2)
        a3 = (s - 2) * (s - 1) * s
        a4 = 2 * (k + alpha - 1) * (k + beta - 1) * s
        p_prev, p = p, ((a2 + a3 * x) * p - a4 * p_prev) / a1
    return p
