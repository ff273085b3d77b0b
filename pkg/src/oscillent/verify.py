"""Oracle cross-checks run by ``oscillent verify`` and the test-suite."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import normal_frequencies, validate_params
from .oracles import (
    bivariate_expansion,
    combinatorial_coefficient,
    jacobi_derivative_construction,
    quadrature_coefficient,
    symplectic_frequencies,
)
from .schmidt import schmidt_coefficient
from .special import jacobi

__all__ = [
    "CheckResult",
    "ORACLE_THETAS",
    "check_closed_vs_combinatorial",
    "check_frequencies",
    "check_index_conservation",
    "check_jacobi",
    "check_quadrature",
    "random_stable_params",
    "run_verification",
]

ORACLE_THETAS = (-1.2, -0.6, 0.0, 0.4, 1.0, 1.4)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    cases: int

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag}  {self.name}: worst {self.worst:.3e} (tol {self.tolerance:.0e}, {self.cases} cases)"


def _rel(a: float, b: float) -> float:
    """Relative deviation of a from b; absolute when b is exactly zero."""
    return abs(a - b) / abs(b) if b != 0.0 else abs(a)


def check_closed_vs_combinatorial(max_level: int = 12, thetas=ORACLE_THETAS, tol: float = 1e-12) -> CheckResult:
    worst, cases = 0.0, 0
    for th in thetas:
        s = math.sin(th)
        for N in range(max_level + 1):
            for n in range(N + 1):
                for l in range(N + 1):
                    a = schmidt_coefficient(n, N - n, l, s)
                    b = combinatorial_coefficient(n, N - n, N - l, l, th)
                    worst = max(worst, _rel(a, b))
                    cases += 1
    return CheckResult("closed form vs exact expansion", worst <= tol, worst, tol, cases)


def check_quadrature(
    max_level: int = 6, thetas=ORACLE_THETAS, nodes: int = 64, tol_closed: float = 1e-6, tol_comb: float = 1e-8
) -> list[CheckResult]:
    w_closed = w_comb = 0.0
    cases = 0
    for th in thetas:
        s = math.sin(th)
        for N in range(max_level + 1):
            for n in range(N + 1):
                for l in range(N + 1):
                    q = quadrature_coefficient(n, N - n, N - l, l, th, nodes)
                    w_closed = max(w_closed, abs(q - schmidt_coefficient(n, N - n, l, s)))
                    w_comb = max(w_comb, abs(q - combinatorial_coefficient(n, N - n, N - l, l, th)))
                    cases += 1
    return [
        CheckResult("quadrature vs closed form", w_closed <= tol_closed, w_closed, tol_closed, cases),
        CheckResult("quadrature vs exact expansion", w_comb <= tol_comb, w_comb, tol_comb, cases),
    ]


def check_index_conservation(max_level: int = 4, theta: float = 0.4, tol: float = 1e-12) -> CheckResult:
    """Off-manifold overlaps vanish, and the generating polynomial is homogeneous."""
    worst, cases = 0.0, 0
    for N in range(max_level + 1):
        for n in range(N + 1):
            poly = bivariate_expansion(n, N - n, theta)
            if any(i + j != N for i, j in poly):
                worst = math.inf
            for k in range(max_level + 2):
                for l in range(max_level + 2):
                    if k + l == N:
                        continue
                    worst = max(worst, abs(quadrature_coefficient(n, N - n, k, l, theta, 64)))
                    cases += 1
    return CheckResult("index conservation k + l = n + m", worst <= tol, worst, tol, cases)


def random_stable_params(count: int, seed: int = 20240611) -> list[tuple[float, float, float]]:
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        w1, w2 = rng.uniform(0.2, 3.0, size=2)
        wc = rng.uniform(0.0, 0.95) * min(w1, w2)
        try:
            validate_params(w1, w2, wc)
        except ValueError:
            continue
        out.append((float(w1), float(w2), float(wc)))
    return out


def check_frequencies(count: int = 1000, tol: float = 1e-10) -> CheckResult:
    worst = 0.0
    for w1, w2, wc in random_stable_params(count):
        closed = normal_frequencies(validate_params(w1, w2, wc))
        oracle = symplectic_frequencies(w1, w2, wc)
        for a, b in zip(closed, oracle):
            worst = max(worst, abs(a - b) / abs(b))
    return CheckResult("normal frequencies vs symplectic eigenvalues", worst <= tol, worst, tol, count)


def check_jacobi(max_level: int = 10, tol: float = 1e-12) -> CheckResult:
    worst, cases = 0.0, 0
    for N in range(max_level + 1):
        for n in range(N + 1):
            m = N - n
            for l in range(N + 1):
                for x in (-0.9, -0.5, 0.0, 0.5, 0.9):
                    a = jacobi(l, n - l, m - l, x)
                    b = jacobi_derivative_construction(n, m, l, x)
                    worst = max(worst, abs(a - b) / max(1.0, abs(b)))
                    cases += 1
    return CheckResult("Jacobi sum vs derivative construction", worst <= tol, worst, tol, cases)


def run_verification(quick: bool = False) -> list[CheckResult]:
    """Run every oracle equivalence; ``quick`` shrinks the grids for smoke runs."""
    if quick:
        return [
            check_closed_vs_combinatorial(max_level=6),
            *check_quadrature(max_level=3),
            check_index_conservation(max_level=2),
            check_frequencies(count=100),
            check_jacobi(max_level=6),
        ]
    return [
        check_closed_vs_combinatorial(),
        *check_quadrature(),
        check_index_conservation(),
        check_frequencies(),
        check_jacobi(),
    ]
