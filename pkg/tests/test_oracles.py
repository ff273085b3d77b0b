import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oscillent import InsufficientNodes, Unstable, schmidt_coefficient
from oscillent.oracles import (
    bivariate_expansion,
    combinatorial_coefficient,
    gauss_hermite,
    quadrature_coefficient,
    symplectic_frequencies,
)
from oscillent.verify import (
    check_closed_vs_combinatorial,
    check_frequencies,
    check_index_conservation,
    check_jacobi,
    check_quadrature,
    run_verification,
)

angles = st.floats(-1.4, 1.4, allow_nan=False)


class TestCombinatorial:
    @given(angles)
    def test_empty_product(self, theta):
        assert combinatorial_coefficient(0, 0, 0, 0, theta) == 1.0

    def test_first_excited_at_zero_angle(self):
        # the oscillator-1 quantum sits in w; coefficient of w is -1,
        # and the prefactor (-1)^m / sqrt2 flips it positive
        assert bivariate_expansion(0, 1, 0.0) == {(1, 0): -1, (0, 1): 1}
        assert combinatorial_coefficient(0, 1, 0, 1, 0.0) == pytest.approx(1 / math.sqrt(2), rel=1e-15)
        assert combinatorial_coefficient(0, 1, 1, 0, 0.0) == pytest.approx(-1 / math.sqrt(2), rel=1e-15)

    @given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 6), st.integers(0, 6), angles)
    def test_off_manifold_is_zero(self, n, m, k, l, theta):
        if k + l != n + m:
            assert combinatorial_coefficient(n, m, k, l, theta) == 0.0

    @pytest.mark.parametrize("n, m", [(0, 0), (2, 1), (3, 3)])
    def test_expansion_is_homogeneous(self, n, m):
        assert all(i + j == n + m for i, j in bivariate_expansion(n, m, 0.7))

    def test_rejects_right_angle(self):
        with pytest.raises(ValueError):
            combinatorial_coefficient(1, 0, 0, 1, math.pi / 2)


class TestGaussHermite:
    @pytest.mark.parametrize("count", [5, 20, 64])
    def test_against_numpy(self, count):
        x, w = gauss_hermite(count)
        x_ref, w_ref = np.polynomial.hermite.hermgauss(count)
        np.testing.assert_allclose(x, x_ref, atol=1e-12)
        np.testing.assert_allclose(w, w_ref, rtol=1e-10, atol=1e-300)

    @pytest.mark.parametrize("k", [0, 2, 6, 10])
    def test_even_moments(self, k):
        # int x^k exp(-x^2) = Gamma((k+1)/2)
        x, w = gauss_hermite(20)
        assert np.sum(w * x**k) == pytest.approx(math.gamma((k + 1) / 2), rel=1e-12)


class TestQuadrature:
    @given(angles)
    def test_ground_state(self, theta):
        assert quadrature_coefficient(0, 0, 0, 0, theta, 32) == pytest.approx(1.0, abs=1e-12)

    def test_against_exact_expansion(self):
        q = quadrature_coefficient(0, 1, 1, 0, 0.3, 64)
        assert q == pytest.approx(combinatorial_coefficient(0, 1, 1, 0, 0.3), abs=1e-10)

    def test_against_closed_form(self):
        q = quadrature_coefficient(2, 1, 0, 3, 0.5, 64)
        assert q == pytest.approx(schmidt_coefficient(2, 1, 3, math.sin(0.5)), abs=1e-6)

    def test_too_few_nodes(self):
        with pytest.raises(InsufficientNodes):
            quadrature_coefficient(3, 3, 3, 3, 0.2, 30)

    def test_converges_with_nodes(self):
        exact = combinatorial_coefficient(3, 2, 1, 4, 0.9)
        errors = [abs(quadrature_coefficient(3, 2, 1, 4, 0.9, c) - exact) for c in (30, 40, 64)]
        assert errors[-1] < 1e-12
        assert max(errors) < 1e-10


class TestSymplectic:
    def test_decoupled(self):
        assert symplectic_frequencies(1.0, 1.0, 0.0) == pytest.approx((1.0, 1.0), abs=1e-12)

    def test_isotropic_split(self):
        assert symplectic_frequencies(1.0, 1.0, 0.1) == pytest.approx((1.1, 0.9), abs=1e-12)

    def test_unstable(self):
        with pytest.raises(Unstable):
            symplectic_frequencies(0.5, 1.0, 0.9)

    @settings(max_examples=100)
    @given(st.floats(0.2, 3.0), st.floats(0.2, 3.0))
    def test_uncoupled_sorted(self, w1, w2):
        assert symplectic_frequencies(w1, w2, 0.0) == pytest.approx(sorted([w1, w2], reverse=True), rel=1e-12)


class TestVerifySuite:
    def test_quick_run_passes(self):
        results = run_verification(quick=True)
        assert results and all(r.passed for r in results), [r.line() for r in results]

    def test_reports_failure(self):
        res = check_closed_vs_combinatorial(max_level=3, tol=0.0)
        assert res.line().startswith("PASS") == res.passed

    @pytest.mark.parametrize(
        "check", [check_index_conservation, check_jacobi, lambda: check_frequencies(count=50)]
    )
    def test_individual_checks(self, check):
        assert check().passed

    def test_quadrature_pair(self):
        closed, exact = check_quadrature(max_level=2)
        assert closed.passed and exact.passed
