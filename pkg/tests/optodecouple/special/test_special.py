import math

import numpy as np
import pytest
from scipy import linalg, special

from optodecouple.common import ContractViolation, SeriesConvergenceWarning
from optodecouple.special import (SeriesAccuracy, bessel_i, bessel_i_scaled, bessel_order_cutoff, csum, displacement_element, hyp1f1_negint, identity_suite, laguerre, laguerre_all, log_bessel_i, poisson_cutoff,
                                  poisson_pmf, poisson_tail)

_ORDERS = [0, 1, 2, 5]
_ARGS = [0.1, 1.0, 5.0, 30.0]


class TestBessel:
    @pytest.mark.parametrize("n", _ORDERS)
    @pytest.mark.parametrize("z", _ARGS)
    def test_against_scipy(self, n: int, z: float):
        assert bessel_i(n, z) == pytest.approx(special.iv(n, z), rel=1e-12)

    @pytest.mark.parametrize("n", _ORDERS)
    @pytest.mark.parametrize("z", [50.0, 200.0, 650.0, 1500.0])
    def test_scaled_for_large_arguments(self, n: int, z: float):
        assert bessel_i_scaled(n, z) == pytest.approx(special.ive(n, z), rel=1e-10)

    def test_zero_argument(self):
        assert bessel_i(0, 0.0) == 1.0
        assert bessel_i(3, 0.0) == 0.0
        assert log_bessel_i(3, 0.0) == -math.inf

    def test_overflow_points_to_scaled_form(self):
        with pytest.raises(OverflowError):
            bessel_i(0, 1000.0)

    @pytest.mark.parametrize(["n", "z"], [(-1, 1.0), (1.5, 1.0), (0, -0.5), (0, math.inf)])
    def test_contract(self, n: float, z: float):
        with pytest.raises(ContractViolation):
            bessel_i(n, z)

    @pytest.mark.parametrize("z", [0.0, 0.5, 4.0, 40.0])
    @pytest.mark.parametrize("tol", [1e-8, 1e-14])
    def test_order_cutoff(self, z: float, tol: float):
        d = bessel_order_cutoff(z, tol)
        assert special.ive(d, z) < tol
        assert d == 0 or special.ive(d - 1, z) >= tol * (1 - 1e-9)

    @pytest.mark.parametrize("z", [3.0, 30.0, 300.0])
    def test_loose_tolerance_is_relative_to_the_sum(self, z: float):
        assert bessel_i_scaled(2, z, SeriesAccuracy(abs_tol=1e-6)) == pytest.approx(special.ive(2, z), rel=2e-6)

    def test_series_budget_warns(self):
        with pytest.warns(SeriesConvergenceWarning):
            log_bessel_i(0, 100.0, SeriesAccuracy(max_terms=5))


class TestLaguerre:
    @pytest.mark.parametrize("n", [0, 1, 2, 7, 12])
    @pytest.mark.parametrize("q", [0.0, 1.0, 2.5])
    @pytest.mark.parametrize("z", [0.3, 2.0, 5.0])
    def test_against_scipy(self, n: int, q: float, z: float):
        assert laguerre(n, q, z) == pytest.approx(special.eval_genlaguerre(n, q, z), rel=1e-10, abs=1e-9)

    def test_all_degrees_agree(self):
        values = laguerre_all(9, 1.5, 0.8)
        np.testing.assert_allclose(values, [laguerre(k, 1.5, 0.8) for k in range(10)], rtol=1e-14)

    @pytest.mark.parametrize("n", [0, 3, 6])
    @pytest.mark.parametrize("b", [1.0, 3.0, 0.5, 2.5])
    @pytest.mark.parametrize("z", [0.4, 2.0])
    def test_hypergeometric(self, n: int, b: float, z: float):
        assert hyp1f1_negint(n, b, z) == pytest.approx(special.hyp1f1(-n, b, z), rel=1e-9, abs=1e-10)

    @pytest.mark.parametrize("b", [0.0, -2.0])
    def test_hypergeometric_pole(self, b: float):
        with pytest.raises(ContractViolation):
            hyp1f1_negint(2, b, 1.0)

    def test_negative_degree(self):
        with pytest.raises(ContractViolation):
            laguerre(-1, 0.0, 1.0)


class TestDisplacement:
    @staticmethod
    def _truncated_displacement(alpha: complex, dim: int) -> np.ndarray:
        a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)
        return linalg.expm(alpha * a.conj().T - np.conj(alpha) * a)

    @pytest.mark.parametrize("alpha", [0.5, 0.7 + 0.3j, -0.4j])
    def test_against_matrix_exponential(self, alpha: complex):
        d = self._truncated_displacement(alpha, 60)
        for m in range(8):
            for n in range(8):
                assert displacement_element(m, n, alpha) == pytest.approx(d[m, n], abs=1e-12)

    def test_columns_are_normalised(self):
        alpha = 1.1 - 0.2j
        for n in (0, 3):
            column = [abs(displacement_element(m, n, alpha)) ** 2 for m in range(80)]
            assert math.fsum(column) == pytest.approx(1.0, abs=1e-12)


class TestPoisson:
    @pytest.mark.parametrize(["mean", "n"], [(0.5, 0), (3.0, 2), (3.0, 10), (10.0, 30), (0.01, 6)])
    def test_tail_against_scipy(self, mean: float, n: int):
        assert poisson_tail(mean, n) == pytest.approx(special.pdtrc(n, mean), rel=1e-9)

    def test_degenerate_tails(self):
        assert poisson_tail(0.0, 3) == 0.0
        assert poisson_tail(2.0, -1) == 1.0

    @pytest.mark.parametrize("mean", [0.2, 4.0, 25.0])
    def test_pmf_normalised(self, mean: float):
        assert math.fsum(poisson_pmf(n, mean) for n in range(200)) == pytest.approx(1.0, abs=1e-14)

    @pytest.mark.parametrize("mean", [0.5, 4.0])
    @pytest.mark.parametrize("tol", [1e-6, 1e-12])
    def test_cutoff(self, mean: float, tol: float):
        n = poisson_cutoff(mean, tol)
        assert poisson_tail(mean, n) < tol
        assert poisson_tail(mean, n - 1) >= tol


class TestIdentities:
    def test_suite_passes(self):
        report = identity_suite()
        assert report.passed, [(c.name, c.params, c.deviation) for c in report.failures]
        assert report.names == ["i_alpha", "i1_alpha", "i1_alpha_fd", "j_alpha", "j_tilde_alpha", "l_tilde_alpha", "l_tilde_alpha_bessel", "laguerre_generating", "jacobi_anger"]

    def test_summary(self):
        summary = identity_suite().summary()
        assert summary["passed"] is True
        assert summary["identities"]["j_alpha"]["checks"] == 15
        assert summary["identities"]["jacobi_anger"]["max_deviation"] < 1e-10

    def test_compensated_sum(self):
        assert csum([1e16, 1.0, -1e16, 1j]) == 1.0 + 1j
