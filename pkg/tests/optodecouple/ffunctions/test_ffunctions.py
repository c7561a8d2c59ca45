import csv
import dataclasses
import math
import warnings
from pathlib import Path

import numpy as np
import pytest
from scipy import integrate

from optodecouple.common import CoarseGridWarning, ContractViolation
from optodecouple.ffunctions import (DriveAmplitudes, QuadratureRule, closed_form_f_set, compute_f_set, constant_coupling_weight, cumulative_integral, definite_integral, f_closed_form_constant, f_set_until, fset_header,
                                     phase_slope, write_fset_csv)
from optodecouple.model import InitialState, TimeGrid
from tests.helpers import TWO_PI, coherent_state, modulated_system, period_grid, single_mode_system, two_by_two_system


class TestQuadrature:
    def test_simpson_is_exact_for_quadratics_on_uneven_grids(self):
        t = np.array([0.0, 0.3, 0.5, 1.0, 1.2, 2.0])
        np.testing.assert_allclose(cumulative_integral(t ** 2, t), t ** 3 / 3.0, rtol=0, atol=1e-12)

    @pytest.mark.parametrize("rule", list(QuadratureRule))
    def test_two_points_fall_back_to_trapezoid(self, rule: QuadratureRule):
        np.testing.assert_allclose(cumulative_integral(np.array([1.0, 3.0]), np.array([0.0, 2.0]), rule), [0.0, 4.0])

    def test_integrates_along_the_last_axis(self):
        t = np.linspace(0.0, 1.0, 5)
        y = np.stack([np.ones_like(t), 2.0 * t])
        np.testing.assert_allclose(cumulative_integral(y, t, QuadratureRule.Trapezoid)[:, -1], [1.0, 1.0])

    def test_definite_complex_integral(self):
        t = np.linspace(0.0, math.pi, 401)
        assert definite_integral(np.exp(1j * t), t) == pytest.approx(2j, abs=1e-8)


class TestClosedForm:
    def test_quadrature_matches_closed_form_for_every_family(self):
        spec = two_by_two_system(0.05)
        grid = period_grid(1.3, 1.0, 200)
        assert compute_f_set(spec, grid).max_deviation(closed_form_f_set(spec, grid)) < 1e-8

    def test_trapezoid_converges_more_slowly(self):
        spec = two_by_two_system(0.05)
        grid = period_grid(1.3, 1.0, 200)
        exact = closed_form_f_set(spec, grid)
        simpson = compute_f_set(spec, grid).max_deviation(exact)
        trapezoid = compute_f_set(spec, grid, QuadratureRule.Trapezoid).max_deviation(exact)
        assert simpson < trapezoid < 1e-3

    def test_snapshot_matches_single_pair_formula(self):
        spec = single_mode_system(0.1, g_minus=0.03, lambda_plus=0.02, lambda_minus=0.05)
        grid = TimeGrid.uniform(5.0, 11)
        snapshot = closed_form_f_set(spec, grid).snapshot(7)
        expected = f_closed_form_constant(0.1, 0.03, 0.02, 0.05, 1.0, grid.t[7])
        assert dataclasses.astuple(snapshot) == pytest.approx(dataclasses.astuple(expected), abs=1e-15)

    @pytest.mark.parametrize("g", [0.05, 0.3])
    @pytest.mark.parametrize("omega", [1.0, 2.5])
    def test_phase_of_lone_coupling(self, g: float, omega: float):
        spec = single_mode_system(g, omega_m=omega)
        grid = TimeGrid.uniform(7.0, 50)
        u = omega * grid.t
        np.testing.assert_allclose(closed_form_f_set(spec, grid).phi(0), -(g / omega) ** 2 * (u - np.sin(u)), atol=1e-14)

    def test_lone_coupling_weight(self):
        spec = single_mode_system(0.2)
        grid = TimeGrid.uniform(9.0, 30)
        fset = closed_form_f_set(spec, grid)
        np.testing.assert_allclose(np.abs(fset.F_k(0, 0)) ** 2, constant_coupling_weight(0.2, 1.0, grid.t), atol=1e-15)
        np.testing.assert_allclose(fset.B[0, 0], np.conj(fset.F_k(0, 0)))

    def test_modulated_coupling_refused(self):
        with pytest.raises(ContractViolation):
            closed_form_f_set(modulated_system(), TimeGrid.uniform(1.0, 3))

    def test_resonator_frequency_must_be_positive(self):
        with pytest.raises(ContractViolation):
            f_closed_form_constant(0.1, 0.0, 0.0, 0.0, 0.0, 1.0)


class TestQuadratureFSet:
    def test_modulated_against_adaptive_quadrature(self):
        g, kappa, omega_d = 0.1, 0.7, 2.3
        spec = modulated_system(g, kappa, omega_d)
        grid = TimeGrid.per_period(4.0, omega_d, 400)
        fset = compute_f_set(spec, grid)

        def coupling(s: float) -> float:
            return g * (1.0 + kappa * math.sin(omega_d * s))

        fk_plus, _ = integrate.quad(lambda s: coupling(s) * math.cos(s), 0.0, 4.0, epsabs=1e-13)
        fk_minus, _ = integrate.quad(lambda s: -coupling(s) * math.sin(s), 0.0, 4.0, epsabs=1e-13)
        assert fset.Fk_plus[0, 0, -1] == pytest.approx(fk_plus, abs=1e-9)
        assert fset.Fk_minus[0, 0, -1] == pytest.approx(fk_minus, abs=1e-9)

    def test_delta_is_antisymmetric(self):
        fset = compute_f_set(two_by_two_system(), period_grid(1.3, 1.0, 100))
        forward = fset.delta([2, 0], [0, 1])
        assert forward.shape == (2, len(fset.t))
        np.testing.assert_allclose(forward, -fset.delta([0, 1], [2, 0]))
        np.testing.assert_array_equal(fset.delta([1, 1], [1, 1]), 0.0)
        np.testing.assert_allclose(fset.F_sym(0, 1, 0), fset.F_sym(1, 0, 0))

    def test_coarse_grid_warns(self):
        with pytest.warns(CoarseGridWarning):
            compute_f_set(single_mode_system(), TimeGrid.uniform(TWO_PI, 10))

    def test_resolved_grid_is_silent(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            compute_f_set(modulated_system(omega_d=3.0), period_grid(3.0, 2.0, 50))

    def test_until(self):
        constant = f_set_until(single_mode_system(), 12.5)
        assert len(constant.t) == 2 and constant.t[-1] == 12.5
        modulated = f_set_until(modulated_system(omega_d=2.0), 12.5, samples_per_period=40)
        assert modulated.t[-1] == pytest.approx(12.5)
        assert modulated.grid.max_step <= math.pi / 40


class TestSectors:
    def test_single_mode_slope_is_twice_the_phase(self):
        fset = closed_form_f_set(single_mode_system(0.2), TimeGrid.uniform(6.0, 20))
        np.testing.assert_allclose(phase_slope(fset, 0)[0], -2.0 * fset.phi(0), atol=1e-14)

    def test_shift_variance_is_poissonian(self):
        spec = single_mode_system(0.2, lambda_plus=0.1, lambda_minus=-0.05)
        fset = closed_form_f_set(spec, TimeGrid.uniform(6.0, 20))
        amp = DriveAmplitudes.of(coherent_state(1.5), fset)
        variance = amp.shift_second_moment(0, 0) - np.abs(amp.mean_shift(0)) ** 2
        np.testing.assert_allclose(variance, 2.25 * np.abs(fset.B[0, 0]) ** 2, atol=1e-14)

    @pytest.mark.parametrize("state", [InitialState.build({0: 1.0}, [0.0, 0.0]), InitialState.build({4: 1.0}, [0.0])])
    def test_state_must_fit_the_system(self, state: InitialState):
        fset = closed_form_f_set(single_mode_system(), TimeGrid.uniform(1.0, 3))
        with pytest.raises(ContractViolation):
            DriveAmplitudes.of(state, fset)


class TestWriter:
    def test_csv_layout(self, tmp_path: Path):
        fset = closed_form_f_set(two_by_two_system(), TimeGrid.uniform(2.0, 5))
        header = fset_header(fset)
        assert len(header) == 27
        assert header[:3] == ["t", "F_m[0]", "F_m[1]"]
        path = write_fset_csv(tmp_path / "out" / "fset.csv", fset)
        with open(path, newline="") as handle:
            rows = list(csv.reader(handle))
        assert rows[0] == header
        assert len(rows) == 6
        column = header.index("Fnm[1][0][1]")
        assert float(rows[3][column]) == fset.Fnm[1, 0, 1, 2]
        assert float(rows[3][header.index("Fk_minus[0][1]")]) == fset.Fk_minus[0, 1, 2]
