import math

import numpy as np
import pytest

from optodecouple.common import ContractViolation, TruncationWarning
from optodecouple.entropy import EntropyForm, lambda_alpha, lambda_alpha_direct, linear_entropy, linear_entropy_series, linear_entropy_single_mode, reduced_state, sector_weights
from optodecouple.ffunctions import closed_form_f_set
from optodecouple.model import SystemSpec, TimeGrid
from optodecouple.observables import mech_amplitude_series
from tests.helpers import coherent_state, single_mode_system, two_by_two_system

_ALPHAS = [0.01, 0.1, 0.5, 1.0, 3.0]
_MU2 = [0.1, 0.5, 1.0, 2.0, 4.0]


def _two_resonators() -> SystemSpec:
    return SystemSpec.build([3.0], [1.0, 1.3], g_plus=[[0.3, 0.2]], g_minus=[[0.0, 0.1]])


class TestSkellamSum:
    @pytest.mark.parametrize("alpha", _ALPHAS)
    @pytest.mark.parametrize("mu_abs2", _MU2)
    def test_bessel_form_matches_double_sum(self, alpha: float, mu_abs2: float):
        assert lambda_alpha(alpha, mu_abs2) == pytest.approx(lambda_alpha_direct(alpha, mu_abs2), abs=1e-10)

    def test_limits(self):
        assert lambda_alpha(0.0, 2.0) == 1.0
        # α → ∞ leaves only the n = m diagonal, Σ Poisson(n)² = e^{−2μ²} I_0(2μ²)
        assert lambda_alpha(60.0, 1.0) == pytest.approx(lambda_alpha_direct(60.0, 1.0), abs=1e-12)
        assert lambda_alpha(0.5, 0.0) == 1.0


class TestLinearEntropy:
    @pytest.mark.parametrize("r", [(0.0,), (0.3,), (1.0,)])
    def test_no_coupling_keeps_initial_mixedness(self, r):
        fset = closed_form_f_set(single_mode_system(0.0), TimeGrid.uniform(5.0, 6))
        state = coherent_state(1.5, r)
        np.testing.assert_allclose(linear_entropy_series(state, fset), state.initial_linear_entropy, atol=1e-12)

    @pytest.mark.parametrize("form", list(EntropyForm))
    def test_bounds(self, form: EntropyForm):
        fset = closed_form_f_set(two_by_two_system(0.3), TimeGrid.uniform(8.0, 17))
        values = linear_entropy_series(coherent_state(coherent={0: 1.0, 1: 0.7j}, r=(0.2, 0.4)), fset, form=form)
        assert np.all(values >= -1e-14) and np.all(values < 1.0)
        assert values[0] == pytest.approx(1.0 - 1.0 / (math.cosh(0.4) * math.cosh(0.8)), abs=1e-11)

    def test_split_and_direct_agree(self):
        fset = closed_form_f_set(two_by_two_system(0.3), TimeGrid.uniform(8.0, 17))
        state = coherent_state(coherent={0: 1.0, 1: 0.7j}, r=(0.2, 0.4))
        np.testing.assert_allclose(linear_entropy_series(state, fset, form=EntropyForm.Split), linear_entropy_series(state, fset, form=EntropyForm.Direct), atol=1e-11)

    @pytest.mark.parametrize("mu", [0.5, 1.4, 3.0])
    def test_general_and_single_mode_agree(self, mu: float):
        grid = TimeGrid.uniform(9.0, 13)
        fset = closed_form_f_set(_two_resonators(), grid)
        state = coherent_state(mu, (0.3, 0.2))
        series = linear_entropy_series(state, fset)
        for i in range(len(grid)):
            assert series[i] == pytest.approx(linear_entropy_single_mode(state, fset, i), abs=1e-8)

    def test_point_matches_series(self):
        fset = closed_form_f_set(_two_resonators(), TimeGrid.uniform(4.0, 5))
        state = coherent_state(1.0, (0.3, 0.2))
        assert linear_entropy(state, fset, 3) == linear_entropy_series(state, fset)[3]

    def test_single_mode_needs_one_coherent_mode(self):
        fset = closed_form_f_set(two_by_two_system(), TimeGrid.uniform(1.0, 3))
        with pytest.raises(ContractViolation):
            linear_entropy_single_mode(coherent_state(coherent={0: 1.0, 1: 1.0}, r=(0.0, 0.0)), fset, 1)


class TestTruncation:
    def test_short_truncation_warns(self):
        fset = closed_form_f_set(single_mode_system(), TimeGrid.uniform(1.0, 3))
        with pytest.warns(TruncationWarning):
            linear_entropy(coherent_state(2.0), fset, 1, truncation=2)

    def test_negative_truncation(self):
        with pytest.raises(ContractViolation):
            sector_weights(coherent_state(1.0), 1, -1)

    def test_sectors_cover_the_simplex(self):
        with pytest.warns(TruncationWarning):
            sectors, weights, truncation, mass = sector_weights(coherent_state(coherent={0: 0.5, 2: 0.5}, r=(0.0,)), 3, 4)
        assert truncation == 4
        assert len(sectors) == 15
        assert all(n[1] == 0 and n[0] + n[2] <= 4 for n in sectors)
        assert math.fsum(weights) + mass == pytest.approx(1.0, abs=1e-14)

    def test_automatic_truncation_is_tight(self):
        _, weights, truncation, mass = sector_weights(coherent_state(1.2), 1)
        assert mass < 1e-12
        assert math.fsum(weights) == pytest.approx(1.0, abs=1e-12)


class TestReducedState:
    def test_ensemble_mean_is_the_resonator_amplitude(self):
        spec = single_mode_system(0.2, lambda_plus=0.05)
        fset = closed_form_f_set(spec, TimeGrid.uniform(5.0, 11))
        state = coherent_state(1.3, (0.4,))
        ensemble = reduced_state(state, fset, 6)
        mean = np.sum(ensemble.weights[:, None] * ensemble.displacements, axis=0)
        np.testing.assert_allclose(mean, [mech_amplitude_series(state, fset, 0)[6]], atol=1e-11)
        assert ensemble.occupations.shape == (len(ensemble), 1)
        assert ensemble.truncated_mass < 1e-12
