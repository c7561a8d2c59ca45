import json
import math
import warnings
from pathlib import Path

import numpy as np
import pytest

from optodecouple.common import ContractViolation, FockBudgetError, StepSizeUnderflowError, TruncationOverflowError, TruncationWarning
from optodecouple.model import InitialState, SystemSpec, TimeGrid
from optodecouple.observables import ObservableSeries, Pair, observable_series
from optodecouple.oracle import (FockSpace, FockState, OracleSettings, PropagationMethod, PropagationOptions, build_hamiltonian, compare_series, coherent_vector, full_hamiltonian, initial_fock_state, measure, oracle_series,
                                 populations, propagate, purity, Quantity, thermal_weights, write_comparison)
from optodecouple.oracle.fock import to_dense
from tests.helpers import TWO_PI, coherent_state, interior_grid, modulated_system, single_mode_system, two_by_two_system


def _assert_series_close(analytic: ObservableSeries, oracle: ObservableSeries, rtol: float = 1e-4, atol: float = 1e-9):
    np.testing.assert_allclose(oracle.cavity_pop, analytic.cavity_pop, rtol=rtol, atol=atol)
    np.testing.assert_allclose(oracle.mech_pop, analytic.mech_pop, rtol=rtol, atol=atol)
    for pair, values in analytic.g1.items():
        other = oracle.g1[pair]
        np.testing.assert_array_equal(np.ma.getmaskarray(other), np.ma.getmaskarray(values))
        np.testing.assert_allclose(other.filled(0.0), values.filled(0.0), rtol=rtol, atol=atol)
    np.testing.assert_allclose(oracle.entropy, analytic.entropy, rtol=rtol, atol=atol)


class TestFockSpace:
    def test_layout(self):
        space = FockSpace.build([2], [3, 1])
        assert space.dims == (3, 4, 2)
        assert space.dim == 24 and not space.is_sparse
        assert space.index((0, 0, 1)) == 1
        assert space.occupations(space.index((2, 1, 1))) == (2, 1, 1)
        assert space.cavity_dim == 3 and space.mech_dim == 8

    def test_operators(self):
        space = FockSpace.build([3], [4])
        a = to_dense(space.annihilation(1))
        np.testing.assert_allclose(a.conj().T @ a, to_dense(space.number(1)), atol=1e-14)
        np.testing.assert_allclose(to_dense(space.quadrature_plus(1)), a + a.conj().T, atol=1e-14)
        np.testing.assert_allclose(to_dense(space.quadrature_minus(1)), 1j * (a.conj().T - a), atol=1e-14)
        # the commutator is the identity except on the top level
        commutator = a @ a.conj().T - a.conj().T @ a
        np.testing.assert_allclose(np.diag(commutator)[~space.top_level_mask(1)], 1.0)

    def test_large_spaces_are_sparse(self):
        assert FockSpace.build([10], [8, 8]).is_sparse

    def test_budget(self):
        with pytest.raises(FockBudgetError):
            FockSpace.build([10], [10], budget=100)

    def test_cutoff_contract(self):
        with pytest.raises(ContractViolation):
            FockSpace.build([0], [4])


class TestInitialState:
    @pytest.mark.parametrize("mu", [0.0, 1.0, 1.5j])
    def test_coherent_vector(self, mu: complex):
        vec, discarded = coherent_vector(mu, 20)
        assert np.linalg.norm(vec) == pytest.approx(1.0)
        assert 0.0 <= discarded < 1e-9
        assert np.sum(np.arange(21) * np.abs(vec) ** 2) == pytest.approx(abs(mu) ** 2, abs=1e-8)

    def test_thermal_weights(self):
        weights = thermal_weights(0.5, 30)
        assert math.fsum(weights) == pytest.approx(1.0 - (0.5 / 1.5) ** 31)
        assert np.dot(np.arange(31), weights) == pytest.approx(0.5, abs=1e-12)
        np.testing.assert_array_equal(thermal_weights(0.0, 3), [1.0, 0.0, 0.0, 0.0])

    def test_thermal_ensemble(self):
        space = FockSpace.build([8], [12])
        psi = initial_fock_state(InitialState.from_phonons([0.3], {0: 0.5}), space)
        assert psi.trace == pytest.approx(1.0, abs=1e-14)
        assert psi.members > 1
        cavity, mech = populations(space, psi)
        assert cavity[0] == pytest.approx(0.25, abs=1e-4)
        assert mech[0] == pytest.approx(0.3, abs=1e-6)
        assert purity(space, psi) == pytest.approx(1.0 / math.cosh(2.0 * math.asinh(math.sqrt(0.3))), abs=1e-6)

    def test_short_cutoff_warns(self):
        with pytest.warns(TruncationWarning):
            initial_fock_state(coherent_state(2.0), FockSpace.build([3], [2]))


class TestHamiltonian:
    def test_hermitian(self):
        ham = full_hamiltonian(two_by_two_system(0.3), FockSpace.build([2, 2], [3, 3]))
        assert ham.hermiticity_defect(0.0) < 1e-15
        assert len(ham.terms) == 8

    def test_snapshot_matches_full_hamiltonian(self):
        spec, space = two_by_two_system(0.3), FockSpace.build([2, 2], [3, 3])
        np.testing.assert_allclose(to_dense(build_hamiltonian(spec, space, 0.3)), to_dense(full_hamiltonian(spec, space).matrix(0.3)), atol=1e-15)

    def test_zero_couplings_add_no_terms(self):
        ham = full_hamiltonian(single_mode_system(0.0), FockSpace.build([2], [2]))
        assert ham.terms == []
        assert ham.is_time_independent


class TestPropagation:
    def _setup(self, spec: SystemSpec, state: InitialState, cavity: int = 6, mech: int = 6):
        space = FockSpace.build([cavity], [mech])
        return space, initial_fock_state(state, space)

    def test_rk4_matches_expm(self):
        spec = single_mode_system(0.2)
        space, psi0 = self._setup(spec, coherent_state(0.5, (0.1,)))
        grid = TimeGrid.from_times([0.0, 0.5, 1.0])
        exact = propagate(spec, space, psi0, grid, PropagationOptions(method=PropagationMethod.Expm))
        stepped = propagate(spec, space, psi0, grid, PropagationOptions(method=PropagationMethod.RK4, atol=1e-11))
        assert exact.method == PropagationMethod.Expm and stepped.method == PropagationMethod.RK4
        for a, b in zip(exact.states, stepped.states):
            np.testing.assert_allclose(b.amplitudes, a.amplitudes, atol=1e-8)
        assert stepped.norm_drift() < 1e-8

    def test_expm_conserves_energy_and_photons(self):
        spec = single_mode_system(0.2, lambda_minus=0.1)
        space, psi0 = self._setup(spec, coherent_state(0.7))
        trajectory = propagate(spec, space, psi0, TimeGrid.uniform(3.0, 7))
        ham = full_hamiltonian(spec, space)
        energies = [ham.energy(0.0, s.amplitudes) for s in trajectory.states]
        np.testing.assert_allclose(energies, energies[0], rtol=1e-10)
        np.testing.assert_allclose(measure(trajectory.states, space, Quantity.Populations)[0], populations(space, psi0)[0][0], rtol=1e-12)
        assert trajectory.norm_drift() < 1e-10

    def test_modulated_coupling_steps(self):
        spec = modulated_system(0.1, 1.0, 2.0)
        space, psi0 = self._setup(spec, coherent_state(0.5))
        trajectory = propagate(spec, space, psi0, TimeGrid.uniform(1.0, 3), PropagationOptions(atol=1e-9))
        assert trajectory.method == PropagationMethod.RK4
        assert len(trajectory) == 3 and trajectory.steps > 0

    def test_step_size_underflow(self):
        spec = modulated_system(0.1, 1.0, 2.0)
        space, psi0 = self._setup(spec, coherent_state(0.5))
        with pytest.raises(StepSizeUnderflowError):
            propagate(spec, space, psi0, TimeGrid.uniform(1.0, 3), PropagationOptions(atol=1e-30, dt_initial=0.01, dt_min=1e-3))

    def test_truncation_overflow(self):
        spec = single_mode_system(0.1)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            space, psi0 = self._setup(spec, coherent_state(2.0), cavity=3)
            with pytest.raises(TruncationOverflowError):
                propagate(spec, space, psi0, TimeGrid.uniform(1.0, 3))

    def test_expm_needs_constant_couplings(self):
        spec = modulated_system()
        space, psi0 = self._setup(spec, coherent_state(0.5))
        with pytest.raises(ContractViolation):
            propagate(spec, space, psi0, TimeGrid.uniform(1.0, 3), PropagationOptions(method=PropagationMethod.Expm))

    def test_initial_state_contract(self):
        spec = single_mode_system()
        space, psi0 = self._setup(spec, coherent_state(0.5))
        with pytest.raises(ContractViolation):
            propagate(spec, space, FockState(2.0 * psi0.amplitudes, psi0.weights), TimeGrid.uniform(1.0, 3))
        with pytest.raises(ContractViolation):
            propagate(spec, FockSpace.build([4], [4]), psi0, TimeGrid.uniform(1.0, 3))


class TestAgreement:
    def test_single_pair(self):
        spec = single_mode_system(0.1)
        state = coherent_state(1.0)
        grid = interior_grid(TWO_PI, 16)
        pairs = [Pair.mode_res(0, 0)]
        oracle = oracle_series(spec, state, grid, OracleSettings([12], [10]), pairs)
        _assert_series_close(observable_series(spec, state, grid, pairs), oracle)

    def test_two_resonators_sparse(self):
        spec = SystemSpec.build([3.0], [1.0, 1.3], g_plus=[[0.1, 0.08]])
        state = coherent_state(1.0, (0.0, 0.0))
        grid = interior_grid(TWO_PI, 16)
        pairs = [Pair.mode_res(0, 0), Pair.mode_res(0, 1), Pair.res_res(0, 1)]
        settings = OracleSettings([10], [8, 8])
        assert settings.space().is_sparse
        oracle = oracle_series(spec, state, grid, settings, pairs)
        _assert_series_close(observable_series(spec, state, grid, pairs), oracle)

    def test_thermal_resonator(self):
        spec = single_mode_system(0.1)
        state = InitialState.from_phonons([0.2], {0: 1.0})
        grid = interior_grid(TWO_PI, 12)
        pairs = [Pair.mode_res(0, 0)]
        oracle = oracle_series(spec, state, grid, OracleSettings([12], [14]), pairs)
        _assert_series_close(observable_series(spec, state, grid, pairs), oracle)

    def test_every_single_mode_coupling_family(self):
        spec = single_mode_system(0.1, g_minus=0.06, lambda_plus=0.05, lambda_minus=-0.04)
        state = InitialState.from_phonons([0.2], {0: 1.0})
        grid = interior_grid(TWO_PI, 12)
        pairs = [Pair.mode_res(0, 0)]
        oracle = oracle_series(spec, state, grid, OracleSettings([14], [16]), pairs)
        _assert_series_close(observable_series(spec, state, grid, pairs), oracle)

    def test_two_modes_with_mode_mode_coherence(self):
        spec = SystemSpec.build([3.0, 3.5], [1.0], g_plus=[[0.1], [0.08]], g_minus=[[0.03], [-0.04]], lambda_plus=[0.05], lambda_minus=[0.035])
        state = coherent_state(coherent={0: 0.8, 1: 0.6j}, r=(0.0,))
        grid = interior_grid(TWO_PI, 12)
        pairs = [Pair.mode_mode(0, 1), Pair.mode_res(0, 0), Pair.mode_res(1, 0)]
        settings = OracleSettings([10, 10], [12])
        oracle = oracle_series(spec, state, grid, settings, pairs)
        _assert_series_close(observable_series(spec, state, grid, pairs), oracle)


class TestComparison:
    def _series(self):
        return observable_series(single_mode_system(0.1), coherent_state(1.0), TimeGrid.uniform(2.0, 5), [Pair.mode_res(0, 0)])

    def test_identical_series(self):
        report = compare_series(self._series(), self._series())
        assert report.max_abs == 0.0 and report.max_rel == 0.0
        assert report.passed(0.0)
        assert report["pop_m[0]"].undefined_mismatch == 0

    def test_undefined_mismatch_fails(self):
        analytic = self._series()
        oracle = self._series()
        values = oracle.g1[Pair.mode_res(0, 0)]
        oracle.g1[Pair.mode_res(0, 0)] = np.ma.masked_array(values.filled(0.5), mask=False)
        report = compare_series(analytic, oracle)
        assert report["g1_cm[0][0]"].undefined_mismatch == 1
        assert not report.passed(1.0, 1.0)

    def test_deviation_location(self):
        analytic = self._series()
        oracle = self._series()
        oracle.mech_pop = oracle.mech_pop.copy()
        oracle.mech_pop[0, 3] += 1e-3
        deviation = compare_series(analytic, oracle)["pop_m[0]"]
        assert deviation.max_abs == pytest.approx(1e-3)
        assert deviation.t_at_max == 1.5

    def test_written_report(self, tmp_path: Path):
        path = write_comparison(tmp_path / "compare.json", compare_series(self._series(), self._series()), {"scenario": "x"})
        payload = json.loads(path.read_text())
        assert payload["scenario"] == "x"
        assert set(payload["observables"]) == {"pop_c[0]", "pop_m[0]", "g1_cm[0][0]", "S_N"}
