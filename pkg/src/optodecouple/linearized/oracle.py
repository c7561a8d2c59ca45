from __future__ import annotations

from typing import List, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy import sparse

from .spec import LinearizedSpec
from ..model import InitialState, TimeGrid
from ..oracle import FockSpace, OracleHamiltonian, OracleSettings, free_diagonal, initial_fock_state, mean_amplitude, populations, propagate_hamiltonian
from ..oracle.hamiltonian import Term


def linearized_hamiltonian(spec: LinearizedSpec, space: FockSpace) -> OracleHamiltonian:
    """
    H = Σ ω_c δa†δa + Σ ω_m b†b + Σ_p (λ⁺B⁺ + λ⁻B⁻) + Σ_np (α_n² + α_n A⁺_n)(g⁺_np B⁺_p + g⁻_np B⁻_p)

    with A⁺_n = δa_n + δa_n†, kept without any rotating-wave approximation.
    """
    system = spec.system
    assert space.n_cavity == system.n_cavity and space.n_mech == system.n_mech
    terms: List[Term] = []
    identity = sparse.identity(space.dim, format="csr")
    for p in range(system.n_mech):
        axis = space.mech_axis(p)
        b_plus = sparse.csr_matrix(space.quadrature_plus(axis))
        b_minus = sparse.csr_matrix(space.quadrature_minus(axis))
        if not system.lambda_plus[p].is_zero:
            terms.append((system.lambda_plus[p], space.finish(b_plus)))
        if not system.lambda_minus[p].is_zero:
            terms.append((system.lambda_minus[p], space.finish(b_minus)))
        for n, alpha in enumerate(spec.alpha):
            a_plus = sparse.csr_matrix(space.quadrature_plus(space.cavity_axis(n)))
            factor = alpha ** 2 * identity + alpha * a_plus
            if not system.g_plus[n][p].is_zero:
                terms.append((system.g_plus[n][p], space.finish(factor @ b_plus)))
            if not system.g_minus[n][p].is_zero:
                terms.append((system.g_minus[n][p], space.finish(factor @ b_minus)))
    return OracleHamiltonian(space, free_diagonal(space, list(system.omega_c), list(system.omega_m)), terms)


def linearized_oracle_populations(spec: LinearizedSpec, state: InitialState, grid: TimeGrid, settings: OracleSettings) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Populations of the linearised model by brute-force propagation, fluctuations starting in the vacuum.

    Returns (cavity (N, T), mech (M, T)) with ⟨a†a⟩ = α² + 2α Re⟨δa⟩ + ⟨δa†δa⟩. Squeezing drives the
    fluctuations up the Fock ladder; the propagation aborts once the top level fills.
    """
    space = settings.space()
    fluctuations = InitialState.build({}, state.r)
    psi0 = initial_fock_state(fluctuations, space, settings.thermal_tol)
    trajectory = propagate_hamiltonian(linearized_hamiltonian(spec, space), psi0, grid, settings.propagation)
    alpha = np.asarray(spec.alpha, dtype=float)
    cavity = np.empty((space.n_cavity, len(trajectory)))
    mech = np.empty((space.n_mech, len(trajectory)))
    for i, s in enumerate(trajectory.states):
        photons, phonons = populations(space, s)
        shift = np.array([mean_amplitude(space, s, space.cavity_axis(k)).real for k in range(space.n_cavity)])
        cavity[:, i] = alpha ** 2 + 2.0 * alpha * shift + photons
        mech[:, i] = phonons
    return cavity, mech
