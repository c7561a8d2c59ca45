from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from functools import reduce
from typing import List, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

from .fock import FockSpace
from ..common import TruncationWarning, ContractViolation
from ..model import InitialState

THERMAL_TOL = 1e-12


@dataclass
class FockState:
    """
    A mixed state held as a weighted ensemble of state vectors, ρ = Σ_j w_j |ψ_j⟩⟨ψ_j|.

    `amplitudes` is (dim, K), one column per ensemble member. A pure state has K = 1.
    """
    amplitudes: NDArray[np.complex128]
    weights: NDArray[np.float64]

    def __post_init__(self) -> None:
        if self.amplitudes.ndim == 1:
            self.amplitudes = self.amplitudes[:, None]
        self.weights = np.atleast_1d(np.asarray(self.weights, dtype=float))
        assert self.amplitudes.shape[1] == len(self.weights)

    @classmethod
    def pure(cls, vector: NDArray[np.complex128]) -> FockState:
        return cls(np.asarray(vector, dtype=complex)[:, None], np.ones(1))

    @property
    def dim(self) -> int:
        return int(self.amplitudes.shape[0])

    @property
    def members(self) -> int:
        return int(self.amplitudes.shape[1])

    @property
    def norms(self) -> NDArray[np.float64]:
        return np.linalg.norm(self.amplitudes, axis=0)

    @property
    def trace(self) -> float:
        return float(np.dot(self.weights, self.norms ** 2))

    def copy_with(self, amplitudes: NDArray[np.complex128]) -> FockState:
        return FockState(amplitudes, self.weights.copy())


def coherent_vector(mu: complex, cutoff: int) -> Tuple[NDArray[np.complex128], float]:
    """⟨n|μ⟩ for n ≤ cutoff, renormalised; also returns the discarded probability."""
    n = np.arange(cutoff + 1)
    if mu == 0:
        vec = np.zeros(cutoff + 1, dtype=complex)
        vec[0] = 1.0
        return vec, 0.0
    log_mag = -0.5 * abs(mu) ** 2 + n * math.log(abs(mu)) - 0.5 * np.array([math.lgamma(k + 1) for k in n])
    vec = np.exp(log_mag) * np.exp(1j * n * np.angle(mu))
    kept = float(np.sum(np.abs(vec) ** 2))
    return vec / math.sqrt(kept), max(0.0, 1.0 - kept)


def thermal_weights(occupation: float, cutoff: int) -> NDArray[np.float64]:
    """Bose-Einstein probabilities N^n / (N+1)^{n+1} for n ≤ cutoff."""
    n = np.arange(cutoff + 1)
    if occupation == 0:
        return (n == 0).astype(float)
    return np.exp(n * math.log(occupation) - (n + 1) * math.log1p(occupation))


def _thermal_ensemble(phonons: Sequence[float], cutoffs: Sequence[int], tol: float) -> Tuple[List[Tuple[int, ...]], NDArray[np.float64], float]:
    per_mode = [thermal_weights(N, c) for N, c in zip(phonons, cutoffs)]
    tuples = list(itertools.product(*(range(c + 1) for c in cutoffs)))
    weights = np.array([math.prod(per_mode[p][n] for p, n in enumerate(t)) for t in tuples])
    order = np.argsort(-weights, kind="stable")
    kept: List[int] = []
    mass = 0.0
    for i in order:
        if weights[i] <= 0.0 or mass >= 1.0 - tol:
            break
        kept.append(int(i))
        mass += float(weights[i])
    return [tuples[i] for i in kept], weights[kept], max(0.0, 1.0 - mass)


def initial_fock_state(state: InitialState, space: FockSpace, thermal_tol: float = THERMAL_TOL) -> FockState:
    """
    Coherent cavity modes times thermal resonators.

    The thermal density matrix is diagonal in the Fock basis; it is kept as the ensemble of its
    eigenvectors, dropping the smallest weights once 1 − thermal_tol of the mass is covered.
    """
    if len(state.r) != space.n_mech:
        raise ContractViolation("initial_fock_state", f"state has {len(state.r)} resonators, space has {space.n_mech}")
    mus = state.amplitudes(space.n_cavity)
    cavity_vectors = []
    lost = 0.0
    for k, cutoff in enumerate(space.cavity_cutoffs):
        vec, discarded = coherent_vector(complex(mus[k]), cutoff)
        cavity_vectors.append(vec)
        lost = max(lost, discarded)
    cavity = reduce(np.kron, cavity_vectors, np.ones(1, dtype=complex))

    tuples, weights, thermal_lost = _thermal_ensemble(state.thermal_occupation, space.mech_cutoffs, thermal_tol)
    lost = max(lost, thermal_lost)
    if lost > 1e-6:
        warnings.warn(TruncationWarning(lost, max(space.cutoffs) + 4))

    columns = []
    for occupation in tuples:
        mech = np.zeros(space.mech_dim, dtype=complex)
        mech[np.ravel_multi_index(occupation, space.dims[space.n_cavity:])] = 1.0
        columns.append(np.kron(cavity, mech))
    return FockState(np.stack(columns, axis=1), weights / np.sum(weights))
