from __future__ import annotations

from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

from .fock import FockSpace, annihilation_operator, apply
from .initial import FockState
from ..common import ListableEnum, ContractViolation
from ..ffunctions import POPULATION_FLOOR
from ..observables import Pair, PairKind


class Quantity(ListableEnum):
    Populations = "populations"
    Coherence = "g1"
    Purity = "purity"


def _weighted_abs2(state: FockState) -> NDArray[np.float64]:
    """Diagonal of ρ in the Fock basis."""
    return np.asarray(np.abs(state.amplitudes) ** 2 @ state.weights)


def population(space: FockSpace, state: FockState, axis: int) -> float:
    return float(np.dot(space.number_diagonal(axis), _weighted_abs2(state)))


def populations(space: FockSpace, state: FockState) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """(⟨a_k†a_k⟩ per mode, ⟨b_p†b_p⟩ per resonator)."""
    diag = _weighted_abs2(state)
    values = space.occupation_table @ diag
    return values[:space.n_cavity], values[space.n_cavity:]


def top_level_populations(space: FockSpace, state: FockState) -> NDArray[np.float64]:
    """Probability of finding each mode in its highest retained Fock level."""
    diag = _weighted_abs2(state)
    return np.array([float(np.sum(diag[space.top_level_mask(axis)])) for axis in range(len(space.cutoffs))])


def mean_amplitude(space: FockSpace, state: FockState, axis: int) -> complex:
    """⟨d⟩ for the mode on `axis`."""
    d_psi = apply(annihilation_operator(space, axis), state.amplitudes)
    return complex(np.sum(state.weights * np.sum(np.conj(state.amplitudes) * d_psi, axis=0)))


def correlation(space: FockSpace, state: FockState, axis_m: int, axis_n: int) -> complex:
    """⟨d_m† d_n⟩ = Σ_j w_j (d_m ψ_j)† (d_n ψ_j)."""
    dm = apply(annihilation_operator(space, axis_m), state.amplitudes)
    dn = dm if axis_m == axis_n else apply(annihilation_operator(space, axis_n), state.amplitudes)
    return complex(np.sum(state.weights * np.sum(np.conj(dm) * dn, axis=0)))


def pair_axes(space: FockSpace, pair: Pair) -> Tuple[int, int]:
    if pair.kind == PairKind.ModeMode:
        return space.cavity_axis(pair.i), space.cavity_axis(pair.j)
    if pair.kind == PairKind.ModeRes:
        return space.cavity_axis(pair.i), space.mech_axis(pair.j)
    return space.mech_axis(pair.i), space.mech_axis(pair.j)


def coherence(space: FockSpace, state: FockState, pair: Pair) -> float:
    """g⁽¹⁾ of `pair`; NaN when either population vanishes."""
    m, n = pair_axes(space, pair)
    den = population(space, state, m) * population(space, state, n)
    if den <= POPULATION_FLOOR:
        return float("nan")
    return abs(correlation(space, state, m, n)) / float(np.sqrt(den))


def reduced_mech_state(space: FockSpace, state: FockState) -> NDArray[np.complex128]:
    """ρ_m = Tr_c ρ; with ψ reshaped to (cavity, resonators), ρ_m = Σ_j w_j Ψ_jᵀ Ψ_j*."""
    psi = state.amplitudes.reshape(space.cavity_dim, space.mech_dim, state.members)
    return np.einsum("j,cpj,cqj->pq", state.weights, psi, np.conj(psi))


def purity(space: FockSpace, state: FockState) -> float:
    rho = reduced_mech_state(space, state)
    return float(np.real(np.einsum("pq,qp->", rho, rho)))


def linear_entropy(space: FockSpace, state: FockState) -> float:
    return 1.0 - purity(space, state)


def measure(states: Sequence[FockState], space: FockSpace, what: Quantity, pair: Optional[Pair] = None) -> NDArray[np.float64]:
    """
    One quantity over a sequence of states.

    Populations come back as (modes + resonators, T) in axis order, coherence and purity as (T,).
    """
    if what == Quantity.Populations:
        return np.array([np.concatenate(populations(space, s)) for s in states]).T
    if what == Quantity.Coherence:
        if pair is None:
            raise ContractViolation("measure", "coherence needs a pair")
        return np.array([coherence(space, s, pair) for s in states])
    return np.array([purity(space, s) for s in states])
