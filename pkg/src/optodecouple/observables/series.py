from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from .coherence import Pair, g1_series
from .populations import cavity_population, mech_population_series
from ..entropy import EntropyForm, linear_entropy_series
from ..ffunctions import FSet, QuadratureRule, closed_form_f_set, compute_f_set
from ..model import InitialState, SystemSpec, TimeGrid


@dataclass
class ObservableSeries:
    """
    Equal-time observables over a grid, keyed the same way for the analytic model and the oracle.

    `g1` entries are masked where the coherence is undefined; `entropy` is None when not requested.
    """
    t: NDArray[np.float64]
    cavity_pop: NDArray[np.float64]  # (N, T)
    mech_pop: NDArray[np.float64]  # (M, T)
    g1: Dict[Pair, np.ma.MaskedArray] = field(default_factory=dict)
    entropy: Optional[NDArray[np.float64]] = None

    def __post_init__(self) -> None:
        assert self.cavity_pop.shape[-1] == len(self.t)
        assert self.mech_pop.shape[-1] == len(self.t)

    @property
    def n_cavity(self) -> int:
        return int(self.cavity_pop.shape[0])

    @property
    def n_mech(self) -> int:
        return int(self.mech_pop.shape[0])

    @property
    def pairs(self) -> List[Pair]:
        return list(self.g1.keys())

    def columns(self) -> Dict[str, np.ma.MaskedArray]:
        """Every observable under its column name, in output order."""
        out: Dict[str, np.ma.MaskedArray] = {}
        for k in range(self.n_cavity):
            out[f"pop_c[{k}]"] = np.ma.masked_array(self.cavity_pop[k])
        for p in range(self.n_mech):
            out[f"pop_m[{p}]"] = np.ma.masked_array(self.mech_pop[p])
        for pair, values in self.g1.items():
            out[pair.column] = values
        if self.entropy is not None:
            out["S_N"] = np.ma.masked_array(self.entropy)
        return out

    @property
    def header(self) -> List[str]:
        return ["t"] + list(self.columns().keys())

    def rows(self) -> Iterator[List[object]]:
        columns = list(self.columns().values())
        for i, t in enumerate(self.t):
            yield [t] + [c[i] for c in columns]


def analytic_f_set(spec: SystemSpec, grid: TimeGrid, rule: QuadratureRule = QuadratureRule.Simpson) -> FSet:
    """Closed form when every coupling is constant, quadrature otherwise."""
    if spec.is_time_independent:
        return closed_form_f_set(spec, grid)
    return compute_f_set(spec, grid, rule)


def observable_series(spec: SystemSpec, state: InitialState, grid: TimeGrid, pairs: Sequence[Pair] = (), entropy: bool = True, truncation: Optional[int] = None, fset: Optional[FSet] = None, entropy_form: EntropyForm = EntropyForm.Split) -> ObservableSeries:
    if fset is None:
        fset = analytic_f_set(spec, grid)
    n_t = len(fset.t)
    cavity = np.array([np.full(n_t, cavity_population(state, k)) for k in range(spec.n_cavity)]).reshape(spec.n_cavity, n_t)
    mech = np.array([mech_population_series(state, fset, p) for p in range(spec.n_mech)]).reshape(spec.n_mech, n_t)
    g1 = {pair: g1_series(state, fset, pair) for pair in pairs}
    s_n = linear_entropy_series(state, fset, truncation, entropy_form) if entropy else None
    return ObservableSeries(np.asarray(fset.t, dtype=float), cavity, mech, g1, s_n)
