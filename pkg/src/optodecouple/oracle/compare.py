from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from .fock import FockSpace, DEFAULT_BUDGET
from .initial import initial_fock_state, THERMAL_TOL
from .measure import coherence, linear_entropy, populations
from .propagate import PropagationOptions, Trajectory, propagate
from ..model import InitialState, SystemSpec, TimeGrid
from ..observables import ObservableSeries, Pair
from ..writer import write_json_file

RELATIVE_FLOOR = 1e-12


@dataclass
class OracleSettings:
    cavity_cutoffs: Sequence[int]
    mech_cutoffs: Sequence[int]
    budget: int = DEFAULT_BUDGET
    thermal_tol: float = THERMAL_TOL
    propagation: PropagationOptions = field(default_factory=PropagationOptions)

    def space(self) -> FockSpace:
        return FockSpace.build(self.cavity_cutoffs, self.mech_cutoffs, self.budget)


def trajectory_series(space: FockSpace, trajectory: Trajectory, pairs: Sequence[Pair] = (), entropy: bool = True) -> ObservableSeries:
    """Measure every grid state into the same layout the analytic pipeline produces."""
    pops = [populations(space, s) for s in trajectory.states]
    cavity = np.array([c for c, _ in pops]).T
    mech = np.array([m for _, m in pops]).T
    g1 = {}
    for pair in pairs:
        values = np.array([coherence(space, s, pair) for s in trajectory.states])
        g1[pair] = np.ma.masked_invalid(values)
    s_n = np.array([linear_entropy(space, s) for s in trajectory.states]) if entropy else None
    return ObservableSeries(np.asarray(trajectory.grid.t, dtype=float), cavity, mech, g1, s_n)


def oracle_series(spec: SystemSpec, state: InitialState, grid: TimeGrid, settings: OracleSettings, pairs: Sequence[Pair] = (), entropy: bool = True) -> ObservableSeries:
    space = settings.space()
    psi0 = initial_fock_state(state, space, settings.thermal_tol)
    trajectory = propagate(spec, space, psi0, grid, settings.propagation)
    return trajectory_series(space, trajectory, pairs, entropy)


@dataclass
class Deviation:
    observable: str
    max_abs: float
    max_rel: float
    t_at_max: float
    undefined_mismatch: int = 0


@dataclass
class ComparisonReport:
    """Per-observable worst deviation between an analytic series and the oracle on the same grid."""
    deviations: List[Deviation] = field(default_factory=list)

    def __getitem__(self, observable: str) -> Deviation:
        for d in self.deviations:
            if d.observable == observable:
                return d
        raise KeyError(observable)

    @property
    def max_abs(self) -> float:
        return max((d.max_abs for d in self.deviations), default=0.0)

    @property
    def max_rel(self) -> float:
        return max((d.max_rel for d in self.deviations), default=0.0)

    def passed(self, rel_tol: float, abs_tol: float = 0.0) -> bool:
        return all(d.max_rel <= rel_tol or d.max_abs <= abs_tol for d in self.deviations) and not any(d.undefined_mismatch for d in self.deviations)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "max_abs": self.max_abs,
            "max_rel": self.max_rel,
            "observables": {d.observable: {"max_abs": d.max_abs, "max_rel": d.max_rel, "t_at_max": d.t_at_max, "undefined_mismatch": d.undefined_mismatch} for d in self.deviations},
        }


def compare_series(analytic: ObservableSeries, oracle: ObservableSeries) -> ComparisonReport:
    """
    Relative deviations divide by max(|analytic|, RELATIVE_FLOOR). Entries undefined in exactly one
    series are counted, entries undefined in both are skipped.
    """
    assert len(analytic.t) == len(oracle.t)
    report = ComparisonReport()
    theirs = oracle.columns()
    for name, ours in analytic.columns().items():
        if name not in theirs:
            continue
        other = theirs[name]
        a_mask = np.ma.getmaskarray(ours)
        o_mask = np.ma.getmaskarray(other)
        both = ~a_mask & ~o_mask
        mismatch = int(np.sum(a_mask != o_mask))
        if not np.any(both):
            report.deviations.append(Deviation(name, 0.0, 0.0, float("nan"), mismatch))
            continue
        a = np.ma.getdata(ours)[both]
        o = np.ma.getdata(other)[both]
        diff = np.abs(a - o)
        rel = diff / np.maximum(np.abs(a), RELATIVE_FLOOR)
        worst = int(np.argmax(diff))
        report.deviations.append(Deviation(name, float(diff[worst]), float(np.max(rel)), float(analytic.t[both][worst]), mismatch))
    return report


def write_comparison(path: Union[str, Path], report: ComparisonReport, extra: Optional[Dict[str, Any]] = None) -> Path:
    payload = report.as_dict()
    if extra:
        payload.update(extra)
    return write_json_file(path, payload)
