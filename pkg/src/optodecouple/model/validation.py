from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List

import numpy as np

from .coupling import CouplingKind, CouplingSpec
from .grid import TimeGrid
from .state import InitialState
from .system import SystemSpec


@dataclass(frozen=True)
class Violation:
    field: str
    message: str

    def __str__(self) -> str:
        return f"{self.field}: {self.message}"


@dataclass
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)
    notes: List[Violation] = field(default_factory=list)

    def __bool__(self) -> bool:
        # Truthy when something is wrong, so `if report:` reads as "if problems".
        return len(self.violations) > 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, field_name: str, message: str) -> None:
        self.violations.append(Violation(field_name, message))

    def note(self, field_name: str, message: str) -> None:
        self.notes.append(Violation(field_name, message))


def _check_coupling(report: ValidationReport, name: str, c: CouplingSpec, grid: TimeGrid) -> None:
    if c.kind == CouplingKind.Tabulated:
        if len(c.samples) < 2:
            report.add(name, "tabulated coupling needs at least 2 samples")
            return
        ts = np.array([s[0] for s in c.samples])
        vs = np.array([s[1] for s in c.samples])
        if not np.all(np.isfinite(ts)) or not np.all(np.isfinite(vs)):
            report.add(name, "tabulated samples must be finite")
        if np.any(np.diff(ts) <= 0):
            report.add(name, "tabulated sample times must be strictly increasing")
        elif len(grid.t) and (ts[0] > grid.t[0] or ts[-1] < grid.t[-1]):
            report.add(name, f"tabulated samples [{ts[0]}, {ts[-1]}] do not cover the grid [{grid.t[0]}, {grid.t[-1]}]")
        if np.any(vs < 0):
            report.note(name, "negative coupling samples")
        return
    for attr in ("base", "kappa", "omega_d"):
        if not math.isfinite(getattr(c, attr)):
            report.add(name, f"{attr} must be finite")
    if c.base < 0:
        report.note(name, "negative base amplitude")


def validate_spec(spec: SystemSpec, state: InitialState, grid: TimeGrid) -> ValidationReport:
    """
    Collects every violated invariant of a scenario.

    :param spec: The system definition.
    :param state: The initial state.
    :param grid: The sample times.
    :returns: A report; an empty `violations` list means the scenario is runnable.
    """
    report = ValidationReport()

    if spec.n_cavity < 1:
        report.add("n_cavity", "at least one cavity mode is required")
    if spec.n_mech < 1:
        report.add("n_mech", "at least one resonator is required")
    if len(spec.omega_c) != spec.n_cavity:
        report.add("omega_c", f"expected {spec.n_cavity} frequencies, got {len(spec.omega_c)}")
    if len(spec.omega_m) != spec.n_mech:
        report.add("omega_m", f"expected {spec.n_mech} frequencies, got {len(spec.omega_m)}")
    for name, values in (("omega_c", spec.omega_c), ("omega_m", spec.omega_m)):
        for i, w in enumerate(values):
            if not (math.isfinite(w) and w > 0):
                report.add(f"{name}[{i}]", "frequency must be positive")

    for family in ("g_plus", "g_minus"):
        rows = getattr(spec, family)
        if len(rows) != spec.n_cavity or any(len(row) != spec.n_mech for row in rows):
            report.add(family, f"expected a {spec.n_cavity} x {spec.n_mech} coupling array")
    for family in ("lambda_plus", "lambda_minus"):
        if len(getattr(spec, family)) != spec.n_mech:
            report.add(family, f"expected {spec.n_mech} couplings")
    for family, index, c in spec.couplings():
        _check_coupling(report, f"{family}{list(index)}", c, grid)

    if len(state.r) != spec.n_mech:
        report.add("r", f"expected {spec.n_mech} thermal parameters, got {len(state.r)}")
    for p, r in enumerate(state.r):
        if not (math.isfinite(r) and r >= 0):
            report.add(f"r[{p}]", "thermal parameter must be finite and non-negative")
    for k, mu in state.coherent.items():
        if not 0 <= k < spec.n_cavity:
            report.add(f"coherent[{k}]", "mode index out of range")
        if not (math.isfinite(mu.real) and math.isfinite(mu.imag)):
            report.add(f"coherent[{k}]", "amplitude must be finite")

    t = grid.t
    if t.ndim != 1 or len(t) < 2:
        report.add("grid", "at least 2 sample times are required")
    else:
        if not np.all(np.isfinite(t)):
            report.add("grid", "sample times must be finite")
        if t[0] != 0.0:
            report.add("grid", "the first sample time must be 0")
        if np.any(np.diff(t) <= 0):
            report.add("grid", "sample times must be strictly increasing")
    return report
