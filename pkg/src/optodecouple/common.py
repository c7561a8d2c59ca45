from __future__ import annotations

from enum import Enum
from typing import List, Optional, Any


class ListableEnum(Enum):
    @classmethod
    def list(cls) -> List[Any]:
        return list(map(lambda c: c.value, cls))


class ScenarioParseError(Exception):
    def __init__(self, path: Optional[str] = None, line: Optional[int] = None, section: Optional[str] = None, field: Optional[str] = None, reason: Optional[str] = None, *args: Any):
        super().__init__(*args)
        self.path = path
        self.line = line
        self.section = section
        self.field = field
        self.reason = reason

    def __str__(self) -> str:
        msg = "Could not parse scenario"
        if self.path:
            msg += f" \"{self.path}\""
        if self.line is not None:
            msg += f" (line {self.line})"
        if self.section or self.field:
            where = ".".join(s for s in (self.section, self.field) if s)
            msg += f" at [{where}]"
        if self.reason:
            msg += f"; {self.reason}"
        return msg + "!"

    def as_dict(self) -> dict:
        return {"error": "parse", "path": self.path, "line": self.line, "section": self.section, "field": self.field, "reason": self.reason}


class ScenarioValidationError(Exception):
    def __init__(self, report: Any = None, *args: Any):
        super().__init__(*args)
        self.report = report

    def __str__(self) -> str:
        if not self.report:
            return "Scenario failed validation!"
        return f"Scenario failed validation; {'; '.join(str(v) for v in self.report.violations)}!"

    def as_dict(self) -> dict:
        violations = [] if not self.report else [{"field": v.field, "message": v.message} for v in self.report.violations]
        return {"error": "validation", "violations": violations}


class ContractViolation(Exception):
    def __init__(self, operation: Optional[str] = None, reason: Optional[str] = None, *args: Any):
        super().__init__(*args)
        self.operation = operation
        self.reason = reason

    def __str__(self) -> str:
        msg = "Precondition violated"
        if self.operation:
            msg += f" in '{self.operation}'"
        if self.reason:
            msg += f"; {self.reason}"
        return msg + "!"


class CouplingRangeError(ValueError):
    def __init__(self, t: float, t_min: float, t_max: float, *args: Any):
        super().__init__(*args)
        self.t = t
        self.t_min = t_min
        self.t_max = t_max

    def __str__(self) -> str:
        return f"Tabulated coupling evaluated at t={self.t!r}, outside its samples [{self.t_min!r}, {self.t_max!r}]!"


class FockBudgetError(ValueError):
    def __init__(self, dim: int, budget: int, *args: Any):
        super().__init__(*args)
        self.dim = dim
        self.budget = budget

    def __str__(self) -> str:
        return f"Fock space dimension {self.dim} exceeds the budget of {self.budget}!"


class StepSizeUnderflowError(ArithmeticError):
    def __init__(self, t: float, dt: float, dt_min: float, error: float = float("nan"), *args: Any):
        super().__init__(*args)
        self.t = t
        self.dt = dt
        self.dt_min = dt_min
        self.error = error

    def __str__(self) -> str:
        return f"Step size underflow at t={self.t!r}; dt={self.dt!r} < dt_min={self.dt_min!r} (estimated error {self.error!r})!"


class TruncationOverflowError(ArithmeticError):
    def __init__(self, mode: str, population: float, cutoff: int, t: float = float("nan"), *args: Any):
        super().__init__(*args)
        self.mode = mode
        self.population = population
        self.cutoff = cutoff
        self.t = t

    def __str__(self) -> str:
        return f"Truncation overflow in {self.mode} at t={self.t!r}; population {self.population!r} in the top level (cutoff {self.cutoff}). Raise the cutoff or shorten the horizon!"


class CoarseGridWarning(UserWarning):
    def __init__(self, samples_per_period: float, recommended_step: float):
        super().__init__(f"Time grid resolves the fastest period with only {samples_per_period:.1f} samples; use a step of at most {recommended_step!r}.")
        self.samples_per_period = samples_per_period
        self.recommended_step = recommended_step


class TruncationWarning(UserWarning):
    def __init__(self, truncated_mass: float, suggested: int):
        super().__init__(f"Truncation discards probability mass {truncated_mass!r}; a truncation of {suggested} is suggested.")
        self.truncated_mass = truncated_mass
        self.suggested = suggested


class ShortHorizonWarning(UserWarning):
    pass


class SeriesConvergenceWarning(UserWarning):
    pass
