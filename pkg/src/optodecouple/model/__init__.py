from .coupling import CouplingKind, CouplingSpec, CouplingLike, coupling_eval, as_coupling
from .system import SystemSpec, scale_couplings, replace_coupling
from .state import InitialState
from .grid import TimeGrid
from .validation import ValidationReport, Violation, validate_spec

__all__ = [
    "CouplingKind",
    "CouplingSpec",
    "CouplingLike",
    "coupling_eval",
    "as_coupling",
    "SystemSpec",
    "scale_couplings",
    "replace_coupling",
    "InitialState",
    "TimeGrid",
    "ValidationReport",
    "Violation",
    "validate_spec",
]
