from .common import ScenarioParseError, ScenarioValidationError, ContractViolation
from .config import Scenario, load_scenario, parse_scenario

__all__ = [
    "ScenarioParseError",
    "ScenarioValidationError",
    "ContractViolation",
    "Scenario",
    "load_scenario",
    "parse_scenario",
]
