import math
from os.path import split, join, abspath
from typing import Dict, Optional, Sequence

from optodecouple.model import CouplingSpec, InitialState, SystemSpec, TimeGrid

TF = (True, False)
TWO_PI = 2.0 * math.pi


def _find_tests_root_folder() -> str:
    full = __file__
    # should catch my most common test folder name cases
    for _ in range(len(__file__)):
        parent, self = split(full)
        if parent == "" and self == "":
            raise FileNotFoundError("Could not find test root folder!")
        elif self.lower() in ["tests", "test"]:
            return full
        else:
            full = parent
    raise FileNotFoundError("Could not find test root folder! The Process timed out!")


def get_scenarios_root_folder() -> str:
    tests_root = _find_tests_root_folder()
    return abspath(join(tests_root, "..", "scenarios"))


def get_scenario_path(name: str) -> str:
    if name[0] in ["\\", "/"]:
        name = name[1:]
    return join(get_scenarios_root_folder(), name)


def single_mode_system(g: float = 0.1, omega_c: float = 3.0, omega_m: float = 1.0, g_minus: float = 0.0, lambda_plus: float = 0.0, lambda_minus: float = 0.0) -> SystemSpec:
    return SystemSpec.build([omega_c], [omega_m], [[g]], [[g_minus]], [lambda_plus], [lambda_minus])


def modulated_system(g: float = 0.1, kappa: float = 1.0, omega_d: float = 1.0, omega_c: float = 3.0, omega_m: float = 1.0) -> SystemSpec:
    return SystemSpec.optomechanical([omega_c], [omega_m], [[CouplingSpec.modulated_sin(g, kappa, omega_d)]])


def two_by_two_system(g: float = 0.05) -> SystemSpec:
    """Two cavity modes, two resonators, every coupling family switched on."""
    return SystemSpec.build(
        [3.0, 3.5], [1.0, 1.3],
        g_plus=[[g, 0.6 * g], [0.8 * g, 1.1 * g]],
        g_minus=[[0.3 * g, 0.0], [0.0, -0.4 * g]],
        lambda_plus=[0.5 * g, 0.0],
        lambda_minus=[0.0, 0.7 * g],
    )


def coherent_state(mu: complex = 1.0, r: Sequence[float] = (0.0,), coherent: Optional[Dict[int, complex]] = None) -> InitialState:
    return InitialState.build(coherent if coherent is not None else {0: mu}, r)


def period_grid(omega: float = 1.0, periods: float = 1.0, samples_per_period: int = 200) -> TimeGrid:
    return TimeGrid.per_period(periods * TWO_PI / omega, omega, samples_per_period)


def interior_grid(t_end: float, samples: int) -> TimeGrid:
    """Uniform samples on [0, t_end) so no sample lands where a displacement returns to zero."""
    return TimeGrid.from_times([t_end * i / samples for i in range(samples)])
