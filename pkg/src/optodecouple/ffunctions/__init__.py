from .quadrature import QuadratureRule, cumulative_integral, definite_integral
from .fset import FSet, FSnapshot
from .compute import compute_f_set, f_set_until, evaluate_couplings, check_grid_resolution, MIN_SAMPLES_PER_PERIOD
from .closed_form import f_closed_form_constant, closed_form_f_set, constant_coupling_weight
from .writer import fset_header, fset_rows, write_fset_csv
from .sectors import DriveAmplitudes, POPULATION_FLOOR, linear_phase, quadratic_phase, phase_slope, cavity_phase_offset

__all__ = [
    "QuadratureRule",
    "cumulative_integral",
    "definite_integral",
    "FSet",
    "FSnapshot",
    "compute_f_set",
    "f_set_until",
    "evaluate_couplings",
    "check_grid_resolution",
    "MIN_SAMPLES_PER_PERIOD",
    "f_closed_form_constant",
    "closed_form_f_set",
    "constant_coupling_weight",
    "fset_header",
    "fset_rows",
    "write_fset_csv",
    "DriveAmplitudes",
    "POPULATION_FLOOR",
    "linear_phase",
    "quadratic_phase",
    "phase_slope",
    "cavity_phase_offset",
]
