from .fock import FockSpace, Operator, DENSE_LIMIT, DEFAULT_BUDGET, annihilation_operator
from .initial import FockState, initial_fock_state, coherent_vector, thermal_weights, THERMAL_TOL
from .hamiltonian import OracleHamiltonian, full_hamiltonian, build_hamiltonian, free_diagonal
from .measure import Quantity, measure, population, populations, top_level_populations, mean_amplitude, correlation, coherence, reduced_mech_state, purity, linear_entropy
from .propagate import PropagationMethod, PropagationOptions, Trajectory, propagate, propagate_hamiltonian
from .compare import OracleSettings, oracle_series, trajectory_series, Deviation, ComparisonReport, compare_series, write_comparison

__all__ = [
    "FockSpace",
    "Operator",
    "DENSE_LIMIT",
    "DEFAULT_BUDGET",
    "annihilation_operator",
    "FockState",
    "initial_fock_state",
    "coherent_vector",
    "thermal_weights",
    "THERMAL_TOL",
    "OracleHamiltonian",
    "full_hamiltonian",
    "build_hamiltonian",
    "free_diagonal",
    "Quantity",
    "measure",
    "population",
    "populations",
    "top_level_populations",
    "mean_amplitude",
    "correlation",
    "coherence",
    "reduced_mech_state",
    "purity",
    "linear_entropy",
    "PropagationMethod",
    "PropagationOptions",
    "Trajectory",
    "propagate",
    "propagate_hamiltonian",
    "OracleSettings",
    "oracle_series",
    "trajectory_series",
    "Deviation",
    "ComparisonReport",
    "compare_series",
    "write_comparison",
]
