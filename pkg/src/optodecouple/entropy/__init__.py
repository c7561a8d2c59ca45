from .reduced_state import ReducedStateEnsemble, EnsembleTerm, reduced_state, sector_weights, TRUNCATION_TOL, TRUNCATION_WARN
from .linear_entropy import EntropyForm, linear_entropy, linear_entropy_series, linear_entropy_single_mode, lambda_alpha, lambda_alpha_direct

__all__ = [
    "ReducedStateEnsemble",
    "EnsembleTerm",
    "reduced_state",
    "sector_weights",
    "TRUNCATION_TOL",
    "TRUNCATION_WARN",
    "EntropyForm",
    "linear_entropy",
    "linear_entropy_series",
    "linear_entropy_single_mode",
    "lambda_alpha",
    "lambda_alpha_direct",
]
