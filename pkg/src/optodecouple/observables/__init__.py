from .populations import cavity_population, mech_population, mech_population_series, cavity_amplitude, cavity_amplitude_series, mech_amplitude, mech_amplitude_series
from .coherence import PairKind, Pair, g1, g1_series, g1_single_mode, g1_single_mode_series
from .weak_coupling import CouplingModel, weak_coupling_g1, weak_coupling_entropy
from .series import ObservableSeries, observable_series, analytic_f_set
from .writer import series_as_dict, write_series_csv, write_series_json

__all__ = [
    "cavity_population",
    "mech_population",
    "mech_population_series",
    "cavity_amplitude",
    "cavity_amplitude_series",
    "mech_amplitude",
    "mech_amplitude_series",
    "PairKind",
    "Pair",
    "g1",
    "g1_series",
    "g1_single_mode",
    "g1_single_mode_series",
    "CouplingModel",
    "weak_coupling_g1",
    "weak_coupling_entropy",
    "ObservableSeries",
    "observable_series",
    "analytic_f_set",
    "series_as_dict",
    "write_series_csv",
    "write_series_json",
]
