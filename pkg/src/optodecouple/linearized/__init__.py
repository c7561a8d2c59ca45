from .spec import LinearizedSpec, Regime, detect_regime, rwa_rate
from .resonant import linearized_resonant_populations, squeezing_invariant, mode_mixing_invariant
from .modulated import modulation_overlap, full_model_modulated_populations, modulated_resonant_asymptote
from .scan import PopulationModel, GrowthLabel, ScanRow, ScanReport, growth_exponent, classify, resonance_scan, RESONANT_EXPONENT
from .oracle import linearized_hamiltonian, linearized_oracle_populations

__all__ = [
    "LinearizedSpec",
    "Regime",
    "detect_regime",
    "rwa_rate",
    "linearized_resonant_populations",
    "squeezing_invariant",
    "mode_mixing_invariant",
    "modulation_overlap",
    "full_model_modulated_populations",
    "modulated_resonant_asymptote",
    "PopulationModel",
    "GrowthLabel",
    "ScanRow",
    "ScanReport",
    "growth_exponent",
    "classify",
    "resonance_scan",
    "RESONANT_EXPONENT",
    "linearized_hamiltonian",
    "linearized_oracle_populations",
]
