from __future__ import annotations

from typing import Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..common import ContractViolation
from ..model import CouplingKind, CouplingSpec, InitialState, SystemSpec


def _phase_integral(nu: float, t: NDArray[np.float64]) -> NDArray[np.complex128]:
    """∫₀ᵗ e^{iνs} ds, exact at ν = 0."""
    return t * np.sinc(nu * t / (2.0 * np.pi)) * np.exp(0.5j * nu * t)


def modulation_overlap(coupling: CouplingSpec, omega: float, t: ArrayLike) -> NDArray[np.complex128]:
    """∫₀ᵗ g(s) e^{−iωs} ds for constant and modulated couplings, in closed form."""
    t = np.asarray(t, dtype=float)
    base = _phase_integral(-omega, t)
    if coupling.kind == CouplingKind.Constant:
        return coupling.base * base
    w = coupling.omega_d
    up, down = _phase_integral(w - omega, t), _phase_integral(-w - omega, t)
    if coupling.kind == CouplingKind.ModulatedSin:
        return coupling.base * (base + coupling.kappa * (up - down) / 2j)
    if coupling.kind == CouplingKind.ModulatedCos:
        return coupling.base * (base + coupling.kappa * (up + down) / 2.0)
    raise ContractViolation("modulation_overlap", "tabulated couplings have no closed-form overlap; use the quadrature F-functions")


def _single_mode(state: InitialState, mode: Optional[int]) -> int:
    modes = state.coherent_modes
    if len(modes) != 1:
        raise ContractViolation("full_model_modulated_populations", f"exactly one coherent mode is required; got {len(modes)}")
    if mode is not None and mode != modes[0]:
        raise ContractViolation("full_model_modulated_populations", f"mode {mode} is not the coherent mode {modes[0]}")
    return modes[0]


def full_model_modulated_populations(spec: SystemSpec, state: InitialState, t: ArrayLike, mode: Optional[int] = None, resonator: int = 0) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Exact (⟨a†a⟩, ⟨b†b⟩) of the nonlinear model for one coherent mode k̃ and a modulated g_k̃p(t):

        ⟨a†a⟩ = |μ|²
        ⟨b†b⟩ = N + |∫₀ᵗ g(s) e^{−iω_m s} ds|² (|μ|² + |μ|⁴)

    This is the general population formula with F_k̃ = conj(overlap) and no linear drive.
    """
    k = _single_mode(state, mode)
    p = resonator
    if not spec.g_minus[k][p].is_zero or not spec.lambda_plus[p].is_zero or not spec.lambda_minus[p].is_zero:
        raise ContractViolation("full_model_modulated_populations", "only the radiation-pressure coupling g⁺ may act on the resonator")
    t = np.asarray(t, dtype=float)
    m = abs(state.mu(k)) ** 2
    N = float(state.thermal_occupation[p])
    overlap = modulation_overlap(spec.g_plus[k][p], spec.omega_m[p], t)
    return np.full_like(t, m), N + np.abs(overlap) ** 2 * (m + m * m)


def modulated_resonant_asymptote(spec: SystemSpec, state: InitialState, t: ArrayLike, mode: Optional[int] = None, resonator: int = 0) -> NDArray[np.float64]:
    """Leading secular growth at ω_d = ω_m: N + ¼ g²κ² (|μ|² + |μ|⁴) t²."""
    k = _single_mode(state, mode)
    c = spec.g_plus[k][resonator]
    t = np.asarray(t, dtype=float)
    m = abs(state.mu(k)) ** 2
    return float(state.thermal_occupation[resonator]) + 0.25 * (c.base * c.kappa) ** 2 * (m + m * m) * t ** 2
