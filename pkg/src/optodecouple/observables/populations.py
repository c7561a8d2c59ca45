from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from ..ffunctions import FSet, DriveAmplitudes, phase_slope, cavity_phase_offset
from ..model import InitialState, SystemSpec


def cavity_population(state: InitialState, k: int) -> float:
    """⟨a_k†a_k⟩ = |μ_k|²; photon numbers are conserved."""
    return abs(state.mu(k)) ** 2


def mech_population_series(state: InitialState, fset: FSet, p: int) -> NDArray[np.float64]:
    """
    ⟨b_p†b_p⟩(t) = N_i,p + |A|² + 2 Σ_k Re(A* B_k)|μ_k|² + Σ_k |B_k|²(|μ_k|² + |μ_k|⁴)
                 + 2 Σ_{k>l} Re(B_k B_l*) |μ_k|²|μ_l|²
    """
    amp = DriveAmplitudes.of(state, fset, "mech_population")
    A, B, m = amp.A[p], amp.B[:, p], amp.mu_abs2
    value = amp.thermal[p] + np.abs(A) ** 2
    value = value + 2.0 * np.einsum("k,kt->t", m, np.real(np.conj(A)[None] * B))
    value = value + np.einsum("k,kt->t", m + m * m, np.abs(B) ** 2)
    for k in range(len(m)):
        for l in range(k):
            value = value + 2.0 * np.real(B[k] * np.conj(B[l])) * m[k] * m[l]
    return np.asarray(value, dtype=float)


def mech_population(state: InitialState, fset: FSet, p: int, t_idx: int) -> float:
    return float(mech_population_series(state, fset, p)[t_idx])


def cavity_amplitude_series(spec: SystemSpec, state: InitialState, fset: FSet, k: int) -> NDArray[np.complex128]:
    """
    ⟨a_k(t)⟩ = e^{−iω_c,k t} μ_k e^{iΘ_k} Π_j exp[|μ_j|²(e^{i c_j⁽ᵏ⁾} − 1)] Π_p exp[−½ cosh 2r_p |B_kp|²]
    """
    amp = DriveAmplitudes.of(state, fset, "cavity_amplitude")
    t = fset.t
    slope = phase_slope(fset, k)
    photon = np.exp(np.einsum("j,jt->t", amp.mu_abs2, np.exp(1j * slope) - 1.0))
    thermal = np.exp(-0.5 * np.einsum("p,pt->t", amp.cosh_2r, np.abs(amp.B[k]) ** 2))
    offset = np.exp(1j * cavity_phase_offset(fset, amp, k))
    return np.exp(-1j * spec.omega_c[k] * t) * amp.mu[k] * offset * photon * thermal


def cavity_amplitude(spec: SystemSpec, state: InitialState, fset: FSet, k: int, t_idx: int) -> complex:
    return complex(cavity_amplitude_series(spec, state, fset, k)[t_idx])


def mech_amplitude_series(state: InitialState, fset: FSet, p: int) -> NDArray[np.complex128]:
    """⟨b_p(t)⟩ = −i e^{−iω_m,p t} (A_p + Σ_k |μ_k|² B_kp); the thermal part has zero mean."""
    amp = DriveAmplitudes.of(state, fset, "mech_amplitude")
    return -1j * np.exp(-1j * fset.F_m[p]) * amp.mean_shift(p)


def mech_amplitude(state: InitialState, fset: FSet, p: int, t_idx: int) -> complex:
    return complex(mech_amplitude_series(state, fset, p)[t_idx])
