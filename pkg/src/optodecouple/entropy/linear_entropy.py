from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from .reduced_state import sector_weights
from ..common import ListableEnum, ContractViolation
from ..ffunctions import FSet, DriveAmplitudes
from ..model import InitialState
from ..special import bessel_i_scaled, bessel_order_cutoff, poisson_pmf, poisson_cutoff

BESSEL_TOL = 1e-14


class EntropyForm(ListableEnum):
    Split = "split"
    Direct = "direct"


def _pair_kernel(sectors: Sequence[Sequence[int]], B_t: NDArray[np.complex128], cosh_2r: NDArray[np.float64]) -> NDArray[np.float64]:
    """Π_p exp[−|Δ⁽ᵖ⁾_{n,m}|² / cosh 2r_p] for every pair of sectors."""
    shifts = np.asarray(sectors, dtype=float) @ B_t  # (S, M): Σ_k n_k B_kp
    delta = shifts[:, None, :] - shifts[None, :, :]
    return np.exp(-np.sum(np.abs(delta) ** 2 / cosh_2r[None, None, :], axis=-1))


def _entropy_from_kernel(weights: NDArray[np.float64], kernel: NDArray[np.float64], cosh_2r: NDArray[np.float64], s_in: float, form: EntropyForm) -> float:
    outer = weights[:, None] * weights[None, :]
    norm = float(np.prod(cosh_2r))
    if form == EntropyForm.Direct:
        return 1.0 - math.fsum((outer * kernel).ravel()) / norm
    return s_in + math.fsum((outer * (1.0 - kernel)).ravel()) / norm


def linear_entropy_series(state: InitialState, fset: FSet, truncation: Optional[int] = None, form: EntropyForm = EntropyForm.Split) -> NDArray[np.float64]:
    """S_N at every grid point; the Poisson weights are shared by all times."""
    amp = DriveAmplitudes.of(state, fset, "linear_entropy")
    sectors, weights, _, _ = sector_weights(state, fset.n_cavity, truncation)
    s_in = state.initial_linear_entropy
    out = np.empty(len(fset.t))
    for i in range(len(fset.t)):
        kernel = _pair_kernel(sectors, amp.B[:, :, i], amp.cosh_2r)
        out[i] = _entropy_from_kernel(weights, kernel, amp.cosh_2r, s_in, form)
    return out


def linear_entropy(state: InitialState, fset: FSet, t_idx: int, truncation: Optional[int] = None, form: EntropyForm = EntropyForm.Split) -> float:
    """
    Linear entropy 1 − Tr ρ_m² of the resonators.

    Direct:  1 − Σ_{n,m} p_n p_m Π_p exp[−|Δ⁽ᵖ⁾_{n,m}|²/cosh 2r_p] / Π_p cosh 2r_p
    Split:   S_N^in + Σ_{n,m} p_n p_m (1 − Π_p exp[−|Δ⁽ᵖ⁾_{n,m}|²/cosh 2r_p]) / Π_p cosh 2r_p

    Both double sums run over the photon sectors kept by `truncation` (automatic when None).
    """
    amp = DriveAmplitudes.of(state, fset, "linear_entropy")
    sectors, weights, _, _ = sector_weights(state, fset.n_cavity, truncation)
    kernel = _pair_kernel(sectors, amp.B[:, :, t_idx], amp.cosh_2r)
    return _entropy_from_kernel(weights, kernel, amp.cosh_2r, state.initial_linear_entropy, form)


def _single_coherent_mode(state: InitialState) -> int:
    modes = state.coherent_modes
    if len(modes) != 1:
        raise ContractViolation("linear_entropy_single_mode", f"exactly one coherent mode is required; got {len(modes)}")
    return modes[0]


def lambda_alpha(alpha: float, mu_abs2: float, m_max: Optional[int] = None) -> float:
    """Λ_α = 1 − 2 e^{−2|μ|²} Σ_{d ≥ 1} I_d(2|μ|²)(1 − e^{−α d²})."""
    z = 2.0 * mu_abs2
    if m_max is None:
        m_max = bessel_order_cutoff(z, BESSEL_TOL)
    terms = [bessel_i_scaled(d, z) * -math.expm1(-alpha * d * d) for d in range(1, m_max + 1)]
    return 1.0 - 2.0 * math.fsum(terms)


def lambda_alpha_direct(alpha: float, mu_abs2: float, n_max: Optional[int] = None) -> float:
    """The defining double sum Σ_{n,m} Poisson(n) Poisson(m) e^{−α(n−m)²}."""
    if n_max is None:
        n_max = max(40, poisson_cutoff(mu_abs2, 1e-17))
    p = np.array([poisson_pmf(n, mu_abs2) for n in range(n_max + 1)])
    n = np.arange(n_max + 1)
    kernel = np.exp(-alpha * (n[:, None] - n[None, :]) ** 2)
    return math.fsum((p[:, None] * p[None, :] * kernel).ravel())


def linear_entropy_single_mode(state: InitialState, fset: FSet, t_idx: int, m_max: Optional[int] = None) -> float:
    """
    S_N = S_N^in + (1 − Λ_α) / Π_p cosh 2r_p with α = Σ_p |F_k̃⁽ᵖ⁾|² / cosh 2r_p.

    The Bessel series stops at m_max; by default where e^{−2|μ|²} I_m(2|μ|²) drops below 1e-14.
    """
    k = _single_coherent_mode(state)
    amp = DriveAmplitudes.of(state, fset, "linear_entropy_single_mode")
    alpha = float(np.sum(np.abs(amp.B[k, :, t_idx]) ** 2 / amp.cosh_2r))
    correction = 1.0 - lambda_alpha(alpha, float(amp.mu_abs2[k]), m_max)
    return state.initial_linear_entropy + correction / float(np.prod(amp.cosh_2r))
