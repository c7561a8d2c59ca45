from __future__ import annotations

import math
import warnings
from typing import Tuple

import numpy as np
from numpy.typing import NDArray

from .closed_form import closed_form_f_set
from .fset import FSet
from .quadrature import QuadratureRule, cumulative_integral
from ..common import CoarseGridWarning
from ..model import SystemSpec, TimeGrid

MIN_SAMPLES_PER_PERIOD = 20


def evaluate_couplings(spec: SystemSpec, t: NDArray[np.float64]) -> Tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """g⁺ (N, M, T), g⁻ (N, M, T), λ⁺ (M, T), λ⁻ (M, T) on the sample times."""
    g_plus = np.array([[c.evaluate(t) for c in row] for row in spec.g_plus]).reshape(spec.n_cavity, spec.n_mech, len(t))
    g_minus = np.array([[c.evaluate(t) for c in row] for row in spec.g_minus]).reshape(spec.n_cavity, spec.n_mech, len(t))
    lam_plus = np.array([c.evaluate(t) for c in spec.lambda_plus]).reshape(spec.n_mech, len(t))
    lam_minus = np.array([c.evaluate(t) for c in spec.lambda_minus]).reshape(spec.n_mech, len(t))
    return g_plus, g_minus, lam_plus, lam_minus


def check_grid_resolution(spec: SystemSpec, grid: TimeGrid) -> None:
    fastest = spec.fastest_frequency
    if fastest <= 0 or len(grid) < 2:
        return
    period = 2 * math.pi / fastest
    samples = period / grid.max_step
    if samples < MIN_SAMPLES_PER_PERIOD:
        warnings.warn(CoarseGridWarning(samples, period / MIN_SAMPLES_PER_PERIOD))


def compute_f_set(spec: SystemSpec, grid: TimeGrid, rule: QuadratureRule = QuadratureRule.Simpson) -> FSet:
    """
    Every F-function on `grid` by cumulative quadrature.

    With c(t) = x⁺cos ω t − x⁻sin ω t and s(t) = x⁺sin ω t + x⁻cos ω t built from a coupling pair
    (x⁺, x⁻) = (g⁺_np, g⁻_np) or (λ⁺_p, λ⁻_p):

        F_n⁽ᵖ'⁺⁾ = ∫ c_n      F_n⁽ᵖ'⁻⁾ = −∫ s_n      F_+ = ∫ c_λ      F_− = −∫ s_λ
        F_nm    = −4 ∫ s_m F_n⁽ᵖ'⁺⁾
        F̃_c,n   = −2 ∫ s_λ F_n⁽ᵖ'⁺⁾ − 2 ∫ s_n F_+

    The outer integrals run over the stored cumulative inner integrals, one pass per function.
    """
    check_grid_resolution(spec, grid)
    t = grid.t
    n_cav, n_mech, n_t = spec.n_cavity, spec.n_mech, len(t)
    g_plus, g_minus, lam_plus, lam_minus = evaluate_couplings(spec, t)

    F_m = np.empty((n_mech, n_t))
    Fc = np.empty((n_cav, n_mech, n_t))
    Fnm = np.empty((n_cav, n_cav, n_mech, n_t))
    Fp = np.empty((n_mech, n_t))
    Fm_ = np.empty((n_mech, n_t))
    Fk_plus = np.empty((n_cav, n_mech, n_t))
    Fk_minus = np.empty((n_cav, n_mech, n_t))

    for p, omega in enumerate(spec.omega_m):
        cos, sin = np.cos(omega * t), np.sin(omega * t)
        c_g = g_plus[:, p] * cos - g_minus[:, p] * sin
        s_g = g_plus[:, p] * sin + g_minus[:, p] * cos
        c_l = lam_plus[p] * cos - lam_minus[p] * sin
        s_l = lam_plus[p] * sin + lam_minus[p] * cos

        F_m[p] = omega * t
        Fk_plus[:, p] = cumulative_integral(c_g, t, rule)
        Fk_minus[:, p] = -cumulative_integral(s_g, t, rule)
        Fp[p] = cumulative_integral(c_l, t, rule)
        Fm_[p] = -cumulative_integral(s_l, t, rule)
        # [n, m] entry integrates s_m · F_n⁽ᵖ'⁺⁾
        Fnm[:, :, p] = -4.0 * cumulative_integral(Fk_plus[:, p][:, None, :] * s_g[None, :, :], t, rule)
        Fc[:, p] = -2.0 * cumulative_integral(s_l[None, :] * Fk_plus[:, p] + s_g * Fp[p][None, :], t, rule)

    return FSet(grid, np.asarray(spec.omega_m, dtype=float), F_m, Fc, Fnm, Fp, Fm_, Fk_plus, Fk_minus)


def f_set_until(spec: SystemSpec, t_end: float, samples_per_period: int = 200, omega: float = 0.0) -> FSet:
    """
    An FSet whose last sample sits at t_end.

    Time-constant systems use the closed form on the two points {0, t_end}; anything else is
    integrated on a uniform grid resolving max(fastest frequency, omega).
    """
    if spec.is_time_independent:
        return closed_form_f_set(spec, TimeGrid.from_times([0.0, t_end]))
    fastest = max(spec.fastest_frequency, omega)
    return compute_f_set(spec, TimeGrid.per_period(t_end, fastest, samples_per_period))
