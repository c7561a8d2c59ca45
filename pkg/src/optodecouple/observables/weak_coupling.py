from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .coherence import Pair, PairKind
from ..common import ListableEnum, ContractViolation
from ..ffunctions import DriveAmplitudes, f_set_until, definite_integral
from ..model import InitialState, SystemSpec, TimeGrid


class CouplingModel(ListableEnum):
    Full = "full"
    Linearized = "linearized"


def _full_model(state: InitialState, spec: SystemSpec, pair: Pair, t: float, epsilon: float, samples_per_period: int) -> Optional[float]:
    fset = f_set_until(spec, t, samples_per_period)
    amp = DriveAmplitudes.of(state, fset, "weak_coupling_g1")
    m = amp.mu_abs2
    N = amp.thermal

    if pair.kind == PairKind.ModeMode:
        return 1.0 if m[pair.i] > 0 and m[pair.j] > 0 else None

    if pair.kind == PairKind.ModeRes:
        k, p = pair.i, pair.j
        if m[k] == 0:
            return None
        mean = complex(amp.mean_shift(p)[-1])
        if N[p] > 0:
            inner = mean - N[p] * complex(amp.B[k, p, -1])
            return epsilon * abs(inner) / math.sqrt(N[p])
        # zero temperature: both numerator and denominator start at order ε
        second = float(np.real(amp.shift_second_moment(p, p)[-1]))
        return abs(mean) / math.sqrt(second) if second > 0 else None

    p, p2 = pair.i, pair.j
    if p == p2:
        second = float(np.real(amp.shift_second_moment(p, p)[-1]))
        return 1.0 if N[p] > 0 or second > 0 else None
    if N[p] > 0 and N[p2] > 0:
        return 0.0
    cross = abs(complex(amp.shift_second_moment(p, p2)[-1]))
    s1 = float(np.real(amp.shift_second_moment(p, p)[-1]))
    s2 = float(np.real(amp.shift_second_moment(p2, p2)[-1]))
    if N[p] == 0 and N[p2] == 0:
        return cross / math.sqrt(s1 * s2) if s1 > 0 and s2 > 0 else None
    # one thermal resonator, one initially in the vacuum
    s_zero, n_hot = (s1, N[p2]) if N[p] == 0 else (s2, N[p])
    return epsilon * cross / math.sqrt(s_zero * n_hot) if s_zero > 0 else None


def _linearized_model(state: InitialState, spec: SystemSpec, pair: Pair, t: float, epsilon: float, samples_per_period: int) -> Optional[float]:
    if pair.kind == PairKind.ModeMode:
        return 1.0
    if pair.kind == PairKind.ResRes:
        return 1.0 if pair.i == pair.j else 0.0
    k, p = pair.i, pair.j
    detuned = spec.omega_c[k] + spec.omega_m[p]
    grid = TimeGrid.per_period(t, max(detuned, spec.fastest_frequency), samples_per_period)
    g = spec.g_plus[k][p].evaluate(grid.t)
    overlap = definite_integral(g * np.exp(-1j * detuned * grid.t), grid.t)
    return epsilon * math.sqrt(state.thermal_occupation[p]) * abs(overlap)


def weak_coupling_g1(state: InitialState, spec: SystemSpec, pair: Pair, t: float, epsilon: float, model: CouplingModel = CouplingModel.Full, samples_per_period: int = 200) -> Optional[float]:
    """
    Leading order in ε of g⁽¹⁾ when every coupling of `spec` is scaled by ε.

    `spec` holds the unscaled couplings g̃ and λ̃. Mode pairs stay coherent to order ε²; mode-resonator
    coherence grows linearly in ε; resonator pairs decohere only at order ε² when both start thermal.
    Returns None where the leading term is undefined (vacuum mode, no population).
    """
    if not t > 0:
        raise ContractViolation("weak_coupling_g1", f"t must be positive; got {t!r}")
    if model == CouplingModel.Full:
        return _full_model(state, spec, pair, t, epsilon, samples_per_period)
    return _linearized_model(state, spec, pair, t, epsilon, samples_per_period)


def weak_coupling_entropy(state: InitialState, spec: SystemSpec, t: float, epsilon: float, samples_per_period: int = 200) -> float:
    """
    Leading growth of the mixedness, S_N − S_N^in ≈ ε² Σ_p (2 Σ_j |μ_j|² |F̃_j⁽ᵖ⁾|² / cosh 2r_p) / Π_q cosh 2r_q.
    """
    fset = f_set_until(spec, t, samples_per_period)
    amp = DriveAmplitudes.of(state, fset, "weak_coupling_entropy")
    weight = np.abs(amp.B[:, :, -1]) ** 2  # (N, M)
    per_resonator = 2.0 * np.einsum("j,jp->p", amp.mu_abs2, weight) / amp.cosh_2r
    return float(epsilon ** 2 * np.sum(per_resonator) / np.prod(amp.cosh_2r))
