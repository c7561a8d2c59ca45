from __future__ import annotations

from typing import Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .spec import LinearizedSpec, Regime, rwa_rate
from ..model import InitialState


def linearized_resonant_populations(spec: LinearizedSpec, regime: Regime, state: InitialState, t: ArrayLike) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Rotating-wave populations (⟨a†a⟩, ⟨b†b⟩) of the driven mode and resonator, χ = ½|ακg|:

        squeezing:    α² + (N+1) sinh²χt,   N + (N+1) sinh²χt
        mode-mixing:  α² + N sin²χt,        N cos²χt

    A detuned drive transfers nothing within the rotating-wave approximation, so both stay at (α², N).
    """
    t = np.asarray(t, dtype=float)
    alpha2 = spec.alpha[spec.mode] ** 2
    N = float(state.thermal_occupation[spec.resonator])
    chi = rwa_rate(spec)
    if regime == Regime.Squeezing:
        gain = (N + 1.0) * np.sinh(chi * t) ** 2
        return alpha2 + gain, N + gain
    if regime == Regime.ModeMixing:
        swap = np.sin(chi * t) ** 2
        return alpha2 + N * swap, N * (1.0 - swap)
    return np.full_like(t, alpha2), np.full_like(t, N)


def squeezing_invariant(cavity: NDArray[np.float64], mech: NDArray[np.float64], alpha2: float) -> NDArray[np.float64]:
    """⟨δa†δa⟩ − ⟨b†b⟩, conserved by two-mode squeezing."""
    return (cavity - alpha2) - mech


def mode_mixing_invariant(cavity: NDArray[np.float64], mech: NDArray[np.float64], alpha2: float) -> NDArray[np.float64]:
    """⟨δa†δa⟩ + ⟨b†b⟩, conserved by a beam splitter."""
    return (cavity - alpha2) + mech
