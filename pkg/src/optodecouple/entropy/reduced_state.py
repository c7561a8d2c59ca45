from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from numpy.typing import NDArray

from ..common import TruncationWarning, ContractViolation
from ..ffunctions import FSet, DriveAmplitudes
from ..model import InitialState
from ..special import poisson_log_pmf, poisson_tail, poisson_cutoff

TRUNCATION_TOL = 1e-12
TRUNCATION_WARN = 1e-6


@dataclass(frozen=True)
class EnsembleTerm:
    occupations: Tuple[int, ...]       # photon numbers of every cavity mode
    weight: float                      # Π_k Poisson(n_k; |μ_k|²)
    displacement: NDArray[np.complex128]  # (M,) shift of each resonator's thermal state


@dataclass
class ReducedStateEnsemble:
    """
    ρ_m(t) = Σ_n p_n D(β(n)) ρ_m^th D(β(n))† with the photon-sector phases dropped.

    Displacements are lab-frame coefficients of b_p†, β_p(n) = −i e^{−iω_m,p t}(A_p + Σ_k n_k B_kp),
    so that ⟨b_p⟩ = Σ_n p_n β_p(n). `truncated_mass` is the exact Poisson tail beyond `truncation`.
    """
    terms: List[EnsembleTerm] = field(default_factory=list)
    truncation: int = 0
    truncated_mass: float = 0.0

    @property
    def weights(self) -> NDArray[np.float64]:
        return np.array([t.weight for t in self.terms])

    @property
    def displacements(self) -> NDArray[np.complex128]:
        return np.array([t.displacement for t in self.terms])

    @property
    def occupations(self) -> NDArray[np.int64]:
        return np.array([t.occupations for t in self.terms], dtype=int)

    def __len__(self) -> int:
        return len(self.terms)


def sector_weights(state: InitialState, n_cavity: int, truncation: Optional[int] = None) -> Tuple[List[Tuple[int, ...]], NDArray[np.float64], int, float]:
    """
    Photon sectors with Σ_k n_k ≤ truncation over the coherent modes and their Poisson weights.

    The total photon number is Poisson with mean Σ|μ_k|², which fixes both the automatic truncation
    and the exact truncated mass. Returns (sectors, weights, truncation, truncated_mass).
    """
    mu_abs2 = np.abs(state.amplitudes(n_cavity)) ** 2
    total = float(np.sum(mu_abs2))
    if truncation is None:
        truncation = poisson_cutoff(total, TRUNCATION_TOL)
    if truncation < 0:
        raise ContractViolation("reduced_state", f"truncation must be non-negative; got {truncation}")
    active = [k for k in range(n_cavity) if mu_abs2[k] > 0]
    sectors: List[Tuple[int, ...]] = []
    weights: List[float] = []
    for counts in itertools.product(range(truncation + 1), repeat=len(active)):
        if sum(counts) > truncation:
            continue
        n = [0] * n_cavity
        for k, c in zip(active, counts):
            n[k] = c
        sectors.append(tuple(n))
        weights.append(math.exp(math.fsum(poisson_log_pmf(c, mu_abs2[k]) for k, c in zip(active, counts))))
    mass = poisson_tail(total, truncation)
    if mass > TRUNCATION_WARN:
        warnings.warn(TruncationWarning(mass, poisson_cutoff(total, TRUNCATION_TOL)))
    return sectors, np.array(weights), truncation, mass


def reduced_state(state: InitialState, fset: FSet, t_idx: int, truncation: Optional[int] = None) -> ReducedStateEnsemble:
    amp = DriveAmplitudes.of(state, fset, "reduced_state")
    sectors, weights, truncation, mass = sector_weights(state, fset.n_cavity, truncation)
    rotation = np.exp(-1j * fset.F_m[:, t_idx])
    A, B = amp.A[:, t_idx], amp.B[:, :, t_idx]
    terms = []
    for n, w in zip(sectors, weights):
        shift = A + np.asarray(n, dtype=float) @ B
        terms.append(EnsembleTerm(n, float(w), -1j * rotation * shift))
    return ReducedStateEnsemble(terms, truncation, mass)
