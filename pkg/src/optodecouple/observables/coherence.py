from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from .populations import mech_population_series
from ..common import ListableEnum, ContractViolation
from ..ffunctions import FSet, DriveAmplitudes, POPULATION_FLOOR, phase_slope
from ..model import InitialState


class PairKind(ListableEnum):
    ModeMode = "cc"
    ModeRes = "cm"
    ResRes = "mm"


@dataclass(frozen=True)
class Pair:
    """Two subsystems whose mutual first-order coherence is wanted; `i`, `j` index modes or resonators per `kind`."""
    kind: PairKind
    i: int
    j: int

    @classmethod
    def mode_mode(cls, k: int, k2: int) -> Pair:
        return cls(PairKind.ModeMode, k, k2)

    @classmethod
    def mode_res(cls, k: int, p: int) -> Pair:
        return cls(PairKind.ModeRes, k, p)

    @classmethod
    def res_res(cls, p: int, p2: int) -> Pair:
        return cls(PairKind.ResRes, p, p2)

    @classmethod
    def parse(cls, text: str) -> Pair:
        """`cc:0:1`, `cm:0:1` or `mm:0:1`."""
        parts = [s.strip() for s in text.split(":")]
        if len(parts) != 3:
            raise ValueError(f"pair must look like 'cm:k:p'; got {text!r}")
        kind = PairKind(parts[0])
        return cls(kind, int(parts[1]), int(parts[2]))

    @property
    def column(self) -> str:
        return f"g1_{self.kind.value}[{self.i}][{self.j}]"

    def __str__(self) -> str:
        return f"{self.kind.value}:{self.i}:{self.j}"


def _masked_ratio(numerator: NDArray[np.float64], denominator: NDArray[np.float64]) -> np.ma.MaskedArray:
    undefined = denominator <= POPULATION_FLOOR
    safe = np.where(undefined, 1.0, denominator)
    return np.ma.masked_array(numerator / safe, mask=undefined)


def _check_pair(fset: FSet, pair: Pair, operation: str) -> None:
    counts = {PairKind.ModeMode: (fset.n_cavity, fset.n_cavity), PairKind.ModeRes: (fset.n_cavity, fset.n_mech), PairKind.ResRes: (fset.n_mech, fset.n_mech)}
    a, b = counts[pair.kind]
    if not (0 <= pair.i < a and 0 <= pair.j < b):
        raise ContractViolation(operation, f"pair {pair} out of range")


def g1_series(state: InitialState, fset: FSet, pair: Pair) -> np.ma.MaskedArray:
    """
    |⟨d_m†d_n⟩| / sqrt(⟨d_m†d_m⟩⟨d_n†d_n⟩) over the whole grid.

    Entries whose denominator vanishes (vacuum mode, resonator with no population) are masked;
    they stand for an undefined coherence rather than a number.
    """
    _check_pair(fset, pair, "g1")
    amp = DriveAmplitudes.of(state, fset, "g1")
    m = amp.mu_abs2
    n_t = len(fset.t)

    if pair.kind == PairKind.ModeMode:
        k, k2 = pair.i, pair.j
        den = np.full(n_t, m[k] * m[k2])
        if k == k2:
            return _masked_ratio(den, den)
        dc = phase_slope(fset, k2) - phase_slope(fset, k)
        photon = np.exp(-2.0 * np.einsum("j,jt->t", m, np.sin(0.5 * dc) ** 2))
        thermal = np.exp(-0.5 * np.einsum("p,pt->t", amp.cosh_2r, np.abs(amp.B[k] - amp.B[k2]) ** 2))
        return _masked_ratio(np.sqrt(den) * photon * thermal, np.sqrt(den))

    if pair.kind == PairKind.ModeRes:
        k, p = pair.i, pair.j
        c = phase_slope(fset, k)
        photon = np.exp(-2.0 * np.einsum("j,jt->t", m, np.sin(0.5 * c) ** 2))
        thermal = np.exp(-0.5 * np.einsum("q,qt->t", amp.cosh_2r, np.abs(amp.B[k]) ** 2))
        inner = amp.A[p] - amp.thermal[p] * amp.B[k, p] + np.einsum("j,jt->t", m, amp.B[:, p] * np.exp(-1j * c))
        numerator = np.sqrt(m[k]) * photon * np.abs(inner) * thermal
        denominator = np.sqrt(m[k] * np.maximum(mech_population_series(state, fset, p), 0.0))
        return _masked_ratio(numerator, denominator)

    p, p2 = pair.i, pair.j
    pop = np.maximum(mech_population_series(state, fset, p), 0.0)
    if p == p2:
        return _masked_ratio(pop, pop)
    pop2 = np.maximum(mech_population_series(state, fset, p2), 0.0)
    # thermal parts are independent with zero mean, so only the displacements correlate
    numerator = np.abs(amp.shift_second_moment(p, p2))
    return _masked_ratio(numerator, np.sqrt(pop * pop2))


def g1(state: InitialState, fset: FSet, pair: Pair, t_idx: int) -> Optional[float]:
    """g⁽¹⁾ of `pair` at one grid point; None when the coherence is undefined there."""
    value = g1_series(state, fset, pair)[t_idx]
    return None if value is np.ma.masked else float(value)


def _single_mode(state: InitialState, fset: FSet) -> int:
    modes = state.coherent_modes
    if len(modes) != 1:
        raise ContractViolation("g1_single_mode", f"exactly one coherent mode is required; got {len(modes)}")
    if np.any(fset.Fp != 0.0) or np.any(fset.Fm_ != 0.0):
        raise ContractViolation("g1_single_mode", "the compact forms hold without linear drive (F_+ = F_- = 0)")
    return modes[0]


def g1_single_mode_series(state: InitialState, fset: FSet, pair: Pair) -> np.ma.MaskedArray:
    """
    Compact forms for a single coherent mode k̃ and no linear drive:

    mode-res:  |F_p'| |N_p' − |μ|² e^{2iφ}| e^{−2|μ|² sin²φ} Π_p e^{−½(1+2N_p)|F_p|²} / sqrt(N_p' + |F_p'|²|μ|²(1+|μ|²))
    res-res:   |F_p||F_p'| (|μ|²+|μ|⁴) / sqrt(Π_{q=p,p'} (N_q + |F_q|²(|μ|²+|μ|⁴)))

    with F_p = F_k̃⁽ᵖ⁾ and φ = φ_k̃.
    """
    k = _single_mode(state, fset)
    _check_pair(fset, pair, "g1_single_mode")
    m = abs(state.mu(k)) ** 2
    N = state.thermal_occupation
    weight = np.abs(fset.B[k]) ** 2  # |F_k̃⁽ᵖ⁾|², (M, T)

    if pair.kind == PairKind.ModeRes:
        if pair.i != k:
            raise ContractViolation("g1_single_mode", f"mode {pair.i} is not the coherent mode {k}")
        p = pair.j
        phi = fset.phi(k)
        suppression = np.exp(-2.0 * m * np.sin(phi) ** 2) * np.exp(-0.5 * np.einsum("p,pt->t", 1.0 + 2.0 * N, weight))
        numerator = np.sqrt(weight[p]) * np.abs(N[p] - m * np.exp(2j * phi)) * suppression
        return _masked_ratio(numerator, np.sqrt(N[p] + weight[p] * m * (1.0 + m)))

    if pair.kind == PairKind.ResRes:
        p, p2 = pair.i, pair.j
        s = m + m * m
        pop, pop2 = N[p] + weight[p] * s, N[p2] + weight[p2] * s
        if p == p2:
            return _masked_ratio(pop, pop)
        return _masked_ratio(np.sqrt(weight[p] * weight[p2]) * s, np.sqrt(pop * pop2))

    raise ContractViolation("g1_single_mode", "only mode-resonator and resonator-resonator pairs have compact forms")


def g1_single_mode(state: InitialState, fset: FSet, pair: Pair, t_idx: int) -> Optional[float]:
    value = g1_single_mode_series(state, fset, pair)[t_idx]
    return None if value is np.ma.masked else float(value)
