"""
Sector-resolved quantities shared by the closed-form observables.

On the photon-number sector n = (n_1 .. n_N) resonator p ends up displaced by
β_p(n) = −i (A_p + Σ_k n_k B_kp) in the frame rotating at ω_m,p, and the sector picks up the phase
Φ_p(n) = Σ_k n_k L_kp + Σ_kl n_k n_l Q_klp. Coherent cavity modes make the n_k independent
Poisson variables with means |μ_k|².
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from ..common import ContractViolation
from .fset import FSet
from ..model import InitialState

POPULATION_FLOOR = 1e-300


@dataclass(frozen=True, eq=False)
class DriveAmplitudes:
    A: NDArray[np.complex128]        # (M, T)
    B: NDArray[np.complex128]        # (N, M, T)
    mu: NDArray[np.complex128]       # (N,)
    mu_abs2: NDArray[np.float64]     # (N,)
    thermal: NDArray[np.float64]     # (M,) N_i,p
    cosh_2r: NDArray[np.float64]     # (M,)

    @classmethod
    def of(cls, state: InitialState, fset: FSet, operation: str = "observables") -> DriveAmplitudes:
        if len(state.r) != fset.n_mech:
            raise ContractViolation(operation, f"state has {len(state.r)} thermal parameters for {fset.n_mech} resonators")
        for k in state.coherent:
            if not 0 <= k < fset.n_cavity:
                raise ContractViolation(operation, f"coherent mode {k} is not one of the {fset.n_cavity} cavity modes")
        mu = state.amplitudes(fset.n_cavity)
        return cls(fset.A, fset.B, mu, np.abs(mu) ** 2, state.thermal_occupation, state.cosh_2r)

    def mean_shift(self, p: int) -> NDArray[np.complex128]:
        """E[A_p + Σ_k n_k B_kp] over the photon statistics, shape (T,)."""
        return self.A[p] + np.einsum("k,kt->t", self.mu_abs2, self.B[:, p])

    def shift_second_moment(self, p: int, q: int) -> NDArray[np.complex128]:
        """E[conj(A_p + Σ n B_p) (A_q + Σ n B_q)], shape (T,)."""
        m = self.mu_abs2
        Ap, Aq = self.A[p], self.A[q]
        Bp, Bq = self.B[:, p], self.B[:, q]
        value = np.conj(Ap) * Aq
        value = value + np.einsum("k,kt->t", m, np.conj(Ap)[None, :] * Bq + np.conj(Bp) * Aq[None, :])
        # E[n_k n_l] = m_k m_l + δ_kl m_k
        cross = np.einsum("k,l,kt,lt->t", m, m, np.conj(Bp), Bq)
        diag = np.einsum("k,kt->t", m, np.conj(Bp) * Bq)
        return value + cross + diag


def linear_phase(fset: FSet) -> NDArray[np.float64]:
    """L_kp = −F̃_c,k + F_+ F_k⁽ᵖ'⁻⁾ + F_k⁽ᵖ'⁺⁾ F_−, shape (N, M, T)."""
    return -fset.Fc + fset.Fp[None] * fset.Fk_minus + fset.Fk_plus * fset.Fm_[None]


def quadratic_phase(fset: FSet) -> NDArray[np.float64]:
    """Q_klp = ½(F_k⁺F_l⁻ + F_l⁺F_k⁻) − ½ F_{kl}, symmetric in (k, l), shape (N, N, M, T)."""
    fp, fm = fset.Fk_plus, fset.Fk_minus
    product = fp[:, None] * fm[None, :] + fp[None, :] * fm[:, None]
    sym = 0.5 * (fset.Fnm + np.swapaxes(fset.Fnm, 0, 1))
    return 0.5 * product - 0.5 * sym


def phase_slope(fset: FSet, k: int) -> NDArray[np.float64]:
    """
    c_j⁽ᵏ⁾ = Σ_p (2 F_k⁽ᵖ'⁺⁾ F_j⁽ᵖ'⁻⁾ − F_{kj}⁽ᵖ⁾), shape (N, T).

    The Heisenberg operator of mode k carries the photon-number phase exp(i Σ_j n_j c_j⁽ᵏ⁾);
    for a single mode c_k⁽ᵏ⁾ = −2φ_k.
    """
    sym = 0.5 * (fset.Fnm[k] + fset.Fnm[:, k])
    return np.sum(2.0 * fset.Fk_plus[k][None] * fset.Fk_minus - sym, axis=1)


def cavity_phase_offset(fset: FSet, amp: DriveAmplitudes, k: int) -> NDArray[np.float64]:
    """Θ_k = Σ_p (L_kp + Q_kkp + Im(conj(A_p) B_kp)), shape (T,)."""
    L = linear_phase(fset)[k]
    Q = quadratic_phase(fset)[k, k]
    return np.sum(L + Q + np.imag(np.conj(amp.A) * amp.B[k]), axis=0)
