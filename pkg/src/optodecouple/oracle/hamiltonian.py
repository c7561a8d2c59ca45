from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy import sparse

from .fock import FockSpace, Operator, to_dense
from ..model import CouplingSpec, SystemSpec

Term = Tuple[CouplingSpec, Operator]


@dataclass
class OracleHamiltonian:
    """
    H(t) = diag(E) + Σ_j c_j(t) O_j.

    `diagonal` is the free energy Σ ω_c n + Σ ω_m m of every basis state; each term pairs a scalar
    coupling with a fixed Hermitian operator.
    """
    space: FockSpace
    diagonal: NDArray[np.float64]
    terms: List[Term] = field(default_factory=list)

    @property
    def is_time_independent(self) -> bool:
        return all(c.is_constant for c, _ in self.terms)

    @property
    def fastest_frequency(self) -> float:
        """Largest Bohr frequency any term can drive plus the fastest modulation."""
        spread = float(np.max(self.diagonal) - np.min(self.diagonal)) if len(self.diagonal) else 0.0
        drive = max((c.omega_d for c, _ in self.terms if c.is_modulated), default=0.0)
        return spread + abs(drive)

    def coefficients(self, t: float) -> NDArray[np.float64]:
        return np.array([float(c.evaluate(t)) for c, _ in self.terms])

    def matrix(self, t: float) -> Operator:
        h = sparse.diags(self.diagonal.astype(complex), format="csr")
        for value, (_, op) in zip(self.coefficients(t), self.terms):
            if value != 0.0:
                h = h + value * sparse.csr_matrix(op)
        return self.space.finish(h)

    def apply_coupling(self, t: float, psi: NDArray[np.complex128]) -> NDArray[np.complex128]:
        """V(t) ψ with V the coupling part of H(t)."""
        out = np.zeros_like(psi)
        for value, (_, op) in zip(self.coefficients(t), self.terms):
            if value != 0.0:
                out += value * np.asarray(op @ psi)
        return out

    def energy(self, t: float, psi: NDArray[np.complex128]) -> float:
        h_psi = self.diagonal[:, None] * psi + self.apply_coupling(t, psi)
        return float(np.real(np.sum(np.conj(psi) * h_psi)))

    def hermiticity_defect(self, t: float) -> float:
        h = to_dense(self.matrix(t))
        return float(np.max(np.abs(h - h.conj().T)))


def free_diagonal(space: FockSpace, omega_c: List[float], omega_m: List[float]) -> NDArray[np.float64]:
    diagonal = np.zeros(space.dim)
    for k, w in enumerate(omega_c):
        diagonal += w * space.number_diagonal(space.cavity_axis(k))
    for p, w in enumerate(omega_m):
        diagonal += w * space.number_diagonal(space.mech_axis(p))
    return diagonal


def full_hamiltonian(spec: SystemSpec, space: FockSpace) -> OracleHamiltonian:
    """
    H = Σ ω_c,n N_n + Σ ω_m,p b_p†b_p + Σ_p (λ⁺_p B⁺_p + λ⁻_p B⁻_p) + Σ_np N_n (g⁺_np B⁺_p + g⁻_np B⁻_p)

    with B⁺ = b† + b and B⁻ = i(b† − b). Identically zero couplings contribute no term.
    """
    assert space.n_cavity == spec.n_cavity and space.n_mech == spec.n_mech
    terms: List[Term] = []
    for p in range(spec.n_mech):
        axis = space.mech_axis(p)
        b_plus, b_minus = space.quadrature_plus(axis), space.quadrature_minus(axis)
        if not spec.lambda_plus[p].is_zero:
            terms.append((spec.lambda_plus[p], b_plus))
        if not spec.lambda_minus[p].is_zero:
            terms.append((spec.lambda_minus[p], b_minus))
        for n in range(spec.n_cavity):
            photons = sparse.diags(space.number_diagonal(space.cavity_axis(n)))
            if not spec.g_plus[n][p].is_zero:
                terms.append((spec.g_plus[n][p], space.finish(photons @ sparse.csr_matrix(b_plus))))
            if not spec.g_minus[n][p].is_zero:
                terms.append((spec.g_minus[n][p], space.finish(photons @ sparse.csr_matrix(b_minus))))
    return OracleHamiltonian(space, free_diagonal(space, list(spec.omega_c), list(spec.omega_m)), terms)


def build_hamiltonian(spec: SystemSpec, space: FockSpace, t: float) -> Operator:
    return full_hamiltonian(spec, space).matrix(t)
