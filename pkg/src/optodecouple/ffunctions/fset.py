from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

from ..model import TimeGrid

RealArray = NDArray[np.float64]
ComplexArray = NDArray[np.complex128]


@dataclass(frozen=True)
class FSnapshot:
    """All F-functions of one cavity mode coupled to one resonator, at a single time."""
    t: float
    F_m: float
    Fc: float
    Fnn: float
    Fp: float
    Fm_: float
    Fk_plus: float
    Fk_minus: float


@dataclass(frozen=True, eq=False)
class FSet:
    """
    The real decoupling functions sampled on a grid; time is always the last axis.

    F_m       (M, T)        ω_m,p·t
    Fc        (N, M, T)     F̃_c,n⁽ᵖ⁾
    Fnm       (N, N, M, T)  F_nm⁽ᵖ⁾ (not symmetric; see `F_sym`)
    Fp, Fm_   (M, T)        F_+⁽ᵖ⁾, F_−⁽ᵖ⁾ (linear drive λ)
    Fk_plus   (N, M, T)     F_k⁽ᵖ'⁺⁾
    Fk_minus  (N, M, T)     F_k⁽ᵖ'⁻⁾
    """
    grid: TimeGrid
    omega_m: RealArray
    F_m: RealArray
    Fc: RealArray
    Fnm: RealArray
    Fp: RealArray
    Fm_: RealArray
    Fk_plus: RealArray
    Fk_minus: RealArray

    def __post_init__(self) -> None:
        n, m, t = self.Fk_plus.shape
        assert self.F_m.shape == (m, t)
        assert self.Fc.shape == (n, m, t)
        assert self.Fnm.shape == (n, n, m, t)
        assert self.Fp.shape == self.Fm_.shape == (m, t)
        assert self.Fk_minus.shape == (n, m, t)
        assert len(self.grid) == t

    @property
    def t(self) -> RealArray:
        return self.grid.t

    @property
    def n_cavity(self) -> int:
        return self.Fk_plus.shape[0]

    @property
    def n_mech(self) -> int:
        return self.Fk_plus.shape[1]

    def F_res(self, p: int) -> ComplexArray:
        """F⁽ᵖ⁾ = F_− + i F_+."""
        return self.Fm_[p] + 1j * self.Fp[p]

    def F_k(self, k: int, p: int) -> ComplexArray:
        """F_k⁽ᵖ⁾ = F_k⁽ᵖ'⁺⁾ + i F_k⁽ᵖ'⁻⁾."""
        return self.Fk_plus[k, p] + 1j * self.Fk_minus[k, p]

    def F_sym(self, n: int, m: int, p: int) -> RealArray:
        return 0.5 * (self.Fnm[n, m, p] + self.Fnm[m, n, p])

    def phi(self, k: int) -> RealArray:
        """φ_k = ½ Σ_p (F_kk⁽ᵖ⁾ − 2 F_k⁽ᵖ'⁺⁾ F_k⁽ᵖ'⁻⁾)."""
        return 0.5 * np.sum(self.Fnm[k, k] - 2.0 * self.Fk_plus[k] * self.Fk_minus[k], axis=0)

    def delta(self, n: Sequence[int], m: Sequence[int]) -> ComplexArray:
        """Δ⁽ᵖ⁾_{n,m} = Σ_k (n_k − m_k) F_k⁽ᵖ⁾ for every resonator, shape (M, T)."""
        diff = np.asarray(n, dtype=float) - np.asarray(m, dtype=float)
        assert diff.shape == (self.n_cavity,)
        return np.einsum("k,kpt->pt", diff, self.Fk_plus + 1j * self.Fk_minus)

    @property
    def A(self) -> ComplexArray:
        """∫_0^t Λ_p e^{iω_m,p t'} dt' with Λ = λ⁺ + iλ⁻, i.e. F_+ − iF_− = −iF⁽ᵖ⁾; shape (M, T)."""
        return self.Fp - 1j * self.Fm_

    @property
    def B(self) -> ComplexArray:
        """∫_0^t G_kp e^{iω_m,p t'} dt' with G = g⁺ + ig⁻, i.e. conj(F_k⁽ᵖ⁾); shape (N, M, T)."""
        return self.Fk_plus - 1j * self.Fk_minus

    def snapshot(self, t_idx: int, n: int = 0, p: int = 0) -> FSnapshot:
        return FSnapshot(
            float(self.t[t_idx]),
            float(self.F_m[p, t_idx]),
            float(self.Fc[n, p, t_idx]),
            float(self.Fnm[n, n, p, t_idx]),
            float(self.Fp[p, t_idx]),
            float(self.Fm_[p, t_idx]),
            float(self.Fk_plus[n, p, t_idx]),
            float(self.Fk_minus[n, p, t_idx]),
        )

    def max_deviation(self, other: FSet) -> float:
        """Largest absolute difference over every F-function and grid point."""
        assert np.array_equal(self.t, other.t)
        fields = ("F_m", "Fc", "Fnm", "Fp", "Fm_", "Fk_plus", "Fk_minus")
        return max(float(np.max(np.abs(getattr(self, f) - getattr(other, f)), initial=0.0)) for f in fields)
