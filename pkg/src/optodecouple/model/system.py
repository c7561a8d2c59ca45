from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Tuple, Sequence, Optional, Iterable

from .coupling import CouplingSpec, CouplingLike, as_coupling, CouplingKind

CouplingMatrix = Tuple[Tuple[CouplingSpec, ...], ...]
CouplingVector = Tuple[CouplingSpec, ...]


@dataclass(frozen=True)
class SystemSpec:
    """
    Frequencies and couplings of the multimode, multiresonator Hamiltonian

        H = Σ_n ω_c,n N_n + Σ_p ω_m,p b_p†b_p + Σ_p (λ⁺_p B⁺_p + λ⁻_p B⁻_p) + Σ_np N_n (g⁺_np B⁺_p + g⁻_np B⁻_p)

    with B⁺ = b† + b and B⁻ = i(b† − b).
    """
    n_cavity: int
    n_mech: int
    omega_c: Tuple[float, ...]
    omega_m: Tuple[float, ...]
    g_plus: CouplingMatrix
    g_minus: CouplingMatrix
    lambda_plus: CouplingVector
    lambda_minus: CouplingVector

    @classmethod
    def build(cls, omega_c: Sequence[float], omega_m: Sequence[float], g_plus: Optional[Sequence[Sequence[CouplingLike]]] = None, g_minus: Optional[Sequence[Sequence[CouplingLike]]] = None, lambda_plus: Optional[Sequence[CouplingLike]] = None, lambda_minus: Optional[Sequence[CouplingLike]] = None) -> SystemSpec:
        n, m = len(omega_c), len(omega_m)

        def matrix(values: Optional[Sequence[Sequence[CouplingLike]]]) -> CouplingMatrix:
            if values is None:
                return tuple(tuple(CouplingSpec.zero() for _ in range(m)) for _ in range(n))
            return tuple(tuple(as_coupling(v) for v in row) for row in values)

        def vector(values: Optional[Sequence[CouplingLike]]) -> CouplingVector:
            if values is None:
                return tuple(CouplingSpec.zero() for _ in range(m))
            return tuple(as_coupling(v) for v in values)

        return cls(n, m, tuple(float(w) for w in omega_c), tuple(float(w) for w in omega_m), matrix(g_plus), matrix(g_minus), vector(lambda_plus), vector(lambda_minus))

    @classmethod
    def optomechanical(cls, omega_c: Sequence[float], omega_m: Sequence[float], g: Sequence[Sequence[CouplingLike]]) -> SystemSpec:
        """Radiation-pressure coupling only: g⁻ = λ = 0."""
        return cls.build(omega_c, omega_m, g_plus=g)

    def couplings(self) -> Iterable[Tuple[str, Tuple[int, ...], CouplingSpec]]:
        for n, row in enumerate(self.g_plus):
            for p, c in enumerate(row):
                yield "g_plus", (n, p), c
        for n, row in enumerate(self.g_minus):
            for p, c in enumerate(row):
                yield "g_minus", (n, p), c
        for p, c in enumerate(self.lambda_plus):
            yield "lambda_plus", (p,), c
        for p, c in enumerate(self.lambda_minus):
            yield "lambda_minus", (p,), c

    @property
    def is_time_independent(self) -> bool:
        return all(c.is_constant for _, _, c in self.couplings())

    @property
    def has_linear_drive(self) -> bool:
        return not all(c.is_zero for c in self.lambda_plus + self.lambda_minus)

    @property
    def fastest_frequency(self) -> float:
        """Largest mechanical or modulation frequency; sets the quadrature step."""
        rates = list(self.omega_m)
        rates.extend(abs(c.omega_d) for _, _, c in self.couplings() if c.kind in (CouplingKind.ModulatedSin, CouplingKind.ModulatedCos))
        return max(rates) if rates else 0.0


def _scaled(c: CouplingSpec, epsilon: float) -> CouplingSpec:
    if c.kind == CouplingKind.Tabulated:
        return dataclasses.replace(c, samples=tuple((t, v * epsilon) for t, v in c.samples))
    return dataclasses.replace(c, base=c.base * epsilon)


def scale_couplings(spec: SystemSpec, epsilon: float) -> SystemSpec:
    """Every g and λ multiplied by epsilon; frequencies untouched."""
    return dataclasses.replace(
        spec,
        g_plus=tuple(tuple(_scaled(c, epsilon) for c in row) for row in spec.g_plus),
        g_minus=tuple(tuple(_scaled(c, epsilon) for c in row) for row in spec.g_minus),
        lambda_plus=tuple(_scaled(c, epsilon) for c in spec.lambda_plus),
        lambda_minus=tuple(_scaled(c, epsilon) for c in spec.lambda_minus),
    )


def replace_coupling(spec: SystemSpec, family: str, index: Tuple[int, ...], coupling: CouplingSpec) -> SystemSpec:
    if family in ("g_plus", "g_minus"):
        n, p = index
        rows = [list(row) for row in getattr(spec, family)]
        rows[n][p] = coupling
        return dataclasses.replace(spec, **{family: tuple(tuple(row) for row in rows)})
    elif family in ("lambda_plus", "lambda_minus"):
        (p,) = index
        values = list(getattr(spec, family))
        values[p] = coupling
        return dataclasses.replace(spec, **{family: tuple(values)})
    else:
        raise KeyError(family)
