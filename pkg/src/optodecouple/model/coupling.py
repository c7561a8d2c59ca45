from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple, Union, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..common import ListableEnum, ContractViolation, CouplingRangeError


class CouplingKind(ListableEnum):
    Constant = "constant"
    ModulatedSin = "modulated_sin"
    ModulatedCos = "modulated_cos"
    Tabulated = "tabulated"


@dataclass(frozen=True)
class CouplingSpec:
    """
    A time-dependent coupling amplitude g(t) or λ(t).

    Modulated kinds evaluate to base·(1 + κ·sin(ω_d t)) or base·(1 + κ·cos(ω_d t)).
    Tabulated kinds interpolate linearly between samples and refuse to extrapolate.
    """
    kind: CouplingKind = CouplingKind.Constant
    base: float = 0.0
    kappa: float = 0.0
    omega_d: float = 0.0
    samples: Tuple[Tuple[float, float], ...] = field(default=())

    @classmethod
    def zero(cls) -> CouplingSpec:
        return cls()

    @classmethod
    def constant(cls, base: float) -> CouplingSpec:
        return cls(CouplingKind.Constant, float(base))

    @classmethod
    def modulated_sin(cls, base: float, kappa: float, omega_d: float) -> CouplingSpec:
        return cls(CouplingKind.ModulatedSin, float(base), float(kappa), float(omega_d))

    @classmethod
    def modulated_cos(cls, base: float, kappa: float, omega_d: float) -> CouplingSpec:
        return cls(CouplingKind.ModulatedCos, float(base), float(kappa), float(omega_d))

    @classmethod
    def tabulated(cls, t: Sequence[float], values: Sequence[float]) -> CouplingSpec:
        assert len(t) == len(values)
        return cls(CouplingKind.Tabulated, samples=tuple((float(a), float(b)) for a, b in zip(t, values)))

    @property
    def is_constant(self) -> bool:
        if self.kind == CouplingKind.Constant:
            return True
        if self.is_modulated:
            return self.kappa == 0.0 or self.omega_d == 0.0
        return False

    @property
    def is_zero(self) -> bool:
        if self.kind == CouplingKind.Tabulated:
            return all(v == 0.0 for _, v in self.samples)
        return self.base == 0.0

    @property
    def is_modulated(self) -> bool:
        return self.kind in (CouplingKind.ModulatedSin, CouplingKind.ModulatedCos)

    @property
    def time_range(self) -> Tuple[float, float]:
        if self.kind != CouplingKind.Tabulated:
            return 0.0, float("inf")
        return self.samples[0][0], self.samples[-1][0]

    def constant_value(self) -> float:
        """The value of a coupling for which `is_constant` holds."""
        assert self.is_constant
        if self.kind == CouplingKind.ModulatedCos:
            return self.base * (1.0 + self.kappa)
        return self.base

    def evaluate(self, t: ArrayLike) -> NDArray[np.float64]:
        t = np.asarray(t, dtype=float)
        if self.kind == CouplingKind.Constant:
            return np.full_like(t, self.base)
        elif self.kind == CouplingKind.ModulatedSin:
            return self.base * (1.0 + self.kappa * np.sin(self.omega_d * t))
        elif self.kind == CouplingKind.ModulatedCos:
            return self.base * (1.0 + self.kappa * np.cos(self.omega_d * t))
        elif self.kind == CouplingKind.Tabulated:
            ts = np.array([s[0] for s in self.samples])
            vs = np.array([s[1] for s in self.samples])
            if t.size:
                lo, hi = float(np.min(t)), float(np.max(t))
                if lo < ts[0] or hi > ts[-1]:
                    raise CouplingRangeError(lo if lo < ts[0] else hi, float(ts[0]), float(ts[-1]))
            return np.interp(t, ts, vs)
        else:
            raise NotImplementedError(self.kind)


def coupling_eval(c: CouplingSpec, t: float) -> float:
    if t < 0.0 and c.kind != CouplingKind.Tabulated:
        raise ContractViolation("coupling_eval", f"time must be non-negative; got {t!r}")
    return float(c.evaluate(t))


CouplingLike = Union[CouplingSpec, float, int]


def as_coupling(value: CouplingLike) -> CouplingSpec:
    if isinstance(value, CouplingSpec):
        return value
    return CouplingSpec.constant(float(value))
