from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Tuple, Sequence, Mapping, Optional, List

import numpy as np
from numpy.typing import NDArray


@dataclass(frozen=True)
class InitialState:
    """
    Coherent cavity modes ⊗ thermal resonators.

    Modes absent from `coherent` start in the vacuum. Each resonator is thermal with
    squeeze parameter r_p, so N_i,p = sinh²(r_p) and cosh(2 r_p) = 1 + 2 N_i,p.
    """
    coherent: Dict[int, complex] = field(default_factory=dict)
    r: Tuple[float, ...] = ()

    @classmethod
    def build(cls, coherent: Optional[Mapping[int, complex]] = None, r: Sequence[float] = ()) -> InitialState:
        return cls({int(k): complex(v) for k, v in (coherent or {}).items()}, tuple(float(x) for x in r))

    @classmethod
    def from_phonons(cls, phonons: Sequence[float], coherent: Optional[Mapping[int, complex]] = None) -> InitialState:
        return cls.build(coherent, [math.asinh(math.sqrt(n)) for n in phonons])

    @classmethod
    def from_temperature(cls, omega_m: Sequence[float], temperature: float, coherent: Optional[Mapping[int, complex]] = None) -> InitialState:
        """tanh(r_p) = exp(−ω_m,p / 2T), natural units."""
        if temperature <= 0:
            return cls.build(coherent, [0.0] * len(omega_m))
        return cls.build(coherent, [math.atanh(math.exp(-w / (2.0 * temperature))) for w in omega_m])

    def mu(self, k: int) -> complex:
        return self.coherent.get(k, 0j)

    def amplitudes(self, n_cavity: int) -> NDArray[np.complex128]:
        return np.array([self.mu(k) for k in range(n_cavity)], dtype=complex)

    @property
    def coherent_modes(self) -> List[int]:
        """The mode set of non-vacuum cavity modes, ascending."""
        return sorted(k for k, v in self.coherent.items() if v != 0)

    @property
    def thermal_occupation(self) -> NDArray[np.float64]:
        return np.sinh(np.asarray(self.r, dtype=float)) ** 2

    @property
    def cosh_2r(self) -> NDArray[np.float64]:
        return np.cosh(2.0 * np.asarray(self.r, dtype=float))

    @property
    def initial_linear_entropy(self) -> float:
        return 1.0 - float(np.prod(1.0 / self.cosh_2r))
