from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from numpy.typing import NDArray


@dataclass(frozen=True, eq=False)
class TimeGrid:
    t: NDArray[np.float64]

    @classmethod
    def from_times(cls, t: Sequence[float]) -> TimeGrid:
        return cls(np.asarray(t, dtype=float))

    @classmethod
    def uniform(cls, t_end: float, samples: int) -> TimeGrid:
        return cls(np.linspace(0.0, float(t_end), int(samples)))

    @classmethod
    def per_period(cls, t_end: float, omega: float, samples_per_period: int) -> TimeGrid:
        """Uniform grid resolving the period 2π/omega with at least `samples_per_period` steps."""
        steps = max(1, math.ceil(t_end * omega / (2 * math.pi) * samples_per_period))
        return cls.uniform(t_end, steps + 1)

    def __len__(self) -> int:
        return len(self.t)

    @property
    def t_end(self) -> float:
        return float(self.t[-1])

    @property
    def max_step(self) -> float:
        return float(np.max(np.diff(self.t))) if len(self.t) > 1 else 0.0

    @property
    def is_uniform(self) -> bool:
        if len(self.t) < 3:
            return True
        steps = np.diff(self.t)
        return bool(np.allclose(steps, steps[0], rtol=1e-12, atol=0.0))

    def refine(self, k: int) -> TimeGrid:
        """k − 1 extra points evenly inside every step."""
        if k <= 1:
            return self
        fractions = np.arange(k) / k
        inner = (self.t[:-1, None] + np.diff(self.t)[:, None] * fractions[None, :]).ravel()
        return TimeGrid(np.append(inner, self.t[-1]))

    def index_of(self, t: Union[float, int]) -> int:
        return int(np.argmin(np.abs(self.t - t)))
