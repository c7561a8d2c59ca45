from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class SeriesAccuracy:
    """
    Stopping rule shared by every series in this package.

    A series stops once the geometric bound on its remaining tail falls below `abs_tol` times the
    largest term seen so far, or after `max_terms` terms (which raises a SeriesConvergenceWarning).
    For positive-term series that bounds the relative error of the sum by `abs_tol`.
    """
    abs_tol: float = 1e-17
    max_terms: int = 2000

    def __post_init__(self) -> None:
        assert self.abs_tol > 0, self.abs_tol
        assert self.max_terms > 0, self.max_terms


DEFAULT_ACCURACY = SeriesAccuracy()


def csum(values: Iterable[complex]) -> complex:
    """Compensated sum of complex values (real and imaginary parts through math.fsum)."""
    re, im = [], []
    for v in values:
        re.append(v.real)
        im.append(v.imag)
    return complex(math.fsum(re), math.fsum(im))
