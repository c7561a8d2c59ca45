from __future__ import annotations

import numpy as np
from numpy.typing import NDArray
from scipy.integrate import cumulative_simpson, cumulative_trapezoid

from ..common import ListableEnum


class QuadratureRule(ListableEnum):
    Simpson = "simpson"
    Trapezoid = "trapezoid"


def cumulative_integral(y: NDArray[np.float64], t: NDArray[np.float64], rule: QuadratureRule = QuadratureRule.Simpson) -> NDArray[np.float64]:
    """
    ∫_0^t y(t') dt' at every sample of t, along the last axis of y.

    Simpson fits a quadratic through each point and its neighbours (non-uniform grids allowed);
    grids with fewer than three points fall back to the trapezoid rule.
    """
    assert y.shape[-1] == t.shape[0], (y.shape, t.shape)
    if rule == QuadratureRule.Simpson and len(t) >= 3:
        return cumulative_simpson(y, x=t, axis=-1, initial=0.0)
    return cumulative_trapezoid(y, x=t, axis=-1, initial=0.0)


def definite_integral(y: NDArray[np.complexfloating], t: NDArray[np.float64], rule: QuadratureRule = QuadratureRule.Simpson) -> complex:
    """∫_0^T y(t') dt' over the whole grid; complex integrands integrate part by part."""
    y = np.asarray(y)
    re = cumulative_integral(np.real(y).astype(float), t, rule)[..., -1]
    im = cumulative_integral(np.imag(y).astype(float), t, rule)[..., -1]
    return complex(re + 1j * im)
