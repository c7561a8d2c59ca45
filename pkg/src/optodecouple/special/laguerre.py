from __future__ import annotations

import math
from typing import List

import numpy as np
from numpy.typing import NDArray

from ..common import ContractViolation


def _check_degree(operation: str, n: int) -> int:
    if int(n) != n or n < 0:
        raise ContractViolation(operation, f"degree must be a non-negative integer; got {n!r}")
    return int(n)


def laguerre_all(n: int, q: float, z: float) -> NDArray[np.float64]:
    """
    L_0^(q)(z) .. L_n^(q)(z) by the upward three-term recurrence

        (k+1) L_{k+1} = (2k+1+q−z) L_k − (k+q) L_{k−1}
    """
    n = _check_degree("laguerre", n)
    out = np.empty(n + 1, dtype=float)
    out[0] = 1.0
    if n >= 1:
        out[1] = 1.0 + q - z
    for k in range(1, n):
        out[k + 1] = ((2 * k + 1 + q - z) * out[k] - (k + q) * out[k - 1]) / (k + 1)
    return out


def laguerre(n: int, q: float, z: float) -> float:
    """Generalised Laguerre polynomial L_n^(q)(z); q = 0 gives the ordinary L_n(z)."""
    n = _check_degree("laguerre", n)
    if n == 0:
        return 1.0
    prev, cur = 1.0, 1.0 + q - z
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + q - z) * cur - (k + q) * prev) / (k + 1)
    return cur


def hyp1f1_negint(n: int, b: float, z: float) -> float:
    """
    ₁F₁(−n; b; z) for a non-negative integer n, which terminates after n + 1 terms.

    Integer b ≥ 1 goes through L_n^(b−1)(z) / C(n+b−1, n); any other admissible b sums the
    finite series directly.
    """
    n = _check_degree("hyp1f1_negint", n)
    if b <= 0 and float(b).is_integer():
        raise ContractViolation("hyp1f1_negint", f"b must not be a non-positive integer; got {b!r}")
    if float(b).is_integer():
        b_int = int(b)
        return laguerre(n, b_int - 1, z) / math.comb(n + b_int - 1, n)
    terms: List[float] = [1.0]
    term = 1.0
    for k in range(n):
        term *= (k - n) * z / ((b + k) * (k + 1))
        terms.append(term)
    return math.fsum(terms)


def displacement_element(m: int, n: int, alpha: complex) -> complex:
    """
    ⟨m|D(α)|n⟩ for the displacement operator D(α) = exp(α a† − α* a).

    m ≥ n:  sqrt(n!/m!) α^(m−n) e^(−|α|²/2) L_n^(m−n)(|α|²)
    m < n:  sqrt(m!/n!) (−α*)^(n−m) e^(−|α|²/2) L_m^(n−m)(|α|²)
    """
    m = _check_degree("displacement_element", m)
    n = _check_degree("displacement_element", n)
    alpha = complex(alpha)
    x = abs(alpha) ** 2
    gauss = math.exp(-0.5 * x)
    if m >= n:
        ratio = math.exp(0.5 * (math.lgamma(n + 1) - math.lgamma(m + 1)))
        return ratio * alpha ** (m - n) * gauss * laguerre(n, m - n, x)
    ratio = math.exp(0.5 * (math.lgamma(m + 1) - math.lgamma(n + 1)))
    return ratio * (-alpha.conjugate()) ** (n - m) * gauss * laguerre(m, n - m, x)


def laguerre_generating_sum(t: float, x: float, n_max: int) -> float:
    """Partial sum Σ_{n ≤ n_max} t^(2n) L_n(x) of the Laguerre generating function."""
    values = laguerre_all(n_max, 0.0, x)
    return math.fsum(t ** (2 * k) * float(v) for k, v in enumerate(values))
