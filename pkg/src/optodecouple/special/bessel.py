from __future__ import annotations

import math
import warnings
from typing import Optional

import numpy as np

from .accuracy import SeriesAccuracy, DEFAULT_ACCURACY
from ..common import ContractViolation, SeriesConvergenceWarning


def _check_args(operation: str, n: int, z: float) -> None:
    if int(n) != n or n < 0:
        raise ContractViolation(operation, f"order must be a non-negative integer; got {n!r}")
    if not (math.isfinite(z) and z >= 0):
        raise ContractViolation(operation, f"argument must be finite and non-negative; got {z!r}")


def log_bessel_i(n: int, z: float, accuracy: Optional[SeriesAccuracy] = None) -> float:
    """
    log I_n(z) from the power series Σ_k (z/2)^(2k+n) / (k! (k+n)!).

    Every term is positive, so the series is summed in log space without cancellation; the
    recursion runs on the term ratio (z/2)² / ((k+1)(k+n+1)).
    """
    _check_args("bessel_i", n, z)
    n = int(n)
    if z == 0.0:
        return 0.0 if n == 0 else -math.inf
    accuracy = accuracy or DEFAULT_ACCURACY
    q = (0.5 * z) ** 2
    log_q = math.log(q)
    log_tol = math.log(accuracy.abs_tol)

    log_term = n * math.log(0.5 * z) - math.lgamma(n + 1)
    log_terms = [log_term]
    log_peak = log_term
    k = 0
    while True:
        log_term += log_q - math.log((k + 1) * (k + n + 1))
        k += 1
        log_terms.append(log_term)
        log_peak = max(log_peak, log_term)
        ratio = q / ((k + 1) * (k + n + 1))
        # ratios only shrink from here, so the tail is bounded by a geometric series
        if ratio < 1.0 and log_term + math.log(ratio / (1.0 - ratio)) <= log_tol + log_peak:
            break
        if k >= accuracy.max_terms:
            warnings.warn(SeriesConvergenceWarning(f"I_{n}({z!r}) series stopped after {k} terms"))
            break
    shifted = np.exp(np.array(log_terms) - log_peak)
    return log_peak + math.log(math.fsum(shifted))


def bessel_i(n: int, z: float, accuracy: Optional[SeriesAccuracy] = None) -> float:
    """Modified Bessel function of the first kind I_n(z), integer n ≥ 0, real z ≥ 0."""
    value = log_bessel_i(n, z, accuracy)
    try:
        return math.exp(value)
    except OverflowError as e:
        raise OverflowError(f"I_{n}({z!r}) overflows a double; use bessel_i_scaled instead") from e


def bessel_i_scaled(n: int, z: float, accuracy: Optional[SeriesAccuracy] = None) -> float:
    """e^(-z)·I_n(z); finite for every z ≥ 0."""
    return math.exp(log_bessel_i(n, z, accuracy) - z)


def bessel_order_cutoff(z: float, tol: float = 1e-14, accuracy: Optional[SeriesAccuracy] = None) -> int:
    """Smallest order d with e^(-z)·I_d(z) < tol; I_d(z) decreases in d for fixed z."""
    d = 0
    while bessel_i_scaled(d, z, accuracy) >= tol:
        d += 1
    return d
