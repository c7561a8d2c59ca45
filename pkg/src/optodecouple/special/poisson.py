from __future__ import annotations

import math


def poisson_log_pmf(n: int, mean: float) -> float:
    if mean == 0.0:
        return 0.0 if n == 0 else -math.inf
    return n * math.log(mean) - mean - math.lgamma(n + 1)


def poisson_pmf(n: int, mean: float) -> float:
    return math.exp(poisson_log_pmf(n, mean))


def poisson_tail(mean: float, n: int, rel_tol: float = 1e-17) -> float:
    """P(X > n) for X ~ Poisson(mean), summed term by term so tiny tails keep their digits."""
    if mean == 0.0 or n < 0:
        return 0.0 if mean == 0.0 else 1.0
    if n < mean:
        return 1.0 - math.fsum(poisson_pmf(j, mean) for j in range(n + 1))
    terms = []
    j = n + 1
    while True:
        term = poisson_pmf(j, mean)
        terms.append(term)
        ratio = mean / (j + 1)
        if term == 0.0 or term * ratio / (1.0 - ratio) <= rel_tol * terms[0]:
            break
        j += 1
    return math.fsum(terms)


def poisson_cutoff(mean: float, tol: float) -> int:
    """Smallest n with P(X > n) < tol."""
    n = 0
    while poisson_tail(mean, n) >= tol:
        n += 1
    return n
