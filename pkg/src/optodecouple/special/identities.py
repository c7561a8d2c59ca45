"""
Coherent/thermal expectation identities used throughout the closed-form observables.

Each identity is evaluated twice: once by summing Fock-basis matrix elements directly, once from
its compact closed form. `identity_suite` tabulates the deviations over a parameter grid.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import List, Dict, Any, Optional, Tuple

from .accuracy import csum
from .bessel import bessel_i_scaled, bessel_order_cutoff
from .laguerre import displacement_element, laguerre_generating_sum
from .poisson import poisson_log_pmf


def _thermal_weights(r: float) -> Tuple[float, float]:
    """(T², 1/C²) with T = tanh r, C = cosh r."""
    return math.tanh(r) ** 2, 1.0 / math.cosh(r) ** 2


# ⟨μ|exp(−iα a†a)|μ⟩

def i_alpha(angle: float, mu_abs2: float) -> complex:
    return cmath.exp(-mu_abs2 * (1.0 - cmath.exp(-1j * angle)))


def i_alpha_series(angle: float, mu_abs2: float, cutoff: int) -> complex:
    return csum(math.exp(poisson_log_pmf(p, mu_abs2)) * cmath.exp(-1j * angle * p) for p in range(cutoff + 1))


def i1_alpha(angle: float, mu_abs2: float) -> complex:
    """⟨μ|a†a exp(−iα a†a)|μ⟩ = i dI_α/dα."""
    return mu_abs2 * cmath.exp(-1j * angle) * i_alpha(angle, mu_abs2)


def i1_alpha_series(angle: float, mu_abs2: float, cutoff: int) -> complex:
    return csum(p * math.exp(poisson_log_pmf(p, mu_abs2)) * cmath.exp(-1j * angle * p) for p in range(cutoff + 1))


def i1_alpha_finite_difference(angle: float, mu_abs2: float, step: float = 1e-6) -> complex:
    return 1j * (i_alpha(angle + step, mu_abs2) - i_alpha(angle - step, mu_abs2)) / (2.0 * step)


# thermal averages of displacement matrix elements

def j_alpha(alpha: complex, r: float) -> complex:
    return complex(math.exp(-0.5 * math.cosh(2.0 * r) * abs(alpha) ** 2))


def j_alpha_series(alpha: complex, r: float, cutoff: int) -> complex:
    t2, inv_c2 = _thermal_weights(r)
    return csum(t2 ** n * inv_c2 * displacement_element(n, n, alpha) for n in range(cutoff + 1))


def j_tilde_alpha(alpha: complex, r: float) -> complex:
    return complex(alpha) * math.sinh(r) ** 2 * math.exp(-0.5 * math.cosh(2.0 * r) * abs(alpha) ** 2)


def j_tilde_alpha_series(alpha: complex, r: float, cutoff: int) -> complex:
    t2, inv_c2 = _thermal_weights(r)
    return csum(t2 ** n * inv_c2 * math.sqrt(n) * displacement_element(n, n - 1, alpha) for n in range(1, cutoff + 1))


def l_tilde_alpha(alpha: complex, r: float) -> float:
    c2r = math.cosh(2.0 * r)
    return math.exp(-abs(alpha) ** 2 / c2r) / c2r


def l_tilde_alpha_series(alpha: complex, r: float, cutoff: int) -> float:
    t2, inv_c2 = _thermal_weights(r)
    terms = []
    for l in range(cutoff + 1):
        for lp in range(cutoff + 1):
            terms.append(t2 ** (l + lp) * inv_c2 ** 2 * abs(displacement_element(l, lp, alpha)) ** 2)
    return math.fsum(terms)


def l_tilde_alpha_bessel(alpha: complex, r: float, tol: float = 1e-18) -> float:
    """exp[−(1+T⁴)|α|²/(1−T⁴)] / cosh 2r · [I_0(z) + 2 Σ_q I_q(z)],  z = 2T²|α|²/(1−T⁴)."""
    t4 = math.tanh(r) ** 4
    x = abs(alpha) ** 2
    z = 2.0 * math.sqrt(t4) * x / (1.0 - t4)
    q_max = bessel_order_cutoff(z, tol)
    scaled = [bessel_i_scaled(0, z)] + [2.0 * bessel_i_scaled(q, z) for q in range(1, q_max + 1)]
    return math.exp(-(1.0 + t4) / (1.0 - t4) * x + z) * math.fsum(scaled) / math.cosh(2.0 * r)


@dataclass(frozen=True)
class IdentityGrid:
    r: Tuple[float, ...] = (0.0, 0.3, 0.5)
    alpha: Tuple[complex, ...] = (0j, 0.5 + 0j, 1.0 + 0j, 0.3 + 0.4j, -0.8j)
    angle: Tuple[float, ...] = (0.0, 0.7, math.pi / 3, math.pi)
    mu_abs: Tuple[float, ...] = (0.0, 0.5, 1.0, 2.0)
    poisson_cutoff: int = 80
    thermal_cutoff: int = 60
    double_cutoff: int = 30
    tolerance: float = 1e-10
    fd_step: float = 1e-6
    fd_tolerance: float = 1e-8


@dataclass
class IdentityCheck:
    name: str
    params: Dict[str, Any]
    series: complex
    closed_form: complex
    tolerance: float

    @property
    def deviation(self) -> float:
        return abs(self.series - self.closed_form)

    @property
    def passed(self) -> bool:
        return self.deviation < self.tolerance


@dataclass
class IdentityReport:
    checks: List[IdentityCheck] = field(default_factory=list)

    @property
    def names(self) -> List[str]:
        seen: List[str] = []
        for c in self.checks:
            if c.name not in seen:
                seen.append(c.name)
        return seen

    def max_deviation(self, name: Optional[str] = None) -> float:
        values = [c.deviation for c in self.checks if name is None or c.name == name]
        return max(values) if values else 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[IdentityCheck]:
        return [c for c in self.checks if not c.passed]

    def summary(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "identities": {name: {"max_deviation": self.max_deviation(name), "checks": sum(1 for c in self.checks if c.name == name)} for name in self.names},
        }


def identity_suite(grid: Optional[IdentityGrid] = None) -> IdentityReport:
    """
    Evaluate every identity over `grid` and report series-vs-closed-form deviations.

    Rows: i_alpha, i1_alpha, i1_alpha_fd (finite difference, own tolerance), j_alpha,
    j_tilde_alpha, l_tilde_alpha (double Fock sum), l_tilde_alpha_bessel (modified-Bessel form),
    laguerre_generating and jacobi_anger closures.
    """
    grid = grid or IdentityGrid()
    report = IdentityReport()
    add = report.checks.append

    for angle in grid.angle:
        for mu_abs in grid.mu_abs:
            m = mu_abs ** 2
            params = {"angle": angle, "mu_abs": mu_abs}
            add(IdentityCheck("i_alpha", params, i_alpha_series(angle, m, grid.poisson_cutoff), i_alpha(angle, m), grid.tolerance))
            add(IdentityCheck("i1_alpha", params, i1_alpha_series(angle, m, grid.poisson_cutoff), i1_alpha(angle, m), grid.tolerance))
            add(IdentityCheck("i1_alpha_fd", params, i1_alpha_finite_difference(angle, m, grid.fd_step), i1_alpha(angle, m), grid.fd_tolerance))

    for r in grid.r:
        for alpha in grid.alpha:
            params = {"r": r, "alpha": alpha}
            add(IdentityCheck("j_alpha", params, j_alpha_series(alpha, r, grid.thermal_cutoff), j_alpha(alpha, r), grid.tolerance))
            add(IdentityCheck("j_tilde_alpha", params, j_tilde_alpha_series(alpha, r, grid.thermal_cutoff), j_tilde_alpha(alpha, r), grid.tolerance))
            add(IdentityCheck("l_tilde_alpha", params, l_tilde_alpha_series(alpha, r, grid.double_cutoff), l_tilde_alpha(alpha, r), grid.tolerance))
            add(IdentityCheck("l_tilde_alpha_bessel", params, l_tilde_alpha_bessel(alpha, r), l_tilde_alpha(alpha, r), grid.tolerance))

    t, x = 0.5, 0.3
    add(IdentityCheck("laguerre_generating", {"t": t, "x": x}, laguerre_generating_sum(t, x, grid.thermal_cutoff), math.exp(-t * t * x / (1.0 - t * t)) / (1.0 - t * t), grid.tolerance))
    z = 2.0
    q_max = bessel_order_cutoff(z, 1e-18)
    closure = math.fsum([bessel_i_scaled(0, z)] + [2.0 * bessel_i_scaled(q, z) for q in range(1, q_max + 1)])
    add(IdentityCheck("jacobi_anger", {"z": z}, closure, 1.0, grid.tolerance))
    return report
