from __future__ import annotations

from typing import Union

import numpy as np
from numpy.typing import NDArray, ArrayLike

from .fset import FSet, FSnapshot
from ..common import ContractViolation
from ..model import SystemSpec, TimeGrid

Real = Union[float, NDArray[np.float64]]


def _c_integral(xp: float, xm: float, w: float, t: Real) -> Real:
    """∫_0^t (x⁺cos ωt' − x⁻sin ωt') dt'."""
    return (xp * np.sin(w * t) - xm * (1.0 - np.cos(w * t))) / w


def _s_integral(xp: float, xm: float, w: float, t: Real) -> Real:
    """∫_0^t (x⁺sin ωt' + x⁻cos ωt') dt'."""
    return (xp * (1.0 - np.cos(w * t)) + xm * np.sin(w * t)) / w


def _nested(ap: float, am: float, bp: float, bm: float, w: float, t: Real) -> Real:
    """∫_0^t s_a(t') ∫_0^t' c_b(t'') dt'' dt' for constant coupling pairs a and b."""
    u = w * t
    s, c = np.sin(u), np.cos(u)
    sin2 = np.sin(2.0 * u) / (4.0 * w)
    return (
        ap * bp * (0.5 * t - sin2)
        - ap * bm * ((1.0 - c) / w - s * s / (2.0 * w))
        + am * bp * s * s / (2.0 * w)
        - am * bm * (s / w - 0.5 * t - sin2)
    ) / w


def f_closed_form_constant(g_plus: float, g_minus: float, lam_plus: float, lam_minus: float, omega_m: float, t: float) -> FSnapshot:
    """Exact F-functions of one cavity mode and one resonator with time-constant couplings."""
    if not omega_m > 0:
        raise ContractViolation("f_closed_form_constant", f"omega_m must be positive; got {omega_m!r}")
    fk_plus = _c_integral(g_plus, g_minus, omega_m, t)
    fk_minus = -_s_integral(g_plus, g_minus, omega_m, t)
    fp = _c_integral(lam_plus, lam_minus, omega_m, t)
    fm_ = -_s_integral(lam_plus, lam_minus, omega_m, t)
    fnn = -4.0 * _nested(g_plus, g_minus, g_plus, g_minus, omega_m, t)
    fc = -2.0 * _nested(lam_plus, lam_minus, g_plus, g_minus, omega_m, t) - 2.0 * _nested(g_plus, g_minus, lam_plus, lam_minus, omega_m, t)
    return FSnapshot(float(t), float(omega_m * t), float(fc), float(fnn), float(fp), float(fm_), float(fk_plus), float(fk_minus))


def closed_form_f_set(spec: SystemSpec, grid: TimeGrid) -> FSet:
    """The exact FSet of any system whose couplings are all time-constant."""
    if not spec.is_time_independent:
        raise ContractViolation("closed_form_f_set", "every coupling must be time-constant")
    t = grid.t
    n_cav, n_mech, n_t = spec.n_cavity, spec.n_mech, len(t)
    gp = np.array([[c.constant_value() for c in row] for row in spec.g_plus]).reshape(n_cav, n_mech)
    gm = np.array([[c.constant_value() for c in row] for row in spec.g_minus]).reshape(n_cav, n_mech)
    lp = np.array([c.constant_value() for c in spec.lambda_plus])
    lm = np.array([c.constant_value() for c in spec.lambda_minus])

    F_m = np.empty((n_mech, n_t))
    Fc = np.empty((n_cav, n_mech, n_t))
    Fnm = np.empty((n_cav, n_cav, n_mech, n_t))
    Fp = np.empty((n_mech, n_t))
    Fm_ = np.empty((n_mech, n_t))
    Fk_plus = np.empty((n_cav, n_mech, n_t))
    Fk_minus = np.empty((n_cav, n_mech, n_t))

    for p, w in enumerate(spec.omega_m):
        F_m[p] = w * t
        Fp[p] = _c_integral(lp[p], lm[p], w, t)
        Fm_[p] = -_s_integral(lp[p], lm[p], w, t)
        for n in range(n_cav):
            Fk_plus[n, p] = _c_integral(gp[n, p], gm[n, p], w, t)
            Fk_minus[n, p] = -_s_integral(gp[n, p], gm[n, p], w, t)
            Fc[n, p] = -2.0 * _nested(lp[p], lm[p], gp[n, p], gm[n, p], w, t) - 2.0 * _nested(gp[n, p], gm[n, p], lp[p], lm[p], w, t)
            for m in range(n_cav):
                Fnm[n, m, p] = -4.0 * _nested(gp[m, p], gm[m, p], gp[n, p], gm[n, p], w, t)

    return FSet(grid, np.asarray(spec.omega_m, dtype=float), F_m, Fc, Fnm, Fp, Fm_, Fk_plus, Fk_minus)


def constant_coupling_weight(g: float, omega: float, t: ArrayLike) -> NDArray[np.float64]:
    """|F_k⁽ᵖ⁾|² = (2g²/ω²)(1 − cos ωt) for a lone real g⁺ coupling."""
    return 2.0 * g * g / (omega * omega) * (1.0 - np.cos(omega * np.asarray(t, dtype=float)))
