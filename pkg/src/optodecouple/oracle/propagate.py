from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
import scipy.linalg
from numpy.typing import NDArray
from scipy.sparse.linalg import expm_multiply

from .fock import FockSpace
from .hamiltonian import OracleHamiltonian, full_hamiltonian
from .initial import FockState
from .measure import top_level_populations
from ..common import ListableEnum, ContractViolation, StepSizeUnderflowError, TruncationOverflowError, TruncationWarning
from ..model import SystemSpec, TimeGrid


class PropagationMethod(ListableEnum):
    Auto = "auto"
    Expm = "expm"
    RK4 = "rk4"


@dataclass
class PropagationOptions:
    """
    atol bounds the step-doubling error estimate of every accepted RK4 step (state-norm units).
    edge_warn and edge_abort bound the population found in the top Fock level of any mode.
    """
    atol: float = 1e-10
    dt_initial: Optional[float] = None
    dt_min: float = 1e-9
    method: PropagationMethod = PropagationMethod.Auto
    edge_warn: float = 1e-6
    edge_abort: float = 1e-3

    def __post_init__(self) -> None:
        assert self.atol > 0 and self.dt_min > 0
        assert 0 < self.edge_warn <= self.edge_abort


@dataclass
class Trajectory:
    grid: TimeGrid
    states: List[FockState] = field(default_factory=list)
    method: PropagationMethod = PropagationMethod.Auto
    steps: int = 0
    rejected: int = 0

    def __len__(self) -> int:
        return len(self.states)

    def __getitem__(self, index: int) -> FockState:
        return self.states[index]

    def norm_drift(self) -> float:
        """Largest deviation of any member's norm from 1 over the trajectory."""
        return max(float(np.max(np.abs(s.norms - 1.0))) for s in self.states)


def _check_edges(space: FockSpace, state: FockState, t: float, options: PropagationOptions) -> None:
    tops = top_level_populations(space, state)
    axis = int(np.argmax(tops))
    worst = float(tops[axis])
    if worst > options.edge_abort:
        raise TruncationOverflowError(space.axis_name(axis), worst, space.cutoffs[axis], t)
    if worst > options.edge_warn:
        warnings.warn(TruncationWarning(worst, space.cutoffs[axis] + 4))


def _interaction_derivative(ham: OracleHamiltonian, t: float, y: NDArray[np.complex128]) -> NDArray[np.complex128]:
    # interaction picture of diag(E): H_I(t) = e^{iEt} V(t) e^{-iEt}
    phase = np.exp(1j * ham.diagonal * t)[:, None]
    return -1j * phase * ham.apply_coupling(t, np.conj(phase) * y)


def _rk4_step(ham: OracleHamiltonian, t: float, y: NDArray[np.complex128], h: float) -> NDArray[np.complex128]:
    k1 = _interaction_derivative(ham, t, y)
    k2 = _interaction_derivative(ham, t + 0.5 * h, y + 0.5 * h * k1)
    k3 = _interaction_derivative(ham, t + 0.5 * h, y + 0.5 * h * k2)
    k4 = _interaction_derivative(ham, t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _propagate_rk4(ham: OracleHamiltonian, psi0: FockState, grid: TimeGrid, options: PropagationOptions) -> Trajectory:
    """
    Classic RK4 with step doubling: one step of h against two of h/2, error (ψ_h/2 − ψ_h)/15,
    accepted steps keep the Richardson-extrapolated value.
    """
    out = Trajectory(grid, [psi0], PropagationMethod.RK4)
    t = float(grid.t[0])
    y = psi0.amplitudes.astype(complex)
    h = options.dt_initial if options.dt_initial else 0.05 / max(ham.fastest_frequency, 1.0)
    for target in grid.t[1:]:
        target = float(target)
        while t < target:
            step = min(h, target - t)
            full = _rk4_step(ham, t, y, step)
            half = _rk4_step(ham, t + 0.5 * step, _rk4_step(ham, t, y, 0.5 * step), 0.5 * step)
            diff = half - full
            err = float(np.max(np.linalg.norm(diff, axis=0))) / 15.0
            factor = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * (options.atol / err) ** 0.2))
            if err <= options.atol:
                y = half + diff / 15.0
                t = target if step == target - t else t + step
                out.steps += 1
                # a step clipped to land on the grid says nothing about the usable step size
                if step == h:
                    h = step * factor
            else:
                out.rejected += 1
                h = step * factor
                if h < options.dt_min:
                    raise StepSizeUnderflowError(t, h, options.dt_min, err)
        lab = np.exp(-1j * ham.diagonal * t)[:, None] * y
        state = psi0.copy_with(lab)
        _check_edges(ham.space, state, t, options)
        out.states.append(state)
    return out


def _propagate_expm(ham: OracleHamiltonian, psi0: FockState, grid: TimeGrid, options: PropagationOptions) -> Trajectory:
    """Exact stepping between grid points for a time-independent H; one exponential per distinct step."""
    out = Trajectory(grid, [psi0], PropagationMethod.Expm)
    h = ham.matrix(0.0)
    cache: Dict[str, NDArray[np.complex128]] = {}
    y = psi0.amplitudes.astype(complex)
    for t0, t1 in zip(grid.t[:-1], grid.t[1:]):
        dt = float(t1 - t0)
        if ham.space.is_sparse:
            y = expm_multiply(-1j * dt * h, y)
        else:
            key = f"{dt:.12e}"
            if key not in cache:
                cache[key] = scipy.linalg.expm(-1j * dt * np.asarray(h))
            y = cache[key] @ y
        out.steps += 1
        state = psi0.copy_with(np.asarray(y))
        _check_edges(ham.space, state, float(t1), options)
        out.states.append(state)
    return out


def propagate_hamiltonian(ham: OracleHamiltonian, psi0: FockState, grid: TimeGrid, options: Optional[PropagationOptions] = None) -> Trajectory:
    options = options or PropagationOptions()
    if abs(psi0.trace - 1.0) > 1e-10:
        raise ContractViolation("propagate", f"initial state must be normalised; trace is {psi0.trace!r}")
    if psi0.dim != ham.space.dim:
        raise ContractViolation("propagate", f"state dimension {psi0.dim} does not match the space ({ham.space.dim})")
    method = options.method
    if method == PropagationMethod.Auto:
        method = PropagationMethod.Expm if ham.is_time_independent else PropagationMethod.RK4
    if method == PropagationMethod.Expm:
        if not ham.is_time_independent:
            raise ContractViolation("propagate", "the matrix-exponential path needs time-independent couplings")
        return _propagate_expm(ham, psi0, grid, options)
    return _propagate_rk4(ham, psi0, grid, options)


def propagate(spec: SystemSpec, space: FockSpace, psi0: FockState, grid: TimeGrid, options: Optional[PropagationOptions] = None) -> Trajectory:
    """ψ(t) at every grid point under the full Hamiltonian of `spec`, realising the time-ordered exponential."""
    return propagate_hamiltonian(full_hamiltonian(spec, space), psi0, grid, options)
