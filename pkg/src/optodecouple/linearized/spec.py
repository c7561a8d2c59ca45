from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from ..common import ListableEnum, ContractViolation
from ..model import CouplingKind, CouplingSpec, SystemSpec, replace_coupling


class Regime(ListableEnum):
    Squeezing = "squeezing"        # ω_d = ω_c + ω_m, two-mode squeezing
    ModeMixing = "mode-mixing"     # ω_d = |ω_c − ω_m|, beam splitter
    Detuned = "detuned"


@dataclass(frozen=True)
class LinearizedSpec:
    """
    The system linearised around real classical amplitudes, a_n → α_n + δa_n, driven through the
    modulated coupling g_k̃p̃(t) = g(1 + κ sin ω_d t) between `mode` and `resonator`.
    """
    system: SystemSpec
    alpha: Tuple[float, ...]
    mode: int = 0
    resonator: int = 0

    def __post_init__(self) -> None:
        if len(self.alpha) != self.system.n_cavity:
            raise ContractViolation("LinearizedSpec", f"expected {self.system.n_cavity} classical amplitudes; got {len(self.alpha)}")
        if not all(isinstance(a, float) and math.isfinite(a) for a in self.alpha):
            raise ContractViolation("LinearizedSpec", "classical amplitudes must be finite reals")
        if not (0 <= self.mode < self.system.n_cavity and 0 <= self.resonator < self.system.n_mech):
            raise ContractViolation("LinearizedSpec", f"mode {self.mode} / resonator {self.resonator} out of range")
        if not self.drive.is_modulated:
            raise ContractViolation("LinearizedSpec", f"coupling g[{self.mode}][{self.resonator}] must be modulated; got {self.drive.kind.value}")

    @classmethod
    def build(cls, system: SystemSpec, alpha: Sequence[float], mode: int = 0, resonator: int = 0) -> LinearizedSpec:
        return cls(system, tuple(float(a) for a in alpha), mode, resonator)

    @property
    def drive(self) -> CouplingSpec:
        return self.system.g_plus[self.mode][self.resonator]

    @property
    def omega_d(self) -> float:
        return self.drive.omega_d

    @property
    def kappa(self) -> float:
        return self.drive.kappa

    @property
    def g(self) -> float:
        return self.drive.base

    @property
    def omega_c(self) -> float:
        return self.system.omega_c[self.mode]

    @property
    def omega_m(self) -> float:
        return self.system.omega_m[self.resonator]

    def with_drive_frequency(self, omega_d: float) -> LinearizedSpec:
        coupling = dataclasses.replace(self.drive, omega_d=float(omega_d))
        return dataclasses.replace(self, system=replace_coupling(self.system, "g_plus", (self.mode, self.resonator), coupling))


def detect_regime(spec: LinearizedSpec, rtol: float = 1e-3) -> Regime:
    """Which sideband, if any, the drive frequency sits on, within a relative tolerance."""
    w = spec.omega_d
    if math.isclose(w, spec.omega_c + spec.omega_m, rel_tol=rtol):
        return Regime.Squeezing
    if math.isclose(w, abs(spec.omega_c - spec.omega_m), rel_tol=rtol):
        return Regime.ModeMixing
    return Regime.Detuned


def rwa_rate(spec: LinearizedSpec) -> float:
    """χ = ½|α κ g|: only half of the sin ω_d t modulation co-rotates with the sideband."""
    if spec.drive.kind not in (CouplingKind.ModulatedSin, CouplingKind.ModulatedCos):
        raise ContractViolation("rwa_rate", "the drive must be a modulated coupling")
    return 0.5 * abs(spec.alpha[spec.mode] * spec.kappa * spec.g)
