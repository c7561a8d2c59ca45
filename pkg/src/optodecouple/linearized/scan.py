from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike

from .modulated import full_model_modulated_populations
from .resonant import linearized_resonant_populations
from .spec import LinearizedSpec, detect_regime
from ..common import ListableEnum, ContractViolation, ShortHorizonWarning
from ..model import InitialState, TimeGrid
from ..writer import write_csv_file

RESONANT_EXPONENT = 1.5
GROWTH_FLOOR = 1e-14
MIN_DRIVE_PERIODS = 10


class PopulationModel(ListableEnum):
    Full = "full"
    Linearized = "linearized"


class GrowthLabel(ListableEnum):
    Resonant = "resonant"
    Bounded = "bounded"


def growth_exponent(t: ArrayLike, values: ArrayLike, baseline: float, period: float, window: Optional[Tuple[float, float]] = None) -> float:
    """
    Log-log least-squares slope of the period-averaged excess |values − baseline|.

    Chunks one `period` long tile `window` (default [t_end/4, t_end]); each contributes its mean
    excess at its mean time. An excess that never leaves GROWTH_FLOOR has exponent 0.
    """
    t = np.asarray(t, dtype=float)
    excess = np.abs(np.asarray(values, dtype=float) - baseline)
    start, stop = window if window else (t[-1] / 4.0, t[-1])
    chunks = int(math.floor((stop - start) / period + 1e-9))
    if chunks < 2:
        raise ContractViolation("growth_exponent", f"window [{start}, {stop}] holds fewer than two periods of {period}")
    centers: List[float] = []
    means: List[float] = []
    for i in range(chunks):
        lo, hi = start + i * period, start + (i + 1) * period
        inside = (t >= lo) & (t < hi) if i < chunks - 1 else (t >= lo) & (t <= hi)
        if np.any(inside):
            centers.append(float(np.mean(t[inside])))
            means.append(float(np.mean(excess[inside])))
    keep = [i for i, m in enumerate(means) if m > GROWTH_FLOOR]
    if len(keep) < 2:
        return 0.0
    x = np.log([centers[i] for i in keep])
    y = np.log([means[i] for i in keep])
    return float(np.polyfit(x, y, 1)[0])


def classify(exponent: float) -> GrowthLabel:
    return GrowthLabel.Resonant if exponent > RESONANT_EXPONENT else GrowthLabel.Bounded


@dataclass
class ScanRow:
    omega_d: float
    model: PopulationModel
    exponent: float
    label: GrowthLabel


@dataclass
class ScanReport:
    rows: List[ScanRow] = field(default_factory=list)

    header = ["omega_d", "model", "exponent", "label"]

    def label(self, omega_d: float, model: PopulationModel) -> GrowthLabel:
        for row in self.rows:
            if row.model == model and math.isclose(row.omega_d, omega_d, rel_tol=1e-12):
                return row.label
        raise KeyError((omega_d, model))

    def csv_rows(self) -> Iterator[List[object]]:
        for row in self.rows:
            yield [row.omega_d, row.model.value, row.exponent, row.label.value]

    def write_csv(self, path: Union[str, Path]) -> Path:
        return write_csv_file(path, self.header, self.csv_rows())


def resonance_scan(spec: LinearizedSpec, state: InitialState, omega_d_list: Sequence[float], horizon: float, samples_per_period: int = 50) -> ScanReport:
    """
    Growth of the driven resonator's population for every drive frequency, in the exact nonlinear
    model and in the rotating-wave linearised model. The chunk period is 2π/min(ω_m, ω_d).
    """
    report = ScanReport()
    N = float(state.thermal_occupation[spec.resonator])
    for omega_d in omega_d_list:
        point = spec.with_drive_frequency(omega_d)
        if horizon < MIN_DRIVE_PERIODS * 2.0 * math.pi / omega_d:
            warnings.warn(ShortHorizonWarning(f"Horizon {horizon!r} spans fewer than {MIN_DRIVE_PERIODS} periods of the drive at omega_d={omega_d!r}."))
        fastest = max(point.omega_m, omega_d)
        grid = TimeGrid.per_period(horizon, fastest, samples_per_period)
        period = 2.0 * math.pi / min(point.omega_m, omega_d)

        _, full = full_model_modulated_populations(point.system, state, grid.t, point.mode, point.resonator)
        exponent = growth_exponent(grid.t, full, N, period)
        report.rows.append(ScanRow(float(omega_d), PopulationModel.Full, exponent, classify(exponent)))

        _, linear = linearized_resonant_populations(point, detect_regime(point), state, grid.t)
        exponent = growth_exponent(grid.t, linear, N, period)
        report.rows.append(ScanRow(float(omega_d), PopulationModel.Linearized, exponent, classify(exponent)))
    return report
