from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from .series import ObservableSeries
from ..writer import write_csv_file, write_json_file, UNDEFINED


def series_as_dict(series: ObservableSeries) -> Dict[str, Any]:
    """Column name -> list of values, masked entries replaced by `undefined`."""
    out: Dict[str, Any] = {"t": [float(t) for t in series.t]}
    for name, values in series.columns().items():
        out[name] = [UNDEFINED if v is np.ma.masked else float(v) for v in values]
    return out


def write_series_csv(path: Union[str, Path], series: ObservableSeries) -> Path:
    return write_csv_file(path, series.header, series.rows())


def write_series_json(path: Union[str, Path], series: ObservableSeries) -> Path:
    return write_json_file(path, series_as_dict(series))
