from __future__ import annotations

import csv
import dataclasses
import json
from enum import Enum
from json import JSONEncoder
from pathlib import Path
from typing import Any, Iterable, Sequence, TextIO, Union

import numpy as np

UNDEFINED = "undefined"


def format_float(value: Any) -> str:
    """Seventeen significant digits, scientific notation; masked or missing values become `undefined`."""
    if value is None or value is np.ma.masked:
        return UNDEFINED
    return f"{float(value):.16e}"


def write_csv(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> int:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    count = 0
    for row in rows:
        writer.writerow([v if isinstance(v, str) else format_float(v) for v in row])
        count += 1
    return count


def write_csv_file(path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as handle:
        write_csv(handle, header, rows)
    return path


class ResultJsonEncoder(JSONEncoder):
    def default(self, o: Any) -> Any:
        if dataclasses.is_dataclass(o) and not isinstance(o, type):
            return dataclasses.asdict(o)
        elif isinstance(o, Enum):
            return o.value
        elif isinstance(o, complex):
            return {"re": o.real, "im": o.imag}
        elif isinstance(o, np.ndarray):
            return o.tolist()
        elif isinstance(o, np.generic):
            return o.item()
        elif isinstance(o, Path):
            return str(o)
        else:
            return super().default(o)


def write_json_file(path: Union[str, Path], payload: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as handle:
        json.dump(payload, handle, cls=ResultJsonEncoder, indent=2, sort_keys=False)
        handle.write("\n")
    return path
