from __future__ import annotations

from pathlib import Path
from typing import List, Iterator, Sequence, Union

from .fset import FSet
from ..writer import write_csv_file


def fset_header(fset: FSet) -> List[str]:
    n, m = fset.n_cavity, fset.n_mech
    header = ["t"]
    header += [f"F_m[{p}]" for p in range(m)]
    header += [f"Fc[{k}][{p}]" for k in range(n) for p in range(m)]
    header += [f"Fnm[{k}][{l}][{p}]" for k in range(n) for l in range(n) for p in range(m)]
    header += [f"Fp[{p}]" for p in range(m)]
    header += [f"Fm_[{p}]" for p in range(m)]
    header += [f"Fk_plus[{k}][{p}]" for k in range(n) for p in range(m)]
    header += [f"Fk_minus[{k}][{p}]" for k in range(n) for p in range(m)]
    return header


def fset_rows(fset: FSet) -> Iterator[Sequence[float]]:
    # same order as fset_header; numpy's C order matches the nested comprehensions there
    for i, t in enumerate(fset.t):
        row = [float(t)]
        for values in (fset.F_m, fset.Fc, fset.Fnm, fset.Fp, fset.Fm_, fset.Fk_plus, fset.Fk_minus):
            row.extend(float(v) for v in values[..., i].ravel())
        yield row


def write_fset_csv(path: Union[str, Path], fset: FSet) -> Path:
    return write_csv_file(path, fset_header(fset), fset_rows(fset))
