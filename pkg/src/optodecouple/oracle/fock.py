from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from typing import List, Sequence, Tuple, Union

import numpy as np
from numpy.typing import NDArray
from scipy import sparse

from ..common import FockBudgetError, ContractViolation

DENSE_LIMIT = 512
DEFAULT_BUDGET = 4096

Operator = Union[NDArray[np.complex128], sparse.csr_matrix]


def _lowering(cutoff: int) -> sparse.csr_matrix:
    return sparse.diags(np.sqrt(np.arange(1, cutoff + 1, dtype=float)), 1, format="csr")


@dataclass(frozen=True)
class FockSpace:
    """
    Truncated Fock space of the cavity modes followed by the resonators.

    Basis index ↔ occupation tuple is row-major (C order) over (n_0 .. n_{N-1}, m_0 .. m_{M-1}),
    so the last resonator varies fastest. Operators are dense below DENSE_LIMIT and csr above.
    """
    cavity_cutoffs: Tuple[int, ...]
    mech_cutoffs: Tuple[int, ...]
    budget: int = DEFAULT_BUDGET

    def __post_init__(self) -> None:
        if any(c < 1 for c in self.cutoffs):
            raise ContractViolation("FockSpace", f"every cutoff must be at least 1; got {self.cutoffs}")
        if self.dim > self.budget:
            raise FockBudgetError(self.dim, self.budget)

    @classmethod
    def build(cls, cavity_cutoffs: Sequence[int], mech_cutoffs: Sequence[int], budget: int = DEFAULT_BUDGET) -> FockSpace:
        return cls(tuple(int(c) for c in cavity_cutoffs), tuple(int(c) for c in mech_cutoffs), budget)

    @property
    def cutoffs(self) -> Tuple[int, ...]:
        return self.cavity_cutoffs + self.mech_cutoffs

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(c + 1 for c in self.cutoffs)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    @property
    def n_cavity(self) -> int:
        return len(self.cavity_cutoffs)

    @property
    def n_mech(self) -> int:
        return len(self.mech_cutoffs)

    @property
    def cavity_dim(self) -> int:
        return int(np.prod(self.dims[:self.n_cavity]))

    @property
    def mech_dim(self) -> int:
        return int(np.prod(self.dims[self.n_cavity:]))

    @property
    def is_sparse(self) -> bool:
        return self.dim >= DENSE_LIMIT

    def cavity_axis(self, k: int) -> int:
        assert 0 <= k < self.n_cavity
        return k

    def mech_axis(self, p: int) -> int:
        assert 0 <= p < self.n_mech
        return self.n_cavity + p

    def axis_name(self, axis: int) -> str:
        return f"cavity mode {axis}" if axis < self.n_cavity else f"resonator {axis - self.n_cavity}"

    def index(self, occupations: Sequence[int]) -> int:
        return int(np.ravel_multi_index(tuple(occupations), self.dims))

    def occupations(self, index: int) -> Tuple[int, ...]:
        return tuple(int(n) for n in np.unravel_index(index, self.dims))

    @cached_property
    def occupation_table(self) -> NDArray[np.int64]:
        """(axes, dim): occupation of every mode in every basis state."""
        return np.indices(self.dims).reshape(len(self.dims), -1)

    def number_diagonal(self, axis: int) -> NDArray[np.float64]:
        return self.occupation_table[axis].astype(float)

    def top_level_mask(self, axis: int) -> NDArray[np.bool_]:
        return self.occupation_table[axis] == self.cutoffs[axis]

    def _embed(self, axis: int, local: sparse.spmatrix) -> sparse.csr_matrix:
        factors: List[sparse.spmatrix] = [sparse.identity(d, format="csr") for d in self.dims]
        factors[axis] = local
        return reduce(lambda a, b: sparse.kron(a, b, format="csr"), factors).tocsr()

    def finish(self, op: sparse.spmatrix) -> Operator:
        """Store `op` in the representation this space uses."""
        op = sparse.csr_matrix(op, dtype=np.complex128)
        return op if self.is_sparse else op.toarray()

    def annihilation(self, axis: int) -> Operator:
        return self.finish(self._embed(axis, _lowering(self.cutoffs[axis])))

    def number(self, axis: int) -> Operator:
        return self.finish(sparse.diags(self.number_diagonal(axis)))

    def quadrature_plus(self, axis: int) -> Operator:
        """B⁽⁺⁾ = b† + b."""
        a = self._embed(axis, _lowering(self.cutoffs[axis]))
        return self.finish(a + a.T)

    def quadrature_minus(self, axis: int) -> Operator:
        """B⁽⁻⁾ = i(b† − b)."""
        a = self._embed(axis, _lowering(self.cutoffs[axis]))
        return self.finish(1j * (a.T - a))

    def identity(self) -> Operator:
        return self.finish(sparse.identity(self.dim))


def apply(op: Operator, psi: NDArray[np.complex128]) -> NDArray[np.complex128]:
    return np.asarray(op @ psi)


def to_dense(op: Operator) -> NDArray[np.complex128]:
    return op.toarray() if sparse.issparse(op) else np.asarray(op)


@lru_cache(maxsize=128)
def annihilation_operator(space: FockSpace, axis: int) -> Operator:
    """`space.annihilation(axis)`, built once per space."""
    return space.annihilation(axis)
