"""Momentum blocks of a graded space under the translation u^2."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np
import scipy.sparse as sp

from ..errors import SectorError
from ..logging import get_logger
from ..loops.bilinear import pair
from ..loops.operator import GradedSpace, SparseOperator

logger = get_logger(__name__)


def orbits(perm: list[int]) -> list[list[int]]:
    """Cycles of a permutation, each starting from its smallest element."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle, k = [], start
        while not seen[k]:
            seen[k] = True
            cycle.append(k)
            k = perm[k]
        out.append(cycle)
    return out


@dataclass
class MomentumBlock:
    """Orthonormal u^2 eigenvectors with eigenvalue exp(i k), k = 2 pi s / N.

    Columns of ``basis`` are grouped by sector in the order of the parent
    space's labels; ``slices`` gives each sector's range in block coordinates.
    """

    space: GradedSpace
    s: int
    k: float
    basis: sp.csr_matrix
    slices: dict[int, slice] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @cached_property
    def adjoint(self) -> sp.csr_matrix:
        return self.basis.conj().T.tocsr()

    def project(self, op: SparseOperator) -> sp.csr_matrix:
        return (self.adjoint @ op.matrix @ self.basis).tocsr()

    def lift(self, x: np.ndarray) -> np.ndarray:
        return self.basis @ x

    def restrict(self, x: np.ndarray) -> np.ndarray:
        return self.adjoint @ x

    def pair(self, x: np.ndarray, y: np.ndarray, n: float) -> complex:
        return pair(self.lift(x), self.lift(y), self.space, n)

    def top_and_rest(self) -> tuple[slice, slice]:
        """Highest sector and everything below it, in block coordinates."""
        top = self.slices[self.space.labels[0]]
        return top, slice(top.stop, self.dim)


@lru_cache(maxsize=32)
def project_momentum(space: GradedSpace, s: int) -> MomentumBlock:
    """Block of spin ``s``; cached per space, so callers must not modify it."""
    N = space.L // 2
    if abs(s) > N / 2:
        raise SectorError(f"spin s={s} outside the zone |s| <= {N / 2}")
    k = 2 * math.pi * s / N
    rows, cols, vals = [], [], []
    slices = {}
    col = 0
    for j in space.labels:
        off = space.offsets[j]
        start = col
        for cycle in orbits(space.sector(j).translation_permutation()):
            length = len(cycle)
            if (s * length) % N:
                continue
            norm = 1.0 / math.sqrt(length)
            for m, idx in enumerate(cycle):
                rows.append(off + idx)
                cols.append(col)
                vals.append(np.exp(-1j * k * m) * norm)
            col += 1
        slices[j] = slice(start, col)
    basis = sp.csr_matrix((np.asarray(vals, dtype=complex), (rows, cols)), shape=(space.dim, col))
    logger.debug(f"s={s} block of {space.kind} L={space.L}: {col} states")
    return MomentumBlock(space=space, s=s, k=k, basis=basis, slices=slices)


def spins(N: int) -> range:
    """One representative spin per momentum class."""
    return range(-((N - 1) // 2), N // 2 + 1)
