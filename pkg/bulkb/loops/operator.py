"""Graded spaces of link patterns and sparse operators acting on them.

A graded space stacks sector bases in decreasing label order. It is built
once per (kind, L, labels) and does not depend on the loop weight: the local
moves of every pattern are recorded as integer transition arrays, and any
generator or Hamiltonian at any weight is a vectorized re-weighting of them.
"""

from __future__ import annotations

from array import array
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import TYPE_CHECKING, Iterator

import numpy as np
import scipy.sparse as sp
from upath import UPath

from ..errors import SectorError
from ..logging import get_logger
from .dense import DenseKernel
from .dilute import DiluteKernel
from .linkstate import LinkPattern, SectorBasis, orbit_closure

if TYPE_CHECKING:
    from ..model import ModelSpec

logger = get_logger(__name__)

KERNELS = {"dense": DenseKernel, "dilute": DiluteKernel}


@dataclass(frozen=True)
class SparseOperator:
    """CSR matrix without duplicate entries or explicit zeros."""

    matrix: sp.csr_matrix

    @classmethod
    def from_triplets(cls, rows, cols, values, shape) -> "SparseOperator":
        m = sp.coo_matrix((values, (rows, cols)), shape=shape).tocsr()
        m.sum_duplicates()
        m.eliminate_zeros()
        return cls(m)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.matrix.data)

    def entries(self) -> Iterator[tuple[int, int, complex | float]]:
        coo = self.matrix.tocoo()
        yield from zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist())

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def dump(self, path: str | UPath) -> None:
        """Coordinate text format, one ``row col value`` line per entry."""
        with UPath(path).open("w") as fh:
            for r, c, v in self.entries():
                fh.write(f"{r} {c} {v!r}\n")


def sector_closure(kind: str, L: int, j: int) -> list[LinkPattern]:
    """Patterns reachable from the sector seed without leaving the sector."""
    kernel = KERNELS[kind]
    seed = kernel.seed(L, j)

    def in_sector(p: LinkPattern):
        for a in range(L):
            for _, target, _ in kernel.moves(p, a):
                if kernel.label(target) == j:
                    yield target

    return orbit_closure(seed, in_sector)


@lru_cache(maxsize=64)
def sector_basis(kind: str, L: int, j: int) -> SectorBasis:
    basis = SectorBasis.from_patterns(L, j, kind, sector_closure(kind, L, j))
    logger.debug(f"{kind} L={L} j={j}: {len(basis)} patterns")
    return basis


class GradedSpace:
    """Sectors ``labels`` (decreasing) with contiguous global offsets.

    When a label below the highest one is missing, moves into it are dropped,
    so a space holding one sector carries that diagonal block only.
    """

    def __init__(self, kind: str, L: int, labels: tuple[int, ...]):
        if list(labels) != sorted(set(labels), reverse=True):
            raise SectorError(f"labels must be strictly decreasing, got {labels}")
        self.kind = kind
        self.L = L
        self.labels = tuple(labels)
        self.kernel = KERNELS[kind]
        self.sectors: dict[int, SectorBasis] = {}
        self.offsets: dict[int, int] = {}
        self._build()

    def _build(self):
        kernel, L = self.kernel, self.L
        # provisional ids in discovery order; remapped to sorted positions below
        ids: dict[LinkPattern, int] = {}
        patterns: list[LinkPattern] = []
        src, site, chan, dst, loops = (array("i"), array("b"), array("b"), array("i"), array("b"))

        def ident(p: LinkPattern) -> int:
            k = ids.get(p)
            if k is None:
                k = ids[p] = len(patterns)
                patterns.append(p)
            return k

        members: dict[int, list[int]] = {}
        for j in sorted(self.labels):
            seed = kernel.seed(L, j)
            start = ident(seed)
            visited = {start}
            queue = deque([seed])
            while queue:
                p = queue.popleft()
                pid = ids[p]
                for a in range(L):
                    for ch, target, closed in kernel.moves(p, a):
                        label = kernel.label(target)
                        if label not in self.labels:
                            continue
                        tid = ident(target)
                        if label == j and tid not in visited:
                            visited.add(tid)
                            queue.append(target)
                        src.append(pid)
                        site.append(a)
                        chan.append(ch)
                        dst.append(tid)
                        loops.append(closed)
            members[j] = sorted(visited, key=lambda k: patterns[k].code)

        unreached = set(range(len(patterns))) - set().union(*map(set, members.values()))
        if unreached:
            example = patterns[next(iter(unreached))]
            raise SectorError(f"action leaves the enumerated sectors, e.g. {example}")

        position = np.empty(len(patterns), dtype=np.int64)
        offset = 0
        for j in self.labels:
            self.offsets[j] = offset
            self.sectors[j] = SectorBasis.from_patterns(L, j, self.kind, (patterns[k] for k in members[j]))
            for local, k in enumerate(members[j]):
                position[k] = offset + local
            offset += len(members[j])
        self.dim = offset

        self._cols = position[np.frombuffer(src, dtype=np.int32)]
        self._rows = position[np.frombuffer(dst, dtype=np.int32)]
        self._sites = np.frombuffer(site, dtype=np.int8).copy()
        self._channels = np.frombuffer(chan, dtype=np.int8).copy()
        self._loops = np.frombuffer(loops, dtype=np.int8).copy()
        logger.info(
            f"{self.kind} L={L} graded space "
            + ", ".join(f"j={j}:{len(self.sectors[j])}" for j in self.labels)
        )

    def __len__(self):
        return self.dim

    def sector(self, j: int) -> SectorBasis:
        if j not in self.sectors:
            raise SectorError(f"sector {j} not in space with labels {self.labels}")
        return self.sectors[j]

    def slice(self, j: int) -> slice:
        start = self.offsets[j]
        return slice(start, start + len(self.sector(j)))

    def global_index(self, p: LinkPattern) -> int:
        j = self.kernel.label(p)
        return self.offsets[j] + self.sector(j).position(p)

    def pattern(self, k: int) -> LinkPattern:
        for j in self.labels:
            sl = self.slice(j)
            if sl.start <= k < sl.stop:
                return self.sector(j).patterns[k - sl.start]
        raise IndexError(k)

    def _weights(self, spec: "ModelSpec", mask=None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        coef = np.asarray(self.kernel.coefficients(spec), dtype=float)
        channels, loops = self._channels, self._loops
        rows, cols = self._rows, self._cols
        if mask is not None:
            channels, loops, rows, cols = channels[mask], loops[mask], rows[mask], cols[mask]
        values = coef[channels] * np.power(float(spec.n), loops.astype(float))
        return rows, cols, values

    def generator(self, spec: "ModelSpec", i: int) -> SparseOperator:
        """Matrix of e_i (h_i for the dilute model), i = 1..L."""
        if not 1 <= i <= self.L:
            raise ValueError(f"site index {i} outside 1..{self.L}")
        rows, cols, values = self._weights(spec, self._sites == i - 1)
        return SparseOperator.from_triplets(rows, cols, values, (self.dim, self.dim))

    def weighted_sum(self, spec: "ModelSpec", site_weights) -> SparseOperator:
        """sum_i w_i e_i with ``site_weights[i - 1] = w_i``."""
        site_weights = np.asarray(site_weights)
        if site_weights.shape != (self.L,):
            raise ValueError(f"expected {self.L} site weights, got {site_weights.shape}")
        rows, cols, values = self._weights(spec)
        return SparseOperator.from_triplets(
            rows, cols, values * site_weights[self._sites], (self.dim, self.dim)
        )

    def hamiltonian(self, spec: "ModelSpec") -> SparseOperator:
        """H = -sum_i e_i."""
        rows, cols, values = self._weights(spec)
        return SparseOperator.from_triplets(rows, cols, -values, (self.dim, self.dim))

    @cached_property
    def translation(self) -> SparseOperator:
        """Permutation matrix of u^2."""
        rows, cols = [], []
        for j in self.labels:
            off = self.offsets[j]
            for k, image in enumerate(self.sector(j).translation_permutation()):
                rows.append(off + image)
                cols.append(off + k)
        return SparseOperator.from_triplets(rows, cols, np.ones(len(rows)), (self.dim, self.dim))


@lru_cache(maxsize=16)
def graded_space(kind: str, L: int, labels: tuple[int, ...]) -> GradedSpace:
    return GradedSpace(kind, L, labels)


def space_for(spec: "ModelSpec", j_max: int) -> GradedSpace:
    return graded_space(spec.kind, spec.L, KERNELS[spec.kind].labels(spec.L, j_max))


def assemble_hamiltonian(spec: "ModelSpec", j_max: int) -> tuple[GradedSpace, SparseOperator]:
    """H = -sum_i e_i on the graded space with sectors j_max, ..., 0."""
    space = space_for(spec, j_max)
    return space, space.hamiltonian(spec)


def assemble_generator(spec: "ModelSpec", space: GradedSpace, i: int) -> SparseOperator:
    return space.generator(spec, i)
