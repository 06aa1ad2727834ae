"""The loop bilinear form.

``glue(a, b)`` reflects ``a``, glues it site by site on top of ``b`` and
weights the resulting diagram: every closed loop (contractible or not) gets
the loop weight n, every line joining a through-line of ``a`` to one of ``b``
gets 1, and a line turning back to the side it came from kills the diagram.
Dilute patterns with different occupations glue to zero.

Gram matrices of large sectors are never built pattern by pattern: within a
block of equal occupation the two patterns restricted to the vacuum sector
are perfect matchings, and the number of loops is half the number of cycles
of the permutation ``a o b``, which numpy counts for a whole row at once.
The count ignores the face of the puncture, so vacuum patterns sharing a
pairing share one row of counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..errors import SectorError
from ..logging import get_logger
from .linkstate import DEFECT, EMPTY, LinkPattern, SectorBasis
from .operator import GradedSpace, sector_basis

logger = get_logger(__name__)

VANISHING = -1


def glue_loops(a: LinkPattern, b: LinkPattern) -> int | None:
    """Closed loops of the glued diagram, or None when it vanishes."""
    if a.L != b.L or a.n_defects != b.n_defects:
        raise SectorError(f"cannot glue {a} and {b}: different sectors")
    if a.occupied != b.occupied:
        return None
    top, bottom = a.sites, b.sites
    seen: set[int] = set()

    for start, p in enumerate(top):
        if p != DEFECT:
            continue
        x, below = start, True
        while True:
            seen.add(x)
            nxt = (bottom if below else top)[x]
            if nxt == DEFECT:
                break
            x, below = nxt, not below
        if not below:
            return None

    for site, p in enumerate(bottom):
        if p == DEFECT and site not in seen:
            return None

    loops = 0
    for start, p in enumerate(top):
        if p == EMPTY or start in seen:
            continue
        loops += 1
        x, below = start, True
        while True:
            seen.add(x)
            x = (bottom if below else top)[x]
            below = not below
            if x == start and below:
                break
    return loops


def glue(a: LinkPattern, b: LinkPattern, n: float = 1.0) -> float:
    loops = glue_loops(a, b)
    return 0.0 if loops is None else float(n) ** loops


def matching_loop_counts(top: np.ndarray, bottom: np.ndarray) -> np.ndarray:
    """Loops between every pair of perfect matchings given as partner tables."""
    m = top.shape[1]
    out = np.empty((top.shape[0], bottom.shape[0]), dtype=np.int8)
    identity = np.arange(m)
    for r, row in enumerate(top):
        sigma = row[bottom]
        cur = np.broadcast_to(identity, sigma.shape).copy()
        lowest = cur.copy()
        for _ in range(m):
            cur = np.take_along_axis(sigma, cur, axis=1)
            np.minimum(lowest, cur, out=lowest)
        out[r] = (lowest == identity).sum(axis=1) // 2
    return out


def _compressed_matching(p: LinkPattern, occupied: list[int]) -> list[int]:
    where = {s: k for k, s in enumerate(occupied)}
    return [where[p.sites[s]] for s in occupied]


@dataclass(frozen=True)
class GramMatrix:
    basis: SectorBasis
    n: float
    values: np.ndarray


class LoopForm:
    """Loop counts of one sector, grouped in blocks of equal occupation.

    Each block keeps the positions of its patterns, the counts between its
    distinct pairings, and for every pattern the row of its pairing.
    """

    def __init__(self, basis: SectorBasis):
        self.basis = basis
        groups: dict[tuple[bool, ...], list[int]] = {}
        for k, p in enumerate(basis.patterns):
            groups.setdefault(p.occupied, []).append(k)
        self.blocks: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = []
        for occupation, members in groups.items():
            idx = np.asarray(members, dtype=np.int64)
            pats = [basis.patterns[k] for k in members]
            if basis.j == 0:
                occupied = [s for s, o in enumerate(occupation) if o]
                if not occupied:
                    counts = np.zeros((1, 1), dtype=np.int8)
                    rows = np.zeros(len(pats), dtype=np.int64)
                else:
                    table = np.asarray([_compressed_matching(p, occupied) for p in pats])
                    table, rows = np.unique(table, axis=0, return_inverse=True)
                    counts = matching_loop_counts(table, table)
            else:
                rows = np.arange(len(pats))
                counts = np.empty((len(pats), len(pats)), dtype=np.int8)
                for r, a in enumerate(pats):
                    for c in range(r, len(pats)):
                        loops = glue_loops(a, pats[c])
                        counts[r, c] = counts[c, r] = VANISHING if loops is None else loops
            self.blocks.append((idx, counts, np.asarray(rows, dtype=np.int64).ravel()))
        logger.debug(f"loop form {basis.kind} L={basis.L} j={basis.j}: {len(self.blocks)} blocks")

    @staticmethod
    def _weights(counts: np.ndarray, n: float) -> np.ndarray:
        weights = np.zeros(counts.shape)
        closed = counts != VANISHING
        weights[closed] = np.power(float(n), counts[closed].astype(float))
        return weights

    def gram(self, n: float) -> GramMatrix:
        dim = len(self.basis)
        values = np.zeros((dim, dim))
        for idx, counts, rows in self.blocks:
            values[np.ix_(idx, idx)] = self._weights(counts, n)[np.ix_(rows, rows)]
        return GramMatrix(self.basis, n, values)

    def pair(self, x: np.ndarray, y: np.ndarray, n: float) -> complex:
        """Conjugate-bilinear form <x|y> on pattern-basis vectors of this sector."""
        x, y = np.asarray(x), np.asarray(y)
        dim = len(self.basis)
        if x.shape != (dim,) or y.shape != (dim,):
            raise ValueError(f"vectors of shape {x.shape}, {y.shape} for a sector of dimension {dim}")
        total = 0.0 + 0.0j
        for idx, counts, rows in self.blocks:
            xs = np.zeros(len(counts), dtype=complex)
            ys = np.zeros(len(counts), dtype=complex)
            np.add.at(xs, rows, np.conj(x[idx]))
            np.add.at(ys, rows, y[idx])
            total += xs @ (self._weights(counts, n) @ ys)
        return complex(total)


@lru_cache(maxsize=32)
def loop_form(kind: str, L: int, j: int) -> LoopForm:
    return LoopForm(sector_basis(kind, L, j))


def gram(basis: SectorBasis, n: float) -> GramMatrix:
    return loop_form(basis.kind, basis.L, basis.j).gram(n)


def pair(x: np.ndarray, y: np.ndarray, space: GradedSpace, n: float) -> complex:
    """<x|y> on a graded space; different sectors pair to zero."""
    x, y = np.asarray(x), np.asarray(y)
    if x.shape != (space.dim,) or y.shape != (space.dim,):
        raise ValueError(f"vectors of shape {x.shape}, {y.shape} for a space of dimension {space.dim}")
    total = 0.0 + 0.0j
    for j in space.labels:
        sl = space.slice(j)
        total += loop_form(space.kind, space.L, j).pair(x[sl], y[sl], n)
    return complex(total)
