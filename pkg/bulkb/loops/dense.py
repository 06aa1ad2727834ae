"""Periodic Temperley-Lieb action for the dense loop model.

``e_i`` glues a cup-cap onto sites i and i+1 (cyclically, i = 1..L):

* sites paired together: a closed loop, weight n, pattern unchanged up to the
  seam tag of the new cup;
* paired elsewhere: their partners are joined, weight 1;
* one through-line: it moves to the partner of the other site, weight 1;
* two through-lines: they are joined into an arc, sector j -> j - 1, weight 1.

Through-line winding produced on the way is dropped with weight 1, which is
automatic because forced seam tags are recomputed for every new pattern. In
the vacuum the seam tags are carried along: a new arc crosses the seam as
often as its pieces did, and the cup-cap itself crosses it only on sites L, 1.
A loop closed around the puncture weighs n like any other. When the last two
through-lines are joined the puncture is left just below the new cup.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from ..errors import InvalidModelError, SectorError
from .linkstate import DEFECT, EMPTY, LinkPattern, dense_seed

if TYPE_CHECKING:
    from ..model import ModelSpec


def contract(p: LinkPattern, a: int, punctured: bool = True) -> tuple[LinkPattern, int]:
    """Cup-cap at 0-based sites (a, a+1); returns the new pattern and closed loops.

    With ``punctured`` False vacuum results forget the face of the puncture.
    """
    L = p.L
    b = (a + 1) % L
    seam = b == 0
    s, t = list(p.sites), list(p.tags)
    pa, pb = s[a], s[b]
    if pa == EMPTY or pb == EMPTY:
        raise SectorError(f"contraction on an empty site at ({a}, {b}) of {p}")
    loops = 0
    if pa == b:
        loops = 1
    elif pa >= 0 and pb >= 0:
        s[pa], s[pb] = pb, pa
        t[pa] = t[pb] = t[a] ^ t[b] ^ seam
    elif pa == DEFECT and pb >= 0:
        s[pb] = DEFECT
    elif pb == DEFECT and pa >= 0:
        s[pa] = DEFECT
    s[a], s[b] = b, a
    t[a] = t[b] = seam
    if not punctured or DEFECT in s:
        return LinkPattern(tuple(s)), loops
    return LinkPattern(tuple(s), tuple(t)), loops


class DenseKernel:
    """Local moves of the dense model; one channel, the TL generator."""

    kind = "dense"
    channels = ("e",)

    @staticmethod
    def label(p: LinkPattern) -> int:
        return p.n_defects // 2

    @staticmethod
    def labels(L: int, j_max: int) -> tuple[int, ...]:
        if not 0 <= j_max <= L // 2:
            raise SectorError(f"j_max={j_max} outside 0..{L // 2}")
        return tuple(range(j_max, -1, -1))

    @staticmethod
    def seed(L: int, j: int) -> LinkPattern:
        return dense_seed(L, j)

    @staticmethod
    def moves(p: LinkPattern, a: int) -> list[tuple[int, LinkPattern, int]]:
        target, loops = contract(p, a)
        return [(0, target, loops)]

    @staticmethod
    def coefficients(spec: "ModelSpec") -> tuple[float, ...]:
        return (1.0,)


def _require_dense(spec: "ModelSpec") -> None:
    if spec.kind != "dense":
        raise InvalidModelError(f"expected a dense model, got {spec.kind}")


def seed_pattern(spec: "ModelSpec", j: int) -> LinkPattern:
    _require_dense(spec)
    return dense_seed(spec.L, j)


def act_e_dense(spec: "ModelSpec", i: int, p: LinkPattern) -> list[tuple[LinkPattern, float]]:
    """Action of e_i (1-based, cyclic) on one pattern."""
    _require_dense(spec)
    if not 1 <= i <= spec.L:
        raise ValueError(f"site index {i} outside 1..{spec.L}")
    target, loops = contract(p, i - 1)
    return [(target, spec.n**loops)]
