"""Dilute O(n) loop model: patterns with vacancies and the integrable density.

Sector labels count through-lines directly (a contraction removes two), and
the seed of sector j has through-lines on sites 1..j with every other site
empty.

The density h_i acting on sites (i, i+1) has seven channels:

===========  ====================  =================================
occupation   channel               result
===========  ====================  =================================
both empty   E                     unchanged
both empty   C (creation)          short arc (i, i+1)
one strand   I                     unchanged
one strand   S                     strand moved to the empty site
two strands  II                    unchanged
two strands  C (annihilation)      strands joined, both sites emptied
two strands  e                     dense TL contraction
===========  ====================  =================================
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from importlib import resources
from typing import TYPE_CHECKING

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from ..errors import InvalidModelError, SectorError
from ..logging import get_logger
from .dense import contract
from .linkstate import DEFECT, EMPTY, LinkPattern

if TYPE_CHECKING:
    from ..model import ModelSpec

logger = get_logger(__name__)

CHANNELS = ("E", "C", "I", "S", "II", "C", "e")
KEEP_EMPTY, CREATE, KEEP_ONE, MOVE, KEEP_TWO, ANNIHILATE, CONTRACT = range(7)


@dataclass(frozen=True)
class DiluteDensity:
    """Channel coefficients of h_i at crossing angle ``lam``."""

    lam: float
    E: float
    I: float
    S: float
    C: float
    II: float
    e: float

    @classmethod
    def at_angle(cls, lam: float) -> "DiluteDensity":
        s1, s2, s3 = math.sin(lam), math.sin(2 * lam), math.sin(3 * lam)
        return cls(
            lam=lam,
            E=1.0 / s2,
            I=-math.cos(3 * lam) / s3,
            S=1.0 / s2,
            C=1.0 / s3,
            II=-math.sin(5 * lam) / (s2 * s3),
            e=-s1 / (s2 * s3),
        )

    @classmethod
    def at_loop_weight(cls, n: float) -> "DiluteDensity":
        if not -2.0 < n < 2.0:
            raise InvalidModelError(f"dilute loop weight {n} outside (-2, 2)")
        return cls.at_angle(math.acos(-n / 2.0) / 4.0)

    @property
    def loop_weight(self) -> float:
        return -2.0 * math.cos(4 * self.lam)

    @property
    def velocity(self) -> float:
        return math.pi / (3 * self.lam)

    def coefficients(self) -> tuple[float, ...]:
        return (self.E, self.C, self.I, self.S, self.II, self.C, self.e)


def load_density_table() -> tuple[DiluteDensity, dict]:
    """Read the persisted polymer table and check it against the closed form."""
    raw = resources.files("bulkb.loops").joinpath("data/dilute_density.toml").read_text()
    table = tomllib.loads(raw)
    row = table["polymers"]
    stored = DiluteDensity(
        lam=row["lam"], E=row["E"], I=row["I"], S=row["S"], C=row["C"], II=row["II"], e=row["e"]
    )
    closed = DiluteDensity.at_angle(math.pi / 8.0)
    for name in ("lam", "E", "I", "S", "C", "II", "e"):
        if not math.isclose(getattr(stored, name), getattr(closed, name), rel_tol=1e-12, abs_tol=1e-14):
            raise InvalidModelError(
                f"dilute density table entry {name}={getattr(stored, name)} "
                f"disagrees with the closed form {getattr(closed, name)}"
            )
    return stored, table["anchors"]


POLYMER_DENSITY, POLYMER_ANCHORS = load_density_table()


def _move(sites: list[int], src: int, dst: int) -> None:
    q = sites[src]
    sites[dst] = q
    if q >= 0:
        sites[q] = dst
    sites[src] = EMPTY


def channel_moves(p: LinkPattern, a: int) -> list[tuple[int, LinkPattern, int]]:
    """All channels of h at 0-based sites (a, a+1) as (channel, target, closed loops)."""
    L = p.L
    b = (a + 1) % L
    oa, ob = p.sites[a] != EMPTY, p.sites[b] != EMPTY
    if not oa and not ob:
        s = list(p.sites)
        s[a], s[b] = b, a
        return [(KEEP_EMPTY, p, 0), (CREATE, LinkPattern(tuple(s)), 0)]
    if oa != ob:
        s = list(p.sites)
        if oa:
            _move(s, a, b)
        else:
            _move(s, b, a)
        return [(KEEP_ONE, p, 0), (MOVE, LinkPattern(tuple(s)), 0)]
    joined, loops = contract(p, a, punctured=False)
    s = list(joined.sites)
    s[a] = s[b] = EMPTY
    return [
        (KEEP_TWO, p, 0),
        (ANNIHILATE, LinkPattern(tuple(s)), loops),
        (CONTRACT, joined, loops),
    ]


class DiluteKernel:
    kind = "dilute"
    channels = CHANNELS

    @staticmethod
    def label(p: LinkPattern) -> int:
        return p.n_defects

    @staticmethod
    def labels(L: int, j_max: int) -> tuple[int, ...]:
        if not 0 <= j_max <= L:
            raise SectorError(f"j_max={j_max} outside 0..{L}")
        return tuple(range(j_max, -1, -2))

    @staticmethod
    def seed(L: int, j: int) -> LinkPattern:
        if not 0 <= j <= L:
            raise SectorError(f"dilute sector j={j} outside 0..{L}")
        return LinkPattern(tuple([DEFECT] * j + [EMPTY] * (L - j)))

    @staticmethod
    def moves(p: LinkPattern, a: int) -> list[tuple[int, LinkPattern, int]]:
        return channel_moves(p, a)

    @staticmethod
    def coefficients(spec: "ModelSpec") -> tuple[float, ...]:
        return density_for(spec).coefficients()


def density_for(spec: "ModelSpec") -> DiluteDensity:
    if spec.kind != "dilute":
        raise InvalidModelError(f"expected a dilute model, got {spec.kind}")
    if spec.lam is None or math.isclose(spec.lam, POLYMER_DENSITY.lam):
        return POLYMER_DENSITY
    return DiluteDensity.at_angle(spec.lam)


def act_e_dilute(spec: "ModelSpec", i: int, p: LinkPattern) -> list[tuple[LinkPattern, float]]:
    """Weighted channels of the density h_i (1-based, cyclic) on one pattern."""
    if not 1 <= i <= spec.L:
        raise ValueError(f"site index {i} outside 1..{spec.L}")
    coef = density_for(spec).coefficients()
    return [(target, coef[ch] * spec.n**loops) for ch, target, loops in channel_moves(p, i - 1)]
