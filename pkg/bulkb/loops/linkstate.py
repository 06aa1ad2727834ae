"""Link patterns on the periodic strip and their sector bases.

A pattern stores, for each of the L sites, either the index of its partner
(0-based), ``DEFECT`` for a through-line or ``EMPTY`` for a vacancy of the
dilute model. Each arc also carries a tag telling whether it passes over the
seam, a line drawn from the puncture to the boundary between the last and the
first site. Equivalently, an arc (a, b) with a < b is tagged when the puncture
lies on the side of the sites a+1..b-1.

* with at least one through-line an arc cannot enclose a through-line, so the
  tags are forced: an arc is tagged exactly when the linear interval between
  its ends contains the through-lines;
* in the dense vacuum the puncture can sit in any face of the pairing, and the
  tagged arcs are exactly those around that face. Untagged patterns put it in
  the face touching the seam. The dilute vacuum keeps every arc untagged.

Site indices in this module are 0-based; the operator modules take 1-based
generator labels.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable

from upath import UPath

from ..errors import PlanarityError, SectorError
from ..logging import get_logger

logger = get_logger(__name__)

DEFECT = -1
EMPTY = -2


def check_planar(sites: tuple[int, ...]) -> None:
    """Raise PlanarityError unless ``sites`` is a planar annular pattern."""
    L = len(sites)
    for i, p in enumerate(sites):
        if p >= 0:
            if p >= L or p == i or sites[p] != i:
                raise PlanarityError(f"site {i} -> {p} is not an involution in {sites}")
        elif p not in (DEFECT, EMPTY):
            raise PlanarityError(f"bad site code {p} at {i}")

    stack: list[int] = []
    for i, p in enumerate(sites):
        if p > i:
            stack.append(i)
        elif 0 <= p < i:
            if not stack or stack[-1] != p:
                raise PlanarityError(f"crossing arcs in {sites}")
            stack.pop()

    prefix = [0] * (L + 1)
    for i, p in enumerate(sites):
        prefix[i + 1] = prefix[i] + (p == DEFECT)
    total = prefix[L]
    for a, b in enumerate(sites):
        if b > a:
            inside = prefix[b] - prefix[a + 1]
            if inside not in (0, total):
                raise PlanarityError(f"arc ({a}, {b}) separates through-lines in {sites}")


def canonical_tags(sites: tuple[int, ...]) -> tuple[bool, ...]:
    """Seam tags forced by the through-lines; all False without through-lines."""
    L = len(sites)
    tags = [False] * L
    defects = [i for i, p in enumerate(sites) if p == DEFECT]
    if not defects:
        return tuple(tags)
    first, last = defects[0], defects[-1]
    for a, b in enumerate(sites):
        if b > a and a < first and last < b:
            tags[a] = tags[b] = True
    return tuple(tags)


def check_tags(sites: tuple[int, ...], tags: tuple[bool, ...]) -> None:
    """Raise PlanarityError unless ``tags`` place the puncture in one face."""
    if len(tags) != len(sites):
        raise PlanarityError(f"{len(tags)} seam tags for {len(sites)} sites")
    if DEFECT in sites:
        if tags != canonical_tags(sites):
            raise PlanarityError(f"inconsistent seam tags {tags} for {sites}")
        return
    for a, b in enumerate(sites):
        if (b < 0 and tags[a]) or (b >= 0 and tags[a] != tags[b]):
            raise PlanarityError(f"seam tag on site {a} does not belong to an arc of {sites}")
    arcs = [(a, b) for a, b in enumerate(sites) if b > a]
    tagged = [arc for arc in arcs if tags[arc[0]]]
    if not tagged:
        return
    lo, hi = max(tagged)
    for a, b in arcs:
        if tags[a] != (a <= lo and hi <= b):
            raise PlanarityError(f"seam tags {tags} do not surround a single face of {sites}")


def encode(sites: tuple[int, ...], tags: tuple[bool, ...]) -> tuple[int, ...]:
    """Fixed-width integer code: 0 defect, 1 empty, else partner offset and seam bit."""
    L = len(sites)
    code = []
    for i, p in enumerate(sites):
        if p == DEFECT:
            code.append(0)
        elif p == EMPTY:
            code.append(1)
        else:
            code.append(2 + 2 * ((p - i) % L - 1) + int(tags[i]))
    return tuple(code)


@dataclass(frozen=True)
class LinkPattern:
    sites: tuple[int, ...]
    tags: tuple[bool, ...] = field(default=(), compare=False, repr=False)
    code: tuple[int, ...] = field(default=(), compare=True, repr=False, init=False)

    def __post_init__(self):
        sites = tuple(int(p) for p in self.sites)
        check_planar(sites)
        tags = tuple(bool(t) for t in self.tags) if self.tags else canonical_tags(sites)
        check_tags(sites, tags)
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "tags", tags)
        object.__setattr__(self, "code", encode(sites, tags))

    def __hash__(self):
        return hash(self.code)

    def __lt__(self, other: "LinkPattern") -> bool:
        return self.code < other.code

    @property
    def L(self) -> int:
        return len(self.sites)

    @property
    def defects(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.sites) if p == DEFECT)

    @property
    def n_defects(self) -> int:
        return sum(1 for p in self.sites if p == DEFECT)

    @property
    def occupied(self) -> tuple[bool, ...]:
        return tuple(p != EMPTY for p in self.sites)

    @property
    def arcs(self) -> list[tuple[int, int]]:
        return [(a, b) for a, b in enumerate(self.sites) if b > a]

    @property
    def is_dense(self) -> bool:
        return EMPTY not in self.sites

    def __str__(self):
        def show(i, p):
            if p == DEFECT:
                return "|"
            if p == EMPTY:
                return "."
            return f"{p + 1}{'*' if self.tags[i] else ''}"

        return "[" + " ".join(show(i, p) for i, p in enumerate(self.sites)) + "]"


def decode(code: Iterable[int]) -> LinkPattern:
    code = tuple(code)
    L = len(code)
    sites, tags = [], []
    for i, c in enumerate(code):
        if c == 0:
            sites.append(DEFECT)
            tags.append(False)
        elif c == 1:
            sites.append(EMPTY)
            tags.append(False)
        else:
            offset = (c - 2) // 2 + 1
            sites.append((i + offset) % L)
            tags.append(bool((c - 2) % 2))
    return LinkPattern(tuple(sites), tuple(tags))


def from_arcs(
    L: int,
    arcs: Iterable[tuple[int, int]],
    defects: Iterable[int] = (),
    around: Iterable[tuple[int, int]] = (),
) -> LinkPattern:
    """Pattern from 1-based arcs and defect sites; unlisted sites are empty.

    ``around`` lists the vacuum arcs passing over the seam.
    """
    sites = [EMPTY] * L
    tags = [False] * L
    for a, b in arcs:
        sites[a - 1] = b - 1
        sites[b - 1] = a - 1
    for d in defects:
        sites[d - 1] = DEFECT
    for a, b in around:
        tags[a - 1] = tags[b - 1] = True
    return LinkPattern(tuple(sites), tuple(tags) if any(tags) else ())


def untagged(p: LinkPattern) -> LinkPattern:
    """The same pairing with the puncture forgotten (forced tags kept)."""
    return LinkPattern(p.sites)


def translate(p: LinkPattern, shift: int) -> LinkPattern:
    """Rotate by ``shift`` sites; an arc changes tag when it starts or stops straddling the seam."""
    L = p.L
    sites = [EMPTY] * L
    tags = [False] * L
    for i, q in enumerate(p.sites):
        k = (i + shift) % L
        if q >= 0:
            sites[k] = (q + shift) % L
            tags[k] = p.tags[i] != ((i < q) != (k < sites[k]))
        else:
            sites[k] = q
    return LinkPattern(tuple(sites), tuple(tags))


def translate_two(p: LinkPattern) -> LinkPattern:
    """The lattice translation u^2: every site moves two units to the right."""
    return translate(p, 2)


def dense_seed(L: int, j: int) -> LinkPattern:
    """Dense seed: 2j through-lines on the first sites, short arcs after them."""
    N = L // 2
    if not 0 <= j <= N:
        raise SectorError(f"sector j={j} outside 0..{N} for L={L}")
    sites = [DEFECT] * L
    for a in range(2 * j, L, 2):
        sites[a] = a + 1
        sites[a + 1] = a
    return LinkPattern(tuple(sites))


@dataclass(frozen=True)
class SectorBasis:
    """Ordered, duplicate-free patterns of one sector."""

    L: int
    j: int
    kind: str
    patterns: tuple[LinkPattern, ...]
    index: dict[tuple[int, ...], int] = field(compare=False, repr=False)

    @classmethod
    def from_patterns(cls, L: int, j: int, kind: str, patterns: Iterable[LinkPattern]):
        ordered = tuple(sorted(set(patterns)))
        index = {p.code: k for k, p in enumerate(ordered)}
        return cls(L=L, j=j, kind=kind, patterns=ordered, index=index)

    def __len__(self):
        return len(self.patterns)

    def __iter__(self):
        return iter(self.patterns)

    def __contains__(self, p: LinkPattern) -> bool:
        return p.code in self.index

    def position(self, p: LinkPattern) -> int:
        return self.index[p.code]

    @property
    def punctured(self) -> bool:
        """Whether vacuum patterns remember the face of the puncture."""
        return self.kind == "dense"

    @cached_property
    def _translation_image(self) -> tuple[int, ...]:
        images = (translate_two(p) for p in self.patterns)
        if not self.punctured:
            images = (untagged(q) for q in images)
        return tuple(self.index[q.code] for q in images)

    def translation_permutation(self) -> list[int]:
        """perm[k] is the position of u^2 applied to pattern k."""
        return list(self._translation_image)

    def dump(self, path: str | UPath) -> None:
        """One pattern per line in the canonical encoding."""
        with UPath(path).open("w") as fh:
            for p in self.patterns:
                fh.write(" ".join(str(c) for c in p.code) + "\n")


def orbit_closure(
    seed: LinkPattern, moves: Callable[[LinkPattern], Iterable[LinkPattern]]
) -> list[LinkPattern]:
    """Breadth-first closure of ``seed`` under ``moves``."""
    seen = {seed}
    queue = deque([seed])
    while queue:
        p = queue.popleft()
        for q in moves(p):
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return list(seen)
