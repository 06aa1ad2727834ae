from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bulkb.errors import PlanarityError, SectorError
from bulkb.loops.linkstate import (
    DEFECT,
    EMPTY,
    LinkPattern,
    check_planar,
    decode,
    dense_seed,
    from_arcs,
    translate_two,
)
from bulkb.loops.operator import sector_basis

MOTZKIN = {2: 2, 4: 9, 6: 51, 8: 323, 10: 2188}

# the two example states at L = 6, j = 1: nested arcs with the through-lines on
# the right, and the same arcs drawn around the back of the cylinder
ALPHA = from_arcs(6, [(1, 4), (2, 3)], defects=[5, 6])
BETA = from_arcs(6, [(1, 6), (2, 5)], defects=[3, 4])


def brute_planar(sites):
    L = len(sites)
    arcs = []
    for i, p in enumerate(sites):
        if p >= 0:
            if p >= L or p == i or sites[p] != i:
                return False
            if p > i:
                arcs.append((i, p))
        elif p not in (DEFECT, EMPTY):
            return False
    for a, b in arcs:
        for c, d in arcs:
            if a < c < b < d:
                return False
    defects = [i for i, p in enumerate(sites) if p == DEFECT]
    for a, b in arcs:
        inside = sum(1 for d in defects if a < d < b)
        if inside not in (0, len(defects)):
            return False
    return True


def involutions(L, unpaired):
    """Every assignment of partners on L sites, the rest taking a value from ``unpaired``."""

    def extend(sites, i):
        if i == L:
            yield tuple(sites)
            return
        if sites[i] is not None:
            yield from extend(sites, i + 1)
            return
        for mark in unpaired:
            sites[i] = mark
            yield from extend(sites, i + 1)
        for k in range(i + 1, L):
            if sites[k] is None:
                sites[i], sites[k] = k, i
                yield from extend(sites, i + 1)
                sites[k] = None
        sites[i] = None

    yield from extend([None] * L, 0)


def annular_vacuum(L):
    """Planar pairings with the puncture placed behind each gap between sites.

    Behind the gap after site g, an arc (a, b) with a < b passes over the seam
    exactly when a <= g < b.
    """
    out = set()
    for sites in involutions(L, ()):
        if not brute_planar(sites):
            continue
        for g in range(L):
            tags = tuple(p >= 0 and min(i, p) <= g < max(i, p) for i, p in enumerate(sites))
            out.add((sites, tags))
    return out


@given(st.lists(st.integers(min_value=-2, max_value=5), min_size=6, max_size=6))
def test_planarity_matches_brute_force(sites):
    sites = tuple(sites)
    try:
        check_planar(sites)
        ok = True
    except PlanarityError:
        ok = False
    assert ok == brute_planar(sites)


def test_crossing_rejected():
    with pytest.raises(PlanarityError):
        from_arcs(4, [(1, 3), (2, 4)])


def test_arc_between_defects_rejected():
    with pytest.raises(PlanarityError):
        LinkPattern((2, DEFECT, 0, DEFECT))
    # enclosing every through-line is allowed: the arc passes over the seam
    p = LinkPattern((3, DEFECT, DEFECT, 0))
    assert p.tags == (True, False, False, True)


def test_vacuum_default_puncture_touches_seam():
    p = from_arcs(4, [(1, 4), (2, 3)])
    assert not any(p.tags)
    assert str(p) == "[4 3 2 1]"


def test_vacuum_tags_surround_one_face():
    inner = from_arcs(4, [(1, 4), (2, 3)], around=[(1, 4), (2, 3)])
    assert str(inner) == "[4* 3* 2* 1*]"
    assert inner != from_arcs(4, [(1, 4), (2, 3)])
    # the puncture cannot sit inside (2, 3) without being inside (1, 4)
    with pytest.raises(PlanarityError):
        from_arcs(4, [(1, 4), (2, 3)], around=[(2, 3)])
    # nor inside two disjoint arcs at once
    with pytest.raises(PlanarityError):
        from_arcs(4, [(1, 2), (3, 4)], around=[(1, 2), (3, 4)])


def test_forced_tags_cannot_be_overridden():
    with pytest.raises(PlanarityError):
        LinkPattern((3, DEFECT, DEFECT, 0), (False, False, False, False))


def test_decode_inverts_code():
    p = LinkPattern((3, DEFECT, DEFECT, 0))
    assert decode(p.code) == p
    q = from_arcs(6, [(1, 2), (3, 6), (4, 5)], around=[(3, 6)])
    assert decode(q.code) == q


@pytest.mark.parametrize("L", [4, 10])
def test_dense_vacuum_matches_annular_oracle(L):
    basis = sector_basis("dense", L, 0)
    assert {(p.sites, p.tags) for p in basis} == annular_vacuum(L)
    assert len(basis) == comb(L, L // 2)


@pytest.mark.parametrize("L, j", [(4, 1), (6, 1), (6, 2), (8, 1), (8, 2)])
def test_dense_sector_matches_involution_oracle(L, j):
    expected = {
        sites
        for sites in involutions(L, (DEFECT,))
        if sites.count(DEFECT) == 2 * j and brute_planar(sites)
    }
    assert {p.sites for p in sector_basis("dense", L, j)} == expected


def test_dilute_vacuum_matches_involution_oracle():
    expected = {sites for sites in involutions(6, (EMPTY,)) if brute_planar(sites)}
    basis = sector_basis("dilute", 6, 0)
    assert {p.sites for p in basis} == expected
    assert len(basis) == MOTZKIN[6]
    assert not any(any(p.tags) for p in basis)


@pytest.mark.parametrize(
    "L, j, expected",
    [(4, 0, 6), (10, 0, 252), (6, 1, 15), (10, 2, 120), (8, 4, 1)],
)
def test_dense_sector_sizes(L, j, expected):
    assert len(sector_basis("dense", L, j)) == expected


@pytest.mark.parametrize("L", [4, 6, 8])
def test_dense_sector_sizes_binomial(L):
    N = L // 2
    for j in range(N + 1):
        assert len(sector_basis("dense", L, j)) == comb(L, N - j)


@pytest.mark.parametrize("L", [2, 4, 6, 10])
def test_dilute_vacuum_is_motzkin(L):
    assert len(sector_basis("dilute", L, 0)) == MOTZKIN[L]


def test_dilute_all_defect_sector():
    basis = sector_basis("dilute", 2, 2)
    assert len(basis) == 1
    assert basis.patterns[0].sites == (DEFECT, DEFECT)


def test_seed_out_of_range():
    with pytest.raises(SectorError):
        dense_seed(6, 4)


def test_seed_is_translation_invariant():
    seed = dense_seed(4, 0)
    assert translate_two(seed) == seed


def test_long_way_arc_moves():
    p = from_arcs(6, [(1, 2), (3, 4), (5, 6)], around=[(3, 4)])
    q = translate_two(p)
    assert q != p
    assert q == from_arcs(6, [(1, 2), (3, 4), (5, 6)], around=[(5, 6)])
    assert translate_two(translate_two(q)) == p


def test_example_states_are_translates():
    assert BETA.tags == (True, True, False, False, True, True)
    assert not any(ALPHA.tags)
    assert translate_two(ALPHA) != ALPHA
    assert translate_two(translate_two(ALPHA)) == BETA


@pytest.mark.parametrize("kind, L, j", [("dense", 8, 1), ("dense", 8, 0), ("dense", 10, 0), ("dilute", 6, 2)])
def test_translation_has_period_N(kind, L, j):
    basis = sector_basis(kind, L, j)
    perm = basis.translation_permutation()
    assert sorted(perm) == list(range(len(basis)))
    for k, p in enumerate(basis.patterns):
        q = p
        for _ in range(L // 2):
            q = translate_two(q)
        if kind == "dense":
            assert q == p
        assert basis.patterns[perm[k]].sites == translate_two(p).sites


def test_sectors_are_disjoint():
    codes = [{p.code for p in sector_basis("dense", 8, j)} for j in range(5)]
    for a in range(5):
        for b in range(a + 1, 5):
            assert not codes[a] & codes[b]


def test_basis_dump(tmp_path):
    basis = sector_basis("dense", 4, 0)
    path = tmp_path / "basis.txt"
    basis.dump(str(path))
    lines = path.read_text().splitlines()
    assert len(lines) == 6
    assert [decode(map(int, line.split())) for line in lines] == list(basis.patterns)
