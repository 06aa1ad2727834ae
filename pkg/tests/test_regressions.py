"""Published finite-size values of b; large lattices, run with ``-m slow``."""

import pytest

from bulkb.measure import extrapolate, measure_b
from bulkb.model import make_spec

PERCOLATION = {10: -4.33296, 12: -4.55078, 14: -4.68234, 16: -4.76634}
POLYMERS = {10: -4.17430, 12: -4.38064, 14: -4.52458}

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def percolation_records():
    return {L: measure_b(make_spec("percolation", L)) for L in PERCOLATION}


@pytest.mark.parametrize("L", sorted(PERCOLATION))
def test_percolation_table(L, percolation_records):
    record = percolation_records[L]
    assert record.ok, record.error
    assert record.b_N == pytest.approx(PERCOLATION[L], abs=2e-3)


def test_percolation_column_decreases(percolation_records):
    values = [percolation_records[L].b_N for L in sorted(PERCOLATION)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert all(-5 < b < -4 for b in values)


def test_percolation_extrapolation(percolation_records):
    result = extrapolate(percolation_records.values(), order=2)
    assert -5.15 <= result.b_inf <= -4.85


@pytest.mark.parametrize("L", sorted(POLYMERS))
def test_polymer_table(L):
    record = measure_b(make_spec("polymers", L))
    assert record.ok, record.error
    assert record.b_N == pytest.approx(POLYMERS[L], abs=5e-3)
