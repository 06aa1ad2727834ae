import pytest
from hypothesis import given
from hypothesis import strategies as st

from bulkb.errors import FitError
from bulkb.measure import MeasurementRecord, extrapolate

PERCOLATION_COLUMN = [
    (10, -4.33296),
    (12, -4.55078),
    (14, -4.68234),
    (16, -4.76634),
    (18, -4.82256),
    (20, -4.86168),
    (22, -4.88978),
]


def test_published_percolation_column():
    result = extrapolate(PERCOLATION_COLUMN, order=2)
    assert -5.1 <= result.b_inf <= -4.9
    assert set(result.by_order) == {1, 2}
    assert result.spread >= 0
    assert len(result.coefficients) == 3


@given(
    st.floats(min_value=-10, max_value=10),
    st.floats(min_value=-10, max_value=10),
    st.floats(min_value=-10, max_value=10),
)
def test_exact_series_is_recovered(b_inf, a1, a2):
    data = [(L, b_inf + a1 / (L / 2) + a2 / (L / 2) ** 2) for L in range(10, 24, 2)]
    result = extrapolate(data, order=2)
    assert result.b_inf == pytest.approx(b_inf, abs=1e-7)


def test_failed_records_are_skipped():
    records = [MeasurementRecord(model="percolation", L=L, b_N=b) for L, b in PERCOLATION_COLUMN[:4]]
    records.append(MeasurementRecord.failed("percolation", 24, "EigenSolverError: no convergence"))
    result = extrapolate(records, order=1)
    assert result.order == 1
    assert result.by_order == {1: pytest.approx(result.b_inf)}


def test_order_checks():
    with pytest.raises(FitError):
        extrapolate(PERCOLATION_COLUMN, order=0)
    with pytest.raises(FitError, match="needs at least"):
        extrapolate(PERCOLATION_COLUMN[:3], order=2)
    with pytest.raises(FitError, match="rank-deficient"):
        extrapolate([(10, -4.3)] * 4, order=2)
