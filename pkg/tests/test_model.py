import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bulkb.errors import InvalidModelError
from bulkb.model import (
    ModelSpec,
    central_charge,
    dense_coupling,
    dilute_coupling,
    dilute_lambda,
    make_spec,
)


def test_percolation_constants():
    spec = make_spec("percolation", 10)
    assert spec.kind == "dense"
    assert spec.n == 1.0
    assert spec.N == 5
    assert spec.c == 0.0
    assert spec.v_F == pytest.approx(3 * math.sqrt(3) / 2)
    assert spec.e_inf == 1.0


def test_polymer_constants():
    spec = make_spec("polymers", 12)
    assert spec.kind == "dilute"
    assert spec.n == 0.0
    assert spec.lam == pytest.approx(math.pi / 8)
    assert spec.v_F == pytest.approx(8 / 3)
    assert spec.e_inf == pytest.approx(math.sqrt(2))


@pytest.mark.parametrize("L", [9, 2, 0, -4, 7.0])
def test_bad_sizes_rejected(L):
    with pytest.raises(InvalidModelError):
        make_spec("percolation", L)


def test_unknown_model():
    with pytest.raises(InvalidModelError, match="unknown model"):
        make_spec("ising", 8)


def test_critical_couplings():
    assert dense_coupling(1.0) == pytest.approx(8 / 3)
    assert dilute_coupling(0.0) == pytest.approx(1.5)
    assert central_charge("dense", 8 / 3) == pytest.approx(0.0, abs=1e-12)
    assert central_charge("dilute", 1.5) == pytest.approx(0.0, abs=1e-12)
    # Ising as Q = 2 Potts
    assert central_charge("dense", dense_coupling(math.sqrt(2))) == pytest.approx(0.5)


@given(st.floats(min_value=0.0, max_value=2.0))
def test_dense_coupling_branch(n):
    assert 2.0 - 1e-12 <= dense_coupling(n) <= 4.0 + 1e-12


@given(st.floats(min_value=-2.0, max_value=2.0))
def test_dilute_lambda_gives_back_n(n):
    assert -2 * math.cos(4 * dilute_lambda(n)) == pytest.approx(n, abs=1e-9)


def test_regularized_keeps_constants():
    spec = make_spec("polymers", 8)
    reg = spec.regularized(1e-3)
    assert reg.n == pytest.approx(1e-3)
    assert reg.v_F == spec.v_F and reg.e_inf == spec.e_inf
    assert reg.lam == pytest.approx(dilute_lambda(1e-3))
    assert reg.regularization == pytest.approx(1e-3)


def test_generic_weight_has_no_constants():
    spec = make_spec("percolation", 8).with_loop_weight(0.5)
    assert not spec.has_constants
    with pytest.raises(InvalidModelError):
        spec.require_constants()


def test_model_spec_accepts_two_sites():
    spec = ModelSpec(kind="dense", n=0.7, g=3.0, c=0.5, L=2)
    assert spec.N == 1
    with pytest.raises(InvalidModelError):
        ModelSpec(kind="dense", n=0.7, g=3.0, c=0.5, L=3)
