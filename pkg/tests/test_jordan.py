import numpy as np
import pytest

from bulkb.config import settings
from bulkb.loops.operator import space_for
from bulkb.spectra import find_jordan_pair


@pytest.fixture(scope="module")
def cell(percolation8):
    return find_jordan_pair(percolation8)


def test_cell_is_found(cell):
    assert cell.cell_residual <= settings.CELL_RESIDUAL_TOL
    assert abs(cell.delta_N - 2.0) < 0.5
    assert cell.E_X == pytest.approx(cell.E_T, rel=1e-8)


def test_cell_equation(cell, percolation8):
    block = cell.block
    Hk = block.project(space_for(percolation8, 2).hamiltonian(percolation8))
    lhs = Hk @ cell.t_vec - cell.E_T * cell.t_vec
    np.testing.assert_allclose(lhs, cell.alpha * cell.T_vec, atol=1e-7 * np.abs(cell.alpha))


def test_stress_tensor_lives_in_vacuum(cell):
    top, _ = cell.block.top_and_rest()
    assert not cell.T_vec[top].any()
    assert np.abs(cell.t_vec[top]).max() > 0
