import numpy as np
import pytest
import scipy.sparse as sp

from bulkb.errors import SectorError
from bulkb.spectra.momentum import orbits, project_momentum, spins


def test_orbits():
    assert orbits([1, 2, 0, 3]) == [[0, 1, 2], [3]]


def test_spin_range():
    assert list(spins(3)) == [-1, 0, 1]
    assert list(spins(4)) == [-1, 0, 1, 2]


@pytest.mark.parametrize("space", ["dense_space6", "dilute_vacuum6"])
def test_blocks_are_complete_and_orthonormal(space, request):
    space = request.getfixturevalue(space)
    dims = 0
    for s in spins(space.L // 2):
        block = project_momentum(space, s)
        B = block.basis
        np.testing.assert_allclose((B.conj().T @ B).toarray(), np.eye(block.dim), atol=1e-12)
        U = space.translation.matrix
        np.testing.assert_allclose((U @ B).toarray(), np.exp(1j * block.k) * B.toarray(), atol=1e-12)
        dims += block.dim
    assert dims == space.dim


def test_hamiltonian_has_no_cross_momentum_terms(percolation6, dense_space6):
    H = dense_space6.hamiltonian(percolation6).matrix
    b0, b1 = project_momentum(dense_space6, 0), project_momentum(dense_space6, 1)
    cross = b0.basis.conj().T @ H @ b1.basis
    assert np.abs(sp.csr_matrix(cross).toarray()).max(initial=0.0) < 1e-12


def test_top_and_rest(dense_space6):
    block = project_momentum(dense_space6, 1)
    top, rest = block.top_and_rest()
    assert top.start == 0
    assert rest.start == top.stop
    assert rest.stop == block.dim
    assert block.slices[2] == top


def test_spin_outside_zone():
    from bulkb.loops.operator import graded_space

    with pytest.raises(SectorError):
        project_momentum(graded_space("dense", 6, (0,)), 2)


def test_blocks_are_cached_per_space(dense_space6):
    block = project_momentum(dense_space6, 1)
    assert project_momentum(dense_space6, 1) is block
    assert block.adjoint is block.adjoint
    assert project_momentum(dense_space6, 0) is not block
