import numpy as np
import pytest

from bulkb.checks import check_h0_identity
from bulkb.errors import InvalidModelError
from bulkb.virasoro import apply_Hm2_to_ground, build_Hn, mode_phases


def test_mode_phases_periodic(percolation8):
    np.testing.assert_allclose(mode_phases(percolation8, 0), np.ones(8))
    np.testing.assert_allclose(mode_phases(percolation8, 3), mode_phases(percolation8, 3 + 8))


@pytest.mark.parametrize("fixture", ["percolation6", "polymers6"])
def test_h0_is_affine_in_h(fixture, request):
    result = check_h0_identity(request.getfixturevalue(fixture))
    assert result.passed, result.message


def test_translation_phase(percolation6, dense_space6):
    H1 = build_Hn(percolation6, dense_space6, 1).matrix.toarray()
    U = dense_space6.translation.toarray()
    np.testing.assert_allclose(U @ H1 @ U.T, np.exp(-2j * np.pi / 3) * H1, atol=1e-12)


def test_needs_constants(dense_space6, percolation6):
    with pytest.raises(InvalidModelError):
        build_Hn(percolation6.with_loop_weight(0.5), dense_space6, 2)


def test_hm2_on_ground_is_spin_two(percolation8):
    block, coords = apply_Hm2_to_ground(percolation8)
    assert block.s == 2
    assert coords.shape == (block.dim,)
    assert np.linalg.norm(coords) > 1e-6


def test_conjugate_mode_is_opposite(percolation6, dense_space6):
    H2 = build_Hn(percolation6, dense_space6, 2).matrix.toarray()
    Hm2 = build_Hn(percolation6, dense_space6, -2).matrix.toarray()
    np.testing.assert_allclose(H2.conj(), Hm2, atol=1e-12)


def test_modes_never_raise_the_sector(percolation6, dense_space6):
    Hm2 = build_Hn(percolation6, dense_space6, -2).matrix.toarray()
    twice = Hm2 @ Hm2
    labels = dense_space6.labels
    for high in labels:
        for low in labels:
            if low < high:
                assert not np.abs(twice[dense_space6.slice(high), dense_space6.slice(low)]).max() > 1e-12
