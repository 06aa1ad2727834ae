import hypothesis
import numpy as np
import pytest

from bulkb.loops.operator import graded_space
from bulkb.model import make_spec

np.seterr(all="warn")

hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=200, deadline=None)
hypothesis.settings.load_profile("fast")


@pytest.fixture(scope="session")
def percolation8():
    return make_spec("percolation", 8)


@pytest.fixture(scope="session")
def percolation6():
    return make_spec("percolation", 6)


@pytest.fixture(scope="session")
def polymers6():
    return make_spec("polymers", 6)


@pytest.fixture(scope="session")
def dense_space6():
    """Dense L = 6 with j = 2, 1, 0."""
    return graded_space("dense", 6, (2, 1, 0))


@pytest.fixture(scope="session")
def dilute_vacuum6():
    return graded_space("dilute", 6, (0,))


@pytest.fixture(scope="session")
def prefect_harness():
    from prefect.testing.utilities import prefect_test_harness

    with prefect_test_harness():
        yield
