"""Lattice Virasoro modes built from Fourier sums of the local densities.

    H_n = -(N / (pi v_F)) sum_{i=1}^{2N} exp(i n i pi / N) (e_i - e_inf)
          + (c / 12) delta_{n,0}

e_inf only survives in the n = 0 mode, so regularized models (whose
constants are frozen at the critical point) reuse the critical values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import EigenSolverError
from .logging import get_logger
from .loops.operator import GradedSpace, SparseOperator, graded_space
from .model import ModelSpec
from .spectra.eigen import GroundState, ground_state
from .spectra.momentum import MomentumBlock, project_momentum

logger = get_logger(__name__)


@dataclass(frozen=True)
class LatticeVirasoro:
    n: int
    matrix: SparseOperator


def mode_phases(spec: ModelSpec, n: int) -> np.ndarray:
    sites = np.arange(1, spec.L + 1)
    return np.exp(1j * n * sites * math.pi / spec.N)


def build_Hn(spec: ModelSpec, space: GradedSpace, n: int) -> LatticeVirasoro:
    spec.require_constants()
    phases = mode_phases(spec, n)
    density = space.weighted_sum(spec, phases).matrix
    identity = sp.identity(space.dim, format="csr", dtype=complex)
    matrix = -(spec.N / (math.pi * spec.v_F)) * (density - spec.e_inf * phases.sum() * identity)
    if n == 0:
        matrix = matrix + (spec.c / 12.0) * identity
    op = sp.csr_matrix(matrix, dtype=complex)
    op.eliminate_zeros()
    return LatticeVirasoro(n=n, matrix=SparseOperator(op))


def apply_Hm2_to_ground(
    spec: ModelSpec, ground: GroundState | None = None
) -> tuple[MomentumBlock, np.ndarray]:
    """H_-2 |0> expressed in the s = 2 block of the vacuum sector."""
    ground = ground or ground_state(spec)
    space = graded_space(spec.kind, spec.L, (0,))
    block = project_momentum(space, 2)
    full = build_Hn(spec, space, -2).matrix.matrix @ ground.block.lift(ground.vector)
    coords = block.restrict(full)
    leak = np.linalg.norm(full - block.lift(coords))
    if leak > 1e-9 * max(1.0, np.linalg.norm(full)):
        raise EigenSolverError(f"H_-2|0> leaves the spin-2 block (leak {leak:.2e})")
    return block, coords
