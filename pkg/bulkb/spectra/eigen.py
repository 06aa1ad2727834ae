"""Eigen-analysis of momentum blocks, ground states and scaled gaps."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import pandas as pd
import scipy.linalg as la
import scipy.sparse as sp
import scipy.sparse.linalg as sla

from ..config import settings
from ..errors import DegeneratePairingError, EigenSolverError
from ..logging import get_logger
from ..loops.operator import graded_space, space_for
from ..model import ModelSpec
from .momentum import MomentumBlock, project_momentum

logger = get_logger(__name__)


def _check_residuals(matrix, values, vectors, tol: float) -> None:
    for e, v in zip(values, vectors.T):
        norm = np.linalg.norm(v)
        res = np.linalg.norm(matrix @ v - e * v) / norm
        if res > tol * max(1.0, abs(e)):
            raise EigenSolverError(f"eigenpair E={e:.12g} has residual {res:.3e}")


def eigenpairs(
    matrix: sp.spmatrix | np.ndarray,
    *,
    sigma: complex | None = None,
    count: int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenpairs of a (non-symmetric) block.

    Blocks up to DENSE_EIG_MAX_DIM are diagonalized completely and sorted by
    real part, or by distance to ``sigma`` when given. Larger blocks use
    ARPACK in shift-invert mode around ``sigma``, which is then required.
    """
    dim = matrix.shape[0]
    if dim == 0:
        return np.empty(0, dtype=complex), np.empty((0, 0), dtype=complex)
    if dim <= settings.DENSE_EIG_MAX_DIM:
        dense = matrix.toarray() if sp.issparse(matrix) else np.asarray(matrix)
        try:
            values, vectors = la.eig(dense)
        except (la.LinAlgError, ValueError) as exc:
            raise EigenSolverError(f"dense eigensolver failed on a block of dimension {dim}: {exc}") from exc
        order = np.argsort(values.real) if sigma is None else np.argsort(np.abs(values - sigma))
    else:
        if sigma is None:
            raise EigenSolverError(f"block of dimension {dim} needs a shift for the sparse path")
        nev = min(count or settings.ARPACK_NEV, dim - 2)
        try:
            values, vectors = sla.eigs(sp.csc_matrix(matrix, dtype=complex), k=nev, sigma=sigma, which="LM")
        except sla.ArpackNoConvergence as exc:
            raise EigenSolverError(f"ARPACK did not converge around {sigma}") from exc
        except (sla.ArpackError, RuntimeError, la.LinAlgError) as exc:
            raise EigenSolverError(f"ARPACK failed around {sigma}: {exc}") from exc
        order = np.argsort(np.abs(values - sigma))
    values, vectors = values[order], vectors[:, order]
    if count is not None:
        values, vectors = values[:count], vectors[:, :count]
    _check_residuals(matrix, values, vectors, settings.EIG_RESIDUAL_TOL)
    return values, vectors


def nearest_eigenpair(matrix, target: complex) -> tuple[complex, np.ndarray]:
    values, vectors = eigenpairs(matrix, sigma=target, count=1)
    return values[0], vectors[:, 0]


@dataclass
class GroundState:
    E0: float
    vector: np.ndarray
    block: MomentumBlock


def ground_state(spec: ModelSpec) -> GroundState:
    """Lowest state of the j = 0, s = 0 block, normalized so <0|0> = 1."""
    spec.require_constants()
    space = graded_space(spec.kind, spec.L, (0,))
    block = project_momentum(space, 0)
    H = block.project(space.hamiltonian(spec))
    shift = -spec.e_inf * spec.L - 1.0
    if block.dim <= settings.DENSE_EIG_MAX_DIM:
        values, vectors = eigenpairs(H, count=1)
    else:
        values, vectors = eigenpairs(H, sigma=shift, count=1)
    E0, v = values[0], vectors[:, 0]
    if abs(E0.imag) > 1e-9 * max(1.0, abs(E0)):
        raise EigenSolverError(f"ground state energy {E0} is not real")
    norm = block.pair(v, v, spec.n)
    if norm.real <= settings.PAIRING_FLOOR:
        raise DegeneratePairingError(f"<0|0> = {norm} cannot be normalized to 1")
    v = v / math.sqrt(norm.real)
    # fix the phase: the largest component real and positive
    big = v[np.argmax(np.abs(v))]
    v = v * (abs(big) / big)
    logger.info(f"{spec.kind} L={spec.L} n={spec.n:.6g}: E0 = {E0.real:.12f}")
    return GroundState(E0=float(E0.real), vector=v, block=block)


def scaled_gap(spec: ModelSpec, E_phi: complex, E0: float) -> float:
    """Delta = (2N / (2 pi v_F)) (E_phi - E0)."""
    spec.require_constants()
    return (2 * spec.N / (2 * math.pi * spec.v_F)) * (np.real(E_phi) - E0)


def central_charge_estimate(spec: ModelSpec, E0: float) -> float:
    spec.require_constants()
    L = spec.L
    return -6.0 * L * (E0 + spec.e_inf * L) / (math.pi * spec.v_F)


def low_lying(
    spec: ModelSpec, j_values: list[int], spin_values: list[int], count: int = 5
) -> pd.DataFrame:
    """Lowest scaled gaps of each (j, s) diagonal block."""
    E0 = ground_state(spec).E0
    rows = []
    for j in j_values:
        space = graded_space(spec.kind, spec.L, (j,))
        H = space.hamiltonian(spec)
        for s in spin_values:
            block = project_momentum(space, s)
            if block.dim == 0:
                continue
            Hk = block.project(H)
            sigma = None if block.dim <= settings.DENSE_EIG_MAX_DIM else E0
            values, _ = eigenpairs(Hk, sigma=sigma, count=None)
            for E in sorted(values, key=lambda e: e.real)[:count]:
                rows.append(
                    {
                        "model": spec.name or spec.kind,
                        "L": spec.L,
                        "j": j,
                        "s": s,
                        "delta": scaled_gap(spec, E, E0),
                        "energy": float(np.real(E)),
                    }
                )
    return pd.DataFrame(rows, columns=["model", "L", "j", "s", "delta", "energy"])


def graded_block(spec: ModelSpec, j_max: int, s: int) -> MomentumBlock:
    return project_momentum(space_for(spec, j_max), s)
