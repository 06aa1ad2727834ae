"""Extraction of the rank-2 Jordan cell of the stress tensor at spin 2.

In the s = 2 block of the graded space holding sectors 2 (and 1) and 0, the
stress-tensor state T is an eigenvector of the vacuum diagonal block whose
scaled gap is near 2. Its logarithmic partner t has a top component equal to
the sector-2 eigenvector at the same energy and a lower component solving

    (H_low - E_T) t_low - V_low w = -H_low,top x_top

in the minimal-norm sense, where the columns of V span the vacuum eigenvectors
at E_T. A vacuum level can be degenerate with a null vector of the loop form
(the image of a sector-1 level), so T = V w is chosen by the cell rather than
by the eigensolver. The pair is then rescaled so that
(H - E_T) t = (2 pi v_F / N) T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp
import scipy.sparse.linalg as sla

from ..config import settings
from ..errors import EigenSolverError, NoJordanCellError
from ..logging import get_logger
from ..loops.operator import space_for
from ..model import ModelSpec
from .eigen import GroundState, eigenpairs, ground_state, scaled_gap
from .momentum import MomentumBlock, project_momentum

logger = get_logger(__name__)

SPIN = 2
TOP_LABEL = 2
RANK_CUTOFF = 1e-10


@dataclass
class JordanPair:
    E_T: float
    E_X: float
    T_vec: np.ndarray
    t_vec: np.ndarray
    delta_N: float
    cell_residual: float
    alpha: float
    block: MomentumBlock
    pairing_tT: complex = 0.0
    candidates: list[tuple[float, float]] = field(default_factory=list)


def _vacuum_candidates(spec, H00, E0, target):
    if H00.shape[0] <= settings.DENSE_EIG_MAX_DIM:
        values, vectors = eigenpairs(H00)
    else:
        values, vectors = eigenpairs(H00, sigma=target)
    gaps = np.array([scaled_gap(spec, E, E0) for E in values])
    order = np.argsort(np.abs(gaps - 2.0))
    return values[order], vectors[:, order], gaps[order]


def _solve_partner(M, rhs) -> tuple[np.ndarray, float]:
    try:
        if M.shape[1] <= 2 * settings.DENSE_EIG_MAX_DIM:
            dense = M.toarray() if sp.issparse(M) else M
            z, *_ = la.lstsq(dense, rhs, cond=RANK_CUTOFF, lapack_driver="gelsd")
        else:
            z = sla.lsqr(M, rhs, atol=1e-15, btol=1e-15, iter_lim=50 * M.shape[1])[0]
    except (la.LinAlgError, ValueError) as exc:
        raise EigenSolverError(f"partner solve failed: {exc}") from exc
    residual = np.linalg.norm(M @ z - rhs) / max(np.linalg.norm(rhs), 1e-300)
    return z, residual


def _cluster(values, E, tol) -> np.ndarray:
    """Positions of the eigenvalues within ``tol`` of E."""
    return np.flatnonzero(np.abs(values - E) <= tol)


def find_jordan_pair(spec: ModelSpec, ground: GroundState | None = None) -> JordanPair:
    spec.require_constants()
    ground = ground or ground_state(spec)
    E0 = ground.E0
    alpha0 = 2 * math.pi * spec.v_F / spec.N

    space = space_for(spec, TOP_LABEL)
    block = project_momentum(space, SPIN)
    Hk = block.project(space.hamiltonian(spec))
    top, low = block.top_and_rest()
    vac = block.slices[0]

    H00 = Hk[vac, vac]
    H22 = Hk[top, top]
    target = E0 + alpha0
    values, vectors, gaps = _vacuum_candidates(spec, H00, E0, target)
    candidates = [(float(v.real), float(g)) for v, g in zip(values[:3], gaps[:3])]
    logger.debug(f"L={spec.L} spin-2 vacuum candidates (E, delta): {candidates}")

    match = _match_top_sector(H22, values, gaps)
    if match is None:
        raise NoJordanCellError(
            f"L={spec.L}: no sector-{TOP_LABEL} state matches the spin-2 vacuum candidates",
            candidates,
        )
    pick, E_X, x_top = match
    E_T = values[pick]
    if pick:
        logger.warning(
            f"L={spec.L}: nearest-to-2 vacuum state has no partner; using delta={gaps[pick]:.6f}"
        )
    # a degenerate vacuum level is kept whole: the cell fixes which combination is T
    cluster = _cluster(values, E_T, settings.CELL_MATCH_RTOL * max(1.0, abs(E_T)))
    V = np.zeros((block.dim, len(cluster)), dtype=complex)
    V[vac] = vectors[:, cluster]
    V_low = V[low]

    H_low = Hk[low, low] - E_T * sp.identity(low.stop - low.start, format="csr")
    rhs = -(Hk[low, top] @ x_top)
    M = sp.hstack([H_low, sp.csr_matrix(-V_low)], format="csr")
    z, residual = _solve_partner(M, rhs)
    weights = z[-len(cluster):]
    T = V @ weights
    strength = np.linalg.norm(T)
    if residual > settings.CELL_RESIDUAL_TOL or strength <= 1e-10 * np.linalg.norm(rhs):
        raise NoJordanCellError(
            f"L={spec.L}: no Jordan cell at E_T={E_T.real:.12f} "
            f"(|alpha T|={strength:.3e}, residual={residual:.3e})",
            candidates,
        )
    T /= strength

    t = np.zeros(block.dim, dtype=complex)
    t[top] = x_top
    t[low] = z[: -len(cluster)]
    t *= alpha0 / strength
    cell_residual = np.linalg.norm(Hk @ t - E_T * t - alpha0 * T) / np.linalg.norm(alpha0 * T)
    if cell_residual > settings.CELL_RESIDUAL_TOL:
        raise NoJordanCellError(f"L={spec.L}: cell residual {cell_residual:.3e}", candidates)

    delta = scaled_gap(spec, E_T, E0)
    pairing = block.pair(t, T, spec.n)
    logger.info(
        f"{spec.kind} L={spec.L}: Jordan cell at E_T={E_T.real:.12f}, "
        f"delta={delta:.6f}, residual={cell_residual:.2e}"
    )
    return JordanPair(
        E_T=float(E_T.real),
        E_X=float(np.real(E_X)),
        T_vec=T,
        t_vec=t,
        delta_N=delta,
        cell_residual=float(cell_residual),
        alpha=alpha0,
        block=block,
        pairing_tT=pairing,
        candidates=candidates,
    )


def _match_top_sector(H22, values, gaps, window: float = 1.0):
    """First vacuum candidate (by distance of its gap to 2) with a top-sector twin."""
    if H22.shape[0] == 0:
        return None
    dense = H22.shape[0] <= settings.DENSE_EIG_MAX_DIM
    if dense:
        top_values, top_vectors = eigenpairs(H22)
    for pick, (E_T, gap) in enumerate(zip(values, gaps)):
        if abs(gap - 2.0) > window:
            return None
        if dense:
            k = int(np.argmin(np.abs(top_values - E_T)))
            E_X, x = top_values[k], top_vectors[:, k]
        else:
            E, X = eigenpairs(H22, sigma=E_T, count=1)
            E_X, x = E[0], X[:, 0]
        if abs(E_X - E_T) <= settings.CELL_MATCH_RTOL * abs(E_T):
            return pick, E_X, x
    return None
