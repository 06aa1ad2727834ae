"""Named property suites run by ``bulkb check``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.sparse as sp

from .config import settings
from .errors import BulkBError
from .logging import get_logger
from .loops.bilinear import glue, gram
from .loops.linkstate import translate_two
from .loops.operator import GradedSpace, SparseOperator, graded_space, space_for
from .model import ModelSpec
from .spectra.eigen import central_charge_estimate, ground_state
from .spectra.jordan import find_jordan_pair
from .virasoro import build_Hn

logger = get_logger(__name__)

EXACT = 1e-12


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    message: str


def _norm(m) -> float:
    m = sp.csr_matrix(m)
    return float(np.abs(m.data).max()) if m.nnz else 0.0


def _space(spec: ModelSpec) -> GradedSpace:
    return space_for(spec, min(2, spec.N) if spec.kind == "dense" else 2)


def check_tl_relations(spec: ModelSpec, generators: list[SparseOperator] | None = None) -> CheckResult:
    """e_i^2 = n e_i, e_i e_{i+-1} e_i = e_i and far commutation, indices cyclic."""
    name = "tl-relations"
    if spec.kind != "dense":
        return CheckResult(name, True, "not applicable to the dilute density")
    L = spec.L
    if generators is None:
        space = _space(spec)
        generators = [space.generator(spec, i) for i in range(1, L + 1)]
    e = [g.matrix for g in generators]
    failures = []
    for i in range(L):
        if _norm(e[i] @ e[i] - spec.n * e[i]) > EXACT:
            failures.append(f"e_{i + 1}^2 != n e_{i + 1}")
        for step in (1, -1):
            k = (i + step) % L
            if _norm(e[i] @ e[k] @ e[i] - e[i]) > EXACT:
                failures.append(f"e_{i + 1} e_{k + 1} e_{i + 1} != e_{i + 1}")
        for k in range(L):
            if min((i - k) % L, (k - i) % L) >= 2 and _norm(e[i] @ e[k] - e[k] @ e[i]) > EXACT:
                failures.append(f"[e_{i + 1}, e_{k + 1}] != 0")
    if failures:
        return CheckResult(name, False, "; ".join(sorted(set(failures))[:5]))
    return CheckResult(name, True, f"L={L}: all relations exact")


def check_gram_symmetry(spec: ModelSpec) -> CheckResult:
    """Gram matrices symmetric, translation invariant, and H self-adjoint per sector."""
    name = "gram-symmetry"
    failures = []
    for j in _space(spec).labels:
        space = graded_space(spec.kind, spec.L, (j,))
        basis = space.sector(j)
        G = gram(basis, spec.n).values
        if not np.array_equal(G, G.T):
            failures.append(f"j={j}: Gram not symmetric")
        for a in basis.patterns[:20]:
            for b in basis.patterns[:20]:
                if glue(translate_two(a), translate_two(b), spec.n) != glue(a, b, spec.n):
                    failures.append(f"j={j}: glue not translation invariant at {a}, {b}")
        H = space.hamiltonian(spec).toarray()
        if np.abs(G @ H - H.T @ G).max(initial=0.0) > EXACT * max(1.0, np.abs(G).max(initial=0.0)) * spec.L:
            failures.append(f"j={j}: H not self-adjoint for the loop form")
    if failures:
        return CheckResult(name, False, "; ".join(failures[:5]))
    return CheckResult(name, True, "symmetric, invariant and self-adjoint")


def check_translation(spec: ModelSpec) -> CheckResult:
    name = "translation"
    space = _space(spec)
    H = space.hamiltonian(spec).matrix
    U = space.translation.matrix
    gap = _norm(H @ U - U @ H)
    return CheckResult(name, gap <= EXACT, f"max |[H, u^2]| = {gap:.3e}")


def check_h0_identity(spec: ModelSpec) -> CheckResult:
    name = "h0-identity"
    space = _space(spec)
    H0 = build_Hn(spec, space, 0).matrix.matrix
    H = space.hamiltonian(spec).matrix
    identity = sp.identity(space.dim, format="csr")
    expected = (spec.N / (math.pi * spec.v_F)) * (H + 2 * spec.N * spec.e_inf * identity) + (spec.c / 12) * identity
    gap = _norm(H0 - expected)
    return CheckResult(name, gap <= EXACT * spec.L, f"max |H_0 - affine(H)| = {gap:.3e}")


def check_jordan_cell(spec: ModelSpec) -> CheckResult:
    name = "jordan-cell"
    try:
        cell = find_jordan_pair(spec)
    except BulkBError as exc:
        return CheckResult(name, False, str(exc))
    passed = cell.cell_residual <= settings.CELL_RESIDUAL_TOL
    return CheckResult(name, passed, f"delta={cell.delta_N:.6f} residual={cell.cell_residual:.2e}")


def check_dilute_anchors(spec: ModelSpec) -> CheckResult:
    name = "dilute-anchors"
    if spec.kind != "dilute":
        return CheckResult(name, True, "not applicable to the dense model")
    E0 = ground_state(spec).E0
    per_site = E0 / spec.L
    c_N = central_charge_estimate(spec, E0)
    passed = abs(per_site + spec.e_inf) <= 2e-2 and abs(c_N) <= 0.2
    return CheckResult(name, passed, f"E0/L={per_site:.6f} c_N={c_N:.4f}")


SUITES: dict[str, Callable[[ModelSpec], CheckResult]] = {
    "tl-relations": check_tl_relations,
    "gram-symmetry": check_gram_symmetry,
    "translation": check_translation,
    "h0-identity": check_h0_identity,
    "jordan-cell": check_jordan_cell,
    "dilute-anchors": check_dilute_anchors,
}


def run_checks(spec: ModelSpec, names: list[str] | None = None) -> list[CheckResult]:
    results = []
    for name in names or list(SUITES):
        result = SUITES[name](spec)
        logger.info(f"{name}: {'pass' if result.passed else 'FAIL'} ({result.message})")
        results.append(result)
    return results
