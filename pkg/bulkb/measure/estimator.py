"""Finite-size estimate of the indecomposability parameter.

    b = |<t|H_-2|0>|^2 / <t|T>

At the critical loop weight the loop form is degenerate (every dense gluing
is 1 at n = 1, every dilute gluing closing a loop is 0 at n = 0), so the
quotient is 0/0 on the lattice exactly as in the continuum. It is resolved
as a collision limit along the integrable family n_c + dn: there T and its
partner X (continued from the critical cell into the top sector) are
distinct eigenstates, the Jordan partner in the normalization
(H - E_T) t = (2 pi v_F / N) T is t = -(2 pi v_F / N) / (E_X - E_T) * T,
and the quotient is regular. The limit dn -> 0 is taken from both sides
with Richardson extrapolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..config import settings
from ..errors import DegeneratePairingError, LimitDisagreementError
from ..logging import get_logger
from ..loops.operator import graded_space
from ..model import ModelSpec
from ..spectra.eigen import central_charge_estimate, eigenpairs, ground_state, nearest_eigenpair
from ..spectra.jordan import SPIN, TOP_LABEL, JordanPair, find_jordan_pair
from ..spectra.momentum import project_momentum
from ..virasoro import apply_Hm2_to_ground
from .schema import MeasurementRecord

logger = get_logger(__name__)

Pairing = Callable[[np.ndarray, np.ndarray], complex]

# relative size of <v|v> below which a vacuum eigenvector is a null vector of the form
NULL_PAIRING = 1e-10


def quotient_estimate(t: np.ndarray, T: np.ndarray, P: np.ndarray, pairing: Pairing) -> float:
    """|<t|P>|^2 / <t|T>, guarded against a vanishing denominator."""
    denominator = pairing(t, T)
    numerator = abs(pairing(t, P)) ** 2
    scale = max(np.linalg.norm(t) * np.linalg.norm(T), 1e-300)
    if abs(denominator) <= settings.PAIRING_FLOOR * scale:
        raise DegeneratePairingError(f"<t|T> = {denominator:.3e} is below the pairing floor")
    value = numerator / denominator
    if abs(value.imag) > 1e-8 * max(1.0, abs(value)):
        logger.warning(f"estimator has an imaginary part {value.imag:.3e}")
    return float(value.real)


def visible_eigenpair(block, H, target: float, n: float, count: int = 3):
    """Nearest eigenpair to ``target`` that the loop form does not annihilate."""
    values, vectors = eigenpairs(H, sigma=target, count=count)
    for E, v in zip(values, vectors.T):
        if abs(block.pair(v, v, n)) > NULL_PAIRING * np.vdot(v, v).real:
            return E, v
    logger.warning(f"every eigenvector near {target:.9f} is null for the loop form")
    return values[0], vectors[:, 0]


@dataclass(frozen=True)
class RegularizedPoint:
    dn: float
    b: float
    mu_shift: float
    E_T: float
    E_X: float
    TT: complex
    TP: complex


def regularized_point(spec: ModelSpec, cell: JordanPair, dn: float) -> RegularizedPoint:
    """Estimator at loop weight n_c + dn, continuing T and X from the critical cell."""
    reg = spec.regularized(dn)
    alpha = 2 * math.pi * spec.v_F / spec.N
    ground = ground_state(reg)

    vacuum = graded_space(spec.kind, spec.L, (0,))
    vblock = project_momentum(vacuum, SPIN)
    E_T, T = visible_eigenpair(vblock, vblock.project(vacuum.hamiltonian(reg)), cell.E_T, reg.n)

    top = graded_space(spec.kind, spec.L, (TOP_LABEL,))
    tblock = project_momentum(top, SPIN)
    E_X, _ = nearest_eigenpair(tblock.project(top.hamiltonian(reg)), cell.E_X)

    _, P = apply_Hm2_to_ground(reg, ground)

    def pairing(x, y):
        return vblock.pair(x, y, reg.n)

    TT, TP = pairing(T, T), pairing(T, P)
    if abs(TT) <= settings.PAIRING_FLOOR:
        raise DegeneratePairingError(f"<T|T> = {TT:.3e} at dn={dn}")
    # T scaled to its component along H_-2|0>
    Tc = (TP / TT) * T
    delta = (E_X - E_T).real
    if abs(delta) <= settings.PAIRING_FLOOR:
        raise DegeneratePairingError(f"E_X - E_T = {delta:.3e} at dn={dn}")
    t = -(alpha / delta) * Tc
    b = quotient_estimate(t, Tc, P, pairing)
    mu_shift = quotient_estimate(t + Tc, Tc, P, pairing) - b
    logger.debug(f"L={spec.L} dn={dn:+.2e}: b={b:.9f} E_X-E_T={delta:.3e} <T|T>={TT:.3e}")
    return RegularizedPoint(
        dn=dn, b=b, mu_shift=mu_shift, E_T=float(E_T.real), E_X=float(E_X.real), TT=TT, TP=TP
    )


def collision_limit(points: dict[float, RegularizedPoint], h: float) -> tuple[float, float, float]:
    """Two-sided Richardson limit and the two one-sided linear limits."""

    def b(x):
        return points[x].b

    symmetric = {x: 0.5 * (b(x) + b(-x)) for x in (h, h / 2)}
    limit = (4.0 * symmetric[h / 2] - symmetric[h]) / 3.0
    above = 2.0 * b(h / 2) - b(h)
    below = 2.0 * b(-h / 2) - b(-h)
    return limit, above, below


def measure_b(spec: ModelSpec) -> MeasurementRecord:
    spec.require_constants()
    ground = ground_state(spec)
    cell = find_jordan_pair(spec, ground)
    h = settings.REGULARIZATION_STEP
    points = {dn: regularized_point(spec, cell, dn) for dn in (h, h / 2, -h, -h / 2)}
    b, above, below = collision_limit(points, h)
    if abs(above - below) > settings.LATTICE_LIMIT_RTOL * max(1.0, abs(b)):
        raise LimitDisagreementError(
            f"L={spec.L}: one-sided limits {above:.9f} and {below:.9f} disagree"
        )
    mu = 0.5 * (points[h / 2].mu_shift + points[-h / 2].mu_shift)
    c_estimate = central_charge_estimate(spec, ground.E0)
    logger.info(f"{spec.name or spec.kind} L={spec.L}: b = {b:.6f} (c_N = {c_estimate:.4f})")
    return MeasurementRecord(
        model=spec.name or spec.kind,
        L=spec.L,
        E0=ground.E0,
        E_T=cell.E_T,
        delta_N=cell.delta_N,
        b_N=b,
        cell_residual=cell.cell_residual,
        c_estimate=c_estimate,
        mu_sensitivity=abs(mu),
    )
