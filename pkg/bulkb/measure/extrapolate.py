"""Finite-size extrapolation of b in powers of 1/N."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from ..errors import FitError
from ..logging import get_logger
from .schema import MeasurementRecord

logger = get_logger(__name__)


@dataclass(frozen=True)
class ExtrapolationResult:
    b_inf: float
    spread: float
    order: int
    coefficients: tuple[float, ...]
    by_order: dict[int, float] = field(default_factory=dict)


def _points(data: Iterable[MeasurementRecord | tuple[int, float]]) -> tuple[np.ndarray, np.ndarray]:
    sizes, values = [], []
    for item in data:
        if isinstance(item, MeasurementRecord):
            if not item.ok or math.isnan(item.b_N):
                continue
            L, b = item.L, item.b_N
        else:
            L, b = item
        sizes.append(L)
        values.append(b)
    return np.asarray(sizes, dtype=float), np.asarray(values, dtype=float)


def _fit(N: np.ndarray, b: np.ndarray, order: int) -> np.ndarray:
    design = np.vander(1.0 / N, order + 1, increasing=True)
    if np.linalg.matrix_rank(design) < order + 1:
        raise FitError(f"rank-deficient fit of order {order} on N = {N.tolist()}")
    coefficients, *_ = np.linalg.lstsq(design, b, rcond=None)
    return coefficients


def extrapolate(data: Iterable[MeasurementRecord | tuple[int, float]], order: int) -> ExtrapolationResult:
    """Least-squares fit b(N) = b_inf + sum_{k=1}^{order} a_k N^-k.

    ``data`` holds records or (L, b) pairs; failed records are skipped. The
    uncertainty is the spread of b_inf over the fits of order 1..order.
    """
    if order < 1:
        raise FitError(f"order must be at least 1, got {order}")
    L, b = _points(data)
    if len(L) < order + 2:
        raise FitError(f"order {order} needs at least {order + 2} points, got {len(L)}")
    N = L / 2.0
    coefficients = _fit(N, b, order)
    by_order = {k: float(_fit(N, b, k)[0]) for k in range(1, order + 1)}
    estimates = list(by_order.values())
    spread = max(estimates) - min(estimates)
    logger.info(f"order {order} fit over L = {L.astype(int).tolist()}: b_inf = {coefficients[0]:.6f} +- {spread:.2g}")
    return ExtrapolationResult(
        b_inf=float(coefficients[0]),
        spread=float(spread),
        order=order,
        coefficients=tuple(float(c) for c in coefficients),
        by_order=by_order,
    )
