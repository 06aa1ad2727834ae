"""Coulomb-gas side of the measurement: Kac weights, couplings and the
analytic values of b obtained as collision limits at c -> 0.

Every limit is evaluated numerically from both sides of the critical point
(offsets 1e-4 and 1e-5) with Richardson extrapolation; the two one-sided
limits must agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

from .config import settings
from .errors import InvalidModelError, LimitDisagreementError
from .model import Kind, central_charge, dense_coupling, dilute_coupling

OFFSETS = (1e-4, 1e-5)


def kac_h(x: float, r: float, s: float) -> float:
    """h_{r,s} = ((r (x+1) - s x)^2 - 1) / (4 x (x+1)); real labels allowed."""
    if x <= 0:
        raise ValueError(f"x must be positive, got {x}")
    return ((r * (x + 1) - s * x) ** 2 - 1) / (4 * x * (x + 1))


def kac_c(x: float) -> float:
    return 1 - 6 / (x * (x + 1))


@dataclass(frozen=True)
class KacParams:
    x: float

    @property
    def c(self) -> float:
        return kac_c(self.x)

    def h(self, r: float, s: float) -> float:
        return kac_h(self.x, r, s)


@dataclass(frozen=True)
class CouplingParams:
    g: float
    c: float
    n: float
    Q: float | None = None


def cg_params(kind: Kind, control: float) -> CouplingParams:
    """Coupling on the dense branch g in [2, 4] from Q, or the dilute branch g in [1, 2] from n."""
    if kind == "dense":
        if not 0 < control <= 4:
            raise InvalidModelError(f"Q={control} outside (0, 4]")
        g = dense_coupling(math.sqrt(control))
        return CouplingParams(g=g, c=central_charge("dense", g), n=math.sqrt(control), Q=control)
    if kind == "dilute":
        if not -2 <= control <= 2:
            raise InvalidModelError(f"n={control} outside [-2, 2]")
        g = dilute_coupling(control)
        return CouplingParams(g=g, c=central_charge("dilute", g), n=control)
    raise InvalidModelError(f"unknown model kind {kind!r}")


def potts_q(g: float) -> float:
    return 2 * (1 + math.cos(math.pi * g / 2))


def dilute_n(g: float) -> float:
    return -2 * math.cos(math.pi * g)


def x_field_weights(kind: Kind, g: float) -> tuple[float, float]:
    """Weights (h, h_bar) of the two-leg field X at coupling g."""
    shift = (central_charge(kind, g) - 1) / 24
    return (2 + g) ** 2 / (4 * g) + shift, (2 - g) ** 2 / (4 * g) + shift


def x_field_kac_labels() -> tuple[tuple[int, int], tuple[int, int], tuple[float, float]]:
    """Formal Kac labels of X at c = 0 and the weights they give at x = 2."""
    left, right = (1, -2), (1, 2)
    return left, right, (kac_h(2.0, *left), kac_h(2.0, *right))


def energy_operator_weights() -> dict[str, tuple[float, float]]:
    """Bulk energy operators at c = 0: Phi_{2,1} for polymers, Phi_{1,3} for percolation."""
    return {
        "Phi_2,1": (kac_h(2.0, 2, 1), kac_h(2.0, 2, 1)),
        "Phi_1,3": (kac_h(2.0, 1, 3), kac_h(2.0, 1, 3)),
    }


Side = Literal["both", "above", "below"]


def collision_limit(f: Callable[[float], float], at: float, side: Side = "both") -> float:
    """lim f(y) as y -> at, where f is 0/0 at ``at``."""
    big, small = OFFSETS
    ratio = big / small

    def one_sided(sign):
        # f(at + sign*eps) = b + a*eps + O(eps^2)
        return (ratio * f(at + sign * small) - f(at + sign * big)) / (ratio - 1)

    above, below = one_sided(+1), one_sided(-1)
    if abs(above - below) > settings.LIMIT_AGREEMENT_TOL * max(1.0, abs(above)):
        raise LimitDisagreementError(f"one-sided limits {above:.10f} and {below:.10f} disagree at {at}")
    if side == "above":
        return above
    if side == "below":
        return below

    def symmetric(eps):
        return 0.5 * (f(at + eps) + f(at - eps))

    return (ratio**2 * symmetric(small) - symmetric(big)) / (ratio**2 - 1)


CRITICAL_COUPLING = {"dense": 8.0 / 3.0, "dilute": 1.5}


def b_from_collision(kind: Kind, g0: float | None = None, side: Side = "both") -> float:
    """b = -lim (c/2) / h_bar_X as g -> g0 (the c = 0 point of the model)."""
    g0 = CRITICAL_COUPLING[kind] if g0 is None else g0

    def ratio(g):
        return -(central_charge(kind, g) / 2) / x_field_weights(kind, g)[1]

    return collision_limit(ratio, g0, side)


CHIRAL_FIELDS = {
    # with this Kac convention h_{1,5} carries b = -5/8 and h_{3,1} b = 5/6
    "percolation": (1, 5),
    "polymers": (3, 1),
}


def chiral_b(which: str, side: Side = "both") -> float:
    """b = -lim (c/2) / (h_X(c) - 2) through x -> 2 for the chiral logarithmic pair."""
    if which not in CHIRAL_FIELDS:
        raise InvalidModelError(f"unknown chiral case {which!r}")
    r, s = CHIRAL_FIELDS[which]

    def ratio(x):
        return -(kac_c(x) / 2) / (kac_h(x, r, s) - 2)

    return collision_limit(ratio, 2.0, side)


def harmonic_gap(b_bulk: float, b_perco: float, b_poly: float) -> float:
    """2 / b_bulk - (1 / b_perco + 1 / b_poly); zero when the bulk value is the harmonic mean."""
    return 2 / b_bulk - (1 / b_perco + 1 / b_poly)


def predictions() -> dict[str, float]:
    bulk_dense = b_from_collision("dense")
    bulk_dilute = b_from_collision("dilute")
    perco = chiral_b("percolation")
    poly = chiral_b("polymers")
    return {
        "b_bulk_percolation": bulk_dense,
        "b_bulk_polymers": bulk_dilute,
        "b_chiral_percolation": perco,
        "b_chiral_polymers": poly,
        "harmonic_gap": harmonic_gap(0.5 * (bulk_dense + bulk_dilute), perco, poly),
    }
