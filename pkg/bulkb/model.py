"""Model identity and the critical constants attached to it.

Two models are supported:

* ``percolation``: the dense loop model at n = 1 (Q = 1 Potts), Hamiltonian
  ``H = -sum e_i`` built from periodic Temperley-Lieb generators.
* ``polymers``: the dilute O(n) loop model at n = 0 on the integrable
  branch with crossing parameter ``3 * lam``, ``lam = pi / 8``.

Loop weights away from the critical value are representable through
:meth:`ModelSpec.regularized` (spectral constants frozen) and
:meth:`ModelSpec.with_loop_weight` (no spectral constants).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal

from .errors import InvalidModelError

Kind = Literal["dense", "dilute"]

MODEL_KINDS: dict[str, Kind] = {
    "percolation": "dense",
    "polymers": "dilute",
}


def dense_coupling(n: float) -> float:
    """Coulomb-gas coupling of the dense loop model, g in [2, 4]."""
    return 4.0 - (2.0 / math.pi) * math.acos(n * n / 2.0 - 1.0)


def dilute_coupling(n: float) -> float:
    """Coulomb-gas coupling of the dilute loop model, g in [1, 2]."""
    return 2.0 - math.acos(-n / 2.0) / math.pi


def dilute_lambda(n: float) -> float:
    """Crossing-parameter angle of the integrable dilute weights at loop weight n."""
    return math.acos(-n / 2.0) / 4.0


def central_charge(kind: Kind, g: float) -> float:
    if kind == "dense":
        return 1.0 - 3.0 * (g - 4.0) ** 2 / (2.0 * g)
    return 1.0 - 6.0 * (g - 1.0) ** 2 / g


@dataclass(frozen=True)
class ModelSpec:
    kind: Kind
    n: float
    g: float
    c: float
    L: int
    v_F: float | None = None
    e_inf: float | None = None
    lam: float | None = None
    name: str | None = None
    regularization: float = 0.0

    def __post_init__(self):
        if self.kind not in ("dense", "dilute"):
            raise InvalidModelError(f"unknown model kind {self.kind!r}")
        if not isinstance(self.L, int) or self.L < 2 or self.L % 2:
            raise InvalidModelError(f"L must be an even integer >= 2, got {self.L!r}")

    @property
    def N(self) -> int:
        return self.L // 2

    @property
    def has_constants(self) -> bool:
        return self.v_F is not None and self.e_inf is not None

    def require_constants(self) -> None:
        if not self.has_constants:
            raise InvalidModelError(
                f"{self.kind} model at n={self.n} has no known v_F / e_inf"
            )

    def with_size(self, L: int) -> "ModelSpec":
        return replace(self, L=L)

    def regularized(self, dn: float) -> "ModelSpec":
        """Same model at loop weight ``n + dn`` with v_F, e_inf and c frozen.

        For the dilute model the crossing parameter follows the loop weight
        so the Hamiltonian stays on the integrable family.
        """
        n = self.n + dn
        lam = dilute_lambda(n) if self.kind == "dilute" else None
        return replace(self, n=n, lam=lam, regularization=self.regularization + dn)

    def with_loop_weight(self, n: float) -> "ModelSpec":
        """Same lattice at a generic loop weight, without spectral constants."""
        if self.kind == "dense":
            g = dense_coupling(n) if 0.0 <= n <= 2.0 else math.nan
            lam = None
        else:
            g = dilute_coupling(n) if -2.0 <= n <= 2.0 else math.nan
            lam = dilute_lambda(n)
        c = central_charge(self.kind, g) if not math.isnan(g) else math.nan
        return replace(self, n=n, g=g, c=c, lam=lam, v_F=None, e_inf=None, name=None)


def make_spec(kind: str, L: int) -> ModelSpec:
    """Build the critical model named ``kind`` ("percolation" or "polymers").

    >>> make_spec("percolation", 10).N
    5
    """
    if kind not in MODEL_KINDS:
        raise InvalidModelError(
            f"unknown model {kind!r}; expected one of {sorted(MODEL_KINDS)}"
        )
    if not isinstance(L, int) or isinstance(L, bool) or L < 4 or L % 2:
        raise InvalidModelError(f"L must be an even integer >= 4, got {L!r}")
    if MODEL_KINDS[kind] == "dense":
        return ModelSpec(
            kind="dense",
            n=1.0,
            g=8.0 / 3.0,
            c=0.0,
            L=L,
            v_F=3.0 * math.sqrt(3.0) / 2.0,
            e_inf=1.0,
            name=kind,
        )
    return ModelSpec(
        kind="dilute",
        n=0.0,
        g=1.5,
        c=0.0,
        L=L,
        v_F=8.0 / 3.0,
        e_inf=math.sqrt(2.0),
        lam=math.pi / 8.0,
        name=kind,
    )
