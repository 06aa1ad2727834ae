from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict

schema = {}

schema["measurement"] = [
    "model",
    "L",
    "E0",
    "E_T",
    "delta_N",
    "b_N",
    "cell_residual",
    "c_estimate",
    "mu_sensitivity",
    "error",
]

schema["spectrum"] = ["model", "L", "j", "s", "delta", "energy"]


def get_schema(entity: str) -> list[str]:
    return schema[entity]


class MeasurementRecord(BaseModel):
    """One row of a size sweep; numerics are NaN when ``error`` is set."""

    model_config = ConfigDict(frozen=True)

    model: str
    L: int
    E0: float = math.nan
    E_T: float = math.nan
    delta_N: float = math.nan
    b_N: float = math.nan
    cell_residual: float = math.nan
    c_estimate: float = math.nan
    mu_sensitivity: float = math.nan
    error: str | None = None

    @classmethod
    def failed(cls, model: str, L: int, error: Exception | str) -> "MeasurementRecord":
        return cls(model=model, L=L, error=f"{type(error).__name__}: {error}" if isinstance(error, Exception) else error)

    @property
    def ok(self) -> bool:
        return self.error is None
