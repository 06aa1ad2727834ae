from .eigen import (
    GroundState,
    central_charge_estimate,
    eigenpairs,
    ground_state,
    low_lying,
    nearest_eigenpair,
    scaled_gap,
)
from .jordan import JordanPair, find_jordan_pair
from .momentum import MomentumBlock, project_momentum, spins

__all__ = [
    "GroundState",
    "JordanPair",
    "MomentumBlock",
    "central_charge_estimate",
    "eigenpairs",
    "find_jordan_pair",
    "ground_state",
    "low_lying",
    "nearest_eigenpair",
    "project_momentum",
    "scaled_gap",
    "spins",
]
