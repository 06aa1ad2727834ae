from .estimator import measure_b, quotient_estimate, regularized_point
from .extrapolate import ExtrapolationResult, extrapolate
from .schema import MeasurementRecord

__all__ = [
    "ExtrapolationResult",
    "MeasurementRecord",
    "extrapolate",
    "measure_b",
    "quotient_estimate",
    "regularized_point",
]
