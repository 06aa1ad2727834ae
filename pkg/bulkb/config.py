"""config settings for bulkb"""

import os

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """settings for bulkb

    Every field can be overridden from the environment with the
    ``BULKB_`` prefix, e.g. ``BULKB_DENSE_EIG_MAX_DIM=800``.
    """

    model_config = SettingsConfigDict(env_prefix="BULKB_")

    OUTPUT_DIRECTORY: str = "./results"
    # sweep workers; all cores unless overridden
    THREADS: int = Field(default_factory=lambda: os.cpu_count() or 1)

    # eigen-solver
    DENSE_EIG_MAX_DIM: int = 1500
    ARPACK_NEV: int = 8
    EIG_RESIDUAL_TOL: float = 1e-10

    # Jordan cell detection
    CELL_MATCH_RTOL: float = 1e-8
    CELL_RESIDUAL_TOL: float = 1e-8
    PAIRING_FLOOR: float = 1e-12

    # regularized limit at the degenerate loop weight
    REGULARIZATION_STEP: float = 2e-3
    LATTICE_LIMIT_RTOL: float = 1e-3
    LIMIT_AGREEMENT_TOL: float = 1e-6

    FLOAT_SIGNIFICANT_DIGITS: int = 9


settings = Settings()

if __name__ == "__main__":
    print(settings.model_dump())
