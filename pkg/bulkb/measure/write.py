"""CSV and JSON emission of sweep records through UPath."""

from __future__ import annotations

import math

import orjson
import pandas as pd
from upath import UPath

from ..config import settings
from ..logging import get_logger
from .schema import MeasurementRecord, get_schema

logger = get_logger(__name__)

FORMATS = ("csv", "json")


def records_frame(records: list[MeasurementRecord]) -> pd.DataFrame:
    return pd.DataFrame([r.model_dump() for r in records], columns=get_schema("measurement"))


def _json_ready(record: MeasurementRecord) -> dict:
    # orjson has no NaN; failed sizes carry null numerics
    return {
        k: (None if isinstance(v, float) and math.isnan(v) else v)
        for k, v in record.model_dump().items()
    }


def write_records(records: list[MeasurementRecord], path: str | UPath, fmt: str = "csv") -> UPath:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    path = UPath(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        frame = records_frame(records)
        float_format = f"%.{settings.FLOAT_SIGNIFICANT_DIGITS}g"
        with path.open("w") as fh:
            frame.to_csv(fh, index=False, float_format=float_format, lineterminator="\n")
    else:
        with path.open("wb") as fh:
            fh.write(orjson.dumps([_json_ready(r) for r in records], option=orjson.OPT_INDENT_2))
    logger.info(f"wrote {len(records)} records to {path}")
    return path


def write_spectrum(frame: pd.DataFrame, path: str | UPath) -> UPath:
    path = UPath(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w") as fh:
        frame.to_csv(
            fh,
            index=False,
            columns=get_schema("spectrum"),
            float_format=f"%.{settings.FLOAT_SIGNIFICANT_DIGITS}g",
            lineterminator="\n",
        )
    return path
