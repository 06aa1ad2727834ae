"""bulkb command line: measure, predict, check, extrapolate and spectrum."""

from __future__ import annotations

import argparse
import math
import sys
from typing import Literal

import orjson
import pandas as pd
from pydantic import BaseModel, ValidationError, field_validator
from rich.console import Console
from rich.table import Table
from upath import UPath

from . import coulomb
from .checks import SUITES, run_checks
from .config import settings
from .errors import BulkBError
from .logging import get_logger
from .loops.operator import KERNELS
from .measure.extrapolate import extrapolate
from .measure.flow import run_sweep
from .measure.write import FORMATS, write_records, write_spectrum
from .model import MODEL_KINDS, make_spec
from .spectra.eigen import low_lying
from .spectra.momentum import spins

logger = get_logger(__name__)

console = Console()

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class RunConfig(BaseModel):
    command: Literal["measure", "predict", "check", "extrapolate", "spectrum"]
    model: Literal["percolation", "polymers"] = "percolation"
    sizes: list[int] = [8]
    order: int = 2
    out: str | None = None
    input: str | None = None
    format: Literal["csv", "json"] = "csv"
    threads: int | None = None
    json_output: bool = False
    suites: list[str] = list(SUITES)

    @field_validator("sizes", mode="before")
    @classmethod
    def split_sizes(cls, value):
        if isinstance(value, str):
            try:
                return [int(v) for v in value.split(",") if v.strip()]
            except ValueError:
                raise ValueError(f"sizes must be comma separated integers, got {value!r}")
        return value

    @field_validator("sizes")
    @classmethod
    def even_sizes(cls, value: list[int]) -> list[int]:
        bad = [L for L in value if L < 4 or L % 2]
        if bad:
            raise ValueError(f"sizes must be even and >= 4, got {bad}")
        return value

    @field_validator("order")
    @classmethod
    def positive_order(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f"order must be at least 1, got {value}")
        return value

    @field_validator("threads")
    @classmethod
    def positive_threads(cls, value: int | None) -> int | None:
        if value is not None and value < 1:
            raise ValueError(f"threads must be positive, got {value}")
        return value

    @field_validator("suites", mode="before")
    @classmethod
    def known_suites(cls, value):
        if isinstance(value, str):
            value = [v.strip() for v in value.split(",") if v.strip()]
        unknown = [v for v in value if v not in SUITES]
        if unknown:
            raise ValueError(f"unknown check suites {unknown}; expected some of {list(SUITES)}")
        return value

    @property
    def output_path(self) -> UPath:
        if self.out:
            return UPath(self.out)
        suffix = "csv" if self.command == "spectrum" else self.format
        return UPath(settings.OUTPUT_DIRECTORY) / f"{self.command}-{self.model}.{suffix}"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bulkb", description="Indecomposability parameter b of 2D loop models at c = 0.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--model", choices=sorted(MODEL_KINDS), default="percolation")
        p.add_argument("--sizes", default="8", help="comma separated even lattice sizes L")
        p.add_argument("--threads", type=int, default=None, help="worker threads (default BULKB_THREADS)")

    p = sub.add_parser("measure", help="measure b at each size")
    common(p)
    p.add_argument("--out", default=None, help="output file (local path or URL)")
    p.add_argument("--format", choices=FORMATS, default="csv")

    p = sub.add_parser("predict", help="Coulomb-gas predictions at c = 0")
    p.add_argument("--json", dest="json_output", action="store_true", help="machine-readable output")

    p = sub.add_parser("check", help="run the property suites")
    common(p)
    p.add_argument("--suites", default=",".join(SUITES))

    p = sub.add_parser("extrapolate", help="fit b(N) in powers of 1/N")
    p.add_argument("--input", required=True, help="CSV written by `bulkb measure`")
    p.add_argument("--model", choices=sorted(MODEL_KINDS), default="percolation", help="rows to fit when the CSV mixes models")
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--json", dest="json_output", action="store_true")

    p = sub.add_parser("spectrum", help="lowest scaled gaps per sector and spin")
    common(p)
    p.add_argument("--out", default=None)
    return parser


def parse_config(argv: list[str] | None = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    try:
        return RunConfig(**{k: v for k, v in vars(args).items() if v is not None})
    except ValidationError as exc:
        raise UsageError("; ".join(e["msg"] for e in exc.errors())) from exc


def _fmt(value: float) -> str:
    return "nan" if value is None or math.isnan(value) else f"{value:.6f}"


def cmd_measure(config: RunConfig) -> int:
    records = run_sweep(config.model, config.sizes, config.threads)
    path = write_records(records, config.output_path, config.format)

    table = Table(title=f"{config.model}: b per size")
    for column in ("L", "E_T", "delta_N", "b_N", "error"):
        table.add_column(column)
    for r in records:
        table.add_row(str(r.L), _fmt(r.E_T), _fmt(r.delta_N), _fmt(r.b_N), r.error or "")
    console.print(table)
    console.print(f"records written to {path}")
    return EXIT_OK if all(r.ok for r in records) else EXIT_NUMERICAL


def cmd_predict(config: RunConfig) -> int:
    values = coulomb.predictions()
    left, right, weights = coulomb.x_field_kac_labels()
    energy = coulomb.energy_operator_weights()
    if config.json_output:
        payload = {
            **values,
            "x_field_kac_labels": [list(left), list(right)],
            "x_field_weights": list(weights),
            "energy_operators": {k: list(v) for k, v in energy.items()},
        }
        sys.stdout.write(orjson.dumps(payload, option=orjson.OPT_INDENT_2).decode() + "\n")
        return EXIT_OK

    table = Table(title="b at c = 0")
    table.add_column("quantity")
    table.add_column("value", justify="right")
    for key, value in values.items():
        table.add_row(key, f"{value:.9f}")
    console.print(table)
    console.print(f"X field: Kac labels {left} x {right}, weights ({weights[0]:g}, {weights[1]:g})")
    for name, (h, hb) in energy.items():
        console.print(f"{name}: ({h:.6g}, {hb:.6g})")
    return EXIT_OK


def cmd_check(config: RunConfig) -> int:
    failed = False
    table = Table(title=f"{config.model} property suites")
    for column in ("L", "check", "result", "message"):
        table.add_column(column)
    for L in config.sizes:
        spec = make_spec(config.model, L)
        for result in run_checks(spec, config.suites):
            failed |= not result.passed
            table.add_row(str(L), result.name, "pass" if result.passed else "FAIL", result.message)
    console.print(table)
    return EXIT_NUMERICAL if failed else EXIT_OK


def _read_measurements(location: str, model: str) -> list[tuple[int, float]]:
    try:
        with UPath(location).open("r") as fh:
            frame = pd.read_csv(fh)
    except pd.errors.EmptyDataError as exc:
        raise UsageError(f"{location} is empty") from exc
    except pd.errors.ParserError as exc:
        raise UsageError(f"{location} is not a measurement CSV: {exc}") from exc
    missing = [column for column in ("L", "b_N") if column not in frame.columns]
    if missing:
        raise UsageError(f"{location} lacks the columns {missing}")
    if "model" in frame.columns:
        frame = frame[frame["model"] == model]
    return [(int(L), float(b)) for L, b in zip(frame["L"], frame["b_N"]) if not math.isnan(b)]


def cmd_extrapolate(config: RunConfig) -> int:
    points = _read_measurements(config.input, config.model)
    result = extrapolate(points, config.order)
    if config.json_output:
        payload = {
            "b_inf": result.b_inf,
            "spread": result.spread,
            "order": result.order,
            "coefficients": list(result.coefficients),
            "by_order": {str(k): v for k, v in result.by_order.items()},
        }
        sys.stdout.write(orjson.dumps(payload, option=orjson.OPT_INDENT_2).decode() + "\n")
    else:
        console.print(f"b_inf = {result.b_inf:.6f} +- {result.spread:.2g} (order {result.order}, {len(points)} sizes)")
    return EXIT_OK


def cmd_spectrum(config: RunConfig) -> int:
    frames = []
    for L in config.sizes:
        spec = make_spec(config.model, L)
        labels = list(KERNELS[spec.kind].labels(L, 2))
        frames.append(low_lying(spec, labels, [s for s in spins(spec.N) if 0 <= s <= 2]))
    frame = pd.concat(frames, ignore_index=True)
    path = write_spectrum(frame, config.output_path)
    console.print(f"{len(frame)} levels written to {path}")
    return EXIT_OK


HANDLERS = {
    "measure": cmd_measure,
    "predict": cmd_predict,
    "check": cmd_check,
    "extrapolate": cmd_extrapolate,
    "spectrum": cmd_spectrum,
}


def main(argv: list[str] | None = None) -> int:
    try:
        config = parse_config(argv)
    except UsageError as exc:
        console.print(f"[red]usage error:[/red] {exc}")
        return EXIT_USAGE
    try:
        return HANDLERS[config.command](config)
    except UsageError as exc:
        console.print(f"[red]usage error:[/red] {exc}")
        return EXIT_USAGE
    except BulkBError as exc:
        logger.error(f"{config.command} failed: {exc}")
        return exc.exit_code
    except OSError as exc:
        logger.error(f"I/O failure: {exc}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
