"""Size sweeps as a prefect flow, one task per lattice size."""

from __future__ import annotations

from prefect import flow, task
from prefect.task_runners import ThreadPoolTaskRunner

from ..config import settings
from ..errors import BulkBError
from ..logging import get_logger
from ..model import make_spec
from .estimator import measure_b
from .schema import MeasurementRecord

logger = get_logger(__name__)


@task(task_run_name="measure-{kind}-L{L}")
def measure_size(kind: str, L: int) -> MeasurementRecord:
    """Measure one size; numerical failures become error records."""
    try:
        return measure_b(make_spec(kind, L))
    except BulkBError as exc:
        logger.warning(f"{kind} L={L} failed: {exc}")
        return MeasurementRecord.failed(kind, L, exc)


@flow(name="bulkb-sweep")
def sweep(kind: str, sizes: list[int]) -> list[MeasurementRecord]:
    # futures are resolved in submission order, so output follows `sizes`
    futures = [measure_size.submit(kind, L) for L in sizes]
    records = [f.result() for f in futures]
    failed = [r.L for r in records if not r.ok]
    logger.info(f"{kind} sweep over {sizes}: {len(records) - len(failed)} ok, failed {failed}")
    return records


def run_sweep(kind: str, sizes: list[int], threads: int | None = None) -> list[MeasurementRecord]:
    if not sizes:
        return []
    workers = max(1, threads or settings.THREADS)
    return sweep.with_options(task_runner=ThreadPoolTaskRunner(max_workers=workers))(kind, list(sizes))
