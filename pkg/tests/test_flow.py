import numpy as np

from bulkb.measure.flow import run_sweep


def test_empty_sweep():
    assert run_sweep("percolation", []) == []


def test_failures_become_records(prefect_harness):
    # N = 2 has no spin-2 block, so the Jordan cell cannot exist
    records = run_sweep("percolation", [4, 4], threads=2)
    assert [r.L for r in records] == [4, 4]
    assert not any(r.ok for r in records)
    assert records[0].error.startswith("SectorError")


def test_solver_failures_become_records(prefect_harness, monkeypatch):
    def broken_eig(*args, **kwargs):
        raise np.linalg.LinAlgError("eigenvalue algorithm did not converge")

    monkeypatch.setattr("bulkb.spectra.eigen.la.eig", broken_eig)
    records = run_sweep("percolation", [6], threads=1)
    assert len(records) == 1
    assert not records[0].ok
    assert records[0].error.startswith("EigenSolverError")
