import math

import orjson
import pandas as pd

from bulkb.measure import MeasurementRecord
from bulkb.measure.schema import get_schema
from bulkb.measure.write import records_frame, write_records, write_spectrum


def _records():
    return [
        MeasurementRecord(
            model="percolation",
            L=10,
            E0=-10.0,
            E_T=-8.123456789012,
            delta_N=1.98,
            b_N=-4.33296,
            cell_residual=1e-12,
            c_estimate=0.0,
            mu_sensitivity=0.01,
        ),
        MeasurementRecord.failed("percolation", 12, "EigenSolverError: no convergence"),
    ]


def test_frame_column_order():
    frame = records_frame(_records())
    assert list(frame.columns) == get_schema("measurement")
    assert math.isnan(frame.loc[1, "b_N"])


def test_csv_is_deterministic(tmp_path):
    a = write_records(_records(), str(tmp_path / "a.csv"), "csv")
    b = write_records(_records(), str(tmp_path / "out" / "b.csv"), "csv")
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == ",".join(get_schema("measurement"))
    assert "-8.12345679" in lines[1]
    assert lines[2].endswith("EigenSolverError: no convergence")


def test_json_has_nulls(tmp_path):
    path = write_records(_records(), str(tmp_path / "r.json"), "json")
    rows = orjson.loads(path.read_bytes())
    assert len(rows) == 2
    assert set(rows[0]) == set(get_schema("measurement"))
    assert rows[0]["b_N"] == -4.33296
    assert rows[1]["b_N"] is None
    assert rows[1]["error"].startswith("EigenSolverError")


def test_spectrum_dump(tmp_path):
    frame = pd.DataFrame([{"model": "percolation", "L": 6, "j": 0, "s": 0, "delta": 0.0, "energy": -6.0}])
    path = write_spectrum(frame, str(tmp_path / "spec.csv"))
    assert path.read_text().splitlines()[0] == "model,L,j,s,delta,energy"
