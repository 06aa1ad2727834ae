from bulkb.checks import SUITES, run_checks
from bulkb.model import make_spec


def test_suite_names():
    assert list(SUITES) == [
        "tl-relations",
        "gram-symmetry",
        "translation",
        "h0-identity",
        "jordan-cell",
        "dilute-anchors",
    ]


def test_full_dense_suite(percolation8):
    results = run_checks(percolation8)
    assert [r.name for r in results] == list(SUITES)
    failed = [f"{r.name}: {r.message}" for r in results if not r.passed]
    assert not failed


def test_selected_suites(percolation6):
    results = run_checks(percolation6, ["translation", "gram-symmetry"])
    assert [r.name for r in results] == ["translation", "gram-symmetry"]
    assert all(r.passed for r in results)


def test_dilute_anchors():
    (result,) = run_checks(make_spec("polymers", 10), ["dilute-anchors"])
    assert result.passed, result.message


def test_not_applicable_suites_pass(polymers6):
    (tl,) = run_checks(polymers6, ["tl-relations"])
    assert tl.passed
    assert "not applicable" in tl.message
