"""Tests for the quick numerical checks behind `verify`."""

import pytest

from rgg_spectra.experiments.acceptance import CHECKS, run_checks


def _by_name(rows):
    return {row["check"]: row for row in rows}


def test_limit_spectrum_reports_grid_drift():
    rows = _by_name(run_checks(["limit-spectrum"], seed=1, mquad=2000))
    assert set(rows) == {
        "limit-drift",
        "limit-lambda-1",
        "limit-lambda-2",
        "limit-tail-squares",
        "limit-tail-max",
    }
    assert rows["limit-drift"]["value"] < 1e-3
    assert rows["limit-drift"]["target"] == "< 0.001"
    assert all(row["pass"] for row in rows.values())


def test_drift_row_fails_on_a_coarse_grid():
    drift = _by_name(run_checks(["limit-spectrum"], seed=1, mquad=40))["limit-drift"]
    assert drift["value"] > 1e-3
    assert drift["pass"] is False


def test_complete_graph_check():
    (row,) = run_checks(["complete-graph"], seed=1)
    assert row["pass"], row


def test_step_equality_check():
    rows = run_checks(["step-equality"], seed=3)
    assert [row["check"] for row in rows] == ["step-equality-d1", "step-equality-d2"]
    assert all(row["pass"] for row in rows)


def test_rows_share_one_shape():
    rows = run_checks(["hs-constant", "witness"], seed=1)
    assert all(set(row) == {"check", "value", "target", "pass"} for row in rows)


@pytest.mark.slow
def test_every_check_passes():
    rows = run_checks(list(CHECKS), seed=1)
    failed = [row for row in rows if not row["pass"]]
    assert failed == []
