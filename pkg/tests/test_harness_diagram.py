import pytest

from config import Settings
from harness import OBSERVED, REFUTED, run_diagram
from harness.diagram import double_lebesgue_row, epsilon_prime_row, gauss_green_row, hk_value_row


def test_double_lebesgue_row_is_refuted():
    row = double_lebesgue_row(Settings(), depth=2)
    assert row.status == REFUTED
    assert row.ok
    assert row.detail['max_sum'] > 0.01


def test_hk_value_row_matches_sine():
    row = hk_value_row(Settings())
    assert row.status == OBSERVED
    assert row.detail['error'] <= 1e-6


def test_gauss_green_row():
    row = gauss_green_row(Settings())
    assert row.ok
    assert row.detail['exact_match'] is True


def test_epsilon_prime_row_stays_below_eps():
    row = epsilon_prime_row(Settings())
    assert row.ok
    assert 0 < row.detail['epsilon_prime'] < row.detail['epsilon']


@pytest.mark.slow
def test_full_diagram_matches_expectations():
    report = run_diagram(Settings(), depth=2, falsifier_trials=8)
    assert len(report.rows) == 7
    assert report.ok, [row.summary() for row in report.rows if not row.ok]
