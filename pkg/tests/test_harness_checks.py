import numpy as np
import pytest

from conftest import random_figure
from errors import InputError
from gauges import boundary_distance_gauge, constant_gauge
from harness import (CONSISTENT, REFUTED, IntegralClaim, check_bv_partition_integral, check_packing_integral,
                     definite_value, restriction_consistency, sample_partition)


def claim_from(load_data, name, **overrides):
    data = load_data(f"claims/{name}.json")
    data.update(overrides)
    return IntegralClaim.from_dict(data)


def test_double_lebesgue_is_refuted(load_data):
    claim = claim_from(load_data, 'double-lebesgue')
    report = check_packing_integral(claim, constant_gauge(1, 2), trials=4, seed=0, epsilons=(0.01,),
                                    count=3, depth=2)
    row = report.row(0.01)
    assert row.verdict == REFUTED
    assert row.max_sum >= 0.01
    assert row.witness['packing']['balls']
    assert report.refuted


def test_lebesgue_against_itself_is_consistent(load_data):
    claim = claim_from(load_data, 'lebesgue')
    report = check_packing_integral(claim, constant_gauge('1/4', 2), trials=3, seed=1, count=3, depth=1)
    assert report.verdict == CONSISTENT
    assert all(row.max_sum == 0.0 for row in report.rows)
    assert [row.epsilon for row in report.rows] == [0.1, 0.01]


def test_packing_check_is_reproducible(load_data):
    claim = claim_from(load_data, 'double-lebesgue')
    kwargs = dict(trials=2, seed=4, epsilons=(0.01,), count=2, depth=1)
    first = check_packing_integral(claim, constant_gauge(1, 2), **kwargs)
    second = check_packing_integral(claim, constant_gauge(1, 2), jobs=2, **kwargs)
    assert first.row(0.01).sums == second.row(0.01).sums


def test_packing_check_rejects_other_notions(load_data):
    with pytest.raises(InputError):
        check_packing_integral(claim_from(load_data, 'linear-flux'), constant_gauge(1, 2))


def test_definite_value_on_the_window(load_data):
    assert definite_value(claim_from(load_data, 'double-lebesgue')) == pytest.approx(2.0)


def test_linear_flux_partitions_are_consistent(load_data):
    claim = claim_from(load_data, 'linear-flux')
    report = check_bv_partition_integral(claim, constant_gauge('1/4', 2), trials=2, seed=0, count=4)
    assert report.verdict == CONSISTENT
    for row in report.rows:
        assert row.max_sum < 1e-9


def test_partition_check_refutes_double_lebesgue(load_data):
    claim = claim_from(load_data, 'double-lebesgue', notion='pfeffer-r', epsilons=[0.001])
    report = check_bv_partition_integral(claim, constant_gauge(1, 2), trials=2, seed=0, count=4)
    assert report.verdict == REFUTED


def test_sampled_partition_is_fine_and_disjoint(load_data):
    claim = claim_from(load_data, 'linear-flux')
    gauge = constant_gauge('1/4', 2)
    sample = sample_partition(claim, gauge, 0.01, 6, np.random.default_rng(3))
    sample.partition.validate()
    for item in sample.partition.items:
        assert item.set.contains_point(item.tag)
    assert len(sample.terms) == len(sample.partition)


def test_restriction_forms_agree_with_boundary_gauge(load_data, quarter):
    claim = claim_from(load_data, 'lebesgue')
    result = restriction_consistency(claim, quarter, boundary_distance_gauge(quarter), trials=2, seed=0,
                                     epsilons=(0.01,), count=3, depth=1)
    assert result.agree
    assert result.zero_extension.verdict == CONSISTENT
    assert result.in_region.verdict == CONSISTENT


@pytest.mark.slow
def test_restriction_forms_agree_on_random_figures(load_data):
    claim = claim_from(load_data, 'lebesgue')
    rng = np.random.default_rng(12)
    for _ in range(20):
        A = random_figure(rng, 2, level=2, max_cells=8)
        result = restriction_consistency(claim, A, boundary_distance_gauge(A), trials=2, seed=0,
                                         epsilons=(0.01,), count=3, depth=1)
        assert result.agree, A
        assert result.zero_extension.verdict == CONSISTENT
