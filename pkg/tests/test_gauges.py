from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from errors import InputError, PreconditionError
from gauges import (Ball, Packing, PartitionItem, TaggedPartition, ZeroSet, constant_gauge, cousin_partition_1d,
                    distance_gauge, gauge_from_descriptor, hk_oscillatory_gauge, is_delta_fine, load_balls,
                    sample_packing, verify_vitali, vitali_disjoint_subfamily)
from geometry import DyadicCube, Figure, Interval


def test_constant_gauge_is_exact():
    gauge = constant_gauge('1/4', 2)
    assert gauge.exact((0, 0)) == Fraction(1, 4)
    assert gauge((Fraction(1, 3), 2)) == 0.25
    assert gauge.is_positive()
    with pytest.raises(InputError):
        constant_gauge(0)


def test_distance_gauge_vanishes_on_its_set():
    gauge = distance_gauge(ZeroSet(points=((Fraction(0),),)), dim=1, on_set=0)
    assert gauge((0,)) == 0.0
    assert gauge((Fraction(1, 2),)) == pytest.approx(0.5)
    assert not gauge.is_positive()


def test_descriptor_errors_name_the_field():
    with pytest.raises(InputError) as err:
        gauge_from_descriptor({'kind': 'wobbly'})
    assert 'gauge.kind' in str(err.value)
    with pytest.raises(InputError):
        gauge_from_descriptor({'kind': 'distance-to-set'})


def test_hk_oscillatory_gauge():
    gauge = hk_oscillatory_gauge(0.01)
    assert gauge((0,)) == pytest.approx(0.05)
    assert gauge((1,)) == pytest.approx(0.01 / 256)
    assert gauge.is_positive()


@given(st.fractions(min_value=Fraction(1, 50), max_value=Fraction(1, 2)))
@settings(max_examples=30, deadline=None)
def test_cousin_partition_is_fine_and_complete(delta):
    gauge = constant_gauge(delta, 1)
    partition = cousin_partition_1d(0, 1, gauge)
    partition.validate()
    assert partition.total_volume() == 1
    assert is_delta_fine(partition, gauge)


def test_cousin_partition_rejects_vanishing_gauge():
    gauge = distance_gauge(ZeroSet(points=((Fraction(1, 3),),)), dim=1, on_set=0)
    with pytest.raises(PreconditionError):
        cousin_partition_1d(0, 1, gauge)


def test_fineness_is_strict():
    gauge = constant_gauge('1/2', 1)
    exact = TaggedPartition([PartitionItem(Interval(((0, Fraction(1, 2)),)), (Fraction(0),))])
    assert not is_delta_fine(exact, gauge)
    packing = Packing((Ball((0, 0), Fraction(1, 4)),))
    assert not is_delta_fine(packing, gauge)
    assert is_delta_fine(Packing((Ball((0, 0), Fraction(1, 5)),)), gauge)


def test_packing_rejects_touching_balls():
    with pytest.raises(PreconditionError):
        Packing((Ball((0, 0), Fraction(1, 2)), Ball((1, 0), Fraction(1, 2))))


def test_sample_packing_is_disjoint_and_fine(unit_square):
    gauge = constant_gauge('1/4', 2)
    packing = sample_packing(unit_square, gauge, 8, seed=5)
    assert 1 <= len(packing) <= 8
    assert is_delta_fine(packing, gauge)
    for ball in packing.balls:
        assert unit_square.contains_point(ball.center)


def test_sample_packing_is_reproducible(l_shape):
    gauge = constant_gauge('1/8', 2)
    first = sample_packing(l_shape, gauge, 6, seed=9)
    second = sample_packing(l_shape, gauge, 6, seed=9)
    assert first == second


def test_tagged_partition_overlap_detected():
    a = Figure.cube(DyadicCube(0, (0, 0)))
    b = Figure.cube(DyadicCube(1, (1, 1)))
    partition = TaggedPartition([PartitionItem(a, (0, 0)), PartitionItem(b, (1, 1))])
    with pytest.raises(PreconditionError):
        partition.validate()


def test_vitali_selection_certifies_every_ball():
    balls = load_balls({'balls': [
        {'center': [0, 0], 'radius': 1},
        {'center': ['3/2', 0], 'radius': '1/2'},
        {'center': [4, 0], 'radius': '1/4'},
        {'center': [0, '1/2'], 'radius': '1/8'},
    ]})
    selection = vitali_disjoint_subfamily(balls)
    assert selection.selected == [0, 2]
    assert selection.certificate[1] == 0
    assert verify_vitali(balls, selection)


@given(st.lists(st.tuples(st.integers(0, 20), st.integers(0, 20), st.integers(1, 6)), min_size=1, max_size=12))
@settings(max_examples=40, deadline=None)
def test_vitali_on_random_families(rows):
    balls = [Ball((Fraction(x, 4), Fraction(y, 4)), Fraction(r, 4)) for x, y, r in rows]
    assert verify_vitali(balls, vitali_disjoint_subfamily(balls))


def test_gauge_radii_vectorized():
    gauge = constant_gauge(2, 2)
    values = gauge.radii(np.zeros((5, 2)))
    assert values.shape == (5,)
    assert np.all(values == 2.0)
