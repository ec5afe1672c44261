import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charges import (DensityCharge, FluxCharge, HausdorffSegmentCharge, LebesgueCharge, charge_axiom_falsifier,
                     charge_derivative_estimate, charge_from_descriptor, gauss_legendre, is_charge_in,
                     scalar_function, vector_field)
from errors import DimensionError, InputError
from geometry import FALSIFIED, PASSED, BVSet1D, DyadicCube, Figure, Interval

cells = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=6)


def test_gauss_legendre_on_unit_interval():
    nodes, weights = gauss_legendre(5)
    assert np.all((nodes > 0) & (nodes < 1))
    assert weights.sum() == pytest.approx(1.0)
    assert float(np.dot(weights, nodes ** 9)) == pytest.approx(0.1)


def test_lebesgue_charge_is_volume(l_shape):
    assert LebesgueCharge(2).evaluate(l_shape) == 3.0
    assert LebesgueCharge(2).evaluate(Figure.empty(2)) == 0.0


def test_density_matches_exact_for_polynomials(unit_square):
    density = DensityCharge(scalar_function('identity', 2), 4, 2)
    assert density.evaluate_exact(unit_square) == Fraction(1, 2)
    assert density.evaluate(unit_square) == pytest.approx(0.5)


def test_density_of_sin_on_a_box():
    charge = DensityCharge(scalar_function('sin', 2), 7, 2)
    box = Interval(((0, 1), (0, 1)))
    assert charge.evaluate(box) == pytest.approx(2 * (1 - math.cos(1)), rel=1e-10)


@given(cells)
@settings(max_examples=40, deadline=None)
def test_flux_of_linear_field_is_three_times_volume(a):
    fig = Figure.from_cells(2, a, 2)
    flux = FluxCharge(vector_field('linear', 2), 3)
    assert flux.evaluate_exact(fig) == 3 * fig.volume
    assert flux.evaluate(fig) == pytest.approx(3 * float(fig.volume), abs=1e-12)


@given(cells, cells)
@settings(max_examples=40, deadline=None)
def test_charges_are_additive_on_disjoint_figures(a, b):
    A = Figure.from_cells(2, a, 2)
    B = Figure.from_cells(2, b, 2).difference(A)
    charge = DensityCharge(scalar_function('sin', 2), 5, 2) + FluxCharge(vector_field('quadratic', 2), 5)
    assert charge.evaluate(A.union(B)) == pytest.approx(charge.evaluate(A) + charge.evaluate(B), abs=1e-12)


def test_evaluate_cells_agrees_with_evaluate():
    charge = DensityCharge(scalar_function('sin', 2), 5, 2) - 0.5 * LebesgueCharge(2)
    idx = np.array([[0, 0], [1, 2], [3, 3]])
    values = charge.evaluate_cells(2, idx)
    for row, value in zip(idx, values):
        expected = charge.evaluate(Figure.cube(DyadicCube(2, tuple(int(k) for k in row))))
        assert value == pytest.approx(expected, abs=1e-12)


def test_segment_charge_measures_length(unit_square):
    segment = HausdorffSegmentCharge((Fraction(0), Fraction(1, 3)), 0, Fraction(1))
    assert segment.evaluate(unit_square) == 1.0
    assert segment.evaluate(Figure.cube(DyadicCube(1, (1, 0)))) == 0.5
    assert segment.evaluate(Figure.cube(DyadicCube(1, (0, 1)))) == 0.0


def test_restricted_charge(unit_square, quarter):
    restricted = LebesgueCharge(2).restrict(quarter)
    assert restricted.evaluate(unit_square) == 0.25
    far = Figure.cube(DyadicCube(0, (3, 3)))
    assert restricted.evaluate(far) == 0.0


def test_dimension_mismatch_is_reported(unit_square):
    with pytest.raises(DimensionError):
        LebesgueCharge(3).evaluate(unit_square)


def test_descriptors():
    charge = charge_from_descriptor({'kind': 'combination', 'terms': [
        {'coef': 2, 'charge': {'kind': 'lebesgue'}},
        {'coef': -1, 'charge': {'kind': 'density', 'function': 'one'}}]}, 2)
    assert charge.evaluate(Figure.cube(DyadicCube(0, (0, 0)))) == pytest.approx(1.0)
    with pytest.raises(InputError) as err:
        charge_from_descriptor({'kind': 'nope'}, 2)
    assert 'charge.kind' in str(err.value)


def test_function_charge_on_the_line():
    charge = charge_from_descriptor({'kind': 'function1d', 'function': 'cantor'})
    assert charge.evaluate(BVSet1D(((0, 1),))) == pytest.approx(1.0)
    assert charge.evaluate(BVSet1D(((Fraction(1, 3), Fraction(2, 3)),))) == pytest.approx(0.0)


def test_density_survives_falsifier():
    verdict = charge_axiom_falsifier(DensityCharge(scalar_function('sin', 2), 5, 2), 0.05, 8, seed=3)
    assert verdict.status == PASSED
    assert verdict.max_tail_value < 0.05


def test_segment_measure_is_not_a_charge():
    segment = HausdorffSegmentCharge((Fraction(0), Fraction(1, 3)), 0, Fraction(1))
    verdict = charge_axiom_falsifier(segment, 0.05, 4, seed=0)
    assert verdict.status == FALSIFIED
    assert verdict.witness is not None


@pytest.mark.slow
def test_lebesgue_survives_many_sequences():
    verdict = charge_axiom_falsifier(LebesgueCharge(2), 0.01, 10_000, seed=11)
    assert verdict.status == PASSED


def test_is_charge_in(quarter):
    restricted = LebesgueCharge(2).restrict(quarter)
    assert is_charge_in(restricted, quarter)['status'] == PASSED
    assert is_charge_in(LebesgueCharge(2), quarter)['status'] == FALSIFIED


def test_derivative_of_flux_is_divergence():
    flux = FluxCharge(vector_field('linear', 2), 3)
    estimate = charge_derivative_estimate(flux, (Fraction(1, 3), Fraction(1, 5)), Fraction(1, 10),
                                          [Fraction(1, 4), Fraction(1, 16)])
    assert estimate.lower == pytest.approx(3.0)
    assert estimate.upper == pytest.approx(3.0)


def test_derivative_of_sin_density():
    charge = DensityCharge(scalar_function('sin', 2), 5, 2)
    x = (Fraction(1, 2), Fraction(1, 4))
    estimate = charge_derivative_estimate(charge, x, Fraction(1, 10), [Fraction(1, 64)])
    expected = math.sin(0.5) + math.sin(0.25)
    assert estimate.lower <= expected + 1e-9
    assert estimate.upper >= expected - 1e-9
    assert estimate.upper - estimate.lower < 0.05
