import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_figure
from errors import BudgetError, DimensionError, InputError
from geometry import (FALSIFIED, PASSED, BVSet1D, Constants, DyadicCube, Figure, Interval, diameter_with_tag,
                      dyadic_approximation, is_eps_isoperimetric_sampled, is_eps_regular, isoperimetric_deficiency,
                      perimeter, regularity, regularity_squared, relative_perimeter, relative_perimeter_in_open,
                      shape_from_dict, symmetric_difference_measure, volume)

cells = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=8)


def figure_of(level, indices):
    return Figure.from_cells(level, indices, 2)


def test_unit_square_measures(unit_square):
    assert volume(unit_square) == 1
    assert perimeter(unit_square) == 4
    assert diameter_with_tag(unit_square).squared == 2
    assert regularity_squared(unit_square) == Fraction(1, 32)


def test_two_squares_have_perimeter_six(two_squares):
    assert perimeter(two_squares) == 6
    assert volume(two_squares) == 2


def test_l_shape_perimeter(l_shape):
    assert perimeter(l_shape) == 8
    assert volume(l_shape) == 3


def test_from_cubes_drops_contained_cubes():
    fig = Figure.from_cubes(2, [DyadicCube(0, (0, 0)), DyadicCube(2, (1, 1))])
    assert len(fig) == 1
    assert fig.volume == 1


def test_merge_siblings_keeps_the_set(unit_square):
    split = Figure.from_cubes(2, list(DyadicCube(0, (0, 0)).children()))
    assert len(split) == 4
    merged = split.merge_siblings()
    assert merged == unit_square
    assert perimeter(merged) == perimeter(split)


def test_set_algebra(unit_square, quarter):
    assert unit_square.intersection(quarter) == quarter
    rest = unit_square.difference(quarter)
    assert rest.volume == Fraction(3, 4)
    assert rest.union(quarter).merge_siblings() == unit_square


@given(cells, cells)
@settings(max_examples=60, deadline=None)
def test_inclusion_exclusion(a, b):
    A, B = figure_of(2, a), figure_of(2, b)
    assert A.union(B).volume + A.intersection(B).volume == A.volume + B.volume
    assert A.difference(B).volume == A.volume - A.intersection(B).volume


@given(cells)
@settings(max_examples=60, deadline=None)
def test_perimeter_counts_exposed_faces(a):
    fig = figure_of(2, a)
    cells_set = set(a)
    exposed = sum(1 for (i, j) in cells_set for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1))
                  if (i + di, j + dj) not in cells_set)
    assert perimeter(fig) == Fraction(exposed, 4)


def test_relative_perimeter_modes(quarter, unit_square):
    assert relative_perimeter(quarter, unit_square) == 1
    assert relative_perimeter(quarter, unit_square, closure=True) == 2
    assert relative_perimeter_in_open(quarter, unit_square) == 1


def test_contains_point_is_closed(unit_square):
    assert unit_square.contains_point((1, 1))
    assert not unit_square.contains_point((1, 1), closed=False)
    assert not unit_square.contains_point((Fraction(3, 2), 0))
    with pytest.raises(DimensionError):
        unit_square.contains_point((0,))


def test_regularity_with_far_tag(unit_square):
    near = regularity_squared(unit_square, (Fraction(1, 2), Fraction(1, 2)))
    far = regularity_squared(unit_square, (3, 3))
    assert near == Fraction(1, 32)
    assert far == Fraction(1, 16 * 18)
    assert is_eps_regular(unit_square, Fraction(1, 6))
    assert not is_eps_regular(unit_square, Fraction(1, 5))


def test_interval_measures():
    box = Interval(((0, 2), (0, 1)))
    assert box.volume == 2
    assert box.perimeter == 6
    assert box.diameter_squared == 5
    assert box.farthest_distance_squared((0, 0)) == 5
    assert box.nearest_distance_squared((3, 0)) == 1


def test_bvset_algebra():
    a = BVSet1D(((0, 1), (2, 3)))
    b = BVSet1D(((Fraction(1, 2), Fraction(5, 2)),))
    assert a.volume == 2
    assert a.perimeter == 4
    assert a.union(b).volume == 3
    assert a.intersection(b).volume == 1
    assert a.difference(b).volume == 1
    assert BVSet1D(((0, 1), (1, 2))).intervals == ((0, 2),)


def test_shape_from_dict_dispatch(unit_square):
    assert shape_from_dict(unit_square.to_dict()) == unit_square
    assert isinstance(shape_from_dict({'intervals': [[0, 1]]}), BVSet1D)
    assert isinstance(shape_from_dict({'bounds': [[0, 1]]}), Interval)
    with pytest.raises(InputError):
        shape_from_dict({'points': []})


def test_figure_from_dict_names_field():
    with pytest.raises(InputError) as err:
        Figure.from_dict({'cubes': []})
    assert 'dim' in str(err.value)


def test_constants_rho_in_the_plane():
    c = Constants(2)
    assert c.rho == pytest.approx(1 / (2 ** 1.5 * 16))
    assert c.rho == pytest.approx(0.02210, abs=1e-5)
    assert c.rho_squared == Fraction(1, 2 ** 3 * 4 ** 4)
    assert c.alpha_n == pytest.approx(3.141592653589793)


def test_epsilon_prime_range():
    c = Constants(2)
    eps = c.epsilon_prime_limit / 2
    assert 0 < c.epsilon_prime(eps) < eps
    with pytest.raises(InputError):
        c.epsilon_prime(c.epsilon_prime_limit)


def test_constants_table_has_eps_entries():
    table = Constants(2).table(0.01)
    for key in ('rho', 'c1', 'c_c', 'c2', 'gamma', 'beta', 'epsilon_prime'):
        assert key in table


def test_disk_approximation_inside_ball():
    fig = dyadic_approximation((0, 0), 1, 3)
    assert 0 < fig.volume < Fraction(314159, 100000)
    for cube in fig.cubes:
        far = sum(max(a * a, b * b) for a, b in cube.bounds())
        assert far <= 1


def test_disk_approximation_budget():
    with pytest.raises(BudgetError):
        dyadic_approximation((0, 0), 1, 12, budget=1000)


def test_isoperimetric_sampled(unit_square):
    assert is_eps_isoperimetric_sampled(unit_square, Fraction(1, 100), depth=1).status == PASSED
    verdict = is_eps_isoperimetric_sampled(unit_square, 10, depth=1)
    assert verdict.status == FALSIFIED
    assert verdict.witness is not None


def test_symmetric_difference(unit_square, quarter, l_shape):
    assert symmetric_difference_measure(unit_square, quarter) == Fraction(3, 4)
    assert symmetric_difference_measure(l_shape, l_shape) == 0
    with pytest.raises(DimensionError):
        symmetric_difference_measure(unit_square, Figure.empty(3))


def test_isoperimetric_deficiency_of_a_quarter(unit_square, quarter):
    check = isoperimetric_deficiency(unit_square, quarter, Fraction(1, 4))
    assert check.ratio == Fraction(1, 2)
    assert check.passes
    assert not isoperimetric_deficiency(unit_square, quarter, 1).passes
    with pytest.raises(InputError):
        isoperimetric_deficiency(unit_square, quarter, 0)


@pytest.mark.slow
@pytest.mark.parametrize('n', [1, 2, 3])
def test_regularity_never_exceeds_one_over_2n(n):
    rng = np.random.default_rng(100 + n)
    for _ in range(1000):
        fig = random_figure(rng, n)
        assert regularity_squared(fig) <= Fraction(1, 4 * n * n), fig


@pytest.mark.slow
@pytest.mark.parametrize('n', [1, 2, 3])
def test_regular_intervals_have_bounded_aspect(n):
    rng = np.random.default_rng(200 + n)
    for _ in range(1000):
        sides = [Fraction(int(k), 64) for k in rng.integers(1, 257, n)]
        box = Interval(tuple((0, s) for s in sides))
        r2 = regularity_squared(box)
        eps = Fraction(math.sqrt(r2) * rng.uniform(0.05, 0.999)).limit_denominator(10 ** 6)
        if not eps * eps < r2:
            continue
        assert eps <= Fraction(1, 2 * n)
        assert eps * max(sides) <= min(sides), (sides, eps)


@pytest.mark.slow
@pytest.mark.parametrize('n', [1, 2, 3])
def test_regular_figures_have_bounded_diameter(n):
    constants = Constants(n)
    rng = np.random.default_rng(300 + n)
    for _ in range(1000):
        fig = random_figure(rng, n)
        # r(A) is the supremum of admissible eps, so it gives the sharpest bound
        r = regularity(fig)
        d = math.sqrt(diameter_with_tag(fig).squared)
        assert (d * r) ** n <= constants.c_krit * float(fig.volume) * (1 + 1e-9), fig
