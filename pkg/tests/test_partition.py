import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from errors import BudgetError, InputError, PreconditionError
from gauges import Ball, load_balls
from geometry import PASSED, Constants, DyadicCube, Interval, regularity_squared
from partition import (check_box_hypotheses, find_doubling_radius, qualifies, reflection_decomposition,
                       subordinate_partition)


@pytest.fixture
def four_balls(load_data):
    return load_balls(load_data('balls/four-balls.json'))


def test_subordinate_partition_tiles_the_root(four_balls):
    partition = subordinate_partition(DyadicCube(0, (0, 0)), four_balls)
    diagnostics = partition.diagnostics()
    assert diagnostics['tiling']
    assert diagnostics['membership']
    assert diagnostics['side_bound']
    assert sum(c.cube.volume for c in partition.cells) == 1
    assert set(partition.systems()) <= {0, 1, 2, 3}


def test_every_kept_cube_qualifies_for_its_ball(four_balls):
    partition = subordinate_partition(DyadicCube(0, (0, 0)), four_balls)
    for cell in partition.cells:
        assert qualifies(cell.cube, four_balls[cell.ball])


def test_uncovered_cube_is_reported():
    balls = [Ball((0, 0), Fraction(1, 4))]
    with pytest.raises(PreconditionError) as err:
        subordinate_partition(DyadicCube(0, (0, 0)), balls)
    assert err.value.detail['uncovered']


def test_root_inside_doubled_ball_is_rejected():
    with pytest.raises(PreconditionError):
        subordinate_partition(DyadicCube(0, (0, 0)), [Ball(('1/2', '1/2'), 2)])


def test_subordinate_partition_budget(four_balls):
    with pytest.raises(BudgetError):
        subordinate_partition(DyadicCube(0, (0, 0)), four_balls, budget=3)


def test_reflection_keeps_signed_volume():
    box = Interval(((Fraction(1, 2), 1), (Fraction(1, 2), 1)))
    x = (Fraction(1, 4), Fraction(1, 4))
    decomposition = reflection_decomposition(box, x, 1)
    assert decomposition.reflected_axes == [0, 1]
    assert len(decomposition.pieces) == 4
    assert decomposition.signed_volume() == Fraction(1, 4)
    assert sorted(p.sign for p in decomposition.pieces) == [-1, -1, 1, 1]
    for piece in decomposition.pieces:
        assert piece.box.contains_point(x)
        assert piece.certified and not piece.on_bound
    assert decomposition.all_isoperimetric()
    assert all(p.to_dict()['isoperimetric'] == PASSED for p in decomposition.pieces)


def test_reflection_without_reflected_axes():
    box = Interval(((0, 1), (0, 1)))
    decomposition = reflection_decomposition(box, ('1/2', '1/2'), 1)
    assert decomposition.reflected_axes == []
    assert [p.sign for p in decomposition.pieces] == [1]
    assert decomposition.all_certified()


def test_reflection_hypotheses():
    box = Interval(((Fraction(1, 2), 1), (Fraction(1, 2), 1)))
    with pytest.raises(PreconditionError):
        reflection_decomposition(box, ('1/4', '1/4'), '1/2')
    with pytest.raises(PreconditionError):
        reflection_decomposition(box, ('1/4', '1/4'), 2)
    with pytest.raises(InputError):
        reflection_decomposition(box, ('1/4', '1/4'), 0)


def test_doubling_radius_for_volume_growth():
    phi = lambda r: r ** 2
    found = find_doubling_radius(phi, 2, 1.0, 0.01, 1.0, 128.0)
    assert found.found
    assert found.step == 0
    assert found.ratios[0] == pytest.approx(100.0)
    missed = find_doubling_radius(phi, 2, 1.0, 0.01, 1.0, 64.0, grid=5)
    assert not missed.found
    assert len(missed.ratios) == 6
    assert missed.min_ratio == pytest.approx(100.0)


def test_doubling_rejects_bad_parameters():
    with pytest.raises(InputError):
        find_doubling_radius(lambda r: r, 1, 1.0, 0.01, 2.0, 4.0)
    with pytest.raises(InputError):
        find_doubling_radius(lambda r: r, 1, -1.0, 0.01, 0.5, 4.0)


def test_four_balls_give_the_four_quarters(four_balls):
    partition = subordinate_partition(DyadicCube(0, (0, 0)), four_balls)
    assignment = {cell.cube: cell.ball for cell in partition.cells}
    assert assignment == {DyadicCube(1, (0, 0)): 0, DyadicCube(1, (1, 0)): 1,
                          DyadicCube(1, (0, 1)): 2, DyadicCube(1, (1, 1)): 3}


def test_two_balls_on_the_line_give_two_halves():
    balls = [Ball((Fraction(1, 4),), Fraction(3, 10)), Ball((Fraction(3, 4),), Fraction(3, 10))]
    partition = subordinate_partition(DyadicCube(0, (0,)), balls)
    assert [(cell.cube, cell.ball) for cell in sorted(partition.cells, key=lambda c: c.cube.index)] == [
        (DyadicCube(1, (0,)), 0), (DyadicCube(1, (1,)), 1)]


def random_cover(rng, root: DyadicCube, k: int):
    """One ball per cell of a k^n grid on the root, centers jittered, radii just past the
    farthest cell corner, so the balls cover the root and none doubles over it."""
    n = root.dim
    side = root.side
    lows = [root.side * i for i in root.index]
    cell = side / k
    balls = []
    for offsets in itertools.product(range(k), repeat=n):
        center, far2 = [], Fraction(0)
        for low, i in zip(lows, offsets):
            lo, hi = low + i * cell, low + (i + 1) * cell
            c = (lo + hi) / 2 + cell * Fraction(int(rng.integers(-4, 5)), 64)
            center.append(c)
            far2 += max(c - lo, hi - c) ** 2
        radius = Fraction(math.sqrt(far2) * rng.uniform(1.05, 1.2)).limit_denominator(10 ** 6)
        while radius * radius <= far2:
            radius += Fraction(1, 10 ** 6)
        balls.append(Ball(tuple(center), radius))
    order = rng.permutation(len(balls))
    return [balls[i] for i in order]


@pytest.mark.slow
def test_random_covers_meet_every_bound():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        level = int(rng.integers(-1, 3))
        root = DyadicCube(level, tuple(int(v) for v in rng.integers(-2, 3, 2)))
        balls = random_cover(rng, root, int(rng.integers(2, 5)))
        diagnostics = subordinate_partition(root, balls).diagnostics()
        for key in ('tiling', 'membership', 'side_bound', 'count_bound', 'perimeter_bound'):
            assert diagnostics[key], (key, root, balls)


def test_reflection_on_the_line():
    decomposition = reflection_decomposition(Interval(((2, 3),)), (0,), 2)
    assert [(p.box.bounds, p.sign) for p in decomposition.pieces] == [
        (((-3, 3),), 1), (((-3, 2),), -1)]
    for piece in decomposition.pieces:
        assert piece.regularity_squared == Fraction(1, 4)
        assert piece.certified and piece.on_bound
        assert piece.isoperimetric == PASSED
    assert decomposition.all_certified()
    assert decomposition.all_isoperimetric()


def random_reflection_input(rng, n: int, around_tag: bool = False):
    """(Q, x) with x = 0 and r = 1: Q inside B(0, 2), every side >= 1 / (2 sqrt n),
    and 0 in Q when ``around_tag``."""
    while True:
        if around_tag:
            bounds = [(Fraction(-int(a), 32), Fraction(int(b), 32)) for a, b in rng.integers(0, 65, (n, 2))]
            if any(a == b for a, b in bounds):
                continue
        else:
            bounds = [(Fraction(int(a), 32), Fraction(int(a + s), 32))
                      for a, s in zip(rng.integers(-64, 64, n), rng.integers(1, 65, n))]
        box = Interval(tuple(bounds))
        x = (Fraction(0),) * n
        try:
            check_box_hypotheses(box, x, Fraction(1))
        except PreconditionError:
            continue
        return box, x


@pytest.mark.slow
@pytest.mark.parametrize('n', [1, 2, 3])
def test_boxes_around_a_tag_are_rho_regular(n):
    rho2 = Constants(n).rho_squared
    rng = np.random.default_rng(400 + n)
    for _ in range(1000):
        box, x = random_reflection_input(rng, n, around_tag=True)
        r2 = regularity_squared(box, x)
        assert r2 >= rho2 if n == 1 else r2 > rho2, (box, x)


def signed_count(pieces, point) -> int:
    return sum(p.sign for p in pieces if all(a <= v < b for v, (a, b) in zip(point, p.box.bounds)))


@pytest.mark.slow
@pytest.mark.parametrize('n', [1, 2, 3])
def test_reflection_telescopes_to_the_box(n):
    rng = np.random.default_rng(500 + n)
    for _ in range(1000):
        box, x = random_reflection_input(rng, n)
        decomposition = reflection_decomposition(box, x, 1)
        assert len(decomposition.pieces) == 2 ** len(decomposition.reflected_axes)
        assert decomposition.signed_volume() == box.volume
        assert decomposition.all_certified()
        for piece in decomposition.pieces:
            assert piece.box.contains_point(x)
            assert piece.box.farthest_distance_squared(x) < 4
        for _ in range(4):
            point = tuple(Fraction(int(v), 64) for v in rng.integers(-192, 193, n))
            inside = all(a <= v < b for v, (a, b) in zip(point, box.bounds))
            assert signed_count(decomposition.pieces, point) == int(inside)
