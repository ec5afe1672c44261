import itertools
from fractions import Fraction

import pytest

from charges import DensityCharge, LebesgueCharge, ZeroCharge, scalar_function
from errors import InputError
from geometry import Interval, dyadic_side, regularity_squared
from harness import P_BAR, Q_BAR, SeminormQuery, base_level, seminorm_lower_bound


def brute_force_volume(center, radius, eps, depth):
    """Largest admissible grid box volume, searched exactly."""
    m0 = base_level(radius)
    best = Fraction(0)
    for m in range(m0, m0 + depth + 1):
        side = dyadic_side(m)
        per_axis = []
        for v in center:
            lo = (v - radius) // side
            hi = -((-(v + radius)) // side)
            per_axis.append([(i0 * side, i1 * side) for i0 in range(int(lo), int(hi))
                             for i1 in range(i0 + 1, int(hi) + 1)])
        for bounds in itertools.product(*per_axis):
            box = Interval(bounds)
            if not box.farthest_distance_squared(center) < radius * radius:
                continue
            if not regularity_squared(box, center) > eps * eps:
                continue
            best = max(best, box.volume)
    return best


def test_base_level():
    assert base_level(Fraction(1)) == 0
    assert base_level(Fraction(1, 2)) == 1
    assert base_level(Fraction(3, 4)) == 1
    assert base_level(Fraction(2)) == -1


@pytest.mark.parametrize('center,radius', [
    ((Fraction(1, 2), Fraction(1, 2)), Fraction(1, 2)),
    ((Fraction(1, 3), Fraction(1, 5)), Fraction(1, 4)),
])
def test_lebesgue_matches_brute_force(center, radius):
    eps = Fraction(1, 10)
    result = seminorm_lower_bound(SeminormQuery(LebesgueCharge(2), center, radius, eps, P_BAR, 1))
    assert result.value == pytest.approx(float(brute_force_volume(center, radius, eps, 1)))
    assert result.witness is not None
    assert result.witness.farthest_distance_squared(center) < radius * radius


def test_q_bar_never_exceeds_p_bar():
    charge = DensityCharge(scalar_function('sin', 2), 5, 2) - 0.5 * LebesgueCharge(2)
    center = (Fraction(1, 3), Fraction(2, 3))
    p = seminorm_lower_bound(SeminormQuery(charge, center, Fraction(1, 5), Fraction(1, 10), P_BAR, 2))
    q = seminorm_lower_bound(SeminormQuery(charge, center, Fraction(1, 5), Fraction(1, 10), Q_BAR, 2))
    assert q.value <= p.value
    if q.witness is not None:
        assert q.witness.contains_point(center)


def test_zero_charge_has_zero_seminorm():
    result = seminorm_lower_bound(SeminormQuery(ZeroCharge(2), (0, 0), Fraction(1, 4), Fraction(1, 10)))
    assert result.value == 0.0


def test_witness_figure_has_the_witness_volume():
    query = SeminormQuery(LebesgueCharge(2), ('1/2', '1/2'), '1/2', '1/10', P_BAR, 1)
    result = seminorm_lower_bound(query)
    assert result.witness_figure().volume == result.witness.volume


def test_query_validation():
    with pytest.raises(InputError):
        SeminormQuery(LebesgueCharge(2), (0, 0), 0, Fraction(1, 10))
    with pytest.raises(InputError):
        SeminormQuery(LebesgueCharge(2), (0, 0), 1, Fraction(1, 10), 'z')
    with pytest.raises(InputError):
        seminorm_lower_bound(SeminormQuery(LebesgueCharge(3), (0, 0), 1, Fraction(1, 10)))
