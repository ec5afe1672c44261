import math

import numpy as np
import pytest
from scipy.integrate import quad

from conftest import random_figure
from charges import Polynomial, polynomial_field, scalar_function, vector_field
from errors import DimensionError, InputError, PreconditionError
from gauges import constant_gauge, hk_oscillatory_gauge
from harness import (CONSISTENT, REFUTED, IntegralClaim, definite_line_value, gauss_green_verify, hk_check,
                     hk_integrate_adaptive, mc_alpha_check, mc_monotone_comparison)
from harness.henstock import adaptive_gauss


def claim_from(load_data, name, **overrides):
    data = load_data(f"claims/{name}.json")
    data.update(overrides)
    return IntegralClaim.from_dict(data)


def test_hk_integral_of_one():
    result = hk_integrate_adaptive(scalar_function('one', 1), 0, 1, tolerance=1e-8)
    assert result.value == pytest.approx(1.0, abs=1e-10)
    assert result.pieces == [(0.0, 1.0, 'regular')]


def test_hk_integral_of_oscillatory_derivative():
    result = hk_integrate_adaptive(scalar_function('oscillatory-derivative', 1), 0, 1)
    assert abs(result.value - math.sin(1.0)) <= 1e-6
    assert result.trace


def test_hk_integral_of_inverse_square_root():
    result = hk_integrate_adaptive(scalar_function('inverse-sqrt-half', 1), 0, 1)
    assert result.value == pytest.approx(1.0, abs=1e-5)


def test_hk_integral_with_interior_singular_point():
    result = hk_integrate_adaptive(scalar_function('one', 1), -1, 1, singular_points=[0.0])
    assert [kind for _, _, kind in result.pieces] == ['right', 'left']
    assert result.value == pytest.approx(2.0, abs=1e-5)


def test_hk_integral_rejects_empty_interval():
    with pytest.raises(InputError):
        hk_integrate_adaptive(scalar_function('one', 1), 1, 1)


def test_hk_check_with_matched_gauge(load_data):
    claim = claim_from(load_data, 'hk-oscillatory', epsilons=[0.1])
    report = hk_check(claim, hk_oscillatory_gauge, trials=2, seed=0, windows=4)
    assert report.verdict == CONSISTENT
    assert report.row(0.1).max_sum < 0.1


def test_cantor_staircase_is_refuted(load_data):
    claim = claim_from(load_data, 'cantor')
    report = hk_check(claim, constant_gauge('0.05', 1), trials=2, seed=0, windows=4)
    assert report.verdict == REFUTED
    assert definite_line_value(claim) == pytest.approx(1.0)


def test_hk_check_needs_a_line_claim(load_data):
    with pytest.raises(InputError):
        hk_check(claim_from(load_data, 'lebesgue'), constant_gauge(1, 2))


def test_mc_alpha_oscillatory_is_consistent(load_data):
    claim = claim_from(load_data, 'mc-oscillatory')
    report = mc_alpha_check(claim, points=[0.0, 0.5])
    assert report.verdict == CONSISTENT
    assert [row.point for row in report.rows] == [0.0, 0.5]


def test_mc_alpha_cantor_is_refuted():
    claim = IntegralClaim.from_dict({'notion': 'mc-alpha', 'integrand': 'zero', 'F': 'cantor',
                                     'G': 'identity', 'control': 'identity'})
    report = mc_alpha_check(claim, points=[0.0])
    assert report.verdict == REFUTED


def test_mc_alpha_resolves_points_near_the_oscillation(load_data):
    report = mc_alpha_check(claim_from(load_data, 'mc-oscillatory'), points=[0.03, 0.05])
    assert report.verdict == CONSISTENT
    for row in report.rows:
        assert row.tail_max < 1e-3
        assert row.max_power > 30
        assert row.precision.startswith('mpmath')


@pytest.mark.parametrize('seed', range(40))
def test_mc_alpha_oscillatory_at_sampled_points(load_data, seed):
    report = mc_alpha_check(claim_from(load_data, 'mc-oscillatory'), seed=seed)
    assert report.verdict == CONSISTENT, [row.summary() for row in report.rows if row.verdict == REFUTED]


def test_mc_alpha_wrong_derivative_is_refuted():
    claim = IntegralClaim.from_dict({'notion': 'mc-alpha', 'integrand': 'zero', 'F': 'identity',
                                     'G': 'identity', 'control': 'identity'})
    report = mc_alpha_check(claim, points=[0.25], max_power=40)
    assert report.verdict == REFUTED
    assert report.rows[0].tail_state == 'stalled'
    assert report.rows[0].tail_max == pytest.approx(1.0)


def test_mc_control_must_increase():
    claim = IntegralClaim.from_dict({'notion': 'mc-alpha', 'integrand': 'zero', 'F': 'identity',
                                     'G': 'identity', 'control': 'zero'})
    with pytest.raises(PreconditionError):
        mc_alpha_check(claim, points=[0.5])


def test_mc_comparison_for_increasing_controls():
    exact = mc_monotone_comparison(scalar_function('identity', 1), '3/10', 1, 2)
    assert exact.holds and exact.exact
    approx = mc_monotone_comparison(scalar_function('arctan', 1), 0, 1, 2)
    assert approx.holds and not approx.exact
    with pytest.raises(InputError):
        mc_monotone_comparison(scalar_function('identity', 1), 0, 2, 1)


def test_gauss_green_on_the_l_shape(l_shape):
    result = gauss_green_verify(vector_field('quadratic', 2), l_shape)
    assert result.abs_error <= 1e-8
    assert result.exact_match
    assert result.exact_flux == result.exact_volume_integral


def test_gauss_green_with_numeric_divergence(two_squares):
    result = gauss_green_verify(vector_field('rotational', 2), two_squares, 'numeric')
    assert result.abs_error <= 1e-6
    assert result.exact_match is None


def test_gauss_green_dimension_check(unit_square):
    with pytest.raises(DimensionError):
        gauss_green_verify(vector_field('linear', 3), unit_square)


def test_hk_check_at_small_epsilons(load_data):
    claim = claim_from(load_data, 'hk-oscillatory', epsilons=[0.01, 0.001])
    report = hk_check(claim, hk_oscillatory_gauge, trials=4, seed=0)
    assert report.verdict == CONSISTENT
    for eps in (0.01, 0.001):
        assert report.row(eps).max_sum < eps


def test_adaptive_gauss_agrees_with_quad():
    fn = scalar_function('oscillatory-derivative', 1)
    result = adaptive_gauss(fn.line, 0.5, 1.0, 1e-12, 10 ** 5)
    reference, _ = quad(lambda t: fn.at(t), 0.5, 1.0, epsabs=1e-13, epsrel=1e-13, limit=200)
    assert result.value == pytest.approx(reference, abs=1e-10)
    assert result.value == pytest.approx(math.sin(1.0) - math.sin(4.0) / 4, abs=1e-10)


def random_polynomial_field(rng, n: int):
    components = []
    for _ in range(n):
        terms = []
        for _ in range(int(rng.integers(1, 5))):
            powers = [0] * n
            for _ in range(int(rng.integers(0, 4))):
                powers[int(rng.integers(n))] += 1
            terms.append((int(rng.integers(-3, 4)), tuple(powers)))
        components.append(Polynomial(n, tuple(terms)))
    return polynomial_field(components)


@pytest.mark.slow
def test_gauss_green_over_random_figures():
    rng = np.random.default_rng(77)
    for i in range(50):
        n = 2 + i % 2
        A = random_figure(rng, n, level=5 - n, max_cells=64)
        for _ in range(5):
            u = random_polynomial_field(rng, n)
            result = gauss_green_verify(u, A, 'symbolic', 7)
            assert result.abs_error <= 1e-8, (A, u.describe())
            assert result.exact_match
