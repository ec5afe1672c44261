import pickle

import numpy as np
import pytest

from charges import scalar_function, vector_field
from errors import BudgetError, DimensionError
from gauges import boundary_distance_gauge, constant_gauge, hk_oscillatory_gauge
from harness import IntegralClaim, hk_check
from utils.parallel import can_ship, resolve_jobs, run_trials


def draw(trial: int, rng: np.random.Generator):
    return trial, float(rng.random())


def test_process_pool_matches_in_process_run():
    assert run_trials(draw, 5, seed=9, jobs=2) == run_trials(draw, 5, seed=9, jobs=1)


def test_unpicklable_task_runs_in_process():
    task = lambda trial, rng: (trial, float(rng.random()))  # noqa: E731
    assert not can_ship(task)
    assert run_trials(task, 3, seed=2, jobs=2) == run_trials(draw, 3, seed=2)


def test_resolve_jobs():
    assert resolve_jobs(None) == 1
    assert resolve_jobs('3') == 3
    assert resolve_jobs('auto') >= 1


@pytest.mark.parametrize('name', ['arctan', 'cantor', 'oscillatory-derivative', 'identity'])
def test_catalog_functions_survive_pickling(name):
    fn = scalar_function(name, 1)
    copy = pickle.loads(pickle.dumps(fn))
    xs = np.linspace(0.05, 0.95, 7)
    assert np.array_equal(copy.line(xs), fn.line(xs))
    assert copy.singular_points == fn.singular_points


def test_derived_functions_survive_pickling():
    fn = scalar_function({'kind': 'polynomial', 'terms': [{'coef': 2, 'powers': [1, 1]}]}, 2).scaled(3)
    copy = pickle.loads(pickle.dumps(fn))
    assert copy.at([0.5, 0.25]) == pytest.approx(0.75)
    assert copy.polynomial == fn.polynomial


def test_fields_and_gauges_survive_pickling(quarter):
    field = pickle.loads(pickle.dumps(vector_field('quadratic', 2)))
    assert field.divergence_polynomial() == vector_field('quadratic', 2).divergence_polynomial()
    for gauge in (constant_gauge('1/4', 2), hk_oscillatory_gauge(0.01), boundary_distance_gauge(quarter)):
        copy = pickle.loads(pickle.dumps(gauge))
        points = np.array([[0.1, 0.2], [0.3, 0.4]])[:, :gauge.dim or 2]
        assert np.array_equal(copy.radii(points), gauge.radii(points))
        assert copy.describe() == gauge.describe()


def test_errors_survive_pickling():
    error = pickle.loads(pickle.dumps(DimensionError(2, 3, 'set')))
    assert str(error) == "set: dimension mismatch (expected 2, got 3)"
    assert error.detail == {'expected': 2, 'got': 3}
    assert error.field == 'set'
    budget = pickle.loads(pickle.dumps(BudgetError('cell', 4, 5)))
    assert budget.exit_code == 4 and budget.limit == 4


def test_hk_check_is_reproducible_across_workers(load_data):
    data = load_data('claims/hk-oscillatory.json')
    data['epsilons'] = [0.1]
    claim = IntegralClaim.from_dict(data)
    first = hk_check(claim, hk_oscillatory_gauge, trials=2, seed=3, windows=4)
    second = hk_check(claim, hk_oscillatory_gauge, trials=2, seed=3, windows=4, jobs=2)
    assert first.row(0.1).sums == second.row(0.1).sums
