import logging
import pickle
from functools import partial
from multiprocessing import get_context
from typing import Callable, List, TypeVar, Union

import numpy as np
import psutil

logger = logging.getLogger(__name__)

T = TypeVar('T')


def resolve_jobs(jobs: Union[int, str, None]) -> int:
    """'auto' means one worker per physical core."""
    if jobs in (None, '', 0):
        return 1
    if isinstance(jobs, str):
        if jobs.lower() == 'auto':
            return max(1, psutil.cpu_count(logical=False) or psutil.cpu_count() or 1)
        jobs = int(jobs)
    return max(1, int(jobs))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream for (seed, trial); the same pair always gives the same stream."""
    return np.random.default_rng(np.random.SeedSequence([int(seed) % 2 ** 64, int(trial)]))


def _run_one(task: Callable[[int, np.random.Generator], T], seed: int, trial: int) -> T:
    return task(trial, trial_rng(seed, trial))


def can_ship(task: Callable) -> bool:
    """Whether ``task`` survives the trip to a spawned worker."""
    try:
        pickle.dumps(task)
    except (pickle.PicklingError, TypeError, AttributeError) as err:
        logger.debug("task cannot be pickled: %s", err)
        return False
    return True


def run_trials(task: Callable[[int, np.random.Generator], T], trials: int, seed: int,
               jobs: int = 1) -> List[T]:
    """Run ``task(trial, rng)`` for every trial; results come back in trial order.

    With ``jobs > 1`` the trials go to a spawn-context process pool, so ``task``
    must be picklable (a module-level function or a partial over one).
    """
    if trials < 1:
        return []
    jobs = resolve_jobs(jobs)
    run = partial(_run_one, task, seed)
    if jobs == 1 or trials == 1:
        return [run(t) for t in range(trials)]
    if not can_ship(task):
        logger.warning("trial task cannot be sent to worker processes; running %d trials in-process",
                       trials)
        return [run(t) for t in range(trials)]
    workers = min(jobs, trials)
    logger.debug("running %d trials on %d worker processes", trials, workers)
    with get_context('spawn').Pool(workers) as pool:
        return pool.map(run, range(trials))


def available_memory() -> int:
    return int(psutil.virtual_memory().available)
