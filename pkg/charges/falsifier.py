"""Sampled refutation of the charge axioms.

A charge must vanish along sequences of figures with bounded union, bounded
perimeter and measure tending to zero.  Finitely many evaluations can only
refute that, so the positive verdict is ``passed-sampled``.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import List, Optional, Sequence

import numpy as np

from errors import InputError
from geometry import Coverage, DyadicCube, Figure, dyadic_side
from geometry.isoperimetry import FALSIFIED, PASSED
from utils.parallel import run_trials

from .charge import Charge, HausdorffSegmentCharge, iter_charges

logger = logging.getLogger(__name__)

DEFAULT_LEVELS = tuple(range(2, 9))
DEFAULT_TAIL = 3


@dataclass
class FalsifierSequence:
    """One sequence A_k of single-level cell sets with its evaluations."""

    trial: int
    family: str
    anchor: dict
    levels: List[int] = field(default_factory=list)
    volumes: List[Fraction] = field(default_factory=list)
    perimeters: List[Fraction] = field(default_factory=list)
    values: List[float] = field(default_factory=list)

    def tail_min(self, tail: int) -> float:
        tail_values = self.values[-tail:]
        return min(abs(v) for v in tail_values) if tail_values else 0.0

    def to_dict(self) -> dict:
        return {'trial': self.trial, 'family': self.family, 'anchor': self.anchor,
                'levels': self.levels, 'volumes': self.volumes,
                'perimeters': self.perimeters, 'values': self.values}


@dataclass
class FalsifierVerdict:
    status: str
    epsilon: float
    trials: int
    tail: int
    max_tail_value: float
    witness: Optional[FalsifierSequence] = None

    @property
    def falsified(self) -> bool:
        return self.status == FALSIFIED

    def to_dict(self) -> dict:
        return {'status': self.status, 'epsilon': self.epsilon, 'trials': self.trials,
                'tail': self.tail, 'max_tail_value': self.max_tail_value,
                'witness': self.witness,
                'note': 'charge axioms are refutable only; passed-sampled is not a proof'}


def _row_perimeter(count: int, level: int, dim: int) -> Fraction:
    # a straight row of `count` cells: two end caps plus the long sides
    face = dyadic_side(level) ** (dim - 1)
    return face * (2 + count * 2 * (dim - 1))


def _cells_along(axis: int, fixed: Sequence[int], start: int, stop: int) -> np.ndarray:
    count = stop - start
    rows = np.repeat(np.asarray(fixed, dtype=np.int64)[None, :], count, axis=0)
    rows[:, axis] = np.arange(start, stop, dtype=np.int64)
    return rows


def _evaluate(charge: Charge, seq: FalsifierSequence, level: int, cells: np.ndarray, dim: int) -> None:
    count = len(cells)
    seq.levels.append(level)
    seq.volumes.append(count * dyadic_side(level) ** dim)
    seq.perimeters.append(_row_perimeter(count, level, dim))
    seq.values.append(float(charge.evaluate_cells(level, cells).sum()))


def _window_point(window: DyadicCube, rng: np.random.Generator) -> np.ndarray:
    lo = np.array([float(v) for v in window.lower])
    return lo + rng.random(window.dim) * float(window.side)


def shrinking_cubes(charge: Charge, window: DyadicCube, levels: Sequence[int], trial: int,
                    rng: np.random.Generator) -> FalsifierSequence:
    x = _window_point(window, rng)
    seq = FalsifierSequence(trial, 'shrinking-cubes', {'point': x.tolist()})
    for k in levels:
        level = window.level + k
        cell = np.floor(x * 2.0 ** level).astype(np.int64)[None, :]
        _evaluate(charge, seq, level, cell, window.dim)
    return seq


def random_tubes(charge: Charge, window: DyadicCube, levels: Sequence[int], trial: int,
                 rng: np.random.Generator) -> FalsifierSequence:
    axis = int(rng.integers(window.dim))
    y = _window_point(window, rng)
    seq = FalsifierSequence(trial, 'axis-tubes', {'axis': axis, 'through': y.tolist()})
    for k in levels:
        level = window.level + k
        fixed = np.floor(y * 2.0 ** level).astype(np.int64)
        start = window.index[axis] << k
        _evaluate(charge, seq, level, _cells_along(axis, fixed, start, start + (1 << k)),
                  window.dim)
    return seq


def segment_tubes(charge: Charge, segment: HausdorffSegmentCharge, window: DyadicCube,
                  levels: Sequence[int], trial: int) -> FalsifierSequence:
    """Rows of cells whose closure contains the segment."""
    seq = FalsifierSequence(trial, 'segment-tubes', segment.describe())
    for k in levels:
        level = window.level + k
        scale = 2 ** level
        fixed = [math.floor(v * scale) for v in segment.start]
        start = math.floor(segment.start[segment.axis] * scale)
        stop = math.ceil(segment.end * scale)
        _evaluate(charge, seq, level, _cells_along(segment.axis, fixed, start, stop), segment.dim)
    return seq


def _falsifier_task(charge: Charge, segments: Sequence[HausdorffSegmentCharge], window: DyadicCube,
                    levels: Sequence[int], n: int, trial: int, rng: np.random.Generator) -> FalsifierSequence:
    if trial < len(segments):
        return segment_tubes(charge, segments[trial], window, levels, trial)
    if n >= 2 and rng.random() < 0.5:
        return random_tubes(charge, window, levels, trial, rng)
    return shrinking_cubes(charge, window, levels, trial, rng)


def charge_axiom_falsifier(charge: Charge, epsilon: float, trials: int, seed: int = 0,
                           jobs: int = 1, dim: Optional[int] = None,
                           window: Optional[DyadicCube] = None,
                           levels: Sequence[int] = DEFAULT_LEVELS,
                           tail: int = DEFAULT_TAIL) -> FalsifierVerdict:
    """Search for A_k -> 0 (bounded union and perimeter) with |C(A_k)| >= epsilon on the tail.

    Families: cubes shrinking to a random point, axis tubes of one cell row
    through a random point, and rows around every segment the charge carries.
    """
    if trials < 1:
        raise InputError("must be >= 1", 'trials')
    if epsilon <= 0:
        raise InputError("must be positive", 'epsilon')
    n = charge.dim if charge.dim is not None else dim
    if n is None:
        raise InputError("dimension required for dimension-free charges", 'dim')
    if window is None:
        window = DyadicCube(0, (0,) * n)
    levels = sorted(set(int(k) for k in levels))
    if not levels or levels[0] < 0:
        raise InputError("must be a nonempty list of nonnegative offsets", 'levels')
    segments = [c for c in iter_charges(charge) if isinstance(c, HausdorffSegmentCharge)]

    task = partial(_falsifier_task, charge, segments, window, levels, n)
    sequences = run_trials(task, trials, seed, jobs)
    best = max(sequences, key=lambda s: (s.tail_min(tail), -s.trial))
    max_tail = best.tail_min(tail)
    status = FALSIFIED if max_tail >= epsilon else PASSED
    logger.info("charge falsifier: %d sequences, max tail |value| %.3g (%s)",
                len(sequences), max_tail, status)
    return FalsifierVerdict(status, float(epsilon), trials, tail, max_tail,
                            best if status == FALSIFIED else None)


def is_charge_in(charge: Charge, region: Figure, trials: int = 64, seed: int = 0,
                 tolerance: float = 1e-10, levels: Sequence[int] = (0, 1, 2, 3)) -> dict:
    """Sampled check that C = C restricted to A: C must vanish on cells missing A."""
    if region.is_empty():
        raise InputError("region must be nonempty", 'region')
    box = region.bounding_box()
    lo = np.array([float(a) for a, _ in box])
    hi = np.array([float(b) for _, b in box])
    width = hi - lo
    checked = 0
    for trial in range(trials):
        rng = np.random.default_rng(np.random.SeedSequence([seed, trial]))
        point = lo - width + rng.random(region.dim) * 3 * width
        level = region.coarsest_level + int(rng.choice(list(levels)))
        cell = DyadicCube(level, tuple(int(v) for v in np.floor(point * 2.0 ** level)))
        if region.classify(cell) is not Coverage.EMPTY:
            continue
        checked += 1
        value = charge.evaluate(Figure.cube(cell))
        if abs(value) > tolerance:
            return {'status': FALSIFIED, 'checked': checked,
                    'witness': {'cube': cell.to_dict(), 'value': value}}
    return {'status': PASSED, 'checked': checked, 'witness': None}
