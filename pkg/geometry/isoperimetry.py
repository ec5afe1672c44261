"""Isoperimetric ratios and the sampled epsilon-isoperimetric check."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np
from scipy import ndimage

from errors import BudgetError, DimensionError, InputError
from utils.serialization import parse_rational

from .dyadic import Figure, dyadic_side
from .intervals import Interval
from .measures import perimeter, relative_perimeter

logger = logging.getLogger(__name__)

PASSED = 'passed-sampled'
FALSIFIED = 'falsified'

DEFAULT_CELL_BUDGET = 4096
DEFAULT_SUBSET_BUDGET = 2 ** 16
DEFAULT_SAMPLES = 256


@dataclass(frozen=True)
class IsoperimetricCheck:
    ratio: Union[Fraction, float]
    passes: bool

    def to_dict(self) -> dict:
        return {'ratio': self.ratio, 'passes': self.passes}


@dataclass
class SampledVerdict:
    status: str
    checked: int
    witness: Optional[dict] = None
    ratio: Optional[Union[Fraction, float]] = None
    levels: List[int] = field(default_factory=list)

    @property
    def falsified(self) -> bool:
        return self.status == FALSIFIED

    def to_dict(self) -> dict:
        return {'status': self.status, 'checked': self.checked, 'witness': self.witness,
                'ratio': self.ratio, 'levels': self.levels}


def _ratio(numerator: Fraction, denominator: Fraction, eps: Fraction) -> IsoperimetricCheck:
    if numerator == 0:
        return IsoperimetricCheck(Fraction(0), True)
    if denominator == 0:
        return IsoperimetricCheck(math.inf, False)
    ratio = numerator * eps / denominator
    return IsoperimetricCheck(ratio, ratio <= 1)


def isoperimetric_deficiency(E: Figure, T: Figure, eps) -> IsoperimetricCheck:
    """min{P(E∩T), P(E\\T)}·eps / P(T, in E), with T replaced by T ∩ E."""
    if E.dim != T.dim:
        raise DimensionError(E.dim, T.dim)
    eps = parse_rational(eps, 'epsilon')
    if eps <= 0:
        raise InputError("must be positive", 'epsilon')
    T = T.intersection(E)
    numerator = min(perimeter(T), perimeter(E.difference(T)))
    return _ratio(numerator, relative_perimeter(T, E), eps)


class VoxelGrid:
    """Boolean cell mask with per-axis spacing; perimeters by face counting."""

    def __init__(self, mask: np.ndarray, spacing: Tuple[Fraction, ...],
                 origin: Tuple[Fraction, ...], level: Optional[int] = None):
        self.mask = np.asarray(mask, dtype=bool)
        self.spacing = tuple(spacing)
        self.origin = tuple(origin)
        self.level = level
        n = self.mask.ndim
        self.face_areas = []
        for axis in range(n):
            area = Fraction(1)
            for j in range(n):
                if j != axis:
                    area *= self.spacing[j]
            self.face_areas.append(area)

    @classmethod
    def from_figure(cls, E: Figure, level: int, budget: int) -> 'VoxelGrid':
        count = E.cell_count(level)
        if count > budget:
            raise BudgetError('isoperimetric cell', budget, count)
        cells = np.array(sorted(E.cells_at(level)), dtype=np.int64).reshape(-1, E.dim)
        low = cells.min(axis=0)
        shape = tuple(cells.max(axis=0) - low + 1)
        if int(np.prod(shape)) > 64 * budget:
            raise BudgetError('isoperimetric grid', 64 * budget, int(np.prod(shape)))
        mask = np.zeros(shape, dtype=bool)
        mask[tuple((cells - low).T)] = True
        side = dyadic_side(level)
        origin = tuple(int(v) * side for v in low)
        return cls(mask, (side,) * E.dim, origin, level)

    @classmethod
    def from_interval(cls, Q: Interval, depth: int, budget: int) -> 'VoxelGrid':
        per_axis = 1 << depth
        count = per_axis ** Q.dim
        if count > budget:
            raise BudgetError('isoperimetric cell', budget, count)
        mask = np.ones((per_axis,) * Q.dim, dtype=bool)
        spacing = tuple(s / per_axis for s in Q.sides)
        return cls(mask, spacing, tuple(a for a, _ in Q.bounds))

    @property
    def cell_count(self) -> int:
        return int(self.mask.sum())

    def face_counts(self, batch: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Per-axis face counts of T, E\\T and of T's boundary inside E for a batch of T."""
        n = self.mask.ndim
        E = self.mask[None, ...]
        rest = E & ~batch
        counts_t = np.zeros((batch.shape[0], n), dtype=np.int64)
        counts_r = np.zeros_like(counts_t)
        counts_in = np.zeros_like(counts_t)
        grid_axes = tuple(range(1, n + 1))
        for axis in range(n):
            pad = [(0, 0)] * (n + 1)
            pad[axis + 1] = (1, 1)
            for target, out in ((batch, counts_t), (rest, counts_r)):
                padded = np.pad(target, pad).astype(np.int8)
                out[:, axis] = (np.diff(padded, axis=axis + 1) != 0).sum(axis=grid_axes)
            inner = np.diff(batch.astype(np.int8), axis=axis + 1) != 0
            lo = [slice(None)] * (n + 1)
            hi = [slice(None)] * (n + 1)
            lo[axis + 1] = slice(None, -1)
            hi[axis + 1] = slice(1, None)
            both = E[tuple(lo)] & E[tuple(hi)]
            counts_in[:, axis] = (inner & both).sum(axis=grid_axes)
        return counts_t, counts_r, counts_in

    def exact_check(self, t_counts, r_counts, in_counts, eps: Fraction) -> IsoperimetricCheck:
        area = self.face_areas
        p_t = sum((int(c) * a for c, a in zip(t_counts, area)), Fraction(0))
        p_r = sum((int(c) * a for c, a in zip(r_counts, area)), Fraction(0))
        p_in = sum((int(c) * a for c, a in zip(in_counts, area)), Fraction(0))
        return _ratio(min(p_t, p_r), p_in, eps)

    def witness(self, subset: np.ndarray) -> dict:
        cells = np.argwhere(subset)
        if self.level is not None:
            low = [int(o / self.spacing[0]) for o in self.origin]
            return {'dim': self.mask.ndim, 'cubes': [
                {'level': self.level, 'index': [int(c) + l for c, l in zip(cell, low)]}
                for cell in cells]}
        return {'grid_origin': list(self.origin), 'grid_spacing': list(self.spacing),
                'cells': cells.tolist()}


def _candidate_subsets(grid: VoxelGrid, rng: np.random.Generator, subset_budget: int,
                       samples: int) -> np.ndarray:
    mask = grid.mask
    positions = np.argwhere(mask)
    count = len(positions)
    if count == 0:
        return np.zeros((0,) + mask.shape, dtype=bool)
    if 2 ** count <= subset_budget:
        bits = (np.arange(2 ** count, dtype=np.int64)[:, None] >> np.arange(count)) & 1
        batch = np.zeros((2 ** count,) + mask.shape, dtype=bool)
        batch[(slice(None),) + tuple(positions.T)] = bits.astype(bool)
        return batch
    candidates = []
    labels, components = ndimage.label(mask)
    for k in range(1, components + 1):
        candidates.append(labels == k)
    for axis in range(mask.ndim):
        for cut in range(1, mask.shape[axis]):
            slab = np.zeros(mask.shape, dtype=bool)
            index = [slice(None)] * mask.ndim
            index[axis] = slice(None, cut)
            slab[tuple(index)] = True
            candidates.append(slab & mask)
    for pos in positions[:samples]:
        single = np.zeros(mask.shape, dtype=bool)
        single[tuple(pos)] = True
        candidates.append(single)
    for _ in range(samples):
        p = rng.uniform(0.1, 0.9)
        candidates.append(mask & (rng.random(mask.shape) < p))
    return np.array(candidates, dtype=bool)


def is_eps_isoperimetric_sampled(E: Union[Figure, Interval], eps, depth: int = 2,
                                 seed: int = 0, samples: int = DEFAULT_SAMPLES,
                                 cell_budget: int = DEFAULT_CELL_BUDGET,
                                 subset_budget: int = DEFAULT_SUBSET_BUDGET) -> SampledVerdict:
    """Search sub-figures T of E for a violation; never certifies the property."""
    eps = parse_rational(eps, 'epsilon')
    if eps <= 0:
        raise InputError("must be positive", 'epsilon')
    if depth < 0:
        raise InputError("must be >= 0", 'depth')
    if isinstance(E, Figure) and E.is_empty():
        return SampledVerdict(PASSED, 0)
    rng = np.random.default_rng(np.random.SeedSequence([int(seed) % 2 ** 64, depth]))
    checked = 0
    levels = []
    for extra in range(depth + 1):
        if isinstance(E, Figure):
            grid = VoxelGrid.from_figure(E, E.finest_level + extra, cell_budget)
        else:
            grid = VoxelGrid.from_interval(E, extra, cell_budget)
        levels.append(extra)
        batch = _candidate_subsets(grid, rng, subset_budget, samples)
        if not len(batch):
            continue
        t_counts, r_counts, in_counts = grid.face_counts(batch)
        areas = np.array([float(a) for a in grid.face_areas])
        p_t = t_counts @ areas
        p_r = r_counts @ areas
        p_in = in_counts @ areas
        numerator = np.minimum(p_t, p_r)
        with np.errstate(divide='ignore', invalid='ignore'):
            ratio = np.where(numerator == 0, 0.0,
                             np.where(p_in == 0, np.inf, numerator * float(eps) / np.where(p_in == 0, 1, p_in)))
        checked += len(batch)
        suspects = np.argsort(-ratio, kind='stable')
        for k in suspects:
            if ratio[k] <= 1 - 1e-12:
                break
            check = grid.exact_check(t_counts[k], r_counts[k], in_counts[k], eps)
            if not check.passes:
                logger.debug("isoperimetric violation at depth %d, ratio %s", extra, check.ratio)
                return SampledVerdict(FALSIFIED, checked, grid.witness(batch[k]), check.ratio, levels)
    return SampledVerdict(PASSED, checked, levels=levels)
