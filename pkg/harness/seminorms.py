"""Lower bounds for the seminorms sup |F(E)| over admissible test sets in a ball.

The searched family is every grid box at levels m0..m0+depth whose closure lies
in the open ball, m0 being the coarsest level with cells no longer than r.
Charge values come from one call to ``evaluate_cells`` at the finest level and a
summed-area table, so each box costs 2^n lookups.  Float filters screen boxes
with a small slack; the admissibility of the reported witness is then checked
in exact arithmetic.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from charges import Charge
from errors import BudgetError, InputError
from geometry import (PASSED, Constants, Figure, Interval, dyadic_side, is_eps_isoperimetric_sampled,
                      regularity_squared)
from utils.serialization import parse_point, parse_rational

logger = logging.getLogger(__name__)

P_BAR = 'p'
Q_BAR = 'q'
VARIANTS = (P_BAR, Q_BAR)

SLACK = 1e-9
TOP_K = 256
CELL_BUDGET = 2 ** 22


@dataclass(frozen=True)
class SeminormQuery:
    charge: Charge
    center: Tuple[Fraction, ...]
    radius: Fraction
    epsilon: Fraction
    variant: str = P_BAR
    depth: int = 4
    seed: int = 0
    eta: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, 'center', parse_point(self.center, None, 'x'))
        object.__setattr__(self, 'radius', parse_rational(self.radius, 'r'))
        object.__setattr__(self, 'epsilon', parse_rational(self.epsilon, 'epsilon'))
        if self.radius <= 0:
            raise InputError("must be positive", 'r')
        if self.epsilon <= 0:
            raise InputError("must be positive", 'epsilon')
        if self.variant not in VARIANTS:
            raise InputError(f"unknown variant '{self.variant}' (known: p, q)", 'variant')
        if self.depth < 0:
            raise InputError("must be >= 0", 'depth')

    @property
    def dim(self) -> int:
        return len(self.center)


@dataclass
class SeminormResult:
    value: float
    witness: Optional[Interval] = None
    level: Optional[int] = None
    levels: List[int] = field(default_factory=list)
    screened: int = 0
    candidates: int = 0

    def witness_figure(self) -> Optional[Figure]:
        """The witness box as a union of cells of its level."""
        if self.witness is None:
            return None
        scale = 1 << self.level if self.level >= 0 else Fraction(1, 1 << -self.level)
        ranges = [range(int(a * scale), int(b * scale)) for a, b in self.witness.bounds]
        return Figure.from_cells(self.level, itertools.product(*ranges), self.witness.dim)

    def to_dict(self) -> dict:
        return {'value': self.value, 'witness': self.witness.to_dict() if self.witness else None,
                'level': self.level, 'levels': self.levels, 'screened': self.screened,
                'candidates': self.candidates}


def base_level(radius: Fraction) -> int:
    """Smallest m with 2^-m <= r."""
    m = math.ceil(-math.log2(float(radius)))
    while dyadic_side(m) > radius:
        m += 1
    while dyadic_side(m - 1) <= radius:
        m -= 1
    return m


@lru_cache(maxsize=4096)
def _box_isoperimetric(sides: Tuple[Fraction, ...], eps: Fraction, seed: int) -> bool:
    box = Interval(tuple((Fraction(0), s) for s in sides))
    return is_eps_isoperimetric_sampled(box, eps, seed=seed).status == PASSED


def is_box_isoperimetric(box: Interval, eps: Fraction, constants: Constants, seed: int = 0) -> bool:
    """Boxes regular enough to be beta(r(E))-isoperimetric with beta >= eps skip the sampling."""
    if constants.beta(math.sqrt(regularity_squared(box)) * (1 - SLACK)) >= eps:
        return True
    longest = max(box.sides)
    return _box_isoperimetric(tuple(sorted(s / longest for s in box.sides)), eps, seed)


def _axis_pairs(g0: int, count: int, level: int, x: float, r2: float, q: bool):
    """Every [i0, i1) on one axis at one level, pre-filtered by the axis share of the ball."""
    i0, i1 = np.triu_indices(count + 1, k=1)
    side = 2.0 ** -level
    a = (g0 + i0) * side
    b = (g0 + i1) * side
    far = np.maximum((x - a) ** 2, (x - b) ** 2)
    keep = far < r2 * (1 + SLACK)
    if q:
        tol = 1e-12 * (1 + abs(x))
        keep &= (a <= x + tol) & (b >= x - tol)
    length = b - a
    return {'i0': i0[keep], 'i1': i1[keep], 'far': far[keep],
            'sq': length[keep] ** 2, 'inv': 1.0 / length[keep]}


def _summed_area(values: np.ndarray) -> np.ndarray:
    table = np.zeros(tuple(s + 1 for s in values.shape))
    acc = values
    for axis in range(values.ndim):
        acc = np.cumsum(acc, axis=axis)
    table[tuple(slice(1, None) for _ in range(values.ndim))] = acc
    return table


def _box_sums(table: np.ndarray, lows: List[np.ndarray], highs: List[np.ndarray]) -> np.ndarray:
    """Inclusion-exclusion over the 2^n corners, on the outer product of per-axis pairs."""
    n = len(lows)
    total = None
    for corner in itertools.product((0, 1), repeat=n):
        picks = [highs[l] if c else lows[l] for l, c in enumerate(corner)]
        sign = -1.0 if (n - sum(corner)) % 2 else 1.0
        term = sign * table[np.ix_(*picks)]
        total = term if total is None else total + term
    return total


def seminorm_lower_bound(query: SeminormQuery, box_budget: int = 2 ** 25,
                         cell_budget: int = CELL_BUDGET, top_k: int = TOP_K) -> SeminormResult:
    x = query.center
    n = query.dim
    r = query.radius
    eps = query.epsilon
    q = query.variant == Q_BAR
    charge_dim = getattr(query.charge, 'dim', None)
    if charge_dim is not None and charge_dim != n:
        raise InputError(f"charge has dimension {charge_dim}, center has {n}", 'x')

    m0 = base_level(r)
    g0 = [math.floor((v - r) * dyadic_side(-m0)) for v in x]
    g1 = [math.ceil((v + r) * dyadic_side(-m0)) for v in x]
    counts0 = [hi - lo for lo, hi in zip(g0, g1)]

    # drop levels whose enumeration exceeds the box budget
    levels = []
    for m in range(m0, m0 + query.depth + 1):
        boxes = 1
        for c in counts0:
            k = c << (m - m0)
            boxes *= k * (k + 1) // 2
        cells = 1
        for c in counts0:
            cells *= c << (m - m0)
        if boxes > box_budget or cells > cell_budget:
            if not levels:
                raise BudgetError('seminorm box', box_budget, boxes,
                                  f"radius {r} at level {m}")
            logger.warning("seminorm search truncated at level %d of %d (budget %d)",
                           m - 1, m0 + query.depth, box_budget)
            break
        levels.append(m)

    finest = levels[-1]
    shape = tuple(c << (finest - m0) for c in counts0)
    axes = [np.arange(g << (finest - m0), (g << (finest - m0)) + s) for g, s in zip(g0, shape)]
    grid = np.stack(np.meshgrid(*axes, indexing='ij'), axis=-1).reshape(-1, n)
    values = np.asarray(query.charge.evaluate_cells(finest, grid), dtype=float).reshape(shape)
    table = _summed_area(values)

    xf = [float(v) for v in x]
    r2 = float(r) ** 2
    e2 = float(eps) ** 2
    pool = []
    screened = 0
    for m in levels:
        scale_bits = finest - m
        pairs = [_axis_pairs(g0[l] << (m - m0), counts0[l] << (m - m0), m, xf[l], r2, q)
                 for l in range(n)]
        if any(len(p['i0']) == 0 for p in pairs):
            continue
        rest = pairs[1:]
        shape_rest = tuple(len(p['i0']) for p in rest)
        chunk = max(1, (1 << 20) // max(1, int(np.prod(shape_rest, dtype=np.int64))))
        first = pairs[0]
        for start in range(0, len(first['i0']), chunk):
            sl = slice(start, start + chunk)
            parts = [{k: v[sl] for k, v in first.items()}] + rest
            far = sum(p['far'].reshape([-1 if j == l else 1 for j in range(n)])
                      for l, p in enumerate(parts))
            diam = sum(p['sq'].reshape([-1 if j == l else 1 for j in range(n)])
                       for l, p in enumerate(parts))
            inv = sum(p['inv'].reshape([-1 if j == l else 1 for j in range(n)])
                      for l, p in enumerate(parts))
            d2 = np.maximum(diam, far)
            mask = (far < r2 * (1 + SLACK)) & (4 * e2 * d2 * inv ** 2 < 1 + SLACK)
            screened += mask.size
            if not mask.any():
                continue
            lows = [p['i0'] << scale_bits for p in parts]
            highs = [p['i1'] << scale_bits for p in parts]
            sums = _box_sums(table, lows, highs)
            hits = np.flatnonzero(mask)
            mags = np.abs(sums.reshape(-1)[hits])
            if len(hits) > top_k:
                best = np.argpartition(-mags, top_k)[:top_k]
                hits, mags = hits[best], mags[best]
            for flat, mag in zip(hits, mags):
                idx = np.unravel_index(flat, mask.shape)
                bounds = tuple((int(parts[l]['i0'][idx[l]]), int(parts[l]['i1'][idx[l]]))
                               for l in range(n))
                pool.append((float(mag), m, bounds, float(sums[idx])))

    pool.sort(key=lambda item: (-item[0], -item[1]))
    constants = Constants(n, query.eta)
    for mag, m, bounds, value in pool:
        side = dyadic_side(m)
        box = Interval(tuple(((g0[l] * (1 << (m - m0)) + i0) * side,
                              (g0[l] * (1 << (m - m0)) + i1) * side)
                             for l, (i0, i1) in enumerate(bounds)))
        if not box.farthest_distance_squared(x) < r * r:
            continue
        if not regularity_squared(box, x) > eps * eps:
            continue
        if q and not (box.contains_point(x) and
                      is_box_isoperimetric(box, eps, constants, query.seed)):
            continue
        logger.debug("seminorm %s at %s radius %s: %.6g at level %d", query.variant, list(x), r, mag, m)
        return SeminormResult(mag, box, m, levels, screened, len(pool))
    return SeminormResult(0.0, None, None, levels, screened, len(pool))
