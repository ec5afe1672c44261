import logging
import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from errors import BudgetError, InputError
from utils.serialization import parse_rational

from .dyadic import DEFAULT_REFINEMENT_BUDGET, DyadicCube, Figure, MIN_LEVEL, dyadic_side

logger = logging.getLogger(__name__)


def dyadic_approximation(center: Sequence, radius, level: int,
                         budget: int = DEFAULT_REFINEMENT_BUDGET) -> Figure:
    """All level cubes contained in the closed ball B(center, radius)."""
    center = tuple(parse_rational(c, 'center') for c in center)
    radius = parse_rational(radius, 'radius')
    if radius <= 0:
        raise InputError("must be positive", 'radius')
    if level < MIN_LEVEL:
        raise InputError(f"must be >= {MIN_LEVEL}", 'level')
    n = len(center)
    side = dyadic_side(level)
    lows = [math.floor((c - radius) / side) for c in center]
    highs = [math.ceil((c + radius) / side) for c in center]
    per_axis = [h - l for h, l in zip(highs, lows)]
    total = int(np.prod([float(p) for p in per_axis]))
    if total > budget:
        raise BudgetError('resolution', budget, total)

    grids = np.meshgrid(*[np.arange(l, h, dtype=np.int64) for l, h in zip(lows, highs)],
                        indexing='ij')
    idx = np.stack([g.ravel() for g in grids], axis=1)
    s = float(side)
    far = np.zeros(len(idx))
    for axis, c in enumerate(center):
        lo = idx[:, axis] * s - float(c)
        far += np.maximum(lo ** 2, (lo + s) ** 2)
    r2 = float(radius) ** 2
    inside = far < r2 * (1 - 1e-12)
    borderline = np.abs(far - r2) <= r2 * 1e-12
    cubes = [DyadicCube(level, tuple(int(k) for k in row)) for row in idx[inside]]
    for row in idx[borderline]:
        cube = DyadicCube(level, tuple(int(k) for k in row))
        exact = sum((max((a - c) ** 2, (b - c) ** 2) for (a, b), c in zip(cube.bounds(), center)),
                    Fraction(0))
        if exact <= radius * radius:
            cubes.append(cube)
    logger.debug("ball approximation at level %d uses %d of %d cells", level, len(cubes), total)
    return Figure(n, frozenset(cubes))
