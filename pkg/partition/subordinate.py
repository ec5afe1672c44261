"""Dyadic partition of a cube subordinate to a finite ball cover."""

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from errors import BudgetError, DimensionError, InputError, PreconditionError
from gauges import Ball
from geometry import Constants, DyadicCube, Interval

logger = logging.getLogger(__name__)

DEFAULT_CELL_BUDGET = 2 ** 20


def _box(cube: DyadicCube) -> Interval:
    return Interval(tuple(cube.bounds()))


def meets_ball(cube: DyadicCube, ball: Ball) -> bool:
    return _box(cube).nearest_distance_squared(ball.center) < ball.radius ** 2


def inside_double(cube: DyadicCube, ball: Ball) -> bool:
    """cube ⊂ B(x, 2R), open ball."""
    return _box(cube).farthest_distance_squared(ball.center) < 4 * ball.radius ** 2


def qualifies(cube: DyadicCube, ball: Ball) -> bool:
    return meets_ball(cube, ball) and inside_double(cube, ball) and not inside_double(cube.mother(), ball)


@dataclass(frozen=True)
class AssignedCube:
    cube: DyadicCube
    ball: int

    def to_dict(self) -> dict:
        return {'cube': self.cube.to_dict(), 'ball': self.ball, 'side': self.cube.side}


@dataclass
class SubordinatePartition:
    root: DyadicCube
    balls: List[Ball]
    cells: List[AssignedCube] = field(default_factory=list)
    visited: int = 0

    def systems(self) -> Dict[int, List[DyadicCube]]:
        out: Dict[int, List[DyadicCube]] = {}
        for cell in self.cells:
            out.setdefault(cell.ball, []).append(cell.cube)
        return out

    def diagnostics(self, constants: Optional[Constants] = None) -> dict:
        """Check every postcondition of the construction; each entry is a bool or a count."""
        n = self.root.dim
        constants = constants or Constants(n)
        cubes = [c.cube for c in self.cells]
        tiling = (sum((c.volume for c in cubes), Fraction(0)) == self.root.volume
                  and all(self.root.contains(c) for c in cubes)
                  and len({c for c in cubes}) == len(cubes)
                  and not any(a.contains(b) for a in cubes for b in cubes if a != b))
        membership = side = perim = True
        for cell in self.cells:
            ball = self.balls[cell.ball]
            a = cell.cube.side
            membership &= qualifies(cell.cube, ball)
            membership &= not any(qualifies(cell.cube, self.balls[i]) for i in range(cell.ball))
            side &= ball.radius ** 2 < 4 * n * a * a
            cube_perimeter = 2 * n * float(a) ** (n - 1)
            bound = constants.c1 * 2 ** (n - 1) * float(ball.radius) ** (n - 1)
            perim &= cube_perimeter <= bound * (1 + 1e-12)
        counts = Counter(cell.ball for cell in self.cells)
        max_count = max(counts.values(), default=0)
        return {'tiling': tiling, 'membership': membership, 'side_bound': side,
                'count_bound': max_count <= constants.c_c, 'max_count': max_count,
                'c_c': constants.c_c, 'perimeter_bound': perim}

    def to_dict(self) -> dict:
        return {'root': self.root.to_dict(), 'balls': [b.to_dict() for b in self.balls],
                'cells': [c.to_dict() for c in self.cells], 'visited': self.visited,
                'diagnostics': self.diagnostics()}


def subordinate_partition(root: DyadicCube, balls: Sequence[Ball],
                          budget: int = DEFAULT_CELL_BUDGET) -> SubordinatePartition:
    """Walk the dyadic tree of ``root`` and keep the first cube on every branch that
    meets some B(x_i, R_i), lies in B(x_i, 2R_i) and whose mother does not; the cube is
    assigned to the least such i.
    """
    balls = list(balls)
    if not balls:
        raise InputError("need at least one ball", 'balls')
    n = root.dim
    for i, ball in enumerate(balls):
        if ball.dim != n:
            raise DimensionError(n, ball.dim, f"balls[{i}]")
        if inside_double(root, ball):
            raise PreconditionError("root cube lies inside the doubled ball", 'balls', {'ball': i})

    partition = SubordinatePartition(root, balls)
    stack = [root]
    while stack:
        cell = stack.pop()
        partition.visited += 1
        if partition.visited > budget:
            raise BudgetError('cell', budget, partition.visited)
        owner = next((i for i, ball in enumerate(balls) if qualifies(cell, ball)), None)
        if owner is not None:
            partition.cells.append(AssignedCube(cell, owner))
            continue
        a2 = cell.side ** 2
        # below this side no cube can qualify for any ball meeting the cell
        if all(not meets_ball(cell, b) or 4 * n * a2 <= b.radius ** 2 for b in balls):
            raise PreconditionError("balls do not cover the cube", 'balls',
                                    {'uncovered': list(cell.center)})
        stack.extend(reversed(list(cell.children())))
    partition.cells.sort(key=lambda c: (c.cube.level, c.cube.index))
    logger.debug("subordinate partition: %d cubes after visiting %d cells",
                 len(partition.cells), partition.visited)
    return partition
