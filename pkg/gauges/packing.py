"""Balls, packings, tagged partitions and delta-fineness."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from errors import DimensionError, InputError, PreconditionError
from geometry import (BVSet1D, Figure, Interval, diameter_with_tag, is_eps_regular, regularity,
                      shape_from_dict, unit_ball_volume)
from utils.serialization import parse_point, parse_rational

from .gauge import Gauge

logger = logging.getLogger(__name__)

Shape = Union[Figure, BVSet1D, Interval]
DEFAULT_RETRY_BUDGET = 64


def _distance_squared(p: Sequence[Fraction], q: Sequence[Fraction]) -> Fraction:
    return sum(((a - b) ** 2 for a, b in zip(p, q)), Fraction(0))


@dataclass(frozen=True)
class Ball:
    center: Tuple[Fraction, ...]
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'center', tuple(Fraction(v) for v in self.center))
        object.__setattr__(self, 'radius', Fraction(self.radius))
        if self.radius <= 0:
            raise InputError("must be positive", 'radius')

    @property
    def dim(self) -> int:
        return len(self.center)

    @property
    def diameter(self) -> Fraction:
        return 2 * self.radius

    @property
    def volume(self) -> float:
        return unit_ball_volume(self.dim) * float(self.radius) ** self.dim

    def disjoint_from(self, other: 'Ball') -> bool:
        """Strict separation |x - y| > r + s."""
        return _distance_squared(self.center, other.center) > (self.radius + other.radius) ** 2

    def dilated(self, factor) -> 'Ball':
        return Ball(self.center, self.radius * Fraction(factor))

    def contains_ball(self, other: 'Ball') -> bool:
        """Closed containment: |x - y| + s <= r."""
        gap = self.radius - other.radius
        return gap >= 0 and _distance_squared(self.center, other.center) <= gap * gap

    def bounds(self) -> List[Tuple[Fraction, Fraction]]:
        return [(c - self.radius, c + self.radius) for c in self.center]

    def to_dict(self) -> dict:
        return {'center': list(self.center), 'radius': self.radius}

    @classmethod
    def from_dict(cls, data, dim: Optional[int] = None, field: str = 'ball') -> 'Ball':
        if isinstance(data, (list, tuple)) and len(data) == 2:
            data = {'center': data[0], 'radius': data[1]}
        if not isinstance(data, dict):
            raise InputError("expected {center, radius}", field)
        return cls(parse_point(data.get('center'), dim, f"{field}.center"),
                   parse_rational(data.get('radius'), f"{field}.radius"))


def load_balls(data, dim: Optional[int] = None, field: str = 'balls') -> List[Ball]:
    rows = data.get('balls') if isinstance(data, dict) else data
    if not isinstance(rows, list) or not rows:
        raise InputError("must be a nonempty list", field)
    balls = [Ball.from_dict(row, dim, f"{field}[{i}]") for i, row in enumerate(rows)]
    dims = {b.dim for b in balls}
    if len(dims) > 1:
        raise DimensionError(balls[0].dim, max(dims - {balls[0].dim}), field)
    return balls


@dataclass(frozen=True)
class Packing:
    """Finite system of pairwise disjoint tagged balls."""

    balls: Tuple[Ball, ...]

    def __post_init__(self):
        object.__setattr__(self, 'balls', tuple(self.balls))
        for i, a in enumerate(self.balls):
            if a.dim != self.balls[0].dim:
                raise DimensionError(self.balls[0].dim, a.dim, f"balls[{i}]")
            for j in range(i):
                if not a.disjoint_from(self.balls[j]):
                    raise PreconditionError("balls overlap", 'balls', {'pair': [j, i]})

    def __len__(self) -> int:
        return len(self.balls)

    @property
    def dim(self) -> Optional[int]:
        return self.balls[0].dim if self.balls else None

    def to_dict(self) -> dict:
        return {'balls': [b.to_dict() for b in self.balls]}

    @classmethod
    def from_dict(cls, data, dim: Optional[int] = None) -> 'Packing':
        return cls(tuple(load_balls(data, dim)))


@dataclass(frozen=True)
class PartitionItem:
    set: Shape
    tag: Tuple[Fraction, ...]

    def regularity(self) -> float:
        return regularity(self.set, self.tag)

    def tag_in_closure(self) -> bool:
        return self.set.contains_point(self.tag)

    def to_dict(self) -> dict:
        return {'set': self.set.to_dict(), 'tag': list(self.tag)}


def _overlap(a: Shape, b: Shape) -> bool:
    if isinstance(a, Figure) and isinstance(b, Figure):
        return a.intersection(b).volume > 0
    if isinstance(a, Interval) and isinstance(b, Interval):
        return all(max(p[0], q[0]) < min(p[1], q[1]) for p, q in zip(a.bounds, b.bounds))
    if a.dim > 1:
        raise InputError(f"cannot compare {type(a).__name__} with {type(b).__name__}", 'items')
    if isinstance(a, Interval):
        a = BVSet1D(a.bounds)
    if isinstance(b, Interval):
        b = BVSet1D(b.bounds)
    if isinstance(a, Figure):
        a = BVSet1D.from_figure(a)
    if isinstance(b, Figure):
        b = BVSet1D.from_figure(b)
    return a.intersection(b).volume > 0


@dataclass
class TaggedPartition:
    """Pairwise nonoverlapping sets with tags; a tag need not lie in its set."""

    items: List[PartitionItem] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.items)

    @property
    def dim(self) -> Optional[int]:
        return self.items[0].set.dim if self.items else None

    def validate(self) -> None:
        for i, item in enumerate(self.items):
            if item.set.dim != len(item.tag):
                raise DimensionError(item.set.dim, len(item.tag), f"items[{i}].tag")
            for j in range(i):
                if _overlap(item.set, self.items[j].set):
                    raise PreconditionError("sets overlap", 'items', {'pair': [j, i]})

    def total_volume(self) -> Fraction:
        return sum((item.set.volume for item in self.items), Fraction(0))

    def is_eps_regular(self, eps) -> bool:
        return all(is_eps_regular(item.set, eps, item.tag) for item in self.items)

    def to_dict(self) -> dict:
        return {'items': [dict(item.to_dict(), regularity=item.regularity(),
                               tag_in_closure=item.tag_in_closure()) for item in self.items]}

    @classmethod
    def from_dict(cls, data) -> 'TaggedPartition':
        rows = data.get('items') if isinstance(data, dict) else None
        if not isinstance(rows, list):
            raise InputError("missing or non-list field", 'items')
        items = []
        for i, row in enumerate(rows):
            shape = shape_from_dict(row.get('set') if isinstance(row, dict) else None, f"items[{i}].set")
            items.append(PartitionItem(shape, parse_point(row.get('tag'), shape.dim, f"items[{i}].tag")))
        partition = cls(items)
        partition.validate()
        return partition


@dataclass(frozen=True)
class FinenessReport:
    fine: bool
    index: Optional[int] = None
    reason: str = ''

    def __bool__(self) -> bool:
        return self.fine

    def to_dict(self) -> dict:
        return {'fine': self.fine, 'index': self.index, 'reason': self.reason}


def is_delta_fine(system: Union[Packing, TaggedPartition], gauge: Gauge) -> FinenessReport:
    """2 r_i < delta(x_i) for packings, d(A_i ∪ {x_i}) < delta(x_i) for partitions; strict."""
    if isinstance(system, Packing):
        for i, ball in enumerate(system.balls):
            delta = gauge.exact(ball.center)
            if not ball.diameter < delta:
                return FinenessReport(False, i, f"diameter {ball.diameter} >= gauge {delta}")
        return FinenessReport(True)
    for i, item in enumerate(system.items):
        delta = gauge.exact(item.tag)
        d2 = diameter_with_tag(item.set, item.tag).squared
        if delta <= 0 or not d2 < delta * delta:
            return FinenessReport(False, i, f"diameter^2 {d2} >= gauge^2 {delta * delta}")
    return FinenessReport(True)


def sample_point(region: Figure, rng: np.random.Generator) -> Tuple[Fraction, ...]:
    """Uniform point of the closed region, cube chosen by volume."""
    cubes = region.sorted_cubes()
    weights = np.array([float(c.volume) for c in cubes])
    cube = cubes[int(rng.choice(len(cubes), p=weights / weights.sum()))]
    u = rng.random(region.dim)
    return tuple(lo + parse_rational(float(t), 'tag') * cube.side for lo, t in zip(cube.lower, u))


def sample_packing(region: Figure, gauge: Gauge, count: int, seed: int = 0,
                   retry_budget: int = DEFAULT_RETRY_BUDGET,
                   max_radius: Optional[Fraction] = None,
                   rng: Optional[np.random.Generator] = None) -> Packing:
    """Rejection-sample up to ``count`` disjoint delta-fine balls tagged in cl(region)."""
    if count < 1:
        raise InputError("must be >= 1", 'count')
    if region.is_empty():
        raise InputError("region must be nonempty", 'region')
    rng = np.random.default_rng(seed) if rng is None else rng
    balls: List[Ball] = []
    attempts = 0
    while len(balls) < count and attempts < count * retry_budget:
        attempts += 1
        tag = sample_point(region, rng)
        delta = gauge.exact(tag)
        if delta <= 0:
            continue
        limit = delta / 2 if max_radius is None else min(delta / 2, Fraction(max_radius))
        u = parse_rational(float(0.05 + 0.9 * rng.random()), 'radius')
        ball = Ball(tag, limit * u)
        if all(ball.disjoint_from(b) for b in balls):
            balls.append(ball)
    if not balls:
        raise PreconditionError("cannot place any ball: the gauge vanishes on every sampled tag",
                                'gauge', {'attempts': attempts})
    logger.debug("sampled %d balls in %d attempts", len(balls), attempts)
    return Packing(tuple(balls))
