"""Axis-aligned boxes and finite unions of intervals on the line."""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from errors import DimensionError, InputError
from utils.serialization import parse_rational

from .dyadic import Figure

Pair = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Interval:
    """Closed box prod [a_l, b_l] with exact rational bounds."""

    bounds: Tuple[Pair, ...]

    def __post_init__(self):
        clean = tuple((Fraction(a), Fraction(b)) for a, b in self.bounds)
        if not clean:
            raise InputError("box needs at least one axis", 'bounds')
        for axis, (a, b) in enumerate(clean):
            if not a < b:
                raise InputError(f"degenerate side on axis {axis}", 'bounds')
        object.__setattr__(self, 'bounds', clean)

    @classmethod
    def from_dict(cls, data) -> 'Interval':
        raw = data.get('bounds') if isinstance(data, dict) else data
        if not isinstance(raw, list):
            raise InputError("expected a list of [a, b] pairs", 'bounds')
        pairs = []
        for i, pair in enumerate(raw):
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise InputError("expected [a, b]", f"bounds[{i}]")
            pairs.append((parse_rational(pair[0], f"bounds[{i}][0]"),
                          parse_rational(pair[1], f"bounds[{i}][1]")))
        return cls(tuple(pairs))

    def to_dict(self) -> dict:
        return {'bounds': [[a, b] for a, b in self.bounds]}

    @property
    def dim(self) -> int:
        return len(self.bounds)

    @property
    def sides(self) -> Tuple[Fraction, ...]:
        return tuple(b - a for a, b in self.bounds)

    @property
    def volume(self) -> Fraction:
        v = Fraction(1)
        for s in self.sides:
            v *= s
        return v

    @property
    def perimeter(self) -> Fraction:
        if self.dim == 1:
            return Fraction(2)
        total = Fraction(0)
        sides = self.sides
        for l in range(self.dim):
            face = Fraction(1)
            for j, s in enumerate(sides):
                if j != l:
                    face *= s
            total += face
        return 2 * total

    @property
    def diameter_squared(self) -> Fraction:
        return sum((s * s for s in self.sides), Fraction(0))

    def corners(self) -> Iterable[Tuple[Fraction, ...]]:
        return itertools.product(*self.bounds)

    def contains_point(self, x: Sequence) -> bool:
        if len(x) != self.dim:
            raise DimensionError(self.dim, len(x), 'point')
        return all(a <= Fraction(v) <= b for v, (a, b) in zip(x, self.bounds))

    def farthest_distance_squared(self, x: Sequence) -> Fraction:
        total = Fraction(0)
        for v, (a, b) in zip(x, self.bounds):
            v = Fraction(v)
            total += max((v - a) ** 2, (b - v) ** 2)
        return total

    def nearest_distance_squared(self, x: Sequence) -> Fraction:
        total = Fraction(0)
        for v, (a, b) in zip(x, self.bounds):
            v = Fraction(v)
            if v < a:
                total += (a - v) ** 2
            elif v > b:
                total += (v - b) ** 2
        return total


@dataclass(frozen=True)
class BVSet1D:
    """Finite union of nondegenerate closed intervals, separated and sorted."""

    intervals: Tuple[Pair, ...]

    def __post_init__(self):
        pairs = sorted((Fraction(a), Fraction(b)) for a, b in self.intervals)
        merged: List[List[Fraction]] = []
        for a, b in pairs:
            if not a < b:
                raise InputError(f"degenerate interval [{a}, {b}]", 'intervals')
            if merged and a <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        object.__setattr__(self, 'intervals', tuple((a, b) for a, b in merged))

    @classmethod
    def empty(cls) -> 'BVSet1D':
        return cls(())

    @classmethod
    def from_dict(cls, data) -> 'BVSet1D':
        if not isinstance(data, dict) or not isinstance(data.get('intervals'), list):
            raise InputError("missing or non-list field", 'intervals')
        pairs = []
        for i, pair in enumerate(data['intervals']):
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise InputError("expected [a, b]", f"intervals[{i}]")
            pairs.append((parse_rational(pair[0], f"intervals[{i}][0]"),
                          parse_rational(pair[1], f"intervals[{i}][1]")))
        return cls(tuple(pairs))

    @classmethod
    def from_figure(cls, figure: Figure) -> 'BVSet1D':
        if figure.dim != 1:
            raise DimensionError(1, figure.dim, 'figure')
        return cls(tuple((c.lower[0], c.upper[0]) for c in figure.cubes))

    def to_dict(self) -> dict:
        return {'intervals': [[a, b] for a, b in self.intervals]}

    @property
    def dim(self) -> int:
        return 1

    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def volume(self) -> Fraction:
        return sum((b - a for a, b in self.intervals), Fraction(0))

    @property
    def perimeter(self) -> Fraction:
        return Fraction(2 * len(self.intervals))

    def union(self, other: 'BVSet1D') -> 'BVSet1D':
        return BVSet1D(self.intervals + other.intervals)

    def intersection(self, other: 'BVSet1D') -> 'BVSet1D':
        out = []
        for a, b in self.intervals:
            for c, d in other.intervals:
                lo, hi = max(a, c), min(b, d)
                if lo < hi:
                    out.append((lo, hi))
        return BVSet1D(tuple(out))

    def difference(self, other: 'BVSet1D') -> 'BVSet1D':
        out = []
        for a, b in self.intervals:
            pieces = [(a, b)]
            for c, d in other.intervals:
                nxt = []
                for lo, hi in pieces:
                    if d <= lo or c >= hi:
                        nxt.append((lo, hi))
                        continue
                    if lo < c:
                        nxt.append((lo, c))
                    if d < hi:
                        nxt.append((d, hi))
                pieces = nxt
            out.extend(pieces)
        return BVSet1D(tuple(out))

    def contains_point(self, x) -> bool:
        v = Fraction(x[0] if isinstance(x, (list, tuple)) else x)
        return any(a <= v <= b for a, b in self.intervals)


def shape_from_dict(data, field: str = 'set'):
    """Figure, BVSet1D or Interval, told apart by their keys."""
    if not isinstance(data, dict):
        raise InputError("expected an object", field)
    if 'cubes' in data:
        return Figure.from_dict(data)
    if 'intervals' in data:
        return BVSet1D.from_dict(data)
    if 'bounds' in data:
        return Interval.from_dict(data)
    raise InputError("expected one of 'cubes', 'intervals' or 'bounds'", field)
