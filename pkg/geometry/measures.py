"""Exact measures of figures, boxes and 1D sets."""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from errors import DimensionError, InputError
from utils.serialization import parse_rational

from .dyadic import Coverage, Figure, split_face
from .intervals import BVSet1D, Interval

logger = logging.getLogger(__name__)

Shape = Union[Figure, BVSet1D, Interval]


@dataclass(frozen=True)
class Diameter:
    squared: Fraction

    @property
    def value(self) -> float:
        return math.sqrt(self.squared)

    def to_dict(self) -> dict:
        return {'squared': self.squared, 'value': self.value}


def volume(E: Shape) -> Fraction:
    return E.volume


def perimeter(E: Shape) -> Fraction:
    if isinstance(E, Figure):
        return sum((f.area for f in E.boundary_faces()), Fraction(0))
    return E.perimeter


def relative_perimeter(E: Figure, A: Figure, closure: bool = False) -> Fraction:
    """Boundary of E inside int A (default) or inside the closed set A."""
    if E.dim != A.dim:
        raise DimensionError(E.dim, A.dim)
    total = Fraction(0)
    for face in E.boundary_faces():
        for piece, inner, outer in split_face(face, A):
            if closure:
                hit = Coverage.FULL in (inner, outer)
            else:
                hit = inner is Coverage.FULL and outer is Coverage.FULL
            if hit:
                total += piece.area
    return total


def relative_perimeter_in_open(E: Figure, U: Figure) -> Fraction:
    """P(E, int U). For figures the essential interior of U differs from int U by a
    null set, so this agrees with the default mode of relative_perimeter."""
    return relative_perimeter(E, U, closure=False)


def _point(x, dim: int) -> Tuple[Fraction, ...]:
    if x is None:
        return None
    if not isinstance(x, (list, tuple)):
        x = (x,)
    if len(x) != dim:
        raise DimensionError(dim, len(x), 'tag')
    return tuple(v if isinstance(v, Fraction) else parse_rational(v, 'tag') for v in x)


def _max_pair_squared(points: List[Tuple[Fraction, ...]]) -> Fraction:
    """Largest exact squared distance between points; float screening then exact check."""
    if len(points) < 2:
        return Fraction(0)
    arr = np.array([[float(v) for v in p] for p in points])
    best = 0.0
    chunk = max(1, 2 ** 22 // len(points))
    for start in range(0, len(points), chunk):
        block = arr[start:start + chunk]
        d2 = ((block[:, None, :] - arr[None, :, :]) ** 2).sum(axis=2)
        best = max(best, float(d2.max()))
    threshold = best * (1 - 1e-9) - 1e-300
    exact = Fraction(0)
    for start in range(0, len(points), chunk):
        block = arr[start:start + chunk]
        d2 = ((block[:, None, :] - arr[None, :, :]) ** 2).sum(axis=2)
        for i, j in zip(*np.nonzero(d2 >= threshold)):
            p, q = points[start + i], points[j]
            exact = max(exact, sum(((a - b) ** 2 for a, b in zip(p, q)), Fraction(0)))
    return exact


def diameter_with_tag(E: Shape, x: Optional[Sequence] = None) -> Diameter:
    """Diameter of E ∪ {x}; exact squared value plus float."""
    if isinstance(E, Interval):
        x = _point(x, E.dim)
        d2 = E.diameter_squared
        if x is not None:
            d2 = max(d2, E.farthest_distance_squared(x))
        return Diameter(d2)
    if E.is_empty():
        raise InputError("diameter of an empty set", 'set')
    if isinstance(E, BVSet1D):
        x = _point(x, 1)
        lo, hi = E.intervals[0][0], E.intervals[-1][1]
        if x is not None:
            lo, hi = min(lo, x[0]), max(hi, x[0])
        return Diameter((hi - lo) ** 2)
    x = _point(x, E.dim)
    corners = sorted(E.corner_points())
    d2 = _max_pair_squared(corners)
    if x is not None:
        for c in corners:
            d2 = max(d2, sum(((a - b) ** 2 for a, b in zip(c, x)), Fraction(0)))
    return Diameter(d2)


def regularity_squared(E: Shape, x: Optional[Sequence] = None) -> Fraction:
    """r(E, x)^2 = |E|^2 / (d(E ∪ {x})^2 ||E||^2); zero for null sets."""
    vol = volume(E)
    if vol == 0:
        return Fraction(0)
    d2 = diameter_with_tag(E, x).squared
    per = perimeter(E)
    return vol * vol / (d2 * per * per)


def regularity(E: Shape, x: Optional[Sequence] = None) -> float:
    return math.sqrt(regularity_squared(E, x))


def is_eps_regular(E: Shape, eps, x: Optional[Sequence] = None) -> bool:
    """Strict test r(E, x) > eps in exact arithmetic."""
    eps = parse_rational(eps, 'epsilon')
    return regularity_squared(E, x) > eps * eps


def symmetric_difference_measure(A: Figure, B: Figure) -> Fraction:
    if A.dim != B.dim:
        raise DimensionError(A.dim, B.dim)
    return A.volume + B.volume - 2 * A.intersection(B).volume
