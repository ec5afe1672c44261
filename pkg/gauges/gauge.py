"""Gauges: nonnegative radius functions with a declared zero set."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from errors import InputError
from geometry import Figure
from utils.serialization import parse_point, parse_rational

logger = logging.getLogger(__name__)

GAUGE_KINDS = ('constant', 'distance-to-set', 'custom-catalog')


def _face_boxes(figure: Figure) -> Tuple[np.ndarray, np.ndarray]:
    faces = figure.boundary_faces()
    lo = np.array([[float(a) for a, _ in f.rectangle()] for f in faces]).reshape(-1, figure.dim)
    hi = np.array([[float(b) for _, b in f.rectangle()] for f in faces]).reshape(-1, figure.dim)
    return lo, hi


@dataclass(frozen=True)
class ZeroSet:
    """Finite union of points, axis hyperplanes and figure boundaries."""

    points: Tuple[Tuple[Fraction, ...], ...] = ()
    planes: Tuple[Tuple[int, Fraction], ...] = ()
    figures: Tuple[Figure, ...] = ()

    def is_empty(self) -> bool:
        return not (self.points or self.planes or self.figures)

    def contains(self, x: Sequence[Fraction]) -> bool:
        x = tuple(Fraction(v) for v in x)
        if x in self.points:
            return True
        if any(x[axis] == offset for axis, offset in self.planes):
            return True
        for fig in self.figures:
            for face in fig.boundary_faces():
                if all(a <= v <= b for v, (a, b) in zip(x, face.rectangle())):
                    return True
        return False

    def distance(self, points: np.ndarray) -> np.ndarray:
        """Euclidean distance from each row of ``points`` to the set (inf when empty)."""
        points = np.asarray(points, dtype=float)
        best = np.full(len(points), np.inf)
        for p in self.points:
            best = np.minimum(best, np.linalg.norm(points - np.array([float(v) for v in p]), axis=1))
        for axis, offset in self.planes:
            best = np.minimum(best, np.abs(points[:, axis] - float(offset)))
        for fig in self.figures:
            lo, hi = _face_boxes(fig)
            gap = np.maximum(np.maximum(lo[None, :, :] - points[:, None, :], 0.0),
                             points[:, None, :] - hi[None, :, :])
            best = np.minimum(best, np.sqrt((gap ** 2).sum(axis=2)).min(axis=1, initial=np.inf))
        return best

    def meets_interval(self, a: Fraction, b: Fraction) -> Optional[Fraction]:
        """A zero-set point inside [a, b] on the line, if any."""
        candidates = [p[0] for p in self.points] + [off for axis, off in self.planes if axis == 0]
        for fig in self.figures:
            for face in fig.boundary_faces():
                candidates.append(face.offset)
        inside = sorted(c for c in candidates if a <= c <= b)
        return inside[0] if inside else None

    def to_dict(self) -> dict:
        return {'points': [list(p) for p in self.points],
                'planes': [{'axis': a, 'offset': o} for a, o in self.planes],
                'figures': [f.to_dict() for f in self.figures]}


@dataclass(frozen=True, eq=False)
class Gauge:
    """delta(x) >= 0, vanishing exactly on ``zero_set``."""

    name: str
    radius_fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    dim: Optional[int] = None
    zero_set: ZeroSet = ZeroSet()
    params: dict = field(default_factory=dict)
    recipe: Optional[Tuple] = field(default=None, compare=False, repr=False)

    def __reduce__(self):
        if self.recipe is None:
            raise TypeError(f"gauge '{self.name}' has no rebuild recipe")
        return self.recipe

    def radii(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1) if self.dim in (None, 1) else pts.reshape(1, -1)
        values = np.asarray(self.radius_fn(pts), dtype=float).reshape(len(pts))
        return np.maximum(values, 0.0)

    def __call__(self, x) -> float:
        """Gauge value at one point; exactly 0 on the zero set."""
        point = x if isinstance(x, (list, tuple)) else (x,)
        if not self.zero_set.is_empty() and self.zero_set.contains(point):
            return 0.0
        return float(self.radii(np.array([[float(v) for v in point]]))[0])

    def exact(self, x) -> Fraction:
        """Gauge value read with decimal semantics, for strict exact comparisons."""
        if 'value' in self.params and self.name == 'constant':
            return self.params['value']
        value = self(x)
        return parse_rational(value, 'gauge') if math.isfinite(value) else Fraction(10 ** 18)

    def is_positive(self) -> bool:
        return self.zero_set.is_empty()

    def describe(self) -> dict:
        data = {'kind': self.params.get('kind', self.name), 'name': self.name}
        data.update({k: v for k, v in self.params.items() if k not in ('kind', 'figure')})
        if not self.zero_set.is_empty():
            data['zero_set'] = self.zero_set.to_dict()
        return data


def constant_gauge(value, dim: Optional[int] = None) -> Gauge:
    value = parse_rational(value, 'gauge.value')
    if value <= 0:
        raise InputError("constant gauges must be positive", 'gauge.value')
    v = float(value)
    return Gauge('constant', lambda p: np.full(len(p), v), dim, ZeroSet(),
                 {'kind': 'constant', 'value': value}, recipe=(constant_gauge, (value, dim)))


def distance_gauge(zero_set: ZeroSet, scale: float = 1.0, power: float = 1.0, floor: float = 0.0,
                   cap: float = math.inf, on_set: Optional[float] = None,
                   dim: Optional[int] = None, name: str = 'distance-to-set') -> Gauge:
    """clip(scale * dist^power, floor, cap); ``on_set`` (default floor) on the set itself."""
    if scale <= 0 or power <= 0:
        raise InputError("scale and power must be positive", 'gauge')
    if floor < 0 or cap <= 0 or floor > cap:
        raise InputError("need 0 <= floor <= cap, cap > 0", 'gauge')
    on_set = floor if on_set is None else on_set
    if on_set < 0:
        raise InputError("must be nonnegative", 'gauge.on_set')

    def radius(points: np.ndarray) -> np.ndarray:
        dist = zero_set.distance(points)
        values = np.clip(scale * dist ** power, floor, cap)
        return np.where(dist == 0, on_set, values)

    declared = zero_set if on_set == 0 else ZeroSet()
    return Gauge(name, radius, dim, declared,
                 {'kind': 'distance-to-set', 'scale': scale, 'power': power, 'floor': floor,
                  'cap': cap, 'on_set': on_set},
                 recipe=(distance_gauge, (zero_set, scale, power, floor, cap, on_set, dim, name)))


def hk_oscillatory_gauge(epsilon: float) -> Gauge:
    """Positive gauge on the line keeping Saks–Henstock sums of x^2 sin(1/x^2) below epsilon."""
    if epsilon <= 0:
        raise InputError("must be positive", 'gauge.epsilon')
    at_zero = math.sqrt(epsilon) / 2

    def radius(points: np.ndarray) -> np.ndarray:
        x = np.abs(points[:, 0])
        return np.where(x == 0, at_zero, epsilon * x ** 4 / 256)

    return Gauge('hk-oscillatory', radius, 1, ZeroSet(),
                 {'kind': 'custom-catalog', 'epsilon': epsilon}, recipe=(hk_oscillatory_gauge, (epsilon,)))


def boundary_distance_gauge(figure: Figure, cap: float = math.inf) -> Gauge:
    """Distance to the boundary of a figure, vanishing on it."""
    gauge = distance_gauge(ZeroSet(figures=(figure,)), cap=cap, dim=figure.dim,
                           name='boundary-distance')
    return Gauge('boundary-distance', gauge.radius_fn, figure.dim, gauge.zero_set,
                 {'kind': 'custom-catalog', 'cap': cap, 'figure': figure},
                 recipe=(boundary_distance_gauge, (figure, cap)))


def _zero_set(spec: dict, dim: Optional[int], field: str) -> ZeroSet:
    points = tuple(parse_point(p, dim, f"{field}.points[{i}]")
                   for i, p in enumerate(spec.get('points', [])))
    planes = []
    for i, row in enumerate(spec.get('planes', [])):
        if not isinstance(row, dict) or not isinstance(row.get('axis'), int):
            raise InputError("plane needs an integer 'axis'", f"{field}.planes[{i}]")
        planes.append((row['axis'], parse_rational(row.get('offset', 0), f"{field}.planes[{i}].offset")))
    figures = tuple(Figure.from_dict(f) for f in spec.get('figures', []))
    return ZeroSet(points, tuple(planes), figures)


def gauge_from_descriptor(spec, dim: Optional[int] = None, field: str = 'gauge') -> Gauge:
    """{"kind": "constant" | "distance-to-set" | "custom-catalog", ...}."""
    if isinstance(spec, Gauge):
        return spec
    if isinstance(spec, (int, float)) and not isinstance(spec, bool):
        return constant_gauge(spec, dim)
    if not isinstance(spec, dict):
        raise InputError("expected an object", field)
    kind = spec.get('kind')
    if kind == 'constant':
        return constant_gauge(spec.get('value'), dim)
    if kind == 'distance-to-set':
        zero = _zero_set(spec, dim, field)
        if zero.is_empty():
            raise InputError("needs 'points', 'planes' or 'figures'", field)
        return distance_gauge(zero, float(spec.get('scale', 1.0)), float(spec.get('power', 1.0)),
                              float(spec.get('floor', 0.0)), float(spec.get('cap', math.inf)),
                              spec.get('on_set'), dim)
    if kind == 'custom-catalog':
        name = spec.get('name')
        if name == 'hk-oscillatory':
            return hk_oscillatory_gauge(float(spec.get('epsilon', 0.01)))
        if name == 'boundary-distance':
            if 'figure' not in spec:
                raise InputError("missing field", f"{field}.figure")
            return boundary_distance_gauge(Figure.from_dict(spec['figure']),
                                           float(spec.get('cap', math.inf)))
        raise InputError(f"unknown catalog gauge '{name}' (known: boundary-distance, hk-oscillatory)",
                         f"{field}.name")
    raise InputError(f"unknown gauge kind '{kind}' (known: {', '.join(GAUGE_KINDS)})",
                     f"{field}.kind")
