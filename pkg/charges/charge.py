"""Additive set functions evaluated on figures, boxes and 1D sets."""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple, Union

import numpy as np

from errors import DimensionError, InputError
from geometry import BVSet1D, Coverage, DyadicCube, Figure, Interval, dyadic_side

from .fields import VectorField
from .functions import ScalarFunction
from .quadrature import integrate_boxes

logger = logging.getLogger(__name__)

Shape = Union[Figure, BVSet1D, Interval]


def shape_boxes(E: Shape) -> Tuple[np.ndarray, np.ndarray]:
    """Lower and upper corners of the pieces of E as float arrays."""
    if isinstance(E, Figure):
        cubes = E.sorted_cubes()
        lo = np.array([[float(v) for v in c.lower] for c in cubes]).reshape(-1, E.dim)
        hi = np.array([[float(v) for v in c.upper] for c in cubes]).reshape(-1, E.dim)
        return lo, hi
    if isinstance(E, BVSet1D):
        lo = np.array([[float(a)] for a, _ in E.intervals]).reshape(-1, 1)
        hi = np.array([[float(b)] for _, b in E.intervals]).reshape(-1, 1)
        return lo, hi
    if isinstance(E, Interval):
        return (np.array([[float(a) for a, _ in E.bounds]]),
                np.array([[float(b) for _, b in E.bounds]]))
    raise InputError(f"cannot evaluate a charge on {type(E).__name__}", 'set')


def cell_boxes(level: int, indices: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    side = float(dyadic_side(level))
    lo = np.asarray(indices, dtype=float) * side
    return lo, lo + side


def _faces_of_boxes(lo: np.ndarray, hi: np.ndarray, axis: int) -> Iterator[Tuple[np.ndarray, np.ndarray, float]]:
    for sign, plane in ((1.0, hi), (-1.0, lo)):
        f_lo, f_hi = lo.copy(), hi.copy()
        f_lo[:, axis] = plane[:, axis]
        f_hi[:, axis] = plane[:, axis]
        yield f_lo, f_hi, sign


def intersect_shapes(E: Shape, A: Shape) -> Shape:
    if isinstance(E, Figure) and isinstance(A, Figure):
        return E.intersection(A)
    if isinstance(E, Figure) and E.dim == 1:
        E = BVSet1D.from_figure(E)
    if isinstance(A, Figure) and A.dim == 1:
        A = BVSet1D.from_figure(A)
    if isinstance(E, BVSet1D) and isinstance(A, BVSet1D):
        return E.intersection(A)
    raise InputError(f"cannot intersect {type(E).__name__} with {type(A).__name__}", 'set')


class Charge(ABC):
    """Base class: evaluate(E) with dimension checking and linear structure."""

    dim: Optional[int] = None

    def evaluate(self, E: Shape) -> float:
        if self.dim is not None and E.dim != self.dim:
            raise DimensionError(self.dim, E.dim, 'set')
        if isinstance(E, (Figure, BVSet1D)) and E.is_empty():
            return 0.0
        return float(self._evaluate(E))

    @abstractmethod
    def _evaluate(self, E: Shape) -> float:
        """Value on a nonempty set of matching dimension."""

    def evaluate_cells(self, level: int, indices: np.ndarray) -> np.ndarray:
        """Values on dyadic cells of one level; subclasses vectorize."""
        return np.array([self.evaluate(Figure.cube(DyadicCube(level, tuple(int(k) for k in idx))))
                         for idx in np.asarray(indices)])

    @abstractmethod
    def describe(self) -> dict:
        """JSON descriptor."""

    def restrict(self, A: Shape) -> 'Charge':
        return RestrictedCharge(self, A)

    def __add__(self, other: 'Charge') -> 'Charge':
        return CombinationCharge(((1.0, self), (1.0, other)))

    def __sub__(self, other: 'Charge') -> 'Charge':
        return CombinationCharge(((1.0, self), (-1.0, other)))

    def __neg__(self) -> 'Charge':
        return CombinationCharge(((-1.0, self),))

    def __mul__(self, factor: float) -> 'Charge':
        return CombinationCharge(((float(factor), self),))

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class ZeroCharge(Charge):
    dim: Optional[int] = None

    def _evaluate(self, E: Shape) -> float:
        return 0.0

    def evaluate_cells(self, level: int, indices: np.ndarray) -> np.ndarray:
        return np.zeros(len(indices))

    def describe(self) -> dict:
        return {'kind': 'zero'}


@dataclass(frozen=True, eq=False)
class LebesgueCharge(Charge):
    """E -> |E|, exact."""

    dim: Optional[int] = None

    def _evaluate(self, E: Shape) -> float:
        return float(E.volume)

    def evaluate_cells(self, level: int, indices: np.ndarray) -> np.ndarray:
        n = np.asarray(indices).reshape(len(indices), -1).shape[1]
        return np.full(len(indices), float(dyadic_side(level)) ** n)

    def describe(self) -> dict:
        return {'kind': 'lebesgue'}


@dataclass(frozen=True, eq=False)
class DensityCharge(Charge):
    """E -> integral of f over E by tensor Gauss–Legendre."""

    function: ScalarFunction
    order: int = 7
    dim: Optional[int] = None

    def __post_init__(self):
        if self.order < 1:
            raise InputError("quadrature order must be >= 1", 'order')

    def _evaluate(self, E: Shape) -> float:
        lo, hi = shape_boxes(E)
        return float(integrate_boxes(self.function, lo, hi, self.order).sum())

    def evaluate_cells(self, level: int, indices: np.ndarray) -> np.ndarray:
        lo, hi = cell_boxes(level, indices)
        return integrate_boxes(self.function, lo, hi, self.order)

    def evaluate_exact(self, E: Shape) -> Fraction:
        """Symbolic monomial integration; polynomial densities only."""
        poly = self.function.polynomial
        if poly is None:
            raise InputError("exact evaluation needs a polynomial density", 'function')
        if isinstance(E, Figure):
            return sum((poly.integrate_box(c.bounds()) for c in E.cubes), Fraction(0))
        if isinstance(E, BVSet1D):
            return sum((poly.integrate_box([iv]) for iv in E.intervals), Fraction(0))
        return poly.integrate_box(E.bounds)

    def describe(self) -> dict:
        return {'kind': 'density', 'function': self.function.describe(), 'order': self.order}


@dataclass(frozen=True, eq=False)
class FluxCharge(Charge):
    """E -> outward flux of u through the exposed boundary faces of E."""

    field: VectorField
    order: int = 7

    def __post_init__(self):
        if self.order < 1:
            raise InputError("quadrature order must be >= 1", 'order')

    @property
    def dim(self) -> int:
        return self.field.dim

    def _evaluate(self, E: Shape) -> float:
        if isinstance(E, Figure):
            total = 0.0
            faces = E.boundary_faces()
            for axis in range(self.dim):
                picked = [f for f in faces if f.axis == axis]
                if not picked:
                    continue
                lo = np.array([[float(v) for v in f.cell.lower] for f in picked])
                hi = np.array([[float(v) for v in f.cell.upper] for f in picked])
                plane = np.array([float(f.offset) for f in picked])
                lo[:, axis] = plane
                hi[:, axis] = plane
                signs = np.array([float(f.sign) for f in picked])
                values = integrate_boxes(self.field.component(axis), lo, hi, self.order, axis)
                total += float(np.dot(signs, values))
            return total
        lo, hi = shape_boxes(E)
        return float(self._box_fluxes(lo, hi).sum())

    def _box_fluxes(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        out = np.zeros(len(lo))
        for axis in range(self.dim):
            comp = self.field.component(axis)
            for f_lo, f_hi, sign in _faces_of_boxes(lo, hi, axis):
                out += sign * integrate_boxes(comp, f_lo, f_hi, self.order, axis)
        return out

    def evaluate_cells(self, level: int, indices: np.ndarray) -> np.ndarray:
        lo, hi = cell_boxes(level, indices)
        return self._box_fluxes(lo, hi)

    def evaluate_exact(self, E: Figure) -> Fraction:
        if not self.field.is_polynomial:
            raise InputError("exact flux needs a polynomial field", 'field')
        total = Fraction(0)
        for face in E.boundary_faces():
            bounds = face.rectangle()
            total += face.sign * self.field.components[face.axis].integrate_box(bounds, face.axis)
        return total

    def describe(self) -> dict:
        return {'kind': 'flux', 'field': self.field.describe(), 'order': self.order}


@dataclass(frozen=True, eq=False)
class Function1DCharge(Charge):
    """1D charge E -> sum F(b_i) - F(a_i); a charge exactly when F is continuous."""

    function: ScalarFunction
    dim: int = 1

    def _evaluate(self, E: Shape) -> float:
        lo, hi = shape_boxes(E)
        return float((self.function.line(hi[:, 0]) - self.function.line(lo[:, 0])).sum())

    def evaluate_cells(self, level: int, indices: np.ndarray) -> np.ndarray:
        lo, hi = cell_boxes(level, np.asarray(indices).reshape(-1, 1))
        return self.function.line(hi[:, 0]) - self.function.line(lo[:, 0])

    def describe(self) -> dict:
        return {'kind': 'function1d', 'function': self.function.describe()}


@dataclass(frozen=True, eq=False)
class HausdorffSegmentCharge(Charge):
    """E -> length of S ∩ E for an axis-parallel segment S; additive but not a charge."""

    start: Tuple[Fraction, ...]
    axis: int
    length: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'start', tuple(Fraction(v) for v in self.start))
        object.__setattr__(self, 'length', Fraction(self.length))
        if len(self.start) < 2:
            raise InputError("segment charges live in dimension >= 2", 'start')
        if not 0 <= self.axis < len(self.start):
            raise InputError("axis out of range", 'axis')
        if self.length <= 0:
            raise InputError("must be positive", 'length')

    @property
    def dim(self) -> int:
        return len(self.start)

    @property
    def end(self) -> Fraction:
        return self.start[self.axis] + self.length

    def _evaluate(self, E: Shape) -> float:
        if not isinstance(E, Figure):
            raise InputError("segment charges evaluate on figures", 'set')
        s0, s1 = self.start[self.axis], self.end
        pieces = []
        for cube in E.cubes:
            bounds = cube.bounds()
            if all(a <= self.start[j] <= b for j, (a, b) in enumerate(bounds) if j != self.axis):
                lo, hi = max(bounds[self.axis][0], s0), min(bounds[self.axis][1], s1)
                if lo < hi:
                    pieces.append((lo, hi))
        return float(BVSet1D(tuple(pieces)).volume)

    def describe(self) -> dict:
        return {'kind': 'hausdorff-segment', 'start': list(self.start), 'axis': self.axis,
                'length': self.length}


@dataclass(frozen=True, eq=False)
class RestrictedCharge(Charge):
    """E -> base(E ∩ A)."""

    base: Charge
    region: Shape

    @property
    def dim(self) -> int:
        return self.region.dim

    def _evaluate(self, E: Shape) -> float:
        return self.base.evaluate(intersect_shapes(E, self.region))

    def evaluate_cells(self, level: int, indices: np.ndarray) -> np.ndarray:
        indices = np.asarray(indices).reshape(len(indices), -1)
        if not isinstance(self.region, Figure):
            return super().evaluate_cells(level, indices)
        out = np.zeros(len(indices))
        full = []
        for i, idx in enumerate(indices):
            cell = DyadicCube(level, tuple(int(k) for k in idx))
            state = self.region.classify(cell)
            if state is Coverage.FULL:
                full.append(i)
            elif state is Coverage.PARTIAL:
                out[i] = self.base.evaluate(Figure.cube(cell).intersection(self.region))
        if full:
            out[full] = self.base.evaluate_cells(level, indices[full])
        return out

    def describe(self) -> dict:
        return {'kind': 'restricted', 'base': self.base.describe(), 'region': self.region.to_dict()}


@dataclass(frozen=True, eq=False)
class CombinationCharge(Charge):
    """Finite linear combination sum c_k F_k."""

    terms: Tuple[Tuple[float, Charge], ...]

    @property
    def dim(self) -> Optional[int]:
        dims = {c.dim for _, c in self.terms if c.dim is not None}
        if len(dims) > 1:
            raise DimensionError(min(dims), max(dims), 'terms')
        return dims.pop() if dims else None

    def _evaluate(self, E: Shape) -> float:
        return sum(coef * charge.evaluate(E) for coef, charge in self.terms if coef != 0)

    def evaluate_cells(self, level: int, indices: np.ndarray) -> np.ndarray:
        out = np.zeros(len(indices))
        for coef, charge in self.terms:
            if coef != 0:
                out += coef * charge.evaluate_cells(level, indices)
        return out

    def describe(self) -> dict:
        return {'kind': 'combination',
                'terms': [{'coef': c, 'charge': ch.describe()} for c, ch in self.terms]}


def iter_charges(charge: Charge) -> Iterator[Charge]:
    """The charge and every charge nested in it."""
    yield charge
    if isinstance(charge, RestrictedCharge):
        yield from iter_charges(charge.base)
    elif isinstance(charge, CombinationCharge):
        for _, sub in charge.terms:
            yield from iter_charges(sub)
