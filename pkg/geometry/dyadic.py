"""Dyadic cubes and dyadic figures (finite unions of dyadic cubes)."""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from errors import BudgetError, DimensionError, InputError

logger = logging.getLogger(__name__)

MIN_LEVEL = -16
DEFAULT_REFINEMENT_BUDGET = 2 ** 24

Index = Tuple[int, ...]


def dyadic_side(level: int) -> Fraction:
    """Side length 2^-level as an exact rational."""
    if level >= 0:
        return Fraction(1, 1 << level)
    return Fraction(1 << -level)


class Coverage(Enum):
    EMPTY = 'empty'
    PARTIAL = 'partial'
    FULL = 'full'


@dataclass(frozen=True, order=True)
class DyadicCube:
    level: int
    index: Index

    def __post_init__(self):
        if self.level < MIN_LEVEL:
            raise InputError(f"level {self.level} below {MIN_LEVEL}", 'level')
        object.__setattr__(self, 'index', tuple(int(k) for k in self.index))
        if not self.index:
            raise InputError("index must have at least one coordinate", 'index')

    @property
    def dim(self) -> int:
        return len(self.index)

    @property
    def side(self) -> Fraction:
        return dyadic_side(self.level)

    @property
    def volume(self) -> Fraction:
        return self.side ** self.dim

    @property
    def lower(self) -> Tuple[Fraction, ...]:
        s = self.side
        return tuple(k * s for k in self.index)

    @property
    def upper(self) -> Tuple[Fraction, ...]:
        s = self.side
        return tuple((k + 1) * s for k in self.index)

    @property
    def center(self) -> Tuple[Fraction, ...]:
        s = self.side
        return tuple((2 * k + 1) * s / 2 for k in self.index)

    def bounds(self) -> List[Tuple[Fraction, Fraction]]:
        return list(zip(self.lower, self.upper))

    def corners(self) -> Iterator[Tuple[Fraction, ...]]:
        return itertools.product(*self.bounds())

    def mother(self) -> 'DyadicCube':
        return DyadicCube(self.level - 1, tuple(k >> 1 for k in self.index))

    def ancestor(self, level: int) -> 'DyadicCube':
        shift = self.level - level
        if shift < 0:
            raise InputError(f"level {level} is finer than {self.level}", 'level')
        return DyadicCube(level, tuple(k >> shift for k in self.index))

    def children(self) -> Iterator['DyadicCube']:
        for idx in itertools.product(*[(2 * k, 2 * k + 1) for k in self.index]):
            yield DyadicCube(self.level + 1, idx)

    def descendants(self, level: int) -> Iterator['DyadicCube']:
        shift = level - self.level
        if shift < 0:
            raise InputError(f"level {level} is coarser than {self.level}", 'level')
        ranges = [range(k << shift, (k + 1) << shift) for k in self.index]
        for idx in itertools.product(*ranges):
            yield DyadicCube(level, idx)

    def shifted(self, axis: int, step: int) -> 'DyadicCube':
        idx = list(self.index)
        idx[axis] += step
        return DyadicCube(self.level, tuple(idx))

    def contains(self, other: 'DyadicCube') -> bool:
        return other.level >= self.level and other.ancestor(self.level) == self

    def to_dict(self) -> dict:
        return {'level': self.level, 'index': list(self.index)}

    @classmethod
    def from_dict(cls, data: dict, dim: Optional[int] = None) -> 'DyadicCube':
        if not isinstance(data, dict):
            raise InputError("cube must be an object", 'cubes')
        try:
            level = int(data['level'])
            index = tuple(int(k) for k in data['index'])
        except KeyError as e:
            raise InputError("missing field", f"cubes.{e.args[0]}")
        except (TypeError, ValueError):
            raise InputError("level and index must be integers", 'cubes')
        if dim is not None and len(index) != dim:
            raise DimensionError(dim, len(index), 'cubes.index')
        return cls(level, index)


@dataclass(frozen=True)
class Face:
    """Exposed boundary face piece of a figure: the face of ``cell`` across ``axis``."""

    cell: DyadicCube
    axis: int
    sign: int

    @property
    def area(self) -> Fraction:
        return self.cell.side ** (self.cell.dim - 1)

    @property
    def offset(self) -> Fraction:
        lo, hi = self.cell.bounds()[self.axis]
        return hi if self.sign > 0 else lo

    @property
    def outside(self) -> DyadicCube:
        return self.cell.shifted(self.axis, self.sign)

    def rectangle(self) -> List[Tuple[Fraction, Fraction]]:
        bounds = self.cell.bounds()
        bounds[self.axis] = (self.offset, self.offset)
        return bounds


@dataclass(frozen=True)
class Figure:
    """Normalized finite union of dyadic cubes: no cube contains another."""

    dim: int
    cubes: FrozenSet[DyadicCube]

    def __post_init__(self):
        if self.dim < 1:
            raise InputError("dimension must be >= 1", 'dim')
        for cube in self.cubes:
            if cube.dim != self.dim:
                raise DimensionError(self.dim, cube.dim, 'cubes.index')

    @classmethod
    def from_cubes(cls, dim: int, cubes: Iterable[DyadicCube]) -> 'Figure':
        kept: Set[DyadicCube] = set()
        levels: Set[int] = set()
        for cube in sorted(set(cubes), key=lambda c: (c.level, c.index)):
            if cube.dim != dim:
                raise DimensionError(dim, cube.dim, 'cubes.index')
            if any(lvl <= cube.level and cube.ancestor(lvl) in kept for lvl in levels):
                continue
            kept.add(cube)
            levels.add(cube.level)
        return cls(dim, frozenset(kept))

    @classmethod
    def empty(cls, dim: int) -> 'Figure':
        return cls(dim, frozenset())

    @classmethod
    def cube(cls, cube: DyadicCube) -> 'Figure':
        return cls(cube.dim, frozenset([cube]))

    @classmethod
    def from_cells(cls, level: int, indices: Iterable[Sequence[int]], dim: int) -> 'Figure':
        return cls.from_cubes(dim, (DyadicCube(level, tuple(i)) for i in indices))

    @classmethod
    def from_dict(cls, data: dict) -> 'Figure':
        if not isinstance(data, dict):
            raise InputError("figure must be an object", 'figure')
        if 'dim' not in data:
            raise InputError("missing field", 'dim')
        if 'cubes' not in data or not isinstance(data['cubes'], list):
            raise InputError("missing or non-list field", 'cubes')
        try:
            dim = int(data['dim'])
        except (TypeError, ValueError):
            raise InputError("must be an integer", 'dim')
        return cls.from_cubes(dim, (DyadicCube.from_dict(c, dim) for c in data['cubes']))

    def to_dict(self) -> dict:
        return {'dim': self.dim, 'cubes': [c.to_dict() for c in self.sorted_cubes()]}

    def sorted_cubes(self) -> List[DyadicCube]:
        return sorted(self.cubes, key=lambda c: (c.level, c.index))

    def __len__(self) -> int:
        return len(self.cubes)

    def is_empty(self) -> bool:
        return not self.cubes

    @cached_property
    def levels(self) -> Tuple[int, ...]:
        return tuple(sorted({c.level for c in self.cubes}))

    @property
    def finest_level(self) -> int:
        return self.levels[-1] if self.cubes else MIN_LEVEL

    @property
    def coarsest_level(self) -> int:
        return self.levels[0] if self.cubes else MIN_LEVEL

    @cached_property
    def _prefixes(self) -> FrozenSet[DyadicCube]:
        prefixes = set()
        for cube in self.cubes:
            c = cube
            while c.level > MIN_LEVEL:
                c = c.mother()
                if c in prefixes:
                    break
                prefixes.add(c)
        return frozenset(prefixes)

    @cached_property
    def volume(self) -> Fraction:
        return sum((c.volume for c in self.cubes), Fraction(0))

    def _check_dim(self, other: 'Figure') -> None:
        if other.dim != self.dim:
            raise DimensionError(self.dim, other.dim)

    def covers(self, cell: DyadicCube) -> bool:
        """True when some cube of the figure contains ``cell``."""
        for lvl in self.levels:
            if lvl > cell.level:
                break
            if cell.ancestor(lvl) in self.cubes:
                return True
        return False

    def classify(self, cell: DyadicCube) -> Coverage:
        if self.covers(cell):
            return Coverage.FULL
        if cell in self._prefixes:
            return Coverage.PARTIAL
        return Coverage.EMPTY

    def cubes_within(self, cell: DyadicCube) -> List[DyadicCube]:
        return [c for c in self.cubes if cell.contains(c)]

    def union(self, other: 'Figure') -> 'Figure':
        self._check_dim(other)
        return Figure.from_cubes(self.dim, self.cubes | other.cubes)

    def intersection(self, other: 'Figure') -> 'Figure':
        self._check_dim(other)
        out: List[DyadicCube] = []
        for cube in self.cubes:
            state = other.classify(cube)
            if state is Coverage.FULL:
                out.append(cube)
            elif state is Coverage.PARTIAL:
                out.extend(other.cubes_within(cube))
        return Figure(self.dim, frozenset(out))

    def difference(self, other: 'Figure') -> 'Figure':
        self._check_dim(other)
        out: List[DyadicCube] = []
        stack = list(self.cubes)
        while stack:
            cell = stack.pop()
            state = other.classify(cell)
            if state is Coverage.EMPTY:
                out.append(cell)
            elif state is Coverage.PARTIAL:
                stack.extend(cell.children())
        return Figure(self.dim, frozenset(out))

    def merge_siblings(self) -> 'Figure':
        """Replace every complete set of 2^n siblings by their mother, repeatedly."""
        cubes = set(self.cubes)
        full = 1 << self.dim
        changed = True
        while changed:
            changed = False
            groups: Dict[DyadicCube, List[DyadicCube]] = {}
            for c in cubes:
                if c.level > MIN_LEVEL:
                    groups.setdefault(c.mother(), []).append(c)
            for mother, kids in groups.items():
                if len(kids) == full:
                    cubes.difference_update(kids)
                    cubes.add(mother)
                    changed = True
        return Figure(self.dim, frozenset(cubes))

    def cell_count(self, level: int) -> int:
        return sum(1 << (self.dim * (level - c.level)) for c in self.cubes)

    def cells_at(self, level: int, budget: int = DEFAULT_REFINEMENT_BUDGET) -> Set[Index]:
        """All cells of the figure refined to ``level`` (must be at least the finest level)."""
        if self.cubes and level < self.finest_level:
            raise InputError(f"level {level} is coarser than the finest cube", 'level')
        count = self.cell_count(level)
        if count > budget:
            raise BudgetError('refinement', budget, count)
        cells: Set[Index] = set()
        for cube in self.cubes:
            cells.update(d.index for d in cube.descendants(level))
        return cells

    def refined(self, level: int, budget: int = DEFAULT_REFINEMENT_BUDGET) -> 'Figure':
        return Figure(self.dim, frozenset(DyadicCube(level, i) for i in self.cells_at(level, budget)))

    def bounding_box(self) -> List[Tuple[Fraction, Fraction]]:
        if not self.cubes:
            raise InputError("empty figure has no bounding box", 'figure')
        lows = [min(c.lower[a] for c in self.cubes) for a in range(self.dim)]
        highs = [max(c.upper[a] for c in self.cubes) for a in range(self.dim)]
        return list(zip(lows, highs))

    def contains_point(self, x: Sequence, closed: bool = True) -> bool:
        """Membership of a point in the closed (or open-cell) figure."""
        if len(x) != self.dim:
            raise DimensionError(self.dim, len(x), 'point')
        x = [Fraction(v) for v in x]
        for lvl in self.levels:
            scale = 1 / dyadic_side(lvl)
            options = []
            for v in x:
                t = v * scale
                k = t.numerator // t.denominator
                if t.denominator == 1 and closed:
                    options.append((k - 1, k))
                elif t.denominator == 1:
                    options.append(())
                else:
                    options.append((k,))
            for idx in itertools.product(*options):
                if DyadicCube(lvl, idx) in self.cubes:
                    return True
        return False

    def corner_points(self) -> Set[Tuple[Fraction, ...]]:
        points: Set[Tuple[Fraction, ...]] = set()
        for cube in self.cubes:
            points.update(cube.corners())
        return points

    def boundary_faces(self) -> List[Face]:
        """Exposed face pieces; faces shared by two cubes cancel."""
        faces: List[Face] = []
        for cube in self.sorted_cubes():
            for axis in range(self.dim):
                for sign in (-1, 1):
                    stack = [cube]
                    while stack:
                        inside = stack.pop()
                        state = self.classify(inside.shifted(axis, sign))
                        if state is Coverage.EMPTY:
                            faces.append(Face(inside, axis, sign))
                        elif state is Coverage.PARTIAL:
                            stack.extend(_touching_children(inside, axis, sign))
        logger.debug("figure with %d cubes has %d exposed face pieces", len(self.cubes), len(faces))
        return faces


def _touching_children(cell: DyadicCube, axis: int, sign: int) -> List[DyadicCube]:
    side = 2 * cell.index[axis] + (1 if sign > 0 else 0)
    return [c for c in cell.children() if c.index[axis] == side]


def split_face(face: Face, outer: Figure) -> Iterator[Tuple[Face, Coverage, Coverage]]:
    """Split ``face`` until both adjacent cells are classified w.r.t. ``outer``."""
    if face.cell.dim != outer.dim:
        raise DimensionError(outer.dim, face.cell.dim)
    stack = [face.cell]
    while stack:
        cell = stack.pop()
        a = outer.classify(cell)
        b = outer.classify(cell.shifted(face.axis, face.sign))
        if Coverage.PARTIAL in (a, b):
            stack.extend(_touching_children(cell, face.axis, face.sign))
        else:
            yield Face(cell, face.axis, face.sign), a, b
