from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np

from errors import InputError
from utils.serialization import parse_rational

Term = Tuple[Fraction, Tuple[int, ...]]


@dataclass(frozen=True)
class Polynomial:
    """Scalar polynomial with exact rational coefficients."""

    dim: int
    terms: Tuple[Term, ...]

    def __post_init__(self):
        merged: Dict[Tuple[int, ...], Fraction] = {}
        for coef, powers in self.terms:
            powers = tuple(int(p) for p in powers)
            if len(powers) != self.dim:
                raise InputError(f"expected {self.dim} powers, got {len(powers)}", 'powers')
            if any(p < 0 for p in powers):
                raise InputError("powers must be nonnegative", 'powers')
            merged[powers] = merged.get(powers, Fraction(0)) + Fraction(coef)
        clean = tuple(sorted(((c, p) for p, c in merged.items() if c != 0), key=lambda t: t[1]))
        object.__setattr__(self, 'terms', clean)

    @classmethod
    def zero(cls, dim: int) -> 'Polynomial':
        return cls(dim, ())

    @classmethod
    def monomial(cls, dim: int, coef, powers: Sequence[int]) -> 'Polynomial':
        return cls(dim, ((Fraction(coef), tuple(powers)),))

    @property
    def degree(self) -> int:
        return max((sum(p) for _, p in self.terms), default=0)

    def __add__(self, other: 'Polynomial') -> 'Polynomial':
        return Polynomial(self.dim, self.terms + other.terms)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float).reshape(-1, self.dim)
        out = np.zeros(len(points))
        for coef, powers in self.terms:
            value = np.full(len(points), float(coef))
            for axis, p in enumerate(powers):
                if p:
                    value = value * points[:, axis] ** p
            out += value
        return out

    def exact(self, point: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for coef, powers in self.terms:
            value = coef
            for v, p in zip(point, powers):
                value *= Fraction(v) ** p
            total += value
        return total

    def derivative(self, axis: int) -> 'Polynomial':
        terms = []
        for coef, powers in self.terms:
            if powers[axis]:
                lowered = list(powers)
                lowered[axis] -= 1
                terms.append((coef * powers[axis], tuple(lowered)))
        return Polynomial(self.dim, tuple(terms))

    def integrate_box(self, bounds: Sequence[Tuple[Fraction, Fraction]],
                      skip_axis: int = None) -> Fraction:
        """Exact integral over a box; ``skip_axis`` integrates over a face instead."""
        total = Fraction(0)
        for coef, powers in self.terms:
            value = coef
            for axis, ((a, b), p) in enumerate(zip(bounds, powers)):
                a, b = Fraction(a), Fraction(b)
                if axis == skip_axis:
                    value *= a ** p
                else:
                    value *= (b ** (p + 1) - a ** (p + 1)) / (p + 1)
            total += value
        return total

    def to_dict(self, component: int = None) -> List[dict]:
        rows = []
        for coef, powers in self.terms:
            row = {'coef': coef, 'powers': list(powers)}
            if component is not None:
                row['component'] = component
            rows.append(row)
        return rows

    @classmethod
    def from_terms(cls, rows: list, dim: int = None, field: str = 'terms') -> 'Polynomial':
        if not isinstance(rows, list):
            raise InputError("expected a list of terms", field)
        parsed = []
        for i, row in enumerate(rows):
            if not isinstance(row, dict) or 'coef' not in row or 'powers' not in row:
                raise InputError("term needs 'coef' and 'powers'", f"{field}[{i}]")
            powers = row['powers']
            if not isinstance(powers, list):
                raise InputError("must be a list", f"{field}[{i}].powers")
            if dim is None:
                dim = len(powers)
            parsed.append((parse_rational(row['coef'], f"{field}[{i}].coef"), tuple(powers)))
        if dim is None:
            raise InputError("cannot infer dimension from an empty term list", field)
        return cls(dim, tuple(parsed))
