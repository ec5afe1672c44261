"""Scalar functions used as densities, integrands and 1D charge generators."""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

import mpmath
import numpy as np

from errors import InputError
from utils.serialization import parse_rational

from .polynomials import Polynomial


@dataclass(frozen=True)
class ScalarFunction:
    """Vectorized real function of points of shape (m, n)."""

    name: str
    fn: Callable[[np.ndarray], np.ndarray] = field(compare=False)
    dim: Optional[int] = None
    polynomial: Optional[Polynomial] = None
    singular_points: Tuple[float, ...] = ()
    params: Tuple = ()
    mp: Optional[Callable] = field(default=None, compare=False)
    recipe: Optional[Tuple] = field(default=None, compare=False, repr=False)

    def __call__(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 0:
            pts = pts.reshape(1, 1)
        elif pts.ndim == 1:
            pts = pts.reshape(-1, 1) if (self.dim in (None, 1)) else pts.reshape(1, -1)
        if self.dim is not None and pts.shape[1] != self.dim:
            raise InputError(f"function '{self.name}' is defined in dimension {self.dim}", 'point')
        return np.asarray(self.fn(pts), dtype=float).reshape(len(pts))

    def at(self, x) -> float:
        """Value at a single point (scalar or coordinate sequence)."""
        pts = np.asarray(x, dtype=float).reshape(1, -1)
        return float(self(pts)[0])

    def line(self, x) -> np.ndarray:
        """Values along the real line."""
        return self(np.asarray(x, dtype=float).reshape(-1, 1))

    def __reduce__(self):
        if self.recipe is None:
            raise TypeError(f"function '{self.name}' has no rebuild recipe")
        return self.recipe

    def describe(self) -> dict:
        if self.polynomial is not None and self.name == 'polynomial':
            return {'kind': 'polynomial', 'terms': self.polynomial.to_dict()}
        if self.name.startswith('constant('):
            return {'kind': 'constant', 'value': self.params[0]}
        return {'kind': 'catalog', 'name': self.name}

    def scaled(self, factor: float) -> 'ScalarFunction':
        poly = None
        if self.polynomial is not None:
            poly = Polynomial(self.polynomial.dim,
                              tuple((c * _rational(factor), p) for c, p in self.polynomial.terms))
        mp = None
        if self.mp is not None:
            mp = lambda t: _mpq(_rational(factor)) * self.mp(t)
        return ScalarFunction(f"{factor}*{self.name}", lambda p: factor * self.fn(p), self.dim,
                              poly, self.singular_points, mp=mp, recipe=(_scaled, (self, factor)))

    def times_indicator(self, contains: Callable[[np.ndarray], np.ndarray], label: str) -> 'ScalarFunction':
        return ScalarFunction(f"{self.name}*chi[{label}]", lambda p: self.fn(p) * contains(p),
                              self.dim, None, self.singular_points,
                              recipe=(_with_indicator, (self, contains, label)))


def _scaled(base: ScalarFunction, factor) -> ScalarFunction:
    return base.scaled(factor)


def _with_indicator(base: ScalarFunction, contains, label: str) -> ScalarFunction:
    return base.times_indicator(contains, label)


def _rational(value):
    return Fraction(repr(float(value))) if not isinstance(value, Fraction) else value


def _first(points: np.ndarray) -> np.ndarray:
    return points[:, 0]


def _mpq(value: Fraction):
    return mpmath.mpf(value.numerator) / value.denominator


def polynomial_mp(poly: Polynomial) -> Optional[Callable]:
    """Extended-precision evaluator of a polynomial in one variable."""
    if poly.dim != 1:
        return None
    return lambda t: mpmath.fsum(_mpq(Fraction(c)) * t ** p[0] for c, p in poly.terms)


def cantor_mp(t):
    if t <= 0:
        return mpmath.mpf(0)
    if t >= 1:
        return mpmath.mpf(1)
    result, scale = mpmath.mpf(0), mpmath.mpf(1) / 2
    for _ in range(int(mpmath.mp.prec * 0.64) + 2):
        t = 3 * t
        digit = int(mpmath.floor(t))
        t -= digit
        if digit == 1:
            return result + scale
        if digit == 2:
            result += scale
        scale /= 2
    return result


def oscillatory_mp(t):
    if t == 0:
        return mpmath.mpf(0)
    return t ** 2 * mpmath.sin(1 / t ** 2)


def oscillatory_derivative_mp(t):
    if t == 0:
        return mpmath.mpf(0)
    return 2 * t * mpmath.sin(1 / t ** 2) - (2 / t) * mpmath.cos(1 / t ** 2)


def cantor(x: np.ndarray) -> np.ndarray:
    """Cantor staircase on [0, 1], constant outside."""
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    result = np.zeros_like(x)
    active = x < 1.0
    result[~active] = 1.0
    t = x.copy()
    scale = 0.5
    for _ in range(52):
        t = t * 3.0
        digit = np.floor(t)
        t = t - digit
        one = active & (digit == 1)
        two = active & (digit == 2)
        result[one] += scale
        result[two] += scale
        active &= ~one
        scale /= 2.0
        if not active.any():
            break
    return result


def oscillatory(x: np.ndarray) -> np.ndarray:
    """x^2 sin(1/x^2) with value 0 at 0."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    nz = x != 0
    out[nz] = x[nz] ** 2 * np.sin(1.0 / x[nz] ** 2)
    return out


def oscillatory_derivative(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    nz = x != 0
    v = x[nz]
    out[nz] = 2 * v * np.sin(1.0 / v ** 2) - (2.0 / v) * np.cos(1.0 / v ** 2)
    return out


def inverse_sqrt_half(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = 0.5 / np.sqrt(x[pos])
    return out


def _catalog() -> Dict[str, Callable[[int], ScalarFunction]]:
    line = lambda name, f, mp, singular=(): (
        lambda dim: ScalarFunction(name, lambda p: f(_first(p)), 1, None, singular, mp=mp))
    return {
        'zero': lambda dim: ScalarFunction('zero', lambda p: np.zeros(len(p)), None,
                                           Polynomial.zero(dim or 1), mp=lambda t: mpmath.mpf(0)),
        'one': lambda dim: ScalarFunction('one', lambda p: np.ones(len(p)), None,
                                          Polynomial.monomial(dim or 1, 1, [0] * (dim or 1)),
                                          mp=lambda t: mpmath.mpf(1)),
        'identity': lambda dim: ScalarFunction('identity', lambda p: p[:, 0], None,
                                               Polynomial.monomial(dim or 1, 1,
                                                                   [1] + [0] * ((dim or 1) - 1)),
                                               mp=lambda t: t),
        'half-space': lambda dim: ScalarFunction('half-space',
                                                 lambda p: (p[:, 0] >= 0).astype(float), None,
                                                 mp=lambda t: mpmath.mpf(1 if t >= 0 else 0)),
        'arctan': line('arctan', np.arctan, mpmath.atan),
        'cantor': line('cantor', cantor, cantor_mp),
        'oscillatory': line('oscillatory', oscillatory, oscillatory_mp),
        'oscillatory-derivative': line('oscillatory-derivative', oscillatory_derivative,
                                       oscillatory_derivative_mp, (0.0,)),
        'sqrt': line('sqrt', lambda x: np.sqrt(np.maximum(x, 0.0)), lambda t: mpmath.sqrt(max(t, 0))),
        'inverse-sqrt-half': line('inverse-sqrt-half', inverse_sqrt_half,
                                  lambda t: 1 / (2 * mpmath.sqrt(t)) if t > 0 else mpmath.mpf(0), (0.0,)),
        'sin': lambda dim: ScalarFunction('sin', lambda p: np.sin(p).sum(axis=1), None, mp=mpmath.sin),
    }


FUNCTION_CATALOG = _catalog()


def scalar_function(spec, dim: Optional[int] = None, field: str = 'function') -> ScalarFunction:
    """Build a scalar function from a catalog name or a descriptor dict."""
    if isinstance(spec, ScalarFunction):
        return spec
    return replace(_build(spec, dim, field), recipe=(scalar_function, (spec, dim, field)))


def _build(spec, dim: Optional[int], field: str) -> ScalarFunction:
    if isinstance(spec, str):
        spec = {'kind': 'catalog', 'name': spec}
    if not isinstance(spec, dict):
        raise InputError("expected a catalog name or an object", field)
    kind = spec.get('kind', 'catalog' if 'name' in spec else 'polynomial')
    if kind == 'catalog':
        name = spec.get('name')
        if name not in FUNCTION_CATALOG:
            raise InputError(f"unknown function '{name}' (known: {', '.join(sorted(FUNCTION_CATALOG))})",
                             f"{field}.name")
        return FUNCTION_CATALOG[name](dim)
    if kind == 'constant':
        value = parse_rational(spec.get('value'), f"{field}.value")
        d = dim or 1
        poly = Polynomial.monomial(d, value, [0] * d)
        return ScalarFunction(f"constant({value})", lambda p: np.full(len(p), float(value)), None, poly,
                              params=(value,), mp=lambda t: _mpq(value))
    if kind == 'polynomial':
        poly = Polynomial.from_terms(spec.get('terms'), dim, f"{field}.terms")
        return polynomial_function(poly)
    raise InputError(f"unknown function kind '{kind}'", f"{field}.kind")


def polynomial_function(poly: Polynomial) -> ScalarFunction:
    return ScalarFunction('polynomial', poly, poly.dim, poly, mp=polynomial_mp(poly),
                          recipe=(polynomial_function, (poly,)))
