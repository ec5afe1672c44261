"""Vector fields: polynomial coefficient tables and a named catalog."""

from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Tuple

import numpy as np

from errors import InputError

from .functions import ScalarFunction, oscillatory, oscillatory_derivative, polynomial_function
from .polynomials import Polynomial


@dataclass(frozen=True)
class VectorField:
    dim: int
    evaluator: Callable[[np.ndarray], np.ndarray] = field(compare=False)
    divergence: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, compare=False)
    components: Optional[Tuple[Polynomial, ...]] = None
    name: str = 'field'
    recipe: Optional[Tuple] = field(default=None, compare=False, repr=False)

    def __call__(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float).reshape(-1, self.dim)
        return np.asarray(self.evaluator(pts), dtype=float).reshape(len(pts), self.dim)

    def component(self, axis: int) -> Callable[[np.ndarray], np.ndarray]:
        if self.components is not None:
            return self.components[axis]
        return lambda pts: self(pts)[:, axis]

    def __reduce__(self):
        if self.recipe is None:
            raise TypeError(f"field '{self.name}' has no rebuild recipe")
        return self.recipe

    @property
    def is_polynomial(self) -> bool:
        return self.components is not None

    def divergence_polynomial(self) -> Polynomial:
        if self.components is None:
            raise InputError(f"field '{self.name}' has no symbolic divergence", 'field')
        total = Polynomial.zero(self.dim)
        for axis, comp in enumerate(self.components):
            total = total + comp.derivative(axis)
        return total

    def divergence_function(self, source: str = 'symbolic', step: float = 1e-5) -> ScalarFunction:
        """Divergence as a scalar function: symbolic or central differences."""
        if source == 'symbolic':
            if self.components is not None:
                return polynomial_function(self.divergence_polynomial())
            if self.divergence is None:
                raise InputError(f"field '{self.name}' has no symbolic divergence", 'div_source')
            return ScalarFunction(f"div {self.name}", self.divergence, self.dim)
        if source != 'numeric':
            raise InputError("must be 'symbolic' or 'numeric'", 'div_source')

        def central(pts: np.ndarray) -> np.ndarray:
            total = np.zeros(len(pts))
            for axis in range(self.dim):
                shift = np.zeros(self.dim)
                shift[axis] = step
                total += (self(pts + shift)[:, axis] - self(pts - shift)[:, axis]) / (2 * step)
            return total

        return ScalarFunction(f"numeric div {self.name}", central, self.dim)

    def describe(self) -> dict:
        if self.components is not None and self.name == 'polynomial':
            rows = []
            for axis, comp in enumerate(self.components):
                rows.extend(comp.to_dict(axis))
            return {'dim': self.dim, 'terms': rows}
        return {'dim': self.dim, 'name': self.name}


def polynomial_field(components, name: str = 'polynomial') -> VectorField:
    components = tuple(components)
    dim = len(components)

    def evaluate(pts: np.ndarray) -> np.ndarray:
        return np.stack([c(pts) for c in components], axis=1)

    return VectorField(dim, evaluate, None, components, name, recipe=(polynomial_field, (components, name)))


def _linear(n: int) -> VectorField:
    comps = []
    for i in range(n):
        powers = [0] * n
        powers[i] = 1
        terms = [(i + 1, tuple(powers))]
        if i + 1 < n:
            nxt = [0] * n
            nxt[i + 1] = 1
            terms.append((1, tuple(nxt)))
        comps.append(Polynomial(n, tuple(terms)))
    return polynomial_field(comps, 'linear')


def _coordinate(n: int) -> VectorField:
    comps = [Polynomial.monomial(n, 1, [1] + [0] * (n - 1))]
    comps += [Polynomial.zero(n) for _ in range(n - 1)]
    return polynomial_field(comps, 'coordinate')


def _quadratic(n: int) -> VectorField:
    comps = []
    for i in range(n):
        powers = [0] * n
        powers[i] = 2
        comps.append(Polynomial.monomial(n, 1, powers))
    return polynomial_field(comps, 'quadratic')


def _rotational(n: int) -> VectorField:
    if n < 2:
        raise InputError("rotational field needs dimension >= 2", 'field')
    comps = [Polynomial.monomial(n, -1, [0, 1] + [0] * (n - 2)),
             Polynomial.monomial(n, 1, [1, 0] + [0] * (n - 2))]
    comps += [Polynomial.zero(n) for _ in range(n - 2)]
    return polynomial_field(comps, 'rotational')


def _constant(n: int) -> VectorField:
    return polynomial_field([Polynomial.monomial(n, i + 1, [0] * n) for i in range(n)], 'constant')


def _singular_sin(n: int) -> VectorField:
    # u_i(x) = g(x_i) with g(t) = t^2 sin(1/t^2); divergence unbounded near x_i = 0
    return VectorField(
        n,
        lambda pts: np.stack([oscillatory(pts[:, i]) for i in range(n)], axis=1),
        lambda pts: sum(oscillatory_derivative(pts[:, i]) for i in range(n)),
        None,
        'singular-sin',
    )


FIELD_CATALOG = {
    'linear': _linear,
    'coordinate': _coordinate,
    'quadratic': _quadratic,
    'rotational': _rotational,
    'constant': _constant,
    'singular-sin': _singular_sin,
}


def linear_trace(n: int) -> int:
    """Divergence of the catalog 'linear' field."""
    return n * (n + 1) // 2


def vector_field(spec, dim: Optional[int] = None, field_name: str = 'field') -> VectorField:
    """Catalog name, {"name": ..., "dim": ...} or {"terms": [...]} coefficient table."""
    if isinstance(spec, VectorField):
        return spec
    if isinstance(spec, str):
        spec = {'name': spec}
    if not isinstance(spec, dict):
        raise InputError("expected a catalog name or an object", field_name)
    if 'terms' in spec:
        rows = spec['terms']
        if not isinstance(rows, list) or not rows:
            raise InputError("must be a nonempty list", f"{field_name}.terms")
        n = spec.get('dim', dim)
        if n is None:
            first = rows[0]
            if not isinstance(first, dict) or not isinstance(first.get('powers'), list):
                raise InputError("term needs a 'powers' list", f"{field_name}.terms[0]")
            n = len(first['powers'])
        n = int(n)
        grouped = [[] for _ in range(n)]
        for i, row in enumerate(rows):
            if not isinstance(row, dict) or 'component' not in row:
                raise InputError("term needs 'component'", f"{field_name}.terms[{i}]")
            comp = row['component']
            if not isinstance(comp, int) or not 0 <= comp < n:
                raise InputError(f"must be an integer in [0, {n})", f"{field_name}.terms[{i}].component")
            grouped[comp].append(row)
        comps = [Polynomial.from_terms(g, n, f"{field_name}.terms") if g else Polynomial.zero(n)
                 for g in grouped]
        return polynomial_field(comps)
    name = spec.get('name')
    if name not in FIELD_CATALOG:
        raise InputError(f"unknown field '{name}' (known: {', '.join(sorted(FIELD_CATALOG))})",
                         f"{field_name}.name")
    n = spec.get('dim', dim)
    if n is None:
        raise InputError("dimension required for catalog fields", f"{field_name}.dim")
    return replace(FIELD_CATALOG[name](int(n)), recipe=(vector_field, (spec, dim, field_name)))
