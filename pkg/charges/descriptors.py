"""JSON charge descriptors."""

from typing import Optional

from errors import InputError
from geometry import shape_from_dict
from utils.serialization import parse_point, parse_rational

from .charge import (Charge, CombinationCharge, DensityCharge, FluxCharge, Function1DCharge,
                     HausdorffSegmentCharge, LebesgueCharge, RestrictedCharge, ZeroCharge)
from .fields import vector_field
from .functions import scalar_function

CHARGE_KINDS = ('zero', 'lebesgue', 'density', 'flux', 'function1d', 'hausdorff-segment',
                'restricted', 'combination')


def _order(spec: dict, default: int, field: str) -> int:
    order = spec.get('order', default)
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise InputError("quadrature order must be an integer >= 1", f"{field}.order")
    return order


def charge_from_descriptor(spec, dim: Optional[int] = None, order: int = 7,
                           field: str = 'charge') -> Charge:
    """Build a charge from its descriptor; ``dim`` fills in where the descriptor omits it."""
    if isinstance(spec, Charge):
        return spec
    if isinstance(spec, str):
        spec = {'kind': spec}
    if not isinstance(spec, dict):
        raise InputError("expected an object", field)
    kind = spec.get('kind')
    n = spec.get('dim', dim)
    if kind == 'zero':
        return ZeroCharge(n)
    if kind == 'lebesgue':
        return LebesgueCharge(n)
    if kind == 'density':
        fn = scalar_function(spec.get('function', 'one'), n, f"{field}.function")
        return DensityCharge(fn, _order(spec, order, field), n if n is not None else fn.dim)
    if kind == 'flux':
        if 'field' not in spec:
            raise InputError("missing field", f"{field}.field")
        return FluxCharge(vector_field(spec['field'], n, f"{field}.field"), _order(spec, order, field))
    if kind == 'function1d':
        if n not in (None, 1):
            raise InputError("1D function charges live on the line", f"{field}.dim")
        return Function1DCharge(scalar_function(spec.get('function'), 1, f"{field}.function"))
    if kind == 'hausdorff-segment':
        start = parse_point(spec.get('start'), n, f"{field}.start")
        axis = spec.get('axis', 0)
        if not isinstance(axis, int):
            raise InputError("must be an integer", f"{field}.axis")
        return HausdorffSegmentCharge(start, axis, parse_rational(spec.get('length'), f"{field}.length"))
    if kind == 'restricted':
        region = shape_from_dict(spec.get('region'), f"{field}.region")
        base = charge_from_descriptor(spec.get('base'), region.dim, order, f"{field}.base")
        return RestrictedCharge(base, region)
    if kind == 'combination':
        rows = spec.get('terms')
        if not isinstance(rows, list) or not rows:
            raise InputError("must be a nonempty list", f"{field}.terms")
        terms = []
        for i, row in enumerate(rows):
            if not isinstance(row, dict) or 'charge' not in row:
                raise InputError("term needs 'charge'", f"{field}.terms[{i}]")
            coef = float(parse_rational(row.get('coef', 1), f"{field}.terms[{i}].coef"))
            terms.append((coef, charge_from_descriptor(row['charge'], n, order,
                                                       f"{field}.terms[{i}].charge")))
        return CombinationCharge(tuple(terms))
    raise InputError(f"unknown charge kind '{kind}' (known: {', '.join(CHARGE_KINDS)})",
                     f"{field}.kind")
