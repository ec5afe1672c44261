"""Signed decomposition of a box into boxes containing a given point.

Every axis on which x lies outside [a_l, b_l] is handled by reflecting the far
endpoint through x_l: Q = Q~ minus Q~', and both pieces contain x_l.  Repeating
over all such axes writes chi_Q as a signed sum of at most 2^m boxes that all
contain x.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

from errors import InputError, PreconditionError
from geometry import PASSED, Constants, Interval, is_eps_isoperimetric_sampled, regularity_squared
from utils.serialization import parse_point, parse_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SignedBox:
    box: Interval
    sign: int
    regularity_squared: Fraction
    certified: bool
    on_bound: bool = False
    isoperimetric: str = PASSED

    def to_dict(self) -> dict:
        return {'box': self.box.to_dict(), 'sign': self.sign,
                'regularity_squared': self.regularity_squared, 'certified': self.certified,
                'on_bound': self.on_bound, 'isoperimetric': self.isoperimetric}


@dataclass
class ReflectionDecomposition:
    source: Interval
    tag: Tuple[Fraction, ...]
    radius: Fraction
    reflected_axes: List[int]
    pieces: List[SignedBox] = field(default_factory=list)

    def signed_volume(self) -> Fraction:
        return sum((p.sign * p.box.volume for p in self.pieces), Fraction(0))

    def all_certified(self) -> bool:
        return all(p.certified for p in self.pieces)

    def all_isoperimetric(self) -> bool:
        return all(p.isoperimetric == PASSED for p in self.pieces)

    def to_dict(self) -> dict:
        return {'source': self.source.to_dict(), 'tag': list(self.tag), 'radius': self.radius,
                'reflected_axes': self.reflected_axes, 'pieces': [p.to_dict() for p in self.pieces],
                'signed_volume': self.signed_volume()}


def _reflect(bounds: List[Tuple[Fraction, Fraction]], axis: int,
             x: Fraction) -> Tuple[List[Tuple[Fraction, Fraction]], List[Tuple[Fraction, Fraction]]]:
    a, b = bounds[axis]
    grown, removed = list(bounds), list(bounds)
    if x < a:
        lo = x - (b - x)
        grown[axis] = (lo, b)
        removed[axis] = (lo, a)
    else:
        hi = x + (x - a)
        grown[axis] = (a, hi)
        removed[axis] = (b, hi)
    return grown, removed


def check_box_hypotheses(box: Interval, x: Sequence[Fraction], r: Fraction) -> None:
    """Q ⊂ B(x, 2r) and min side >= r / (2 sqrt n)."""
    if not box.farthest_distance_squared(x) < 4 * r * r:
        raise PreconditionError("box is not inside B(x, 2r)", 'box')
    if 4 * box.dim * min(box.sides) ** 2 < r * r:
        raise PreconditionError("shortest side is below r / (2 sqrt n)", 'box')


def reflection_decomposition(box: Interval, x, r, isoperimetric_depth: int = 1,
                             seed: int = 0) -> ReflectionDecomposition:
    """Pieces are certified when r(piece, x) >= rho(n); in one dimension every piece
    sits exactly on that bound, which is reported as on_bound.  Each piece also
    carries the sampled beta(rho)-isoperimetric status."""
    x = parse_point(x, box.dim, 'x')
    r = parse_rational(r, 'r')
    if r <= 0:
        raise InputError("must be positive", 'r')
    check_box_hypotheses(box, x, r)
    constants = Constants(box.dim)
    rho2 = constants.rho_squared
    beta = constants.beta(math.sqrt(rho2))
    axes = [l for l, (a, b) in enumerate(box.bounds) if not a <= x[l] <= b]

    signed: List[Tuple[List[Tuple[Fraction, Fraction]], int]] = [(list(box.bounds), 1)]
    for axis in axes:
        nxt = []
        for bounds, sign in signed:
            grown, removed = _reflect(bounds, axis, x[axis])
            nxt.append((grown, sign))
            nxt.append((removed, -sign))
        signed = nxt

    result = ReflectionDecomposition(box, x, r, axes)
    for bounds, sign in signed:
        piece = Interval(tuple(bounds))
        r2 = regularity_squared(piece, x)
        status = is_eps_isoperimetric_sampled(piece, beta, depth=isoperimetric_depth, seed=seed).status
        result.pieces.append(SignedBox(piece, sign, r2, r2 >= rho2, r2 == rho2, status))
    logger.debug("reflection decomposition over axes %s: %d pieces", axes, len(result.pieces))
    return result
