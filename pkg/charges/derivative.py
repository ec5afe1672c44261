"""Lower and upper derivative estimates of a charge at a point."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple

from errors import InputError, PreconditionError
from geometry import DyadicCube, Figure, diameter_with_tag, is_eps_regular
from utils.serialization import parse_point, parse_rational

from .charge import Charge

logger = logging.getLogger(__name__)

SEARCH_FAMILY = 'cubes+axis-pairs/v1'
EXTRA_LEVELS = 3


@dataclass
class DerivativeEstimate:
    lower: float
    upper: float
    eta: float
    rows: List[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {'lower': self.lower, 'upper': self.upper, 'eta': self.eta,
                'family': SEARCH_FAMILY, 'radii': self.rows,
                'note': 'one-sided estimates over a fixed search family'}


def start_level(radius: Fraction, dim: int) -> int:
    """Smallest m with 2 sqrt(n) 2^-m < r."""
    m = max(0, math.floor(-math.log2(float(radius))))
    while 4 * dim * Fraction(1, 4 ** m) >= radius * radius:
        m += 1
    while m > 0 and 4 * dim * Fraction(1, 4 ** (m - 1)) < radius * radius:
        m -= 1
    return m


def cells_touching(x: Tuple[Fraction, ...], level: int) -> List[DyadicCube]:
    """Cells of ``level`` whose closure contains x."""
    scale = 2 ** level
    choices = []
    for v in x:
        t = v * scale
        k = math.floor(t)
        choices.append((k - 1, k) if t == k else (k,))
    cells = [()]
    for options in choices:
        cells = [c + (k,) for c in cells for k in options]
    return [DyadicCube(level, idx) for idx in cells]


def candidate_figures(x: Tuple[Fraction, ...], level: int) -> Iterator[Figure]:
    """Cells touching x and their unions with an axis neighbour."""
    seen = set()
    for cell in cells_touching(x, level):
        for fig_cells in [(cell,)] + [(cell, cell.shifted(axis, step))
                                      for axis in range(cell.dim) for step in (-1, 1)]:
            key = frozenset(fig_cells)
            if key in seen:
                continue
            seen.add(key)
            yield Figure.from_cubes(cell.dim, fig_cells)


def charge_derivative_estimate(charge: Charge, x, eta, radii: Sequence) -> DerivativeEstimate:
    """Envelopes of inf / sup of F(E)/|E| over eta-regular candidates E with d(E ∪ {x}) < r."""
    radii = [parse_rational(r, 'radii') for r in radii]
    if not radii or any(r <= 0 for r in radii):
        raise InputError("must be a nonempty list of positive radii", 'radii')
    radii = sorted(radii, reverse=True)
    dim = charge.dim
    x = parse_point(x, dim, 'x')
    dim = len(x)
    eta_q = parse_rational(eta, 'eta')
    if eta_q <= 0:
        raise InputError("must be positive", 'eta')

    lower, upper = -math.inf, math.inf
    rows = []
    for r in radii:
        m = start_level(r, dim)
        ratios = []
        for level in range(m, m + EXTRA_LEVELS):
            for E in candidate_figures(x, level):
                if diameter_with_tag(E, x).squared >= r * r:
                    continue
                if not is_eps_regular(E, eta_q, x):
                    continue
                ratios.append(charge.evaluate(E) / float(E.volume))
        if ratios:
            lower = max(lower, min(ratios))
            upper = min(upper, max(ratios))
        rows.append({'radius': r, 'level': m, 'candidates': len(ratios),
                     'inf': min(ratios) if ratios else None,
                     'sup': max(ratios) if ratios else None})
        logger.debug("radius %s: %d admissible candidates", r, len(ratios))
    if not rows[-1]['candidates']:
        raise PreconditionError("no eta-regular candidate at the smallest radius", 'eta',
                                {'radius': radii[-1]})
    return DerivativeEstimate(lower, upper, float(eta_q), rows)
