"""MC_alpha quotients on a geometric h-grid, and the alpha <= beta comparison."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

import mpmath
import numpy as np

from charges import ScalarFunction
from errors import InputError, PreconditionError
from utils.serialization import parse_rational

from .claims import IntegralClaim, Notion
from .verdicts import CONSISTENT, REFUTED, HarnessReport

logger = logging.getLogger(__name__)

DEFAULT_POWERS = range(4, 31)
DEFAULT_TAIL = 5
DEFAULT_THRESHOLD = 1e-3
DEFAULT_SAMPLES = 6
DEFAULT_MAX_POWER = 120
EXTENSION = 16
DECAY = 0.5
GUARD_DIGITS = 30
RELATIVE_TOLERANCE = 1e-15

BELOW = 'below-threshold'
SHRINKING = 'shrinking'
STALLED = 'stalled'


@dataclass
class MCRow:
    point: float
    tail_max: float
    verdict: str
    steps: List[float] = field(default_factory=list)
    quotients: List[float] = field(default_factory=list)
    tail_state: str = BELOW
    precision: str = 'float64'

    @property
    def max_power(self) -> int:
        return -int(math.log2(abs(self.steps[-1]))) if self.steps else 0

    def to_dict(self) -> dict:
        return {'point': self.point, 'tail_max': self.tail_max, 'verdict': self.verdict,
                'tail_state': self.tail_state, 'precision': self.precision,
                'max_power': self.max_power, 'steps': self.steps, 'quotients': self.quotients}

    def summary(self) -> dict:
        return {'point': self.point, 'tail_max': self.tail_max, 'verdict': self.verdict,
                'tail_state': self.tail_state, 'max_power': self.max_power}


def step_grid(powers: Sequence[int] = DEFAULT_POWERS) -> np.ndarray:
    """h = +-2^-k, ordered by decreasing |h|."""
    return np.array([s * 2.0 ** -k for k in powers for s in (1.0, -1.0)])


def control_increments(phi: ScalarFunction, x: float, scale: Fraction, steps: np.ndarray) -> np.ndarray:
    """phi(x + scale h) - phi(x); raises when phi is not increasing along the grid."""
    values = phi.line(np.concatenate([[x], x + float(scale) * steps]))
    increments = values[1:] - values[0]
    bad = np.flatnonzero(np.sign(increments) != np.sign(steps))
    if len(bad):
        _not_increasing(x, float(steps[bad[0]]), float(increments[bad[0]]))
    return increments


def _not_increasing(x: float, h: float, increment: float):
    raise PreconditionError("control function is not strictly increasing on the grid", 'control',
                            {'x': x, 'h': h, 'increment': increment})


def mc_quotients(claim: IntegralClaim, x: float, steps: np.ndarray) -> np.ndarray:
    phi = claim.control
    denominators = control_increments(phi, x, claim.alpha, steps)
    pts = np.concatenate([[x], x + steps])
    F = claim.F_line.line(pts)
    G = claim.G_line.line(pts)
    f = claim.integrand.at([x])
    return (F[1:] - F[0] - f * (G[1:] - G[0])) / denominators


def extended_precision(claim: IntegralClaim) -> bool:
    return all(fn is not None and fn.mp is not None
               for fn in (claim.F_line, claim.G_line, claim.integrand, claim.control))


def mc_quotients_mp(claim: IntegralClaim, x: float, powers: Sequence[int]) -> np.ndarray:
    """Same quotients evaluated in mpmath with GUARD_DIGITS beyond the smallest step."""
    out = []
    with mpmath.workdps(GUARD_DIGITS + max(powers)):
        x0 = mpmath.mpf(x)
        alpha = mpmath.mpf(claim.alpha.numerator) / claim.alpha.denominator
        phi0, F0, G0 = claim.control.mp(x0), claim.F_line.mp(x0), claim.G_line.mp(x0)
        f0 = claim.integrand.mp(x0)
        for k in powers:
            for sign in (1, -1):
                h = mpmath.ldexp(sign, -k)
                increment = claim.control.mp(x0 + alpha * h) - phi0
                if not increment * sign > 0:
                    _not_increasing(x, float(h), float(increment))
                numerator = claim.F_line.mp(x0 + h) - F0 - f0 * (claim.G_line.mp(x0 + h) - G0)
                out.append(float(numerator / increment))
    return np.array(out)


def tail_state(quotients: np.ndarray, tail: int, threshold: float):
    """Classify the last `tail` scales: below threshold, still shrinking against the
    `tail` scales before them, or stalled."""
    scales = np.abs(quotients).reshape(-1, 2).max(axis=1)
    tail_max = float(scales[-tail:].max())
    if tail_max < threshold:
        return tail_max, BELOW
    previous = scales[-2 * tail:-tail]
    if len(previous) and tail_max <= DECAY * float(previous.max()):
        return tail_max, SHRINKING
    return tail_max, STALLED


def _point_row(claim: IntegralClaim, x: float, powers: List[int], tail: int, threshold: float,
               max_power: int) -> MCRow:
    if not extended_precision(claim):
        q = mc_quotients(claim, x, step_grid(powers))
        tail_max, state = tail_state(q, tail, threshold)
        precision = 'float64'
    else:
        q = mc_quotients_mp(claim, x, powers)
        tail_max, state = tail_state(q, tail, threshold)
        while state != BELOW and powers[-1] < max_power:
            more = list(range(powers[-1] + 1, min(powers[-1] + EXTENSION, max_power) + 1))
            powers = powers + more
            q = np.concatenate([q, mc_quotients_mp(claim, x, more)])
            tail_max, state = tail_state(q, tail, threshold)
        precision = f"mpmath:{GUARD_DIGITS + powers[-1]}"
    verdict = REFUTED if state == STALLED else CONSISTENT
    return MCRow(float(x), tail_max, verdict, step_grid(powers).tolist(), q.tolist(), state, precision)


def mc_alpha_check(claim: IntegralClaim, points: Optional[Sequence[float]] = None,
                   powers: Sequence[int] = DEFAULT_POWERS, tail: int = DEFAULT_TAIL,
                   threshold: float = DEFAULT_THRESHOLD, samples: int = DEFAULT_SAMPLES,
                   seed: int = 0, max_power: int = DEFAULT_MAX_POWER) -> HarnessReport:
    """Quotients at each point over h = +-2^-k.

    When the tail is not below threshold the grid is extended in steps of EXTENSION powers
    (in extended precision) up to max_power. A point is refuted only when its tail has
    stalled: not below threshold and not shrinking against the preceding scales.
    """
    if claim.notion is not Notion.MC_ALPHA:
        raise InputError(f"mc check needs notion mc-alpha, got {claim.notion.value}", 'notion')
    if claim.control is None:
        raise InputError("missing field", 'control')
    if tail < 1:
        raise InputError("must be >= 1", 'tail')
    powers = sorted(set(int(k) for k in powers))
    if len(powers) < tail:
        raise InputError(f"need at least {tail} powers", 'powers')
    if points is None:
        points = [float(p[0]) for p in claim.exceptional]
        points += list(claim.integrand.singular_points)
        if claim.interval is not None:
            a, b = (float(v) for v in claim.interval)
            rng = np.random.default_rng(np.random.SeedSequence([int(seed) % 2 ** 64]))
            points += list(rng.uniform(a, b, samples))
    if not points:
        raise InputError("no sample points: give points or an interval", 'points')
    report = HarnessReport('mc', claim.notion.value,
                           parameters={'alpha': claim.alpha, 'powers': [powers[0], powers[-1]],
                                       'max_power': max_power, 'tail': tail, 'threshold': threshold,
                                       'seed': seed, 'claim': claim.to_dict()})
    for x in points:
        row = _point_row(claim, float(x), list(powers), tail, threshold, max_power)
        if row.tail_state == SHRINKING:
            report.warnings.append(f"quotient at x={row.point:g} is {row.tail_max:.3g} at h=2^-{row.max_power}, "
                                   f"still shrinking; not refuted")
        report.rows.append(row)
        logger.debug("mc quotient at %g: tail max %.3g (%s, %s)", x, row.tail_max, row.tail_state,
                     row.precision)
    return report


@dataclass
class MonotoneComparison:
    holds: bool
    exact: bool
    checked: int
    violations: List[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {'holds': self.holds, 'exact': self.exact, 'checked': self.checked,
                'violations': self.violations}


def mc_monotone_comparison(phi: ScalarFunction, x, alpha, beta,
                           powers: Sequence[int] = DEFAULT_POWERS) -> MonotoneComparison:
    """|phi(x + alpha h) - phi(x)| <= |phi(x + beta h) - phi(x)| over the grid, for alpha < beta.

    Exact in rationals for polynomial phi; otherwise in floats with a relative tolerance.
    """
    alpha, beta = parse_rational(alpha, 'alpha'), parse_rational(beta, 'beta')
    if not 0 < alpha < beta:
        raise InputError("need 0 < alpha < beta", 'alpha')
    x = parse_rational(x, 'x')
    violations = []
    steps = [s * Fraction(1, 2 ** k) for k in powers for s in (1, -1)]
    poly = phi.polynomial
    if poly is not None:
        base = poly.exact((x,))
        for h in steps:
            small = abs(poly.exact((x + alpha * h,)) - base)
            large = abs(poly.exact((x + beta * h,)) - base)
            if small > large:
                violations.append({'h': h, 'alpha_increment': small, 'beta_increment': large})
        return MonotoneComparison(not violations, True, len(steps), violations)
    xf = float(x)
    hs = np.array([float(h) for h in steps])
    base = phi.at([xf])
    small = np.abs(phi.line(xf + float(alpha) * hs) - base)
    large = np.abs(phi.line(xf + float(beta) * hs) - base)
    for i in np.flatnonzero(small > large * (1 + RELATIVE_TOLERANCE)):
        violations.append({'h': float(hs[i]), 'alpha_increment': float(small[i]),
                           'beta_increment': float(large[i])})
    return MonotoneComparison(not violations, False, len(steps), violations)
