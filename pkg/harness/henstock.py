"""Henstock–Kurzweil integration on the line: adaptive values and Saks–Henstock sums.

``hk_integrate_adaptive`` integrates regular pieces with bisected Gauss–Legendre
panels.  A piece ending at a declared singular point is reduced to cutoffs
toward it: with J(t) the integral over [t, d], the estimate after segment k is
the average of J over [d/2^(k+1), d/2^k].  Averaging the cutoff damps the
oscillation that a plain J(t) keeps near points like 0 for (x^2 sin(1/x^2))'.
The result is an estimate, not a certified HK value.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from charges import ScalarFunction, gauss_legendre
from errors import BudgetError, InputError
from gauges import Gauge, PartitionItem, cousin_partition_1d
from utils.parallel import run_trials
from utils.serialization import parse_rational

from .claims import IntegralClaim, Notion
from .verdicts import EpsilonRow, HarnessReport, verdict_for

logger = logging.getLogger(__name__)

PANEL_ORDER = 10
MIN_SEGMENTS = 3
CALM_STEPS = 2
MAX_CUTOFFS = 128
DEFAULT_WINDOWS = 16

GaugeSource = Union[Gauge, Callable[[float], Gauge]]


@dataclass
class PanelResult:
    value: float
    error: float
    panels: int


@dataclass(frozen=True)
class CutoffStep:
    piece: int
    step: int
    cutoff: float
    value: float

    def to_dict(self) -> dict:
        return {'piece': self.piece, 'step': self.step, 'cutoff': self.cutoff, 'value': self.value}


@dataclass
class HKIntegral:
    value: float
    error: float
    panels: int
    pieces: List[Tuple[float, float, str]] = field(default_factory=list)
    trace: List[CutoffStep] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {'value': self.value, 'error_indicator': self.error, 'panels': self.panels,
                'pieces': [list(p) for p in self.pieces], 'trace': self.trace,
                'note': 'estimate from successive refinement; not a certified HK value'}


def adaptive_gauss(fn: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, tolerance: float,
                   budget: int, order: int = PANEL_ORDER) -> PanelResult:
    """Bisect panels until each halving changes the panel value by less than its share of tolerance."""
    nodes, weights = gauss_legendre(order)

    def rule(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        pts = a[:, None] + (b - a)[:, None] * nodes[None, :]
        return (np.asarray(fn(pts.ravel()), dtype=float).reshape(len(a), -1) @ weights) * (b - a)

    a = np.array([lo], dtype=float)
    b = np.array([hi], dtype=float)
    whole = rule(a, b)
    total = error = 0.0
    panels = 1
    width = hi - lo
    while len(a):
        mid = (a + b) / 2
        left, right = rule(a, mid), rule(mid, b)
        refined = left + right
        change = np.abs(refined - whole)
        done = (change <= tolerance * (b - a) / width) | (b - a <= 1e-14 * np.maximum(1.0, np.abs(a)))
        total += float(refined[done].sum())
        error += float(change[done].sum())
        panels += 2 * len(a)
        if panels > budget:
            raise BudgetError('hk panel', budget, panels, {'interval': [lo, hi]})
        keep = ~done
        a, b = np.concatenate([a[keep], mid[keep]]), np.concatenate([mid[keep], b[keep]])
        whole = np.concatenate([left[keep], right[keep]])
    return PanelResult(total, error, panels)


def _cutoff_limit(g: Callable[[np.ndarray], np.ndarray], d: float, tolerance: float, budget: int,
                  piece: int, trace: List[CutoffStep],
                  max_cutoffs: int = MAX_CUTOFFS) -> Tuple[float, float, int]:
    """Limit of the averaged cutoffs of the integral of g over (0, d]; g is singular at 0."""
    J = 0.0
    previous = None
    calm = 0
    panels = 0
    for k in range(max_cutoffs):
        hi = d / 2 ** k
        lo = hi / 2
        width = hi - lo
        seg_tol = tolerance / (8 * (k + 1) ** 2)
        plain = adaptive_gauss(g, lo, hi, seg_tol, budget - panels)
        panels += plain.panels
        moment = adaptive_gauss(lambda u: g(u) * (u - lo), lo, hi, seg_tol * width, budget - panels)
        panels += moment.panels
        value = J + moment.value / width
        J += plain.value
        trace.append(CutoffStep(piece, k, lo, value))
        if previous is not None and abs(value - previous) < tolerance / 8:
            calm += 1
        else:
            calm = 0
        if k + 1 >= MIN_SEGMENTS and calm >= CALM_STEPS:
            return value, abs(value - previous), panels
        previous = value
    raise BudgetError('hk cutoff', max_cutoffs, max_cutoffs + 1,
                      {'piece': piece, 'last_value': previous})


def _pieces(a: float, b: float, singular: Sequence[float]) -> List[Tuple[float, float, str]]:
    """Split [a, b] so each piece has at most one singular endpoint."""
    points = sorted({a, b} | {s for s in singular if a <= s <= b})
    marks = set(s for s in singular if a <= s <= b)
    pieces = []
    for p, q in zip(points, points[1:]):
        left, right = p in marks, q in marks
        if left and right:
            mid = (p + q) / 2
            pieces += [(p, mid, 'left'), (mid, q, 'right')]
        elif left:
            pieces.append((p, q, 'left'))
        elif right:
            pieces.append((p, q, 'right'))
        else:
            pieces.append((p, q, 'regular'))
    return pieces


def hk_integrate_adaptive(f: ScalarFunction, a, b, tolerance: float = 1e-6,
                          panel_budget: int = 2 ** 22,
                          singular_points: Optional[Sequence[float]] = None) -> HKIntegral:
    a, b = float(parse_rational(a, 'a')), float(parse_rational(b, 'b'))
    if not a < b:
        raise InputError("need a < b", 'interval')
    if tolerance <= 0:
        raise InputError("must be positive", 'tolerance')
    singular = tuple(f.singular_points) + tuple(float(s) for s in (singular_points or ()))
    pieces = _pieces(a, b, singular)
    piece_tol = tolerance / (2 * len(pieces))
    result = HKIntegral(0.0, 0.0, 0, pieces)
    for index, (p, q, kind) in enumerate(pieces):
        remaining = panel_budget - result.panels
        if kind == 'regular':
            part = adaptive_gauss(f.line, p, q, piece_tol, remaining)
            result.value += part.value
            result.error += part.error
            result.panels += part.panels
            continue
        if kind == 'left':
            g = lambda u, p=p: f.line(p + u)
        else:
            g = lambda u, q=q: f.line(q - u)
        value, change, panels = _cutoff_limit(g, q - p, piece_tol, remaining, index, result.trace)
        result.value += value
        result.error += change
        result.panels += panels
    logger.info("hk integral over [%g, %g]: %.12g (indicator %.2g, %d panels)", a, b, result.value,
                result.error, result.panels)
    return result


def _fixed_windows(a: Fraction, b: Fraction, singular: Sequence[Fraction],
                   gauge: Gauge) -> List[Tuple[Fraction, Fraction]]:
    cap = (b - a) / 8
    windows = []
    for p in sorted({a, b} | set(singular)):
        width = min(parse_rational(0.9 * gauge((p,)), 'gauge') if gauge((p,)) > 0 else cap, cap)
        if p == a:
            windows.append((a, a + width))
        elif p == b:
            windows.append((b - width, b))
        else:
            windows.append((max(a, p - width / 2), min(b, p + width / 2)))
    return windows


def _random_window(a: Fraction, b: Fraction, anchors: Sequence[Fraction], gauge: Gauge,
                   rng: np.random.Generator) -> Optional[Tuple[Fraction, Fraction]]:
    """A few gauge lengths long, placed log-uniformly close to an anchor point."""
    anchor = anchors[int(rng.integers(len(anchors)))]
    offset = float(b - a) * 10 ** rng.uniform(-3, 0)
    x = float(anchor) + (offset if rng.random() < 0.5 else -offset)
    x = min(max(x, float(a)), float(b))
    delta = gauge((x,))
    if not delta > 0:
        return None
    length = delta * rng.uniform(1, 4)
    lo = parse_rational(max(float(a), x - length / 2), 'window')
    hi = parse_rational(min(float(b), x + length / 2), 'window')
    return (lo, hi) if lo < hi else None


def _term(claim: IntegralClaim, item: PartitionItem) -> float:
    (u, v), = item.set.bounds
    F, G = claim.F_line, claim.G_line
    ends = np.array([float(u), float(v)])
    Fu, Fv = F.line(ends)
    Gu, Gv = G.line(ends)
    return float(Fv - Fu - claim.integrand.at([float(item.tag[0])]) * (Gv - Gu))


def _same_gauge(gauge: Gauge, eps: float) -> Gauge:
    return gauge


@dataclass
class SaksHenstockTrial:
    """One trial of ``hk_check``: windows, their Cousin partitions and the sum per epsilon."""

    claim: IntegralClaim
    gauge_for: Callable[[float], Gauge]
    epsilons: Tuple[float, ...]
    windows: int
    singular: List[Fraction]

    def __call__(self, index: int, rng: np.random.Generator) -> dict:
        a, b = self.claim.interval
        anchors = sorted({a, b} | set(self.singular))
        strong = self.claim.notion is Notion.HKS
        out = {}
        for eps in self.epsilons:
            g = self.gauge_for(eps)
            if not g.is_positive():
                raise InputError("hk check needs a positive gauge", 'gauge')
            chosen = _fixed_windows(a, b, self.singular, g)
            for _ in range(self.windows * 4):
                if len(chosen) >= self.windows + len(anchors):
                    break
                w = _random_window(a, b, anchors, g, rng)
                if w and all(w[1] <= lo or hi <= w[0] for lo, hi in chosen):
                    chosen.append(w)
            items = [item for lo, hi in sorted(chosen) for item in cousin_partition_1d(lo, hi, g).items]
            terms = [_term(self.claim, item) for item in items]
            total = sum(abs(t) for t in terms) if strong else abs(sum(terms))
            out[eps] = (total, {'windows': [[lo, hi] for lo, hi in sorted(chosen)],
                                'pieces': len(items)})
        return out


def hk_check(claim: IntegralClaim, gauge: GaugeSource, trials: int = 8, seed: int = 0,
             epsilons: Optional[Sequence[float]] = None, windows: int = DEFAULT_WINDOWS,
             jobs: int = 1) -> HarnessReport:
    """Saks–Henstock sums over delta-fine subpartitions made of disjoint Cousin-partitioned windows.

    ``gauge`` is either one gauge or a map eps -> gauge.  HKS sums absolute
    terms; HK takes the absolute value of the signed sum.
    """
    if claim.notion not in (Notion.HK, Notion.HKS):
        raise InputError(f"hk check needs notion hk or hks, got {claim.notion.value}", 'notion')
    if claim.interval is None:
        raise InputError("missing field", 'interval')
    a, b = claim.interval
    epsilons = tuple(epsilons or claim.epsilons)
    gauge_for = gauge if callable(gauge) and not isinstance(gauge, Gauge) else partial(_same_gauge, gauge)
    singular = [parse_rational(s, 'singular') for s in claim.integrand.singular_points
                if a <= parse_rational(s, 'singular') <= b]
    singular += [p[0] for p in claim.exceptional if a <= p[0] <= b]
    trial = SaksHenstockTrial(claim, gauge_for, epsilons, windows, singular)
    results = run_trials(trial, trials, seed, jobs)
    report = HarnessReport('hk', claim.notion.value,
                           parameters={'trials': trials, 'seed': seed, 'windows': windows,
                                       'interval': [a, b], 'claim': claim.to_dict()})
    for eps in epsilons:
        sums = [r[eps][0] for r in results]
        best = int(np.argmax(sums))
        report.rows.append(EpsilonRow(eps, sums[best], verdict_for(sums[best], eps), best,
                                      results[best][eps][1], sums))
        logger.info("%s eps=%g: max Saks–Henstock sum %.3g", claim.name, eps, sums[best])
    return report


def definite_line_value(claim: IntegralClaim) -> float:
    """F(b) - F(a) for a line claim."""
    if claim.interval is None:
        raise InputError("missing field", 'interval')
    a, b = claim.interval
    Fa, Fb = claim.F_line.line(np.array([float(a), float(b)]))
    return float(Fb - Fa)
