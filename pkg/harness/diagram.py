"""Witness experiments for the inclusions between the integral notions."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List

from charges import (DensityCharge, HausdorffSegmentCharge, LebesgueCharge, charge_axiom_falsifier,
                     scalar_function, vector_field)
from config import Settings
from gauges import Packing, constant_gauge
from geometry import PASSED, Constants, DyadicCube, Figure

from .claims import IntegralClaim, Notion
from .gauss_green import gauss_green_verify
from .henstock import hk_integrate_adaptive
from .monotone import mc_alpha_check, mc_monotone_comparison
from .packing_check import check_packing_integral, score_packing
from .seminorms import P_BAR, Q_BAR, SeminormQuery, seminorm_lower_bound
from .verdicts import CONSISTENT, OBSERVED, REFUTED

logger = logging.getLogger(__name__)

HK_ORACLE = math.sin(1.0)


@dataclass
class DiagramRow:
    name: str
    status: str
    expected: str
    detail: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == self.expected

    def to_dict(self) -> dict:
        return {'name': self.name, 'status': self.status, 'expected': self.expected, 'ok': self.ok,
                'detail': self.detail}

    def summary(self) -> dict:
        return {'name': self.name, 'status': self.status, 'expected': self.expected, 'ok': self.ok}


@dataclass
class DiagramReport:
    rows: List[DiagramRow] = field(default_factory=list)
    settings: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def to_dict(self) -> dict:
        return {'ok': self.ok, 'rows': self.rows, 'settings': self.settings}

    def table(self) -> List[dict]:
        return [r.summary() for r in self.rows]


def _l_shape() -> Figure:
    return Figure.from_cubes(2, [DyadicCube(0, (0, 0)), DyadicCube(0, (1, 0)), DyadicCube(0, (0, 1))])


def seminorm_nesting_row(settings: Settings, depth: int) -> DiagramRow:
    """q-bar <= p-bar on fixed queries, and a q-refutation rescored with p-bar."""
    charge = DensityCharge(scalar_function('sin', 2), settings.quadrature_order, 2) - 0.5 * LebesgueCharge(2)
    pairs = []
    for center, radius in (((Fraction(1, 2), Fraction(1, 2)), Fraction(1, 4)),
                           ((Fraction(1, 3), Fraction(2, 3)), Fraction(1, 5))):
        p = seminorm_lower_bound(SeminormQuery(charge, center, radius, Fraction(1, 10), P_BAR, depth,
                                               settings.seed, settings.eta_n))
        q = seminorm_lower_bound(SeminormQuery(charge, center, radius, Fraction(1, 10), Q_BAR, depth,
                                               settings.seed, settings.eta_n))
        pairs.append({'center': list(center), 'radius': radius, 'p': p.value, 'q': q.value})
    claim = _double_lebesgue(Notion.PACKING_R_STAR)
    report = check_packing_integral(claim, constant_gauge(1, 2), trials=4,
                                    seed=settings.seed, epsilons=(0.01,), count=3, depth=depth)
    row = report.row(0.01)
    holds = all(pair['q'] <= pair['p'] for pair in pairs)
    rescored = None
    if row.verdict == REFUTED:
        packing = Packing.from_dict(row.witness['packing'], 2)
        rescored = score_packing(claim, packing, 0.01, P_BAR, depth, settings.seed, settings.eta_n).total
        holds = holds and rescored >= row.max_sum
    return DiagramRow('q-bar <= p-bar (R* refutations are R refutations)',
                      CONSISTENT if holds else REFUTED, CONSISTENT,
                      {'queries': pairs, 'q_sum': row.max_sum, 'p_rescored': rescored})


def mc_comparison_row(settings: Settings) -> DiagramRow:
    """MC_alpha consistent implies MC_beta consistent for alpha < beta."""
    comparisons = [mc_monotone_comparison(scalar_function(name, 1), x, 1, 2).to_dict()
                   for name in ('identity', 'arctan') for x in (Fraction(0), Fraction(3, 10))]
    data = {'notion': 'mc-alpha', 'dim': 1, 'integrand': 'oscillatory-derivative',
            'F': 'oscillatory', 'G': 'identity', 'control': 'identity', 'interval': [0, 1],
            'exceptional': [[0]]}
    verdicts = {}
    for alpha in (1, 2):
        claim = IntegralClaim.from_dict(dict(data, alpha=alpha))
        verdicts[alpha] = mc_alpha_check(claim, points=[0.0, 0.3, 0.7], seed=settings.seed).verdict
    holds = all(c['holds'] for c in comparisons) and not (
        verdicts[1] == CONSISTENT and verdicts[2] != CONSISTENT)
    return DiagramRow('MC_alpha => MC_beta (alpha < beta)', CONSISTENT if holds else REFUTED, CONSISTENT,
                      {'comparisons': comparisons, 'verdicts': verdicts})


def _double_lebesgue(notion: Notion) -> IntegralClaim:
    return IntegralClaim.from_dict({'notion': notion.value, 'dim': 2, 'integrand': 'one',
                                    'F': {'kind': 'combination',
                                          'terms': [{'coef': 2, 'charge': {'kind': 'lebesgue'}}]},
                                    'G': {'kind': 'lebesgue'}, 'epsilons': [0.01], 'name': '2-lambda'})


def double_lebesgue_row(settings: Settings, depth: int) -> DiagramRow:
    """f = 1 is not integrated by F = 2 lambda: one cube already exceeds eps."""
    report = check_packing_integral(_double_lebesgue(Notion.PACKING_R), constant_gauge(1, 2),
                                    trials=4, seed=settings.seed, epsilons=(0.01,), count=3, depth=depth)
    row = report.row(0.01)
    return DiagramRow('f = 1, F = 2 lambda refuted at eps = 0.01', row.verdict, REFUTED,
                      {'max_sum': row.max_sum, 'trial': row.trial})


def hk_value_row(settings: Settings) -> DiagramRow:
    """HK integral of (x^2 sin(1/x^2))' over [0, 1], not Lebesgue integrable at 0."""
    result = hk_integrate_adaptive(scalar_function('oscillatory-derivative', 1), 0, 1,
                                   settings.hk_tolerance, settings.hk_panel_budget)
    error = abs(result.value - HK_ORACLE)
    return DiagramRow('HK value of the oscillatory derivative', OBSERVED if error <= 1e-6 else REFUTED,
                      OBSERVED, {'value': result.value, 'oracle': HK_ORACLE, 'error': error,
                                 'panels': result.panels})


def charge_separation_row(settings: Settings, trials: int) -> DiagramRow:
    """A density charge survives the falsifier; H^1 on a segment does not."""
    density = charge_axiom_falsifier(DensityCharge(scalar_function('sin', 2), settings.quadrature_order, 2),
                                     0.05, trials, settings.seed)
    segment = charge_axiom_falsifier(HausdorffSegmentCharge((Fraction(0), Fraction(1, 3)), 0, Fraction(1)),
                                     0.05, trials, settings.seed)
    separated = density.status == PASSED and segment.status != PASSED
    return DiagramRow('density is a charge, segment measure is not', CONSISTENT if separated else REFUTED,
                      CONSISTENT, {'density': density.status, 'segment': segment.status,
                                   'segment_tail': segment.max_tail_value})


def gauss_green_row(settings: Settings) -> DiagramRow:
    result = gauss_green_verify(vector_field('quadratic', 2), _l_shape(), 'symbolic',
                                settings.quadrature_order)
    return DiagramRow('Gauss–Green on the L-shape', OBSERVED if result.abs_error <= 1e-8 else REFUTED,
                      OBSERVED, result.to_dict())


def epsilon_prime_row(settings: Settings) -> DiagramRow:
    constants = Constants(2, settings.eta_n, settings.p_n)
    eps = min(0.01, constants.epsilon_prime_limit / 2)
    value = constants.epsilon_prime(eps)
    return DiagramRow("eps' bookkeeping", OBSERVED if 0 < value < eps else REFUTED, OBSERVED,
                      {'epsilon': eps, 'epsilon_prime': value, 'limit': constants.epsilon_prime_limit})


def run_diagram(settings: Settings = Settings(), depth: int = 2, falsifier_trials: int = 16) -> DiagramReport:
    builders: List[Callable[[], DiagramRow]] = [
        lambda: seminorm_nesting_row(settings, depth),
        lambda: mc_comparison_row(settings),
        lambda: double_lebesgue_row(settings, depth),
        lambda: hk_value_row(settings),
        lambda: charge_separation_row(settings, falsifier_trials),
        lambda: gauss_green_row(settings),
        lambda: epsilon_prime_row(settings),
    ]
    report = DiagramReport(settings=settings.as_dict())
    for build in builders:
        row = build()
        logger.info("%s: %s", row.name, row.status)
        report.rows.append(row)
    return report
