"""Falsifier for packing integrals: sums of seminorm lower bounds over fine packings."""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from charges import Charge
from errors import InputError
from gauges import Ball, Gauge, Packing, is_delta_fine, sample_packing
from geometry import Figure
from utils.parallel import run_trials

from .claims import PACKING_NOTIONS, IntegralClaim, Notion
from .seminorms import P_BAR, Q_BAR, SeminormQuery, SeminormResult, seminorm_lower_bound
from .verdicts import EpsilonRow, HarnessReport, verdict_for

logger = logging.getLogger(__name__)

DEFAULT_TRIALS = 16
DEFAULT_COUNT = 6


@dataclass
class PackingScore:
    """Per-ball seminorm bounds of F - f(x_i) G for one packing and one epsilon."""

    packing: Packing
    epsilon: float
    variant: str
    terms: List[SeminormResult] = field(default_factory=list)

    @property
    def total(self) -> float:
        return float(sum(t.value for t in self.terms))

    def witness(self) -> dict:
        return {'packing': self.packing.to_dict(), 'variant': self.variant,
                'terms': [t.to_dict() for t in self.terms]}


def variant_for(notion: Notion) -> str:
    return Q_BAR if notion is Notion.PACKING_R_STAR else P_BAR


def ball_charge(claim: IntegralClaim, tag) -> Charge:
    """F - f(x) G at one tag."""
    return claim.F - claim.f_at(tag) * claim.G


def score_packing(claim: IntegralClaim, packing: Packing, epsilon: float, variant: str = P_BAR,
                  depth: int = 4, seed: int = 0, eta: Optional[float] = None,
                  box_budget: int = 2 ** 25) -> PackingScore:
    """Seminorm lower bounds at radius tau r_i for every ball.  Rescoring a q-witness
    with variant p gives a value at least as large."""
    score = PackingScore(packing, epsilon, variant)
    for ball in packing.balls:
        query = SeminormQuery(ball_charge(claim, ball.center), ball.center, claim.tau * ball.radius,
                              epsilon, variant, depth, seed, eta)
        score.terms.append(seminorm_lower_bound(query, box_budget))
    return score


@dataclass
class PackingTrial:
    """Sample one fine packing in ``window`` and score it at every epsilon."""

    claim: IntegralClaim
    gauge: Gauge
    window: Figure
    count: int
    epsilons: Tuple[float, ...]
    variant: str
    depth: int
    seed: int
    eta: Optional[float]
    box_budget: int
    keep: Optional[Callable[[Ball], bool]] = None

    def __call__(self, index: int, rng: np.random.Generator) -> Dict[float, PackingScore]:
        packing = sample_packing(self.window, self.gauge, self.count, rng=rng)
        if self.keep is not None:
            packing = Packing(tuple(b for b in packing.balls if self.keep(b)))
        fine = is_delta_fine(packing, self.gauge)
        if not fine:
            raise InputError(f"sampled packing is not fine: {fine.reason}", 'gauge')
        return {eps: score_packing(self.claim, packing, eps, self.variant, self.depth, self.seed, self.eta,
                                   self.box_budget)
                for eps in self.epsilons}


def _require_packing_claim(claim: IntegralClaim) -> None:
    if claim.notion not in PACKING_NOTIONS:
        raise InputError(f"packing check needs notion packing-r or packing-r-star, got {claim.notion.value}",
                         'notion')
    if claim.F is None or claim.G is None:
        raise InputError("packing check needs charges F and G", 'F')


def check_packing_integral(claim: IntegralClaim, gauge: Gauge, trials: int = DEFAULT_TRIALS,
                           seed: int = 0, epsilons: Optional[Sequence[float]] = None,
                           count: int = DEFAULT_COUNT, depth: int = 4, jobs: int = 1,
                           eta: Optional[float] = None, box_budget: int = 2 ** 25,
                           region=None, keep: Optional[Callable[[Ball], bool]] = None) -> HarnessReport:
    """Max over trials of the packing sums; refuted at eps when some sum reaches eps.

    ``region`` overrides the tag window (default: the claim domain, else the unit cube);
    ``keep`` drops sampled balls before scoring.
    """
    _require_packing_claim(claim)
    if trials < 1:
        raise InputError("must be >= 1", 'trials')
    epsilons = tuple(epsilons or claim.epsilons)
    variant = variant_for(claim.notion)
    window = region if region is not None else claim.window()
    trial = PackingTrial(claim, gauge, window, count, epsilons, variant, depth, seed, eta, box_budget, keep)
    results = run_trials(trial, trials, seed, jobs)
    report = HarnessReport('packing', claim.notion.value,
                           parameters={'trials': trials, 'seed': seed, 'count': count, 'depth': depth,
                                       'tau': claim.tau, 'gauge': gauge.describe(),
                                       'claim': claim.to_dict()},
                           warnings=claim.exceptional_warnings(gauge))
    for eps in epsilons:
        sums = [r[eps].total for r in results]
        best = int(np.argmax(sums))
        verdict = verdict_for(sums[best], eps)
        witness = results[best][eps].witness() if sums[best] > 0 else None
        report.rows.append(EpsilonRow(eps, sums[best], verdict, best, witness, sums))
        logger.info("%s eps=%g: max sum %.6g over %d trials (%s)", claim.name, eps, sums[best],
                    trials, verdict)
    return report


def definite_value(claim: IntegralClaim) -> float:
    """F(A); for a whole-space claim the value on the sampling window."""
    if claim.F is None:
        raise InputError("definite value needs a charge F", 'F')
    return claim.F.evaluate(claim.domain if claim.domain is not None else claim.window())
