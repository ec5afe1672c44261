"""Falsifier for the BV-partition integrals (Pfeffer R, intrinsic, strong R*)."""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from errors import InputError
from gauges import Gauge, PartitionItem, TaggedPartition, sample_point
from geometry import (PASSED, DyadicCube, Figure, diameter_with_tag, dyadic_side,
                      is_eps_isoperimetric_sampled, is_eps_regular)
from utils.parallel import run_trials

from .claims import PARTITION_NOTIONS, IntegralClaim, Notion
from .verdicts import EpsilonRow, HarnessReport, verdict_for

logger = logging.getLogger(__name__)

DEFAULT_TRIALS = 16
DEFAULT_COUNT = 12
RETRIES = 8
EXTRA_LEVELS = 8

# cell, cell plus a neighbour, cell one step away from the tag
SHAPES = ('cell', 'domino', 'shifted')


@dataclass
class PartitionSample:
    partition: TaggedPartition
    terms: List[float] = field(default_factory=list)
    rejections: Counter = field(default_factory=Counter)

    @property
    def total(self) -> float:
        return float(sum(self.terms))

    @property
    def rejected(self) -> int:
        return sum(self.rejections.values())

    def witness(self) -> dict:
        return {'partition': self.partition.to_dict(), 'terms': self.terms,
                'rejections': dict(self.rejections)}


def partition_sum(claim: IntegralClaim, partition: TaggedPartition) -> List[float]:
    """|F(A_i) - f(x_i) G(A_i)| for every item."""
    return [abs(claim.F.evaluate(item.set) - claim.f_at(item.tag) * claim.G.evaluate(item.set))
            for item in partition.items]


def _start_level(delta: Fraction, dim: int) -> int:
    # a domino has diameter sqrt(n + 3) cell sides; aim below delta / 2 with the tag
    return max(0, math.ceil(math.log2(2 * math.sqrt(dim + 3) / float(delta))))


def _candidate_set(tag: Tuple[Fraction, ...], level: int, shape: str,
                   rng: np.random.Generator) -> Figure:
    scale = dyadic_side(-level)
    cell = DyadicCube(level, tuple(math.floor(v * scale) for v in tag))
    if shape == 'cell':
        return Figure.cube(cell)
    axis = int(rng.integers(len(tag)))
    step = 1 if rng.random() < 0.5 else -1
    if shape == 'domino':
        return Figure.from_cubes(len(tag), [cell, cell.shifted(axis, step)])
    return Figure.cube(cell.shifted(axis, step))


def sample_partition(claim: IntegralClaim, gauge: Gauge, epsilon: float, count: int,
                     rng: np.random.Generator, isoperimetric_seed: int = 0) -> PartitionSample:
    """Grow a tagged partition item by item; candidates failing a filter are counted, not kept."""
    window = claim.window()
    strong = claim.notion is Notion.R_STAR
    intrinsic = claim.notion is Notion.PFEFFER_R_INTRINSIC
    eps = Fraction(repr(float(epsilon)))
    items: List[PartitionItem] = []
    rejections: Counter = Counter()
    for _ in range(count * RETRIES):
        if len(items) >= count:
            break
        tag = sample_point(window, rng)
        delta = gauge.exact(tag)
        if delta <= 0:
            rejections['gauge-zero'] += 1
            continue
        shape = SHAPES[int(rng.integers(len(SHAPES)))]
        level = _start_level(delta, claim.dim) + int(rng.integers(2))
        candidate = None
        for extra in range(EXTRA_LEVELS):
            A = _candidate_set(tag, level + extra, shape, rng)
            if diameter_with_tag(A, tag).squared < delta * delta:
                candidate = A
                break
        if candidate is None:
            rejections['coarse'] += 1
            continue
        if not is_eps_regular(candidate, eps, tag):
            rejections['irregular'] += 1
            continue
        if any(candidate.intersection(item.set).volume > 0 for item in items):
            rejections['overlap'] += 1
            continue
        if intrinsic and not candidate.difference(window).is_empty():
            rejections['outside-domain'] += 1
            continue
        if strong:
            if not candidate.contains_point(tag):
                rejections['tag-outside'] += 1
                continue
            verdict = is_eps_isoperimetric_sampled(candidate, eps, seed=isoperimetric_seed)
            if verdict.status != PASSED:
                rejections['not-isoperimetric'] += 1
                continue
        items.append(PartitionItem(candidate, tag))
    partition = TaggedPartition(items)
    sample = PartitionSample(partition, partition_sum(claim, partition) if items else [], rejections)
    logger.debug("partition sample: %d items, %d rejected", len(items), sample.rejected)
    return sample


def _partition_trial(claim: IntegralClaim, gauge: Gauge, epsilons: Sequence[float], count: int, seed: int,
                     index: int, rng: np.random.Generator) -> Dict[float, PartitionSample]:
    return {eps: sample_partition(claim, gauge, eps, count, rng, seed) for eps in epsilons}


def check_bv_partition_integral(claim: IntegralClaim, gauge: Gauge, trials: int = DEFAULT_TRIALS,
                                seed: int = 0, epsilons: Optional[Sequence[float]] = None,
                                count: int = DEFAULT_COUNT, jobs: int = 1) -> HarnessReport:
    if claim.notion not in PARTITION_NOTIONS:
        raise InputError(f"partition check needs a Pfeffer or R* notion, got {claim.notion.value}",
                         'notion')
    if claim.F is None or claim.G is None:
        raise InputError("partition check needs charges F and G", 'F')
    if trials < 1:
        raise InputError("must be >= 1", 'trials')
    epsilons = tuple(epsilons or claim.epsilons)

    trial = partial(_partition_trial, claim, gauge, epsilons, count, seed)
    results = run_trials(trial, trials, seed, jobs)
    report = HarnessReport('partition', claim.notion.value,
                           parameters={'trials': trials, 'seed': seed, 'count': count,
                                       'gauge': gauge.describe(), 'claim': claim.to_dict()},
                           warnings=claim.exceptional_warnings(gauge))
    for eps in epsilons:
        samples = [r[eps] for r in results]
        sums = [s.total for s in samples]
        best = int(np.argmax(sums))
        rejected = sum(s.rejected for s in samples)
        if all(len(s.partition) == 0 for s in samples):
            report.warnings.append(f"no admissible partition item at eps={eps}")
        report.rows.append(EpsilonRow(eps, sums[best], verdict_for(sums[best], eps), best,
                                      samples[best].witness() if sums[best] > 0 else None,
                                      sums, rejected))
        logger.info("%s eps=%g: max sum %.6g, %d candidates rejected", claim.name, eps, sums[best],
                    rejected)
    return report
