"""Cousin partitions of a compact interval by bisection."""

import logging
from fractions import Fraction
from typing import List, Tuple

from errors import BudgetError, InputError, PreconditionError
from geometry import Interval
from utils.serialization import parse_rational

from .gauge import Gauge
from .packing import PartitionItem, TaggedPartition

logger = logging.getLogger(__name__)

DEFAULT_DEPTH_BUDGET = 64


def _accepting_tag(lo: Fraction, hi: Fraction, gauge: Gauge):
    length = hi - lo
    for tag in (lo, hi, (lo + hi) / 2):
        if length < gauge.exact((tag,)):
            return tag
    return None


def cousin_partition_1d(a, b, gauge: Gauge, depth_budget: int = DEFAULT_DEPTH_BUDGET) -> TaggedPartition:
    """Complete delta-fine tagged partition of [a, b] for a positive gauge.

    A piece is accepted with the first of its left endpoint, right endpoint or
    midpoint that makes it fine; otherwise it is halved.
    """
    a, b = parse_rational(a, 'a'), parse_rational(b, 'b')
    if not a < b:
        raise InputError("need a < b", 'interval')
    hit = gauge.zero_set.meets_interval(a, b)
    if hit is not None:
        raise PreconditionError("gauge vanishes inside the interval; not a positive gauge", 'gauge',
                                {'point': hit})
    items: List[PartitionItem] = []
    stack: List[Tuple[Fraction, Fraction, int]] = [(a, b, 0)]
    deepest = 0
    while stack:
        lo, hi, depth = stack.pop()
        deepest = max(deepest, depth)
        tag = _accepting_tag(lo, hi, gauge)
        if tag is not None:
            items.append(PartitionItem(Interval(((lo, hi),)), (tag,)))
            continue
        if depth >= depth_budget:
            raise BudgetError('depth', depth_budget, depth + 1,
                              {'interval': [lo, hi], 'gauge_at_mid': gauge(((lo + hi) / 2,))})
        mid = (lo + hi) / 2
        stack.append((mid, hi, depth + 1))
        stack.append((lo, mid, depth + 1))
    logger.debug("cousin partition of [%s, %s]: %d pieces, depth %d", a, b, len(items), deepest)
    return TaggedPartition(items)
