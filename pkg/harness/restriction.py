"""Restriction of a packing claim to a figure, in the zero-extension and in-figure forms."""

import logging
from dataclasses import dataclass, replace
from functools import partial
from typing import Optional, Sequence

import numpy as np

from errors import DimensionError, InputError
from gauges import Ball, Gauge
from geometry import Figure

from .claims import IntegralClaim
from .packing_check import check_packing_integral
from .verdicts import HarnessReport

logger = logging.getLogger(__name__)

AGREEMENT_TOLERANCE = 1e-9


def _indicator(A: Figure, points: np.ndarray) -> np.ndarray:
    return np.array([float(A.contains_point(tuple(float(v) for v in p))) for p in points])


def _tagged_in(A: Figure, ball: Ball) -> bool:
    return A.contains_point(ball.center)


def zero_extension_claim(claim: IntegralClaim, A: Figure) -> IntegralClaim:
    """(chi_A f, F restricted to A, G) over the whole window."""
    return replace(claim, integrand=claim.integrand.times_indicator(partial(_indicator, A), 'A'),
                   F=claim.F.restrict(A), name=f"{claim.name}|zero-extension")


def in_region_claim(claim: IntegralClaim, A: Figure) -> IntegralClaim:
    """(f, F restricted to A, G restricted to A) with tags in cl A."""
    return replace(claim, F=claim.F.restrict(A), G=claim.G.restrict(A), domain=A,
                   name=f"{claim.name}|in-region")


@dataclass
class RestrictionReport:
    region: Figure
    zero_extension: HarnessReport
    in_region: HarnessReport

    @property
    def agree(self) -> bool:
        for a, b in zip(self.zero_extension.rows, self.in_region.rows):
            if a.verdict != b.verdict:
                return False
            if abs(a.max_sum - b.max_sum) > AGREEMENT_TOLERANCE * max(1.0, abs(a.max_sum)):
                return False
        return True

    def to_dict(self) -> dict:
        return {'region': self.region.to_dict(), 'agree': self.agree,
                'zero_extension': self.zero_extension, 'in_region': self.in_region}


def restriction_consistency(claim: IntegralClaim, A: Figure, gauge: Gauge, trials: int = 8,
                            seed: int = 0, epsilons: Optional[Sequence[float]] = None,
                            count: int = 6, depth: int = 2, jobs: int = 1) -> RestrictionReport:
    """Run both formulations on the same sampled packings.

    Zero extension scores every ball; the in-figure form keeps balls tagged in cl A.
    With a gauge vanishing on the boundary of A the two sums coincide.
    """
    if claim.F is None or claim.G is None:
        raise InputError("restriction needs charges F and G", 'F')
    if A.dim != claim.dim:
        raise DimensionError(claim.dim, A.dim, 'region')
    window = claim.window()
    kwargs = dict(trials=trials, seed=seed, epsilons=epsilons, count=count, depth=depth, jobs=jobs,
                  region=window)
    outside = check_packing_integral(zero_extension_claim(claim, A), gauge, **kwargs)
    inside = check_packing_integral(in_region_claim(claim, A), gauge,
                                    keep=partial(_tagged_in, A), **kwargs)
    result = RestrictionReport(A, outside, inside)
    if not result.agree:
        logger.warning("restriction formulations disagree on %s", claim.name)
    return result
