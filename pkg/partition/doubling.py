"""Search for a radius where a radius function doubles in a controlled way."""

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional

from errors import InputError
from geometry import unit_ball_volume

logger = logging.getLogger(__name__)

RELATIVE_TOLERANCE = 1e-12


@dataclass
class DoublingResult:
    found: bool
    radius: Optional[float]
    step: Optional[int]
    min_ratio: float
    ratios: List[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {'found': self.found, 'radius': self.radius, 'step': self.step,
                'min_ratio': self.min_ratio, 'ratios': self.ratios}


def find_doubling_radius(phi: Callable[[float], float], dim: int, R: float, epsilon: float,
                         tau: float, c_t: float, grid: int = 30) -> DoublingResult:
    """First r = R 2^-j (j = 0..grid) with
    phi(10r) + eps |B(10r)| <= c_T (phi(tau r) + eps |B(tau r)|).
    """
    if R <= 0 or epsilon <= 0 or c_t <= 0:
        raise InputError("R, epsilon and c_T must be positive", 'doubling')
    if not 0 < tau <= 1:
        raise InputError("must lie in (0, 1]", 'tau')
    if grid < 0:
        raise InputError("must be >= 0", 'grid')
    alpha = unit_ball_volume(dim)
    ratios = []
    for j in range(grid + 1):
        r = R * 2.0 ** -j
        lhs = phi(10 * r) + epsilon * alpha * (10 * r) ** dim
        rhs = phi(tau * r) + epsilon * alpha * (tau * r) ** dim
        if lhs < 0 or rhs <= 0:
            raise InputError("phi must be nonnegative", 'phi')
        ratio = lhs / rhs
        ratios.append(ratio)
        if lhs <= c_t * rhs * (1 + RELATIVE_TOLERANCE):
            logger.debug("doubling radius found at step %d (ratio %.6g)", j, ratio)
            return DoublingResult(True, r, j, min(ratios), ratios)
    logger.info("no doubling radius within %d halvings; min ratio %.6g", grid, min(ratios))
    return DoublingResult(False, None, None, min(ratios), ratios)
