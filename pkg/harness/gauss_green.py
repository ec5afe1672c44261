"""Flux through the boundary of a figure against the integral of the divergence."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from charges import DensityCharge, FluxCharge, VectorField
from errors import DimensionError, InputError
from geometry import Figure

logger = logging.getLogger(__name__)


@dataclass
class GaussGreenResult:
    flux: float
    volume_integral: float
    abs_error: float
    rel_error: float
    div_source: str
    order: int
    exact_flux: Optional[Fraction] = None
    exact_volume_integral: Optional[Fraction] = None

    @property
    def exact_match(self) -> Optional[bool]:
        if self.exact_flux is None:
            return None
        return self.exact_flux == self.exact_volume_integral

    def to_dict(self) -> dict:
        return {'flux': self.flux, 'volume_integral': self.volume_integral,
                'abs_error': self.abs_error, 'rel_error': self.rel_error,
                'div_source': self.div_source, 'order': self.order,
                'exact_flux': self.exact_flux, 'exact_volume_integral': self.exact_volume_integral,
                'exact_match': self.exact_match}


def gauss_green_verify(u: VectorField, A: Figure, div_source: str = 'symbolic', order: int = 7,
                       step: float = 1e-5) -> GaussGreenResult:
    if order < 1:
        raise InputError("quadrature order must be >= 1", 'order')
    if u.dim != A.dim:
        raise DimensionError(A.dim, u.dim, 'field')
    flux_charge = FluxCharge(u, order)
    div = DensityCharge(u.divergence_function(div_source, step), order, u.dim)
    flux = flux_charge.evaluate(A)
    volume = div.evaluate(A)
    error = abs(flux - volume)
    scale = max(abs(flux), abs(volume))
    result = GaussGreenResult(flux, volume, error, error / scale if scale > 0 else 0.0,
                              div_source, order)
    if u.is_polynomial and div_source == 'symbolic':
        result.exact_flux = flux_charge.evaluate_exact(A)
        result.exact_volume_integral = div.evaluate_exact(A)
    logger.info("gauss-green on %d cubes: flux %.12g, volume %.12g, error %.3g", len(A), flux, volume, error)
    return result
