"""Integral claims: an integrand f with candidate indefinite integral F w.r.t. G."""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple, Union

from charges import Charge, ScalarFunction, charge_from_descriptor, scalar_function
from errors import InputError
from gauges import Gauge
from geometry import BVSet1D, DyadicCube, Figure, shape_from_dict
from utils.serialization import parse_point, parse_rational

logger = logging.getLogger(__name__)


class Notion(Enum):
    PACKING_R = 'packing-r'
    PACKING_R_STAR = 'packing-r-star'
    PFEFFER_R = 'pfeffer-r'
    PFEFFER_R_INTRINSIC = 'pfeffer-r-intrinsic'
    R_STAR = 'r-star'
    HK = 'hk'
    HKS = 'hks'
    MC_ALPHA = 'mc-alpha'

    @classmethod
    def parse(cls, value: str) -> 'Notion':
        try:
            return cls(value)
        except ValueError:
            known = ', '.join(n.value for n in cls)
            raise InputError(f"unknown notion '{value}' (known: {known})", 'notion')


PACKING_NOTIONS = (Notion.PACKING_R, Notion.PACKING_R_STAR)
PARTITION_NOTIONS = (Notion.PFEFFER_R, Notion.PFEFFER_R_INTRINSIC, Notion.R_STAR)
LINE_NOTIONS = (Notion.HK, Notion.HKS, Notion.MC_ALPHA)


@dataclass(frozen=True)
class IntegralClaim:
    notion: Notion
    integrand: ScalarFunction
    F: Optional[Charge]
    G: Optional[Charge]
    dim: int
    domain: Optional[Union[Figure, BVSet1D]] = None
    tau: Fraction = Fraction(1)
    epsilons: Tuple[float, ...] = (0.5, 0.1, 0.02)
    exceptional: Tuple[Tuple[Fraction, ...], ...] = ()
    control: Optional[ScalarFunction] = None
    alpha: Fraction = Fraction(1)
    interval: Optional[Tuple[Fraction, Fraction]] = None
    F_line: Optional[ScalarFunction] = None
    G_line: Optional[ScalarFunction] = None
    name: str = 'claim'

    def __post_init__(self):
        if not 0 < self.tau <= 1:
            raise InputError("must lie in (0, 1]", 'tau')
        if not self.epsilons or any(e <= 0 for e in self.epsilons):
            raise InputError("must be a nonempty list of positive numbers", 'epsilons')
        if self.notion is Notion.MC_ALPHA and self.alpha < 1:
            raise InputError("must be >= 1", 'alpha')

    def window(self) -> Figure:
        """Sampling region: the domain, or the unit cube for whole-space claims."""
        if isinstance(self.domain, Figure):
            return self.domain
        if isinstance(self.domain, BVSet1D):
            raise InputError("packing checks need a figure domain", 'domain')
        return Figure.cube(DyadicCube(0, (0,) * self.dim))

    def f_at(self, x) -> float:
        return self.integrand.at([float(v) for v in x])

    def exceptional_warnings(self, gauge: Gauge) -> list:
        """Declared exceptional points where the gauge does not vanish."""
        return [f"integrand exceptional point {list(p)} is not in the gauge zero set"
                for p in self.exceptional if gauge(p) > 0]

    def to_dict(self) -> dict:
        return {'name': self.name, 'notion': self.notion.value, 'dim': self.dim,
                'integrand': self.integrand.describe(),
                'F': (self.F or self.F_line).describe(), 'G': (self.G or self.G_line).describe(),
                'domain': self.domain.to_dict() if self.domain is not None else None,
                'tau': self.tau, 'epsilons': list(self.epsilons), 'alpha': self.alpha,
                'exceptional': [list(p) for p in self.exceptional],
                'interval': list(self.interval) if self.interval else None}

    @classmethod
    def from_dict(cls, data: dict, epsilons: Optional[Tuple[float, ...]] = None,
                  order: int = 7) -> 'IntegralClaim':
        if not isinstance(data, dict):
            raise InputError("claim must be an object", 'claim')
        notion = Notion.parse(data.get('notion', 'packing-r-star'))
        dim = data.get('dim', 1 if notion in LINE_NOTIONS else None)
        if not isinstance(dim, int) or dim < 1:
            raise InputError("must be a positive integer", 'dim')
        integrand = scalar_function(data.get('integrand', 'zero'), dim, 'integrand')
        domain = shape_from_dict(data['domain'], 'domain') if data.get('domain') else None
        alpha = parse_rational(data.get('alpha', 1), 'alpha')
        default_tau = 1 / alpha if notion is Notion.MC_ALPHA else Fraction(1)
        interval = None
        if 'interval' in data:
            interval = parse_point(data['interval'], 2, 'interval')
            if not interval[0] < interval[1]:
                raise InputError("need a < b", 'interval')
        line = {}
        for key in ('F', 'G'):
            spec = data.get(key)
            if notion in LINE_NOTIONS:
                line[key] = scalar_function(spec if spec is not None else 'identity', 1, key)
        F = (charge_from_descriptor(data.get('F', 'zero'), dim, order, 'F')
             if notion not in LINE_NOTIONS else None)
        G = (charge_from_descriptor(data.get('G', {'kind': 'lebesgue'}), dim, order, 'G')
             if notion not in LINE_NOTIONS else None)
        eps = data.get('epsilons', epsilons or (0.5, 0.1, 0.02))
        if not isinstance(eps, (list, tuple)):
            raise InputError("must be a list", 'epsilons')
        return cls(
            notion=notion,
            integrand=integrand,
            F=F,
            G=G,
            dim=dim,
            domain=domain,
            tau=parse_rational(data.get('tau', default_tau), 'tau'),
            epsilons=tuple(float(e) for e in eps),
            exceptional=tuple(parse_point(p, dim, f"exceptional[{i}]")
                              for i, p in enumerate(data.get('exceptional', []))),
            control=scalar_function(data['control'], 1, 'control') if data.get('control') else None,
            alpha=alpha,
            interval=interval,
            F_line=line.get('F'),
            G_line=line.get('G'),
            name=str(data.get('name', 'claim')),
        )
