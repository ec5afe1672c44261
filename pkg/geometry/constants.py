"""Dimensional constants of the regularity and isoperimetry estimates."""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from scipy.special import gamma as gamma_function

from errors import InputError


def unit_ball_volume(n: int) -> float:
    return math.pi ** (n / 2) / float(gamma_function(n / 2 + 1))


@dataclass(frozen=True)
class Constants:
    """Constants for dimension n; eta_n and p_n are configurable."""

    n: int
    eta: Optional[float] = None
    p: Optional[float] = None

    def __post_init__(self):
        if self.n < 1:
            raise InputError("dimension must be >= 1", 'n')
        if self.eta is not None and self.eta <= 0:
            raise InputError("must be positive", 'eta_n')
        if self.p is not None and self.p <= 0:
            raise InputError("must be positive", 'p_n')

    @property
    def alpha_n(self) -> float:
        return unit_ball_volume(self.n)

    @property
    def eta_n(self) -> float:
        # heuristic default; the true trace-inequality constant is not known here
        return float(self.eta) if self.eta is not None else 2.0 * self.n

    @property
    def p_n(self) -> float:
        if self.p is not None:
            return float(self.p)
        return 1.0 / (self.n * self.alpha_n ** (1.0 / self.n))

    def gamma(self, eps: float) -> float:
        if eps <= 0:
            raise InputError("must be positive", 'epsilon')
        return self.eta_n / eps ** (self.n - 1)

    def beta(self, eps: float) -> float:
        return 1.0 / (1.0 + self.gamma(eps))

    @property
    def rho_squared(self) -> Fraction:
        """rho squared is rational for every n."""
        return Fraction(1, self.n ** (self.n + 1) * 4 ** (3 * self.n - 2))

    @property
    def rho(self) -> float:
        return 1.0 / (self.n ** ((self.n + 1) / 2) * 2.0 ** (3 * self.n - 2))

    @property
    def c1(self) -> float:
        return 2.0 ** self.n * self.n ** ((3 - self.n) / 2)

    @property
    def c_c(self) -> float:
        return self.alpha_n * 2.0 ** (2 * self.n) * self.n ** (self.n / 2)

    @property
    def c2(self) -> float:
        return self.alpha_n * self.c_c * 2.0 ** self.n

    @property
    def c_krit(self) -> float:
        return self.p_n ** self.n

    @property
    def epsilon_prime_limit(self) -> float:
        return 1.0 / (self.c_krit * self.alpha_n)

    def epsilon_prime(self, eps: float) -> float:
        """Tolerance transfer between partition and packing sums."""
        if not 0 < eps < self.epsilon_prime_limit:
            raise InputError(f"must lie in (0, {self.epsilon_prime_limit:.6g})", 'epsilon')
        c = self.c_krit
        return eps * (1 - c * self.alpha_n * eps) / (1 + c)

    def table(self, eps: Optional[float] = None) -> dict:
        rows = {
            'n': self.n,
            'alpha_n': self.alpha_n,
            'eta_n': self.eta_n,
            'p_n': self.p_n,
            'rho': self.rho,
            'rho_squared': self.rho_squared,
            'c1': self.c1,
            'c_c': self.c_c,
            'c2': self.c2,
            'c_krit': self.c_krit,
            'beta_rho': self.beta(self.rho),
            'epsilon_prime_limit': self.epsilon_prime_limit,
        }
        if eps is not None:
            rows['epsilon'] = eps
            rows['gamma'] = self.gamma(eps)
            rows['beta'] = self.beta(eps)
            if eps < self.epsilon_prime_limit:
                rows['epsilon_prime'] = self.epsilon_prime(eps)
        return rows
