"""Hellmann potential and the exponential centrifugal approximation."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NonPositiveRadius

__all__ = [
    "HellmannPotential",
    "approx_inverse_r2",
    "approximation_error",
    "potential_value",
]


@dataclass(frozen=True)
class HellmannPotential:
    """V(r) = -a/r + (b/r) exp(-rho r).

    ``a`` is the Coulomb strength, ``b`` the Yukawa strength and ``rho`` the
    screening parameter (inverse length). Either strength may be zero or
    negative.
    """

    a: float
    b: float
    rho: float

    def __post_init__(self):
        for name in ("a", "b", "rho"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.rho <= 0:
            raise ValueError(f"rho must be positive, got {self.rho}")


def _check_radius(r):
    if not r > 0:
        raise NonPositiveRadius(f"radius must be positive, got {r}")


def potential_value(p: HellmannPotential, r: float) -> float:
    _check_radius(r)
    if p.b == 0:
        return -p.a / r
    return -p.a / r + p.b / r * math.exp(-p.rho * r)


def approx_inverse_r2(p: HellmannPotential, r: float) -> float:
    """rho^2 / (1 - exp(-rho r))^2, the stand-in for 1/r^2."""
    _check_radius(r)
    return p.rho**2 / (-math.expm1(-p.rho * r)) ** 2


def approximation_error(p: HellmannPotential, r: float) -> float:
    """Relative error |r^2 * approx_inverse_r2 - 1| of the centrifugal replacement."""
    _check_radius(r)
    x = p.rho * r
    return abs((x / -math.expm1(-x)) ** 2 - 1.0)
