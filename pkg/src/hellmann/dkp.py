"""Spin-0 Duffin-Kemmer-Petiau scattering in the Hellmann potential.

Closed forms for the wave number, the near-origin exponent gamma, the
hypergeometric triple, the Gamma-function phase shift, the normalization,
partial-wave transitions, the total cross section, the S-matrix pole
(bound-state) condition and the radial wavefunction. Orbital and total
angular momentum are identified (l = J) throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

from . import _pipeline as pl
from .errors import ComplexExponent, EvanescentChannel, NonPositiveMass
from .model import HellmannPotential
from .results import BoundState, HyperTriple, PhaseShiftResult, RadialSolution
from .specfun import principal_sqrt

__all__ = [
    "DkpChannel",
    "dkp_betas",
    "dkp_bound_residual",
    "dkp_bound_states",
    "dkp_gamma",
    "dkp_hyper_triple",
    "dkp_k2",
    "dkp_normalization",
    "dkp_phase_shift",
    "dkp_total_cross_section",
    "dkp_wave_number",
    "dkp_wavefunction",
]


@dataclass(frozen=True)
class DkpChannel:
    J: int
    energy: float
    mass: float
    potential: HellmannPotential

    def __post_init__(self):
        if int(self.J) != self.J or self.J < 0:
            raise ValueError(f"J must be a non-negative integer, got {self.J}")
        object.__setattr__(self, "J", int(self.J))
        if not self.mass > 0:
            raise NonPositiveMass(f"mass must be positive, got {self.mass}")

    @property
    def ell(self) -> int:
        return self.J

    def with_J(self, J: int) -> "DkpChannel":
        return replace(self, J=J)


def dkp_k2(ch: DkpChannel, energy: Optional[float] = None) -> float:
    """E^2 - m^2 + a^2 rho^2 - 2 a rho E - J(J+1) rho^2 (may be negative)."""
    p = ch.potential
    E = ch.energy if energy is None else energy
    J = ch.J
    return E * E - ch.mass**2 + p.a**2 * p.rho**2 - 2 * p.a * p.rho * E - J * (J + 1) * p.rho**2


def dkp_wave_number(ch: DkpChannel) -> float:
    k2 = dkp_k2(ch)
    if not k2 > 0:
        raise EvanescentChannel(k2)
    return math.sqrt(k2)


def dkp_gamma(ch: DkpChannel) -> complex:
    """gamma = 1/2 + sqrt((J + 1/2)^2 - (a - b)^2); complex when the radicand is negative."""
    p = ch.potential
    return 0.5 + principal_sqrt((ch.J + 0.5) ** 2 - (p.a - p.b) ** 2)


def dkp_betas(ch: DkpChannel) -> tuple[float, float, float]:
    """(beta1, beta2, beta3) with the signs exactly as printed with the original derivation."""
    p = ch.potential
    k = dkp_wave_number(ch)
    E, a, b, rho, J = ch.energy, p.a, p.b, p.rho, ch.J
    minus_beta1 = a * (a - 2 * E / rho) + b * (b - 2 * E / rho) - J * (J + 1) - (k / rho) ** 2
    beta2 = -2 * E / rho * (a + b) + 2 * b * (a - b)
    minus_beta3 = J * (J + 1) - (a - b) ** 2
    return -minus_beta1, beta2, -minus_beta3


def _radicand(ch: DkpChannel, k: float) -> float:
    p = ch.potential
    E, a, b, rho, J = ch.energy, p.a, p.b, p.rho, ch.J
    return a * (a - 2 * E / rho) + b * (b - 2 * E / rho) - J * (J + 1) - (k / rho) ** 2


def dkp_hyper_triple(ch: DkpChannel, allow_complex_exponent: bool = False) -> HyperTriple:
    k = dkp_wave_number(ch)
    gamma = dkp_gamma(ch)
    if gamma.imag != 0 and not allow_complex_exponent:
        raise ComplexExponent(gamma)
    rho = ch.potential.rho
    rad = _radicand(ch, k)
    root = principal_sqrt(rad)
    base = gamma - 1j * (k / rho)
    return HyperTriple(tau1=base - root, tau2=base + root, tau3=2 * gamma,
                       exponent=gamma, k=k, rho=rho, ell=ch.J, radicand=rad, model="dkp")


def dkp_phase_shift(ch: DkpChannel, allow_complex_exponent: bool = False) -> PhaseShiftResult:
    """Phase shift, transition 4 sin^2(delta) and partial cross section of one channel."""
    t = dkp_hyper_triple(ch, allow_complex_exponent)
    delta, dbar = pl.phase_from_triple(t)
    s2 = math.sin(delta) ** 2
    return PhaseShiftResult(
        delta=delta,
        transition=4.0 * s2,
        partial_sigma=pl.partial_sigma_sin2(t.k, ch.J, delta),
        delta_bar=dbar,
        k=t.k,
        ell=ch.J,
        identity_ok=(not t.complex_exponent) and t.identities_hold(),
        complex_exponent=t.complex_exponent,
    )


def dkp_normalization(ch: DkpChannel, allow_complex_exponent: bool = False) -> float:
    return pl.normalization_from_triple(dkp_hyper_triple(ch, allow_complex_exponent))


def dkp_total_cross_section(ch_template: DkpChannel, l_max: int, tol: Optional[float] = None,
                            allow_complex_exponent: bool = False):
    """Sum of (4 pi / k_l^2)(2l + 1) sin^2(delta_l) over l = 0..l_max.

    k is re-evaluated for every l because it carries the centrifugal shift.
    Returns (sigma, terms_used).
    """
    def term(ell):
        return dkp_phase_shift(ch_template.with_J(ell), allow_complex_exponent).partial_sigma

    sigma, used, _ = pl.sum_partial_waves(term, l_max, tol)
    return sigma, used


def dkp_bound_residual(ch: DkpChannel, n: int, energy: float) -> float:
    """F_n(E) = k^2(E) + rho^2 [((n+gamma)^2 + a(2E/rho - a) + b(2E/rho - b) - J(J+1)) / (2(n+gamma))]^2."""
    p = ch.potential
    gamma = dkp_gamma(ch)
    if gamma.imag != 0:
        raise ComplexExponent(gamma)
    ng = n + gamma.real
    a, b, rho, J, E = p.a, p.b, p.rho, ch.J, energy
    bracket = (ng**2 + a * (2 * E / rho - a) + b * (2 * E / rho - b) - J * (J + 1)) / (2 * ng)
    return dkp_k2(ch, E) + rho**2 * bracket**2


def dkp_bound_states(ch_template: DkpChannel, n_max: int,
                     e_range: Optional[tuple[float, float]] = None,
                     grid: int = 2000) -> list[BoundState]:
    """Roots of the pole condition for n = 0..n_max by grid bracketing and bisection.

    ``e_range`` defaults to (-m, m). An empty list means no root in range.
    """
    if grid < 100:
        raise ValueError("grid must be >= 100")
    lo, hi = e_range if e_range is not None else (-ch_template.mass, ch_template.mass)
    out = []
    for n in range(n_max + 1):
        def f(E, n=n):
            return dkp_bound_residual(ch_template, n, E)

        for E in pl.bracket_roots(f, lo, hi, grid):
            out.append(BoundState(n=n, energy=E, residual=abs(f(E))))
    return out


def dkp_wavefunction(ch: DkpChannel, r_grid, allow_complex_exponent: bool = False,
                     method: str = "auto") -> RadialSolution:
    t = dkp_hyper_triple(ch, allow_complex_exponent)
    norm = pl.normalization_from_triple(t)
    u = pl.radial_values(t, r_grid, norm, method)
    return RadialSolution(r_values=r_grid, u_values=u, k=t.k,
                          meta={"model": "dkp", "ell": ch.J, "normalization": norm})
