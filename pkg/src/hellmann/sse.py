"""Spinless Salpeter (semi-relativistic two-body) scattering in the Hellmann potential.

The two-body kinematics enter through the reduced mass mu and the mass
index term (mu/eta)^3; everything downstream of the hypergeometric triple
is shared with the DKP pipeline.
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
    "EQUAL_MASS_CONVENTION",
    "UNEQUAL_MASS_CONVENTION",
    "SseChannel",
    "sse_bound_residual",
    "sse_bound_states",
    "sse_exponent",
    "sse_hyper_triple",
    "sse_k2",
    "sse_mass_index_cubed",
    "sse_normalization",
    "sse_phase_shift",
    "sse_reduced_mass",
    "sse_total_cross_section",
    "sse_transition",
    "sse_wave_number",
    "sse_wavefunction",
]


def sse_reduced_mass(m1: float, m2: float) -> float:
    if not (m1 > 0 and m2 > 0):
        raise NonPositiveMass(f"masses must be positive, got m1={m1}, m2={m2}")
    if math.isinf(m2):
        return float(m1)
    if math.isinf(m1):
        return float(m2)
    return m1 * m2 / (m1 + m2)


def sse_mass_index_cubed(m1: float, m2: float) -> float:
    """(mu/eta)^3 = 1 - 3 mu^2 / (m1 m2)."""
    mu = sse_reduced_mass(m1, m2)
    if math.isinf(m1) or math.isinf(m2):
        return 1.0
    return 1.0 - 3.0 * mu * mu / (m1 * m2)


# (mu, (mu/eta)^3) fixed directly, as in the published figure conventions
EQUAL_MASS_CONVENTION = (0.5, 0.25)
UNEQUAL_MASS_CONVENTION = (0.01, 1.0)


@dataclass(frozen=True)
class SseChannel:
    """One SSE partial wave.

    ``mass_override`` replaces the (mu, (mu/eta)^3) pair derived from the
    masses; the figure presets need it because their stated values do not
    follow from any mass pair.
    """

    l: int
    energy: float
    m1: float
    m2: float
    potential: HellmannPotential
    mass_override: Optional[tuple[float, float]] = None

    def __post_init__(self):
        if int(self.l) != self.l or self.l < 0:
            raise ValueError(f"l must be a non-negative integer, got {self.l}")
        object.__setattr__(self, "l", int(self.l))
        if not (self.m1 > 0 and self.m2 > 0):
            raise NonPositiveMass(f"masses must be positive, got m1={self.m1}, m2={self.m2}")
        if self.mass_override is not None:
            mu, s = self.mass_override
            if not mu > 0:
                raise NonPositiveMass(f"overridden mu must be positive, got {mu}")
            object.__setattr__(self, "mass_override", (float(mu), float(s)))

    @property
    def ell(self) -> int:
        return self.l

    @property
    def mu(self) -> float:
        if self.mass_override is not None:
            return self.mass_override[0]
        return sse_reduced_mass(self.m1, self.m2)

    @property
    def mass_index_cubed(self) -> float:
        if self.mass_override is not None:
            return self.mass_override[1]
        return sse_mass_index_cubed(self.m1, self.m2)

    def with_l(self, l: int) -> "SseChannel":
        return replace(self, l=l)

    def scaled_mass_index(self, scale: float) -> "SseChannel":
        """Same channel with the (mu/eta)^3 term multiplied by ``scale``."""
        return replace(self, mass_override=(self.mu, self.mass_index_cubed * scale))


def sse_k2(ch: SseChannel, energy: Optional[float] = None) -> float:
    """2 mu (E + a rho) + (mu/eta)^3 (E + a)^2 - l(l+1) rho^2."""
    p = ch.potential
    E = ch.energy if energy is None else energy
    return (2 * ch.mu * (E + p.a * p.rho) + ch.mass_index_cubed * (E + p.a) ** 2
            - ch.l * (ch.l + 1) * p.rho**2)


def sse_wave_number(ch: SseChannel) -> float:
    k2 = sse_k2(ch)
    if not k2 > 0:
        raise EvanescentChannel(k2)
    return math.sqrt(k2)


def sse_exponent(ch: SseChannel) -> complex:
    """v = 1/2 + sqrt((l + 1/2)^2 - (mu/eta)^3 (a/rho - b)^2)."""
    p = ch.potential
    return 0.5 + principal_sqrt((ch.l + 0.5) ** 2 - ch.mass_index_cubed * (p.a / p.rho - p.b) ** 2)


def _radicand(ch: SseChannel, k: float) -> float:
    p = ch.potential
    a, b, rho, E, l = p.a, p.b, p.rho, ch.energy, ch.l
    s = ch.mass_index_cubed
    return (2 * ch.mu * a / rho
            + s * (2 * E / rho * (a / rho - b) + (a / rho - b) * (a / rho + b))
            - l * (l + 1) - (k / rho) ** 2)


def sse_hyper_triple(ch: SseChannel, allow_complex_exponent: bool = False) -> HyperTriple:
    k = sse_wave_number(ch)
    v = sse_exponent(ch)
    if v.imag != 0 and not allow_complex_exponent:
        raise ComplexExponent(v)
    rho = ch.potential.rho
    rad = _radicand(ch, k)
    root = principal_sqrt(rad)
    base = v - 1j * (k / rho)
    return HyperTriple(tau1=base - root, tau2=base + root, tau3=2 * v,
                       exponent=v, k=k, rho=rho, ell=ch.l, radicand=rad, model="sse")


def sse_phase_shift(ch: SseChannel, allow_complex_exponent: bool = False) -> PhaseShiftResult:
    t = sse_hyper_triple(ch, allow_complex_exponent)
    delta, dbar = pl.phase_from_triple(t)
    T = 4.0 * math.sin(delta) ** 2
    return PhaseShiftResult(
        delta=delta,
        transition=T,
        partial_sigma=pl.partial_sigma_transition(t.k, ch.l, T),
        delta_bar=dbar,
        k=t.k,
        ell=ch.l,
        identity_ok=(not t.complex_exponent) and t.identities_hold(),
        complex_exponent=t.complex_exponent,
    )


def sse_transition(ch: SseChannel, allow_complex_exponent: bool = False) -> float:
    return sse_phase_shift(ch, allow_complex_exponent).transition


def sse_normalization(ch: SseChannel, allow_complex_exponent: bool = False) -> float:
    return pl.normalization_from_triple(sse_hyper_triple(ch, allow_complex_exponent))


def sse_total_cross_section(ch_template: SseChannel, l_max: int, tol: Optional[float] = None,
                            allow_complex_exponent: bool = False):
    """Sum of (pi / k_l^2)(2l + 1) T_l over l = 0..l_max. Returns (sigma, terms_used)."""
    def term(ell):
        return sse_phase_shift(ch_template.with_l(ell), allow_complex_exponent).partial_sigma

    sigma, used, _ = pl.sum_partial_waves(term, l_max, tol)
    return sigma, used


def sse_bound_residual(ch: SseChannel, n: int, energy: float) -> float:
    """k^2(E) + rho^2 [((n+v)^2 - 2 mu a/rho + s(2bE/rho - 2aE/rho^2 - a^2/rho^2 + b^2) + l(l+1)) / (2(n+v))]^2."""
    p = ch.potential
    v = sse_exponent(ch)
    if v.imag != 0:
        raise ComplexExponent(v)
    nv = n + v.real
    a, b, rho, l, E = p.a, p.b, p.rho, ch.l, energy
    s = ch.mass_index_cubed
    bracket = (nv**2 - 2 * ch.mu * a / rho
               + s * (2 * b * E / rho - 2 * a * E / rho**2 - a**2 / rho**2 + b**2)
               + l * (l + 1)) / (2 * nv)
    return sse_k2(ch, E) + rho**2 * bracket**2


def sse_bound_states(ch_template: SseChannel, n_max: int, e_range: tuple[float, float],
                     grid: int = 2000) -> list[BoundState]:
    if grid < 100:
        raise ValueError("grid must be >= 100")
    lo, hi = e_range
    out = []
    for n in range(n_max + 1):
        def f(E, n=n):
            return sse_bound_residual(ch_template, n, E)

        for E in pl.bracket_roots(f, lo, hi, grid):
            out.append(BoundState(n=n, energy=E, residual=abs(f(E))))
    return out


def sse_wavefunction(ch: SseChannel, r_grid, allow_complex_exponent: bool = False,
                     method: str = "auto") -> RadialSolution:
    t = sse_hyper_triple(ch, allow_complex_exponent)
    norm = pl.normalization_from_triple(t)
    u = pl.radial_values(t, r_grid, norm, method)
    return RadialSolution(r_values=r_grid, u_values=u, k=t.k,
                          meta={"model": "sse", "ell": ch.l, "normalization": norm})
