"""Independent numerical check of the closed-form phase shifts.

The regular solution of the hypergeometric equation is integrated
numerically in r, reassembled into the radial wave
U(r) = z^exponent e^{ikr} u(z), and the standing-wave phase is read off at
large r by a least-squares fit to A e^{ikr} + B e^{-ikr}. Nothing on this
path evaluates Gamma functions or the connection formula, so agreement
with the Gamma-function phase checks the asymptotic matching end to end.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from scipy.integrate import solve_ivp

from . import specfun
from ._pipeline import distance_mod_pi
from .errors import InvalidWindow, PoorFit, StepSizeUnderflow
from .results import HyperTriple, PhaseShiftResult, RadialSolution

__all__ = [
    "FIT_TOLERANCE",
    "IdentityReport",
    "PhaseComparison",
    "compare_phase",
    "extract_phase",
    "hypergeometric_ode_residual",
    "integrate_regular_solution",
    "oracle_phase",
    "printed_identity_report",
    "regular_rhs",
    "rk4_fixed",
]

FIT_TOLERANCE = 1e-4
COMPARE_TOLERANCE = 1e-3


def regular_rhs(triple: HyperTriple, rho: Optional[float] = None):
    """Right-hand side of the first-order system for y = (u, p), p = (1 - z) du/dz."""
    rho = triple.rho if rho is None else rho
    s1 = triple.tau1 + triple.tau2 + 1.0
    prod = triple.tau1 * triple.tau2
    c = triple.tau3

    def rhs(r, y):
        z = -math.expm1(-rho * r)
        u, p = y
        du = rho * p
        dp = rho * ((s1 * z - c) / z - 1.0) * p + rho * prod * (1.0 - z) * u / z
        return np.array([du, dp], dtype=complex)

    return rhs


def _series_start(triple: HyperTriple, z0: float, max_terms: int = 60):
    """u and du/dz at tiny z0 from the first few Taylor terms of the regular solution."""
    a, b, c = triple.tau1, triple.tau2, triple.tau3
    term = 1.0 + 0.0j
    u = term
    du = 0.0j
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z0
        u += term
        du += term * (n + 1) / z0
        if abs(term) < 1e-17 * abs(u):
            break
    return u, du


def rk4_fixed(fun, r_start: float, y_start, r_end: float, n: int) -> np.ndarray:
    """Classical fourth-order Runge-Kutta with ``n`` equal steps; returns y(r_end)."""
    h = (r_end - r_start) / n
    y = np.asarray(y_start, dtype=complex)
    r = r_start
    for _ in range(n):
        k1 = fun(r, y)
        k2 = fun(r + 0.5 * h, y + 0.5 * h * k1)
        k3 = fun(r + 0.5 * h, y + 0.5 * h * k2)
        k4 = fun(r + h, y + h * k3)
        y = y + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        r += h
    return y


def integrate_regular_solution(triple: HyperTriple, rho: Optional[float] = None,
                               r0: Optional[float] = None, r_max: Optional[float] = None,
                               steps: int = 4000, rtol: float = 1e-10) -> RadialSolution:
    """Integrate the regular hypergeometric solution outwards and rebuild U(r).

    Parameters
    ----------
    triple : HyperTriple
        Channel parameters from ``dkp_hyper_triple`` or ``sse_hyper_triple``.
    rho : float, optional
        Screening parameter; defaults to ``triple.rho``.
    r0 : float, optional
        Start radius. Must satisfy z(r0) <= 1e-3; defaults to z(r0) = 1e-6.
    r_max : float, optional
        Outer radius, with rho * r_max >= 15. Defaults to 20 / rho.
    steps : int
        Number of equally spaced output samples on [r0, r_max].
    rtol : float
        Local relative tolerance of the adaptive Dormand-Prince integrator.
    """
    rho = triple.rho if rho is None else rho
    if r0 is None:
        r0 = -math.log1p(-1e-6) / rho
    if r_max is None:
        r_max = 20.0 / rho
    z0 = -math.expm1(-rho * r0)
    if not (r0 > 0 and z0 <= 1e-3):
        raise InvalidWindow(f"start radius r0={r0} gives z0={z0}; need 0 < z0 <= 1e-3")
    if rho * r_max < 15:
        raise InvalidWindow(f"rho * r_max = {rho * r_max:.3g} < 15; asymptotics not reached")
    if steps < 2:
        raise InvalidWindow("need at least two output samples")
    u0, du0 = _series_start(triple, z0)
    y0 = np.array([u0, (1.0 - z0) * du0], dtype=complex)
    r_eval = np.linspace(r0, r_max, steps)
    sol = solve_ivp(regular_rhs(triple, rho), (r0, r_max), y0, method="DOP853",
                    t_eval=r_eval, rtol=rtol, atol=1e-12)
    if sol.status != 0:
        raise StepSizeUnderflow(sol.message)
    z = -np.expm1(-rho * r_eval)
    U = np.exp(triple.exponent * np.log(z) + 1j * triple.k * r_eval) * sol.y[0]
    return RadialSolution(r_values=r_eval, u_values=U, k=triple.k,
                          meta={"model": triple.model, "ell": triple.ell, "p": sol.y[1],
                                "u": sol.y[0], "nfev": sol.nfev})


def extract_phase(sol: RadialSolution, window: Optional[tuple[float, float]] = None):
    """Fit U = A e^{ikr} + B e^{-ikr} on ``window`` and return (phase, residual).

    ``phase`` is Phi in U ~ C sin(kr + Phi), reduced to [0, pi). It is taken
    from the ratio -A/B = e^{2i Phi}, which does not depend on the overall
    complex scale of U; for a real standing wave it equals arg(A) + pi/2.
    """
    r = sol.r_values
    r_max = r[-1]
    if window is None:
        window = (0.8 * r_max, r_max)
    lo, hi = window
    if lo < 0.7 * r_max - 1e-12 * r_max or hi > r_max * (1 + 1e-12) or lo >= hi:
        raise InvalidWindow(f"window {window} not inside [0.7 r_max, r_max] = "
                            f"[{0.7 * r_max}, {r_max}]")
    mask = (r >= lo) & (r <= hi)
    if mask.sum() < 50:
        raise InvalidWindow(f"only {mask.sum()} samples in window; need >= 50")
    rw = r[mask]
    uw = sol.u_values[mask]
    basis = np.column_stack([np.exp(1j * sol.k * rw), np.exp(-1j * sol.k * rw)])
    coef, *_ = np.linalg.lstsq(basis, uw, rcond=None)
    A, B = coef
    residual = float(np.linalg.norm(uw - basis @ coef) / max(np.linalg.norm(uw), 1e-300))
    sol.fit_residual = residual
    if residual > FIT_TOLERANCE:
        raise PoorFit(residual)
    big = max(abs(A), abs(B))
    if min(abs(A), abs(B)) <= 1e-10 * big:
        raise PoorFit(residual, f"not a standing wave: |B|/|A| = {abs(B) / max(abs(A), 1e-300):.3e}")
    phase = (np.angle(-A / B) / 2.0) % math.pi
    sol.fitted_phase = float(phase)
    return float(phase), residual


@dataclass
class PhaseComparison:
    delta_analytic: float
    delta_numeric: float
    difference: float
    tolerance: float
    passed: bool
    warnings: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} analytic={self.delta_analytic:.12f} numeric={self.delta_numeric:.12f} "
                f"|diff mod pi|={self.difference:.3e} tol={self.tolerance:.0e}")


def compare_phase(analytic: PhaseShiftResult,
                  numeric: Union[tuple[float, float], RadialSolution],
                  tol: float = COMPARE_TOLERANCE) -> PhaseComparison:
    """Compare the Gamma-function phase with a fitted standing-wave phase, mod pi.

    ``numeric`` is either the (phase, residual) pair from ``extract_phase``
    or a fitted RadialSolution; the latter also lets the channel be
    cross-checked by wave number and angular momentum.
    """
    warnings = []
    if isinstance(numeric, RadialSolution):
        if numeric.fitted_phase is None:
            raise ValueError("radial solution carries no fitted phase")
        phase = numeric.fitted_phase
        ell = numeric.meta.get("ell", analytic.ell)
        if not math.isclose(numeric.k, analytic.k, rel_tol=1e-12) or ell != analytic.ell:
            warnings.append(f"channel mismatch: analytic (k={analytic.k}, l={analytic.ell}) vs "
                            f"numeric (k={numeric.k}, l={ell})")
    else:
        phase = numeric[0]
    delta_num = (phase + 0.5 * math.pi * analytic.ell) % math.pi
    diff = distance_mod_pi(analytic.delta, delta_num)
    return PhaseComparison(analytic.delta, delta_num, diff, tol, diff <= tol, warnings)


def oracle_phase(triple: HyperTriple, steps: int = 4000, r_max: Optional[float] = None):
    """Integrate and fit in one go; returns the fitted RadialSolution."""
    sol = integrate_regular_solution(triple, r_max=r_max, steps=steps)
    extract_phase(sol)
    return sol


def hypergeometric_ode_residual(triple: HyperTriple, z_samples: Sequence[float]) -> float:
    """Max relative residual of z(1-z)u'' + [c - (a+b+1)z]u' - ab u over the samples."""
    a, b, c = triple.tau1, triple.tau2, triple.tau3
    worst = 0.0
    for z in z_samples:
        if not 0 < z < 1:
            raise ValueError(f"z sample {z} outside (0, 1)")
        u, du, d2u = specfun.gauss_2f1_derivatives(a, b, c, z)
        parts = (z * (1 - z) * d2u, (c - (a + b + 1) * z) * du, -a * b * u)
        scale = sum(abs(x) for x in parts)
        res = abs(sum(parts)) / scale if scale > 0 else 0.0
        worst = max(worst, res)
    return worst


@dataclass
class IdentityReport:
    """Status of the printed algebraic relations for one channel. Never asserts."""

    channel: str
    items: list = field(default_factory=list)

    def add(self, key: str, holds: Optional[bool], detail: str):
        self.items.append((key, holds, detail))

    def status(self, key: str) -> Optional[bool]:
        for k, holds, _ in self.items:
            if k == key:
                return holds
        raise KeyError(key)

    def text(self) -> str:
        out = [f"# identities for {self.channel}"]
        for key, holds, detail in self.items:
            flag = "n/a" if holds is None else ("holds" if holds else "fails")
            out.append(f"{key}: {flag}; {detail}")
        return "\n".join(out) + "\n"


def _fmt(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}i"


def printed_identity_report(channel, allow_complex_exponent: bool = True) -> IdentityReport:
    """Evaluate the printed relations between betas, taus and conjugates for a channel.

    (i) the u-coefficient of the reduced hypergeometric equation: tau1 tau2
    against -[(g - ik/rho)^2 + beta1] and its sign flip; (ii) the z -> 1
    limit rho^2(-beta1 + beta2 - beta3) against k^2; (iii) the conjugation
    relations in printed order and as an unordered pair. Items (i) and (ii)
    only exist for DKP, where the betas are printed.
    """
    from .dkp import DkpChannel, dkp_betas, dkp_hyper_triple
    from .sse import sse_hyper_triple

    is_dkp = isinstance(channel, DkpChannel)
    t = (dkp_hyper_triple if is_dkp else sse_hyper_triple)(channel, allow_complex_exponent)
    rep = IdentityReport(channel=repr(channel))
    prod = t.tau1 * t.tau2
    scale = max(1.0, abs(prod))
    if is_dkp:
        b1, b2, b3 = dkp_betas(channel)
        base = (t.exponent - 1j * t.kappa) ** 2 + b1
        printed = abs(prod + base) / scale
        flipped = abs(prod - base) / scale
        rep.add("i.printed", printed <= 1e-12,
                f"tau1*tau2={_fmt(prod)} vs -[(g-ik/rho)^2+beta1]={_fmt(-base)} rel={printed:.3e}")
        rep.add("i.sign_flipped", flipped <= 1e-12,
                f"tau1*tau2 vs +[(g-ik/rho)^2+beta1] rel={flipped:.3e}")
        lhs = t.rho**2 * (-b1 + b2 - b3)
        rel = abs(lhs - t.k**2) / max(1.0, t.k**2)
        rep.add("ii.asymptotic_k2", rel <= 1e-12,
                f"rho^2(-beta1+beta2-beta3)={lhs:.12g} vs k^2={t.k**2:.12g}")
    else:
        rep.add("i.printed", None, "no printed betas for this model")
        rep.add("i.sign_flipped", None, "no printed betas for this model")
        rep.add("ii.asymptotic_k2", None, "no printed betas for this model")
    rep.add("eq17.sum", t.sum_identity_residual() <= 1e-12 * max(1.0, t.kappa),
            f"|tau3-tau1-tau2-2ik/rho|={t.sum_identity_residual():.3e}")
    rep.add("iii.conjugation_printed_order", t.identities_hold(),
            f"residual={t.conjugation_residual():.3e} radicand={t.radicand:.12g}")
    rep.add("iii.conjugation_pair", t.pair_identities_hold(),
            f"swapped residual={t.swapped_conjugation_residual():.3e}")
    return rep
