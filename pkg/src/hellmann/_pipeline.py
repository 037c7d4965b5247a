"""Machinery common to the DKP and SSE pipelines.

Both models reduce to the same hypergeometric structure once the triple is
built, so the Gamma-function phase, the normalization, the wavefunction,
the bound-state root search and the partial-wave sum live here.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import NonConvergentSum
from .results import HyperTriple
from .specfun import arg_gamma, gauss_2f1, ln_gamma


TWO_PI = 2.0 * math.pi


def wrap_2pi(x: float) -> float:
    y = math.fmod(x, TWO_PI)
    if y < 0:
        y += TWO_PI
    # fmod can return exactly 2pi after the shift for tiny negatives
    return 0.0 if y >= TWO_PI else y


def wrap_pi(x: float) -> float:
    """Map to (-pi, pi]."""
    y = wrap_2pi(x)
    return y - TWO_PI if y > math.pi else y


def distance_mod_pi(x: float, y: float) -> float:
    d = math.fmod(x - y, math.pi)
    d = abs(d)
    return min(d, math.pi - d)


def gamma_ratio_phase(t: HyperTriple) -> float:
    """arg[Gamma(2ik/rho) / (Gamma(tau3 - tau1) Gamma(tau3 - tau2))], unreduced."""
    return (arg_gamma(2j * t.kappa) - arg_gamma(t.tau2_star) - arg_gamma(t.tau1_star))


def phase_from_triple(t: HyperTriple) -> tuple[float, float]:
    """Return (delta in [0, 2pi), delta_bar in (-pi, pi])."""
    dbar = gamma_ratio_phase(t)
    delta = 0.5 * math.pi * (t.ell + 1) + dbar
    return wrap_2pi(delta), wrap_pi(dbar)


def normalization_from_triple(t: HyperTriple) -> float:
    """|Gamma(tau1*) Gamma(tau2*) / Gamma(2ik/rho)| / |Gamma(tau3)|, in log space."""
    log_mod = (ln_gamma(t.tau1_star).real + ln_gamma(t.tau2_star).real
               - ln_gamma(2j * t.kappa).real - ln_gamma(t.tau3).real)
    return math.exp(log_mod)


def radial_values(t: HyperTriple, r_grid, norm: float, method: str = "auto") -> np.ndarray:
    """N (1 - e^{-rho r})^exponent e^{ikr} 2F1(tau1, tau2; tau3; 1 - e^{-rho r})."""
    r = np.asarray(r_grid, dtype=float)
    if np.any(r <= 0):
        raise ValueError("all radii must be positive")
    out = np.empty(r.shape, dtype=complex)
    for i, ri in enumerate(r.flat):
        z = -math.expm1(-t.rho * ri)
        pref = np.exp(t.exponent * math.log(z) + 1j * t.k * ri)
        out.flat[i] = norm * pref * gauss_2f1(t.tau1, t.tau2, t.tau3, z, method)
    return out


def partial_sigma_sin2(k: float, ell: int, delta: float) -> float:
    """(4 pi / k^2)(2l + 1) sin^2(delta)."""
    return 4.0 * math.pi / k**2 * (2 * ell + 1) * math.sin(delta) ** 2


def partial_sigma_transition(k: float, ell: int, transition: float) -> float:
    """(pi / k^2)(2l + 1) T."""
    return math.pi / k**2 * (2 * ell + 1) * transition


def sum_partial_waves(term: Callable[[int], float], l_max: int,
                      tol: Optional[float] = None, patience: int = 3):
    """Sum ``term(l)`` for l = 0..l_max.

    With ``tol`` set, stop once ``patience`` consecutive terms are each below
    ``tol`` times the running sum; reaching ``l_max`` first raises
    NonConvergentSum. Without ``tol`` every term up to ``l_max`` is summed.
    Returns (sigma, terms_used, terms).
    """
    if l_max < 0:
        raise ValueError("l_max must be >= 0")
    total = 0.0
    terms = []
    small = 0
    for ell in range(l_max + 1):
        t = term(ell)
        terms.append(t)
        total += t
        if tol is None:
            continue
        small = small + 1 if (t == 0.0 and total == 0.0) or t < tol * abs(total) else 0
        if small >= patience:
            return total, ell + 1, terms
    if tol is not None:
        raise NonConvergentSum(
            f"partial-wave tail still above tol={tol} at l_max={l_max} (sigma={total})")
    return total, l_max + 1, terms


def _bisect(f, lo, hi, flo, xtol):
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    fl, fh = f(lo), f(hi)
    return lo if abs(fl) <= abs(fh) else hi


def bracket_roots(f: Callable[[float], float], lo: float, hi: float, grid: int,
                  xtol: float = 1e-12) -> list[float]:
    """All sign-change roots of a real function on [lo, hi].

    Sign changes between adjacent grid points are bisected. Interior local
    extrema that do not change sign on the grid are minimised once more, so a
    pair of close roots hidden inside one cell is still found.
    """
    if not lo < hi:
        raise ValueError(f"empty range [{lo}, {hi}]")
    if grid < 2:
        raise ValueError("grid must be >= 2")
    xs = [float(x) for x in np.linspace(lo, hi, grid)]
    fs = np.array([f(x) for x in xs])
    brackets = []
    for i in range(grid - 1):
        if fs[i] == 0.0:
            brackets.append((xs[i], xs[i]))
        elif fs[i] * fs[i + 1] < 0:
            brackets.append((xs[i], xs[i + 1]))
    if fs[-1] == 0.0:
        brackets.append((xs[-1], xs[-1]))
    for i in range(1, grid - 1):
        left, mid, right = fs[i - 1], fs[i], fs[i + 1]
        if not ((mid - left) * (right - mid) < 0 and left * mid > 0 and mid * right > 0):
            continue
        sign = 1.0 if mid > 0 else -1.0
        res = minimize_scalar(lambda x: sign * f(x), bounds=(xs[i - 1], xs[i + 1]),
                              method="bounded", options={"xatol": xtol})
        xm = float(res.x)
        if sign * f(xm) < 0:
            brackets.append((xs[i - 1], xm))
            brackets.append((xm, xs[i + 1]))
    # a root sitting exactly on a grid point can hide a close partner in the next cell
    for i in range(grid - 1):
        if (fs[i] == 0.0) == (fs[i + 1] == 0.0):
            continue
        j = i + 1 if fs[i] == 0.0 else i
        sign = 1.0 if fs[j] > 0 else -1.0
        res = minimize_scalar(lambda x: sign * f(x), bounds=(xs[i], xs[i + 1]),
                              method="bounded", options={"xatol": xtol})
        xm = float(res.x)
        if sign * f(xm) < 0:
            brackets.append((xm, xs[j]) if j > i else (xs[j], xm))
    roots = []
    for a, b in brackets:
        roots.append(a if a == b else _bisect(f, a, b, f(a), xtol))
    return sorted(set(roots))


def ordered_map(fn: Callable, items: Iterable, jobs: int = 1) -> list:
    """map() that may fan out over threads but always returns input order."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))
