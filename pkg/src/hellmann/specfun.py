"""Complex special functions: log-gamma and the Gauss hypergeometric series.

Scalars are plain Python ``complex``. ``ln_gamma`` uses a g = 7, 9-term
Lanczos sum in the right half-plane and the reflection formula elsewhere.
``gauss_2f1`` handles real ``z`` in ``[0, 1)`` with arbitrary complex
parameters, switching to the two-term ``1 - z`` connection formula above
``Z_SWITCH``.
"""
from __future__ import annotations

import cmath
import math
import warnings

from .errors import (
    DegenerateContinuation,
    PoleAtNonPositiveInteger,
    PrecisionLossWarning,
    SeriesNonConvergent,
)

__all__ = [
    "Z_SWITCH",
    "arg_gamma",
    "gauss_2f1",
    "gauss_2f1_derivatives",
    "ln_gamma",
    "principal_sqrt",
]

Z_SWITCH = 0.5
MAX_TERMS = 10_000
SERIES_TOL = 1e-14
# peak |term| / |sum| above which the series result is flagged as unreliable
CANCELLATION_LIMIT = 1e8

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)
_LOG_2 = math.log(2.0)


def _as_complex(z) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite argument {z!r}")
    return z


def _is_pole(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _lanczos_ln_gamma(z: complex) -> complex:
    # valid for Re(z) >= 0.5
    z = z - 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def _one_minus_exp(q: complex) -> complex:
    """1 - exp(q) without cancellation for small |q|."""
    qr, qi = q.real, q.imag
    re = math.expm1(qr) * math.cos(qi) - 2.0 * math.sin(0.5 * qi) ** 2
    im = math.exp(qr) * math.sin(qi)
    return complex(-re, -im)


def _log_sinpi(z: complex) -> complex:
    """log(sin(pi z)), continuous on the closed upper half-plane.

    Uses sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z}); only the periodic
    factor is reduced, so large Im(z) never overflows.
    """
    if z.imag < 0.0:
        return _log_sinpi(z.conjugate()).conjugate()
    w = z - round(z.real)
    return (-1j * math.pi * z + cmath.log(_one_minus_exp(2j * math.pi * w))
            - _LOG_2 + 0.5j * math.pi)


def ln_gamma(z) -> complex:
    """Logarithm of the complex gamma function.

    Continuous off the negative real axis, so ``exp(ln_gamma(z)) == gamma(z)``
    and differences of imaginary parts track the argument without jumps.

    Raises
    ------
    PoleAtNonPositiveInteger
        If ``z`` is 0, -1, -2, ...
    """
    z = _as_complex(z)
    if _is_pole(z):
        raise PoleAtNonPositiveInteger(z)
    if z.real >= 0.5:
        return _lanczos_ln_gamma(z)
    return _LOG_PI - _log_sinpi(z) - _lanczos_ln_gamma(1.0 - z)


def arg_gamma(z) -> float:
    """Argument of Gamma(z) in radians (imaginary part of ``ln_gamma``)."""
    return ln_gamma(z).imag


def principal_sqrt(x: float) -> complex:
    """Square root of a real number on the principal branch (``i*sqrt(|x|)`` for x < 0)."""
    x = float(x)
    if x >= 0.0:
        return complex(math.sqrt(x), 0.0)
    return complex(0.0, math.sqrt(-x))


def _series(p: complex, q: complex, c: complex, z: float) -> complex:
    if z == 0.0:
        return 1.0 + 0.0j
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    peak = 1.0
    quiet = 0
    for n in range(MAX_TERMS):
        ratio = (p + n) * (q + n) / ((c + n) * (n + 1)) * z
        term *= ratio
        total += term
        aterm = abs(term)
        if aterm == 0.0:
            break
        peak = max(peak, aterm)
        if aterm <= SERIES_TOL * (1.0 + abs(total)) and abs(ratio) < 1.0:
            quiet += 1
            if quiet >= 2:
                break
        else:
            quiet = 0
    else:
        raise SeriesNonConvergent(
            f"2F1 series ({p}, {q}; {c}; {z}) unconverged after {MAX_TERMS} terms")
    if peak > CANCELLATION_LIMIT * abs(total):
        warnings.warn(
            f"2F1 series lost ~{math.log10(peak / max(abs(total), 1e-300)):.0f} digits "
            f"to cancellation at z={z}", PrecisionLossWarning, stacklevel=3)
    return total


def _gamma_ratio(num: tuple, den: tuple) -> complex:
    """prod Gamma(num) / prod Gamma(den); zero when a denominator sits on a pole."""
    for d in den:
        if _is_pole(complex(d)):
            return 0.0j
    log_val = sum(ln_gamma(a) for a in num) - sum(ln_gamma(d) for d in den)
    return cmath.exp(log_val)


def _continuation(p: complex, q: complex, c: complex, z: float) -> complex:
    d = c - p - q
    if d.imag == 0.0 and abs(d.real - round(d.real)) < 1e-12:
        raise DegenerateContinuation(
            f"c - a - b = {d} is an integer; the connection formula is singular")
    w = 1.0 - z
    first = _gamma_ratio((c, d), (c - p, c - q))
    second = _gamma_ratio((c, -d), (p, q))
    out = 0.0j
    if first != 0.0:
        out += first * _series(p, q, 1.0 - d, w)
    if second != 0.0:
        out += second * cmath.exp(d * math.log(w)) * _series(c - p, c - q, d + 1.0, w)
    return out


def gauss_2f1(p, q, c, z: float, method: str = "auto") -> complex:
    """Gauss hypergeometric function 2F1(p, q; c; z) for real z in [0, 1).

    Parameters
    ----------
    p, q, c : complex
        Series parameters; ``c`` must not be a non-positive integer.
    z : float
        Real argument in ``[0, 1)``.
    method : {"auto", "series", "continuation"}
        ``auto`` sums the power series for ``z <= Z_SWITCH`` and uses the
        connection formula to ``1 - z`` otherwise. The other two force a
        branch, which is how the overlap region is cross-checked.
    """
    p, q, c = _as_complex(p), _as_complex(q), _as_complex(c)
    z = float(z)
    if not 0.0 <= z < 1.0:
        raise ValueError(f"z must lie in [0, 1), got {z}")
    if _is_pole(c):
        raise PoleAtNonPositiveInteger(c)
    if z == 0.0:
        return 1.0 + 0.0j
    if method == "auto":
        method = "series" if z <= Z_SWITCH else "continuation"
    if method == "series":
        return _series(p, q, c, z)
    if method == "continuation":
        return _continuation(p, q, c, z)
    raise ValueError(f"unknown method {method!r}")


def gauss_2f1_derivatives(p, q, c, z: float, method: str = "auto"):
    """Return (F, dF/dz, d2F/dz2) using d/dz 2F1(p,q;c;z) = (pq/c) 2F1(p+1,q+1;c+1;z)."""
    p, q, c = complex(p), complex(q), complex(c)
    f0 = gauss_2f1(p, q, c, z, method)
    f1 = p * q / c * gauss_2f1(p + 1, q + 1, c + 1, z, method)
    f2 = (p * (p + 1) * q * (q + 1) / (c * (c + 1))
          * gauss_2f1(p + 2, q + 2, c + 2, z, method))
    return f0, f1, f2
