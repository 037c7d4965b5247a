"""Plain result containers shared by the DKP, SSE and oracle modules."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np


@dataclass(frozen=True)
class HyperTriple:
    """Hypergeometric parameters of one channel.

    ``tau1, tau2, tau3`` are the 2F1 parameters, ``exponent`` the
    near-origin power (gamma for DKP, v for SSE), ``k`` the wave number and
    ``radicand`` the real quantity under the square root shared by
    ``tau1`` and ``tau2``.
    """

    tau1: complex
    tau2: complex
    tau3: complex
    exponent: complex
    k: float
    rho: float
    ell: int
    radicand: float
    model: str = "dkp"

    @property
    def radicand_real(self) -> bool:
        """True when the shared square root is real (radicand >= 0)."""
        return self.radicand >= 0

    @property
    def complex_exponent(self) -> bool:
        return self.exponent.imag != 0

    @property
    def kappa(self) -> float:
        """Dimensionless wave number k / rho."""
        return self.k / self.rho

    @property
    def tau1_star(self) -> complex:
        return self.tau3 - self.tau2

    @property
    def tau2_star(self) -> complex:
        return self.tau3 - self.tau1

    def sum_identity_residual(self) -> float:
        """|tau3 - tau1 - tau2 - 2ik/rho|."""
        return abs(self.tau3 - self.tau1 - self.tau2 - 2j * self.kappa)

    def conjugation_residual(self) -> float:
        """Residual of tau3 - tau2 = conj(tau1), tau3 - tau1 = conj(tau2) in printed order."""
        return max(abs(self.tau1_star - self.tau1.conjugate()),
                   abs(self.tau2_star - self.tau2.conjugate()))

    def swapped_conjugation_residual(self) -> float:
        """Residual of the same identities with tau1 and tau2 exchanged."""
        return max(abs(self.tau1_star - self.tau2.conjugate()),
                   abs(self.tau2_star - self.tau1.conjugate()))

    def identities_hold(self, tol: float = 1e-12) -> bool:
        scale = max(1.0, abs(self.tau1), abs(self.tau2))
        return self.conjugation_residual() <= tol * scale

    def pair_identities_hold(self, tol: float = 1e-12) -> bool:
        """{tau3 - tau1, tau3 - tau2} == {conj(tau1), conj(tau2)} as an unordered pair."""
        scale = max(1.0, abs(self.tau1), abs(self.tau2))
        return min(self.conjugation_residual(),
                   self.swapped_conjugation_residual()) <= tol * scale


@dataclass(frozen=True)
class PhaseShiftResult:
    delta: float
    transition: float
    partial_sigma: float
    delta_bar: float
    k: float
    ell: int
    identity_ok: bool
    evanescent: bool = False
    complex_exponent: bool = False


@dataclass
class RadialSolution:
    """Sampled radial wavefunction; ``fitted_phase`` is filled by the oracle."""

    r_values: np.ndarray
    u_values: np.ndarray
    k: float
    fitted_phase: Optional[float] = None
    fit_residual: Optional[float] = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.r_values = np.asarray(self.r_values, dtype=float)
        self.u_values = np.asarray(self.u_values, dtype=complex)
        if self.r_values.shape != self.u_values.shape:
            raise ValueError("r_values and u_values differ in shape")
        if np.any(self.r_values <= 0) or np.any(np.diff(self.r_values) <= 0):
            raise ValueError("r_values must be positive and strictly increasing")


@dataclass(frozen=True)
class BoundState:
    n: int
    energy: float
    residual: float
