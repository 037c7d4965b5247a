import math

import numpy as np
import pytest

from hellmann import DkpChannel, HellmannPotential, PhaseShiftResult, SseChannel
from hellmann._pipeline import phase_from_triple
from hellmann.dkp import dkp_hyper_triple, dkp_phase_shift, dkp_wavefunction
from hellmann.errors import InvalidWindow, PoorFit
from hellmann.oracle import (
    compare_phase,
    extract_phase,
    hypergeometric_ode_residual,
    integrate_regular_solution,
    oracle_phase,
    printed_identity_report,
    regular_rhs,
    rk4_fixed,
)
from hellmann.results import HyperTriple, RadialSolution
from hellmann.specfun import gauss_2f1
from hellmann.sse import sse_hyper_triple, sse_phase_shift

CH = DkpChannel(1, 2.0, 1.0, HellmannPotential(0.3, 0.1, 0.5))


def _synthetic(k, values):
    r = np.linspace(1.0, 40.0, 4000)
    return RadialSolution(r_values=r, u_values=values(r), k=k)


@pytest.mark.parametrize("phi", [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.1])
def test_synthetic_standing_wave(phi):
    k = 1.3
    sol = _synthetic(k, lambda r: (0.7 - 2.1j) * 2 * np.sin(k * r + phi))
    phase, residual = extract_phase(sol)
    assert abs(math.remainder(phase - phi, math.pi)) < 1e-10
    assert residual < 1e-12
    assert sol.fitted_phase == phase


def test_pure_outgoing_wave_is_rejected():
    with pytest.raises(PoorFit):
        extract_phase(_synthetic(1.0, lambda r: np.exp(1j * r)))


def test_noisy_wave_is_rejected():
    rng = np.random.default_rng(0)
    with pytest.raises(PoorFit) as info:
        extract_phase(_synthetic(1.0, lambda r: np.sin(r) + 0.05 * rng.standard_normal(r.size)))
    assert info.value.residual > 1e-4


def test_window_checks():
    sol = _synthetic(1.0, lambda r: np.sin(r))
    with pytest.raises(InvalidWindow):
        extract_phase(sol, window=(10.0, 40.0))
    with pytest.raises(InvalidWindow):
        extract_phase(sol, window=(39.9, 40.0))
    with pytest.raises(InvalidWindow):
        extract_phase(sol, window=(35.0, 30.0))


def test_integration_window_checks():
    t = dkp_hyper_triple(CH)
    with pytest.raises(InvalidWindow):
        integrate_regular_solution(t, r_max=10.0)
    with pytest.raises(InvalidWindow):
        integrate_regular_solution(t, r0=1.0)


def test_integrated_solution_matches_series():
    t = dkp_hyper_triple(CH)
    sol = integrate_regular_solution(t)
    z = -np.expm1(-t.rho * sol.r_values)
    u = sol.meta["u"]
    for idx in np.nonzero((z > 0.01) & (z <= 0.5))[0][::200]:
        ref = gauss_2f1(t.tau1, t.tau2, t.tau3, z[idx], "series")
        assert abs(u[idx] - ref) <= 1e-7 * abs(ref)


def test_rk4_is_fourth_order():
    t = dkp_hyper_triple(CH)
    rhs = regular_rhs(t)
    r0 = -math.log1p(-0.01) / t.rho
    r1 = -math.log1p(-0.4) / t.rho
    z0 = 0.01
    u0 = gauss_2f1(t.tau1, t.tau2, t.tau3, z0)
    du0 = t.tau1 * t.tau2 / t.tau3 * gauss_2f1(t.tau1 + 1, t.tau2 + 1, t.tau3 + 1, z0)
    y0 = [u0, (1 - z0) * du0]
    exact = gauss_2f1(t.tau1, t.tau2, t.tau3, 0.4)
    errs = [abs(rk4_fixed(rhs, r0, y0, r1, n)[0] - exact) for n in (50, 100, 200)]
    orders = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
    assert all(3.7 < p < 4.3 for p in orders)


def test_ode_residual_near_one():
    t = dkp_hyper_triple(CH)
    assert hypergeometric_ode_residual(t, [0.99]) < 1e-7
    with pytest.raises(ValueError):
        hypergeometric_ode_residual(t, [1.0])


@pytest.mark.parametrize("ch, triple_fn, phase_fn", [
    (CH, dkp_hyper_triple, dkp_phase_shift),
    (DkpChannel(0, 1.5, 1.0, HellmannPotential(-2.8, -3.0, 0.5)), dkp_hyper_triple, dkp_phase_shift),
    (SseChannel(1, 1.8, 1.0, 2.0, HellmannPotential(-0.4, 0.3, 0.7)), sse_hyper_triple, sse_phase_shift),
])
def test_oracle_closure(ch, triple_fn, phase_fn):
    t = triple_fn(ch)
    cmp = compare_phase(phase_fn(ch), oracle_phase(t))
    assert cmp.passed, cmp.line()
    assert cmp.difference < 1e-6
    assert not cmp.warnings


def test_perturbed_tau1_breaks_closure():
    t = dkp_hyper_triple(CH)
    sol = oracle_phase(t)
    bad = HyperTriple(tau1=t.tau1 + 0.05, tau2=t.tau2, tau3=t.tau3, exponent=t.exponent,
                      k=t.k, rho=t.rho, ell=t.ell, radicand=t.radicand)
    delta, dbar = phase_from_triple(bad)
    fake = PhaseShiftResult(delta, 4 * math.sin(delta) ** 2, 0.0, dbar, t.k, t.ell, False)
    assert not compare_phase(fake, sol).passed


def test_channel_mismatch_warning():
    sol = oracle_phase(dkp_hyper_triple(CH))
    other = dkp_phase_shift(CH.with_J(0))
    cmp = compare_phase(other, sol)
    assert cmp.warnings


def test_free_wavefunction_asymptotics():
    ch = DkpChannel(0, 2.0, 1.0, HellmannPotential(0.0, 0.0, 0.5))
    r = np.linspace(0.8 * 40, 40, 400)
    sol = dkp_wavefunction(ch, r)
    phase, _ = extract_phase(sol, window=(r[0], r[-1]))
    res = dkp_phase_shift(ch)
    expected = (0.5 * math.pi + res.delta_bar) % math.pi
    assert abs(math.remainder(phase - expected, math.pi)) < 1e-8


def test_printed_identity_report():
    rep = printed_identity_report(DkpChannel(0, 2.0, 1.0, HellmannPotential(0.15, 0.15, 0.1)))
    assert rep.status("i.printed") is False
    assert rep.status("i.sign_flipped") is True
    assert rep.status("ii.asymptotic_k2") is False
    assert rep.status("eq17.sum") is True
    assert rep.status("iii.conjugation_printed_order") is False
    assert rep.status("iii.conjugation_pair") is True
    assert "eq17.sum: holds" in rep.text()
    sse = printed_identity_report(SseChannel(1, 1.0, 1.0, 1.0, HellmannPotential(0.2, -1, 0.5)))
    assert sse.status("i.printed") is None
    with pytest.raises(KeyError):
        sse.status("nope")
