"""Arbitrary-precision reference evaluations used to mint and cross-check goldens.

Everything here goes through mpmath only and never imports the package under
test, so it stays an independent route to the same numbers.
"""
import mpmath as mp

mp.mp.dps = 40


def dkp_k2(a, b, rho, energy, mass, J):
    a, b, rho, E, m = map(mp.mpf, (a, b, rho, energy, mass))
    return E**2 - m**2 + a**2 * rho**2 - 2 * a * rho * E - J * (J + 1) * rho**2


def dkp_delta(a, b, rho, energy, mass, J):
    a, b, rho, E, m = map(mp.mpf, (a, b, rho, energy, mass))
    k = mp.sqrt(dkp_k2(a, b, rho, E, m, J))
    K = k / rho
    gam = mp.mpf(1) / 2 + mp.sqrt(mp.mpc((J + mp.mpf(1) / 2) ** 2 - (a - b) ** 2))
    rad = a * (a - 2 * E / rho) + b * (b - 2 * E / rho) - J * (J + 1) - K**2
    s = mp.sqrt(mp.mpc(rad))
    t1 = gam - 1j * K - s
    t2 = gam - 1j * K + s
    t3 = 2 * gam
    d = (mp.pi / 2 * (J + 1) + mp.im(mp.loggamma(2j * K))
         - mp.im(mp.loggamma(t3 - t1)) - mp.im(mp.loggamma(t3 - t2)))
    norm = abs(mp.gamma(t3 - t1) * mp.gamma(t3 - t2) / mp.gamma(2j * K)) / abs(mp.gamma(t3))
    return mp.fmod(d, 2 * mp.pi) % (2 * mp.pi), k, norm


def sse_delta(a, b, rho, energy, mu, s, l):
    a, b, rho, E, mu, s = map(mp.mpf, (a, b, rho, energy, mu, s))
    k2 = 2 * mu * (E + a * rho) + s * (E + a) ** 2 - l * (l + 1) * rho**2
    k = mp.sqrt(k2)
    K = k / rho
    v = mp.mpf(1) / 2 + mp.sqrt(mp.mpc((l + mp.mpf(1) / 2) ** 2 - s * (a / rho - b) ** 2))
    rad = (2 * mu * a / rho + s * (2 * E / rho * (a / rho - b) + (a / rho - b) * (a / rho + b))
           - l * (l + 1) - K**2)
    sq = mp.sqrt(mp.mpc(rad))
    x1 = v - 1j * K - sq
    x2 = v - 1j * K + sq
    x3 = 2 * v
    d = (mp.pi / 2 * (l + 1) + mp.im(mp.loggamma(2j * K))
         - mp.im(mp.loggamma(x3 - x2)) - mp.im(mp.loggamma(x3 - x1)))
    norm = abs(mp.gamma(x3 - x1) * mp.gamma(x3 - x2) / mp.gamma(2j * K)) / abs(mp.gamma(x3))
    return d % (2 * mp.pi), k, norm, rad


if __name__ == "__main__":
    print("gamma(1+i)", mp.gamma(1 + 1j), mp.arg(mp.gamma(1 + 1j)))
    print("loggamma(1+i)", mp.loggamma(1 + 1j))
    for J in (0, 1):
        print("dkp fig-like E=2 J=%d" % J, dkp_delta(0.15, 0.15, 0.1, 2, 1, J))
    for l in (0, 1):
        print("sse fig2a l=%d" % l, sse_delta(0.2, -1, 0.5, 1, 0.5, 0.25, l))
