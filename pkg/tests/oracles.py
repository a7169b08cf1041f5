"""Arbitrary-precision reference evaluations, independent of the package code.

Everything here is written directly from the closed-form expressions with
mpmath at 50 digits and never imports steerlab.
"""

import mpmath as mp

mp.mp.dps = 50

HBAR = mp.mpf("6.62607015e-34") / (2 * mp.pi)


def mechanical_cm(c1, c2, n1, n2, r, tau):
    c1, c2, n1, n2, r, tau = (mp.mpf(x) for x in (c1, c2, n1, n2, r, tau))
    ch, sh = mp.cosh(2 * r), mp.sinh(2 * r)
    v = [
        ((1 + 2 * n) * (1 + tau + tau * c) + c * ch) / (2 * (1 + tau) * (1 + c))
        for c, n in ((c1, n1), (c2, n2))
    ]
    v12 = mp.sqrt(c1 * c2) * (1 + tau) * sh / ((2 + c1 + c2) * (1 + tau) ** 2 + tau / 2 * (c1 - c2) ** 2)
    return v[0], v[1], v12


def steering(v1, v2, v12):
    """(G A->B, G B->A) from the determinant form, unit-vacuum-1/2 convention."""
    det = (v1 * v2 - v12**2) ** 2
    ab = max(mp.mpf(0), mp.log(v1 * v1 / (4 * det)) / 2)
    ba = max(mp.mpf(0), mp.log(v2 * v2 / (4 * det)) / 2)
    return ab, ba


def renyi2(v1, v2, v12):
    s, d, g = (v1 + v2) / 2, (v1 - v2) / 2, v1 * v2 - v12**2
    if 4 * g >= 4 * s - 1:
        return mp.mpf(0)
    x = ((4 * g + 1) * s - mp.sqrt(((4 * g - 1) ** 2 - 16 * d * d) * (s * s - d * d - g))) / (4 * (d * d + g))
    return mp.log(x * x) / 2


def cooperativity(wc, power, gamma, mass, wm, wl, length, kappa):
    wc, power, gamma, mass, wm, wl, length, kappa = (
        mp.mpf(x) for x in (wc, power, gamma, mass, wm, wl, length, kappa)
    )
    return 8 * wc**2 * power / (gamma * mass * wm * wl * length**2 * ((kappa / 2) ** 2 + wm**2))


def lab_cooperativity(power):
    two_pi = 2 * mp.pi
    return cooperativity(
        two_pi * mp.mpf("5.26e14"),
        mp.mpf(power),
        two_pi * 140,
        mp.mpf("145e-12"),
        two_pi * 947000,
        two_pi * mp.mpf("2.82e14"),
        mp.mpf("0.025"),
        two_pi * 215000,
    )


def coupled_pair_eigenvalues(gamma, kappa, chi):
    """Roots of l^2 + (g+k)/2 l + (g k / 4 + chi^2) = 0."""
    gamma, kappa, chi = mp.mpf(gamma), mp.mpf(kappa), mp.mpf(chi)
    tr = -(gamma + kappa) / 2
    det = gamma * kappa / 4 + chi**2
    disc = mp.sqrt(mp.mpc(tr * tr - 4 * det))
    return (tr + disc) / 2, (tr - disc) / 2
