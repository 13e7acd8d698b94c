"""Independent numerical oracles used by the test suite.

Everything here deliberately avoids the code paths under test: root
counting goes through the argument principle, projection coefficients
through finite differences, and linear solves through Cramer's rule.
"""

import cmath
import math

import numpy as np

from goodwin_delay.model import equilibrium, subsystem_coefficients, validate_parameters
from goodwin_delay.spectral import char_coefficients, classify_h

CASE_A = dict(mu1=0.0, mu2=1.0, nu1=0.02, nu2=0.04, n=0.01, gamma1=0.01,
              gamma2=0.012, a1=0.9, a2=1.0, a3=0.99, b1=1.9, b2=0.0, b3=0.6,
              c=0.38, s_pi=0.24, s_w=0.04, delta=4.2)

CASE_B = dict(mu1=0.0186145, mu2=0.5, nu1=0.015, nu2=0.03, n=0.01, gamma1=0.0,
              gamma2=0.0, a1=0.9, a2=1.0, a3=1.0, b1=1.9, b2=0.0, b3=0.6,
              c=0.4, s_pi=0.24, s_w=0.04, delta=4.0)


# ---------------------------------------------------------------- roots

def winding_number(f, pts, max_refine=40):
    """Winding of f along the polyline pts, with adaptive refinement."""
    pts = np.asarray(pts, dtype=complex)
    for _ in range(max_refine):
        vals = f(pts)
        d = np.angle(vals[1:] / vals[:-1])
        bad = np.abs(d) > 0.8
        if not bad.any():
            return round(float(d.sum() / (2.0 * math.pi)))
        where = np.nonzero(bad)[0]
        mids = 0.5 * (pts[where] + pts[where + 1])
        pts = np.insert(pts, where + 1, mids)
    raise RuntimeError("winding number did not converge")


def rhp_root_count(p0, r0, q0, tau):
    """Number of roots of x^2 + p0 x + r0 + q0 e^(-x tau) with Re x > 0."""
    def P(x):
        return x * x + p0 * x + r0 + q0 * np.exp(-x * tau)

    # roots in the closed right half plane satisfy |x^2| <= |p0||x| + |r0| + |q0|
    R = 2.0 * (abs(p0) + math.sqrt(abs(r0) + abs(q0))) + 2.0
    axis = 1j * np.linspace(R, -R, 801)
    arc = R * np.exp(1j * np.linspace(-math.pi / 2, math.pi / 2, 801))
    contour = np.concatenate([axis, arc[1:], axis[:1]])
    return winding_number(P, contour)


def brute_force_onset(p0, r0, q0, tau_max, tol=1e-4):
    """First delay at which a root enters the right half plane.

    Coarse grid scan followed by bisection; fully independent of the
    closed-form delay ladder.  Returns None if no onset below tau_max.
    """
    grid = np.linspace(0.0, tau_max, 61)
    lo = None
    for prev, cur in zip(grid[:-1], grid[1:]):
        if rhp_root_count(p0, r0, q0, cur) > 0:
            lo, hi = prev, cur
            break
    else:
        return None
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if rhp_root_count(p0, r0, q0, mid) > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------- normal-form oracles

def fd_quadratic_g(ep, coeffs, step=1e-5):
    """g20, g11, g02 by finite-difference Taylor coefficients of the
    projected nonlinearity (W terms enter only at third order)."""
    gc, wd, d0, r1 = (coeffs.growth_coupling, coeffs.wage_damping,
                      coeffs.delta0, coeffs.rho1)
    wt = ep.omega * ep.tau_k
    ca = np.conj(ep.alpha)
    cas = np.conj(ep.alpha_star)
    Bbar = np.conj(ep.B)

    def G(z, zb):
        u10 = z + zb
        u20 = z * ep.alpha + zb * ca
        u1m = z * cmath.exp(-1j * wt) + zb * cmath.exp(1j * wt)
        f1 = gc * u10 ** 2 - d0 * u10 * u20
        f2 = gc * u10 * u20 - wd * u20 ** 2 + r1 * u1m * u20
        return Bbar * ep.tau_k * (cas * f1 + f2)

    h = step
    g20 = (G(h, 0) - 2 * G(0, 0) + G(-h, 0)) / h ** 2
    g02 = (G(0, h) - 2 * G(0, 0) + G(0, -h)) / h ** 2
    g11 = (G(h, h) - G(h, -h) - G(-h, h) + G(-h, -h)) / (4 * h ** 2)
    return g20, g11, g02


def cramer_solve(M, rhs):
    """2x2 solve by Cramer's rule (independent of numpy.linalg)."""
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    x0 = (rhs[0] * M[1][1] - M[0][1] * rhs[1]) / det
    x1 = (M[0][0] * rhs[1] - rhs[0] * M[1][0]) / det
    return np.array([x0, x1])


def bilinear_inner_product(ep, coeffs, eq):
    """<q*, q> recomputed from the bilinear form: point term plus the
    single delayed-matrix correction."""
    tk, w = ep.tau_k, ep.omega
    qs0 = np.conj(ep.q_star(0.0))
    q0 = ep.q(0.0)
    point = qs0 @ q0
    j_tau = np.array([[0.0, 0.0], [coeffs.rho1 * eq.lambda_e, 0.0]])
    corr = tk * cmath.exp(-1j * w * tk) * (qs0 @ (j_tau @ q0))
    return point + corr


# ---------------------------------------------------------- sampling

def _jitter(rng, base, keys, lo=0.5, hi=1.5):
    raw = dict(base)
    for k in keys:
        raw[k] = base[k] * rng.uniform(lo, hi)
    return raw


def consistent_mu1(raw):
    """mu1 that makes the variant-B wage-share consistency exact."""
    g = raw["c"] - (raw["s_pi"] - raw["s_w"])
    K = (g - raw["s_w"]) * raw["delta"] - raw["mu2"] * raw["nu1"] - raw["n"]
    d0 = g * raw["delta"] + raw["mu2"] * raw["nu2"]
    return (1 - raw["mu2"]) * (raw["nu2"] * K + d0 * raw["nu1"]) / (
        d0 + raw["nu2"] * (1 - raw["mu2"]))


def sample_crossing_set(rng, variant="A", require_stable_at_zero=False):
    """Random valid parameter set whose subsystem has a delay crossing."""
    base = CASE_A if variant == "A" else CASE_B
    jitter_keys = ("nu1", "nu2", "gamma1", "gamma2", "delta", "c", "n",
                   "a1", "a2", "b1", "b3")
    if variant == "B":
        jitter_keys = ("nu1", "nu2", "delta", "c", "n", "a1", "a2", "b1", "b3")
    while True:
        raw = _jitter(rng, base, jitter_keys, 0.7, 1.3)
        if variant == "B":
            raw["mu2"] = rng.uniform(0.2, 0.9)
            raw["mu1"] = consistent_mu1(raw)
            if raw["mu1"] < 0:
                continue
        try:
            p = validate_parameters(raw)
            coeffs = subsystem_coefficients(p, variant)
            eq = equilibrium(coeffs, p)
        except Exception:
            continue
        if not (eq.beta_e > 0 and eq.lambda_e > 0):
            continue
        c = char_coefficients(eq, coeffs)
        if require_stable_at_zero and not (c.p0 > 0 and c.r0 + c.q0 > 0):
            continue
        h = classify_h(c)
        if not h.roots:
            continue
        return p, coeffs, eq, c, h
