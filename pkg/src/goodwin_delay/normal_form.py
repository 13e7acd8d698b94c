"""Center-manifold reduction at a delay crossing.

Works in rescaled time (delay normalized to 1, eigenvalue i*omega*tau_k).
Produces the projection coefficients g20, g11, g02, g21, the first
Lyapunov coefficient c1(0), and the direction/stability classification of
the bifurcating periodic orbit.  The machinery is generic over both
subsystem variants; variant-B results are flagged as an extrapolation
since the reduction has only been validated against variant-A references.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateNormalization,
    ResidualCheckFailed,
    SingularSystem,
    ZeroTransversality,
)
from .model import Equilibrium, SubsystemCoefficients
from .spectral import SpectralReport

LINEAR_RESIDUAL_TOL = 1e-12
DEGENERATE_C1_TOL = 1e-12


@dataclass(frozen=True)
class EigenPair:
    alpha: complex
    alpha_star: complex
    B: complex
    omega: float
    tau_k: float

    def q(self, theta: float) -> np.ndarray:
        return np.array([1.0, self.alpha]) * cmath.exp(1j * self.omega * self.tau_k * theta)

    def q_star(self, s: float) -> np.ndarray:
        return self.B * np.array([self.alpha_star, 1.0]) * cmath.exp(
            1j * self.omega * self.tau_k * s)


@dataclass(frozen=True)
class GCoefficients:
    g20: complex
    g11: complex
    g02: complex
    g21: complex


@dataclass(frozen=True)
class WFunctions:
    """Closed-form second-order center-manifold corrections."""

    ep: EigenPair
    g20: complex
    g11: complex
    g02: complex
    E1: np.ndarray
    E2: np.ndarray

    def w20(self, theta: float) -> np.ndarray:
        wt = self.ep.omega * self.ep.tau_k
        q0 = self.ep.q(0.0)
        return ((1j * self.g20 / wt) * q0 * cmath.exp(1j * wt * theta)
                + (1j * np.conj(self.g02) / (3.0 * wt)) * np.conj(q0)
                * cmath.exp(-1j * wt * theta)
                + self.E1 * cmath.exp(2j * wt * theta))

    def w11(self, theta: float) -> np.ndarray:
        wt = self.ep.omega * self.ep.tau_k
        q0 = self.ep.q(0.0)
        return ((-1j * self.g11 / wt) * q0 * cmath.exp(1j * wt * theta)
                + (1j * np.conj(self.g11) / wt) * np.conj(q0)
                * cmath.exp(-1j * wt * theta)
                + self.E2)


@dataclass(frozen=True)
class HopfReport:
    c1_0: complex
    mu2_bar: float
    beta2: float
    direction: str       # supercritical | subcritical | inconclusive
    orbit_stability: str  # stable | unstable | inconclusive
    period_estimate: float  # 2*pi/omega, original time units
    extrapolated: bool = False

    def to_dict(self) -> dict:
        return {
            "c1_re": self.c1_0.real,
            "c1_im": self.c1_0.imag,
            "mu2_bar": self.mu2_bar,
            "beta2": self.beta2,
            "direction": self.direction,
            "orbit_stability": self.orbit_stability,
            "period_estimate": self.period_estimate,
            "extrapolated": self.extrapolated,
        }


def eigen_pair(eq: Equilibrium, coeffs: SubsystemCoefficients,
               omega: float, tau_k: float) -> EigenPair:
    """Critical eigenvectors q, q* with <q*, q> = 1."""
    be, le = eq.beta_e, eq.lambda_e
    gc, wd, d0 = coeffs.growth_coupling, coeffs.wage_damping, coeffs.delta0
    alpha = (gc * be - 1j * omega) / (d0 * be)
    alpha_star = (1j * omega - wd * le) / (d0 * be)
    denom = (np.conj(alpha_star) + alpha
             + tau_k * cmath.exp(-1j * omega * tau_k) * coeffs.rho1 * le)
    if abs(denom) < 1e-12:
        raise DegenerateNormalization(f"normalization denominator {denom!r}")
    # B-bar = 1/denom, so B is the conjugate reciprocal
    return EigenPair(alpha=alpha, alpha_star=alpha_star, B=np.conj(1.0 / denom),
                     omega=omega, tau_k=tau_k)


def _quadratic_g(ep: EigenPair, coeffs: SubsystemCoefficients) -> tuple[complex, complex, complex]:
    gc, wd, d0, r1 = (coeffs.growth_coupling, coeffs.wage_damping,
                      coeffs.delta0, coeffs.rho1)
    a = ep.alpha
    ca = np.conj(a)
    cas = np.conj(ep.alpha_star)
    Bbar = np.conj(ep.B)
    tk = ep.tau_k
    em = cmath.exp(-1j * ep.omega * tk)
    epl = cmath.exp(1j * ep.omega * tk)
    g20 = 2 * Bbar * tk * (a * gc + cas * gc - a * cas * d0 - a * a * wd + a * r1 * em)
    g11 = Bbar * tk * (a * gc + ca * gc + 2 * cas * gc - a * cas * d0
                       - ca * cas * d0 - 2 * a * ca * wd + epl * a * r1 + em * ca * r1)
    g02 = 2 * Bbar * tk * (ca * gc + cas * gc - ca * cas * d0 - ca * ca * wd
                           + epl * ca * r1)
    return g20, g11, g02


def _check_solve(M: np.ndarray, rhs: np.ndarray, what: str) -> np.ndarray:
    det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    scale = max(1.0, float(np.max(np.abs(M))) ** 2)
    if abs(det) < 1e-12 * scale:
        raise SingularSystem(f"{what}: determinant {det!r}")
    sol = np.linalg.solve(M, rhs)
    res = np.max(np.abs(M @ sol - rhs))
    if res > LINEAR_RESIDUAL_TOL * max(1.0, float(np.max(np.abs(rhs)))):
        raise ResidualCheckFailed(f"{what}: residual {res!r}")
    return sol


def solve_E1(ep: EigenPair, eq: Equilibrium,
             coeffs: SubsystemCoefficients) -> np.ndarray:
    """Constant vector of the e^{2*i*omega*tau_k*theta} correction term."""
    gc, wd, d0, r1 = (coeffs.growth_coupling, coeffs.wage_damping,
                      coeffs.delta0, coeffs.rho1)
    be, le = eq.beta_e, eq.lambda_e
    a = ep.alpha
    w, tk = ep.omega, ep.tau_k
    em = cmath.exp(-1j * w * tk)
    M = np.array([
        [2j * w - gc * be, d0 * le],
        [-gc * le - r1 * le * cmath.exp(-2j * w * tk), 2j * w + wd * le],
    ], dtype=complex)
    rhs = np.array([
        2 * gc - 2 * a * d0,
        2 * gc * a - 2 * a * a * wd + 2 * r1 * a * em,
    ], dtype=complex)
    return _check_solve(M, rhs, "E1")


def solve_E2(ep: EigenPair, eq: Equilibrium,
             coeffs: SubsystemCoefficients) -> np.ndarray:
    """Constant vector of the zero-frequency correction term (real)."""
    gc, wd, d0, r1 = (coeffs.growth_coupling, coeffs.wage_damping,
                      coeffs.delta0, coeffs.rho1)
    be, le = eq.beta_e, eq.lambda_e
    a = ep.alpha
    epl = cmath.exp(1j * ep.omega * ep.tau_k)
    M = np.array([
        [gc * be, -d0 * le],
        [(gc + r1) * le, -wd * le],
    ], dtype=float)
    rhs_c = -np.array([
        2 * gc - a * d0 - np.conj(a) * d0,
        2 * gc * a.real - 2 * wd * abs(a) ** 2 + 2 * r1 * (a * epl).real,
    ], dtype=complex)
    if np.max(np.abs(rhs_c.imag)) > 1e-12:
        raise ResidualCheckFailed(
            f"E2 right-hand side not real: imag {rhs_c.imag!r}")
    return _check_solve(M, rhs_c.real.astype(float), "E2")


def w_functions(ep: EigenPair, g20: complex, g11: complex, g02: complex,
                E1: np.ndarray, E2: np.ndarray) -> WFunctions:
    return WFunctions(ep=ep, g20=g20, g11=g11, g02=g02, E1=E1, E2=E2)


def _g21(ep: EigenPair, coeffs: SubsystemCoefficients, W: WFunctions) -> complex:
    gc, wd, d0, r1 = (coeffs.growth_coupling, coeffs.wage_damping,
                      coeffs.delta0, coeffs.rho1)
    a = ep.alpha
    ca = np.conj(a)
    cas = np.conj(ep.alpha_star)
    Bbar = np.conj(ep.B)
    tk = ep.tau_k
    em = cmath.exp(-1j * ep.omega * tk)
    epl = cmath.exp(1j * ep.omega * tk)
    W20_0 = W.w20(0.0)
    W20_m1 = W.w20(-1.0)
    W11_0 = W.w11(0.0)
    W11_m1 = W.w11(-1.0)
    return Bbar * tk * (
        2 * a * gc * W11_0[0] + 4 * cas * gc * W11_0[0]
        + ca * gc * W20_0[0] + 2 * cas * gc * W20_0[0]
        + 2 * gc * W11_0[1] + gc * W20_0[1]
        - 2 * a * cas * d0 * W11_0[0] - ca * cas * d0 * W20_0[0]
        - 2 * cas * d0 * W11_0[1] - cas * d0 * W20_0[1]
        - 4 * a * wd * W11_0[1] - 2 * ca * wd * W20_0[1]
        + 2 * a * r1 * W11_m1[0] + ca * r1 * W20_m1[0]
        + 2 * r1 * em * W11_0[1] + r1 * epl * W20_0[1]
    )


def g_coefficients(ep: EigenPair, eq: Equilibrium,
                   coeffs: SubsystemCoefficients) -> GCoefficients:
    """All four projection coefficients, including the W-dependent g21."""
    g20, g11, g02 = _quadratic_g(ep, coeffs)
    E1 = solve_E1(ep, eq, coeffs)
    E2 = solve_E2(ep, eq, coeffs)
    W = w_functions(ep, g20, g11, g02, E1, E2)
    return GCoefficients(g20=g20, g11=g11, g02=g02, g21=_g21(ep, coeffs, W))


def lyapunov_quantities(g: GCoefficients, omega: float, tau_k: float,
                        re_lambda_prime: float,
                        extrapolated: bool = False) -> HopfReport:
    """First Lyapunov coefficient and the orbit classification."""
    if re_lambda_prime == 0.0:
        raise ZeroTransversality("Re lambda'(tau_k) = 0")
    wt = omega * tau_k
    c1 = (1j / (2.0 * wt)) * (g.g11 * g.g20 - 2.0 * abs(g.g11) ** 2
                              - abs(g.g02) ** 2 / 3.0) + g.g21 / 2.0
    mu2_bar = -c1.real / re_lambda_prime
    beta2 = 2.0 * c1.real
    if abs(c1) < DEGENERATE_C1_TOL:
        direction = "inconclusive"
        orbit = "inconclusive"
    else:
        direction = "supercritical" if mu2_bar > 0 else "subcritical"
        orbit = "stable" if beta2 < 0 else "unstable"
    return HopfReport(c1_0=c1, mu2_bar=mu2_bar, beta2=beta2, direction=direction,
                      orbit_stability=orbit, period_estimate=2.0 * cmath.pi / omega,
                      extrapolated=extrapolated)


def hopf_analysis(eq: Equilibrium, coeffs: SubsystemCoefficients,
                  report: SpectralReport) -> HopfReport:
    """Run the full reduction at (omega0, tau0) from a spectral report."""
    if report.tau0 is None or report.transversality is None:
        raise ZeroTransversality("spectral report carries no crossing")
    ep = eigen_pair(eq, coeffs, report.omega0, report.tau0)
    g = g_coefficients(ep, eq, coeffs)
    return lyapunov_quantities(g, report.omega0, report.tau0,
                               report.transversality.re_lambda_prime,
                               extrapolated=(coeffs.variant == "B"))
