"""Characteristic quasi-polynomial analysis.

The linearization at the positive equilibrium has characteristic function

    P(x) = x^2 + p0*x + r0 + q0*exp(-x*tau)

Purely imaginary roots i*omega exist where the auxiliary quadratic
h(z) = z^2 + (p0^2 - 2 r0) z + r0^2 - q0^2 has a positive root z = omega^2,
and the corresponding delays form the ladder tau_k^j.  The smallest such
delay tau0 is the Hopf candidate; the sign of h'(z0) gives the crossing
direction.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import (
    AcosDomain,
    DegenerateCrossing,
    NoCrossing,
    ResidualCheckFailed,
)
from .model import (
    Equilibrium,
    ModelParameters,
    SubsystemCoefficients,
    equilibrium,
    subsystem_coefficients,
)

DELTA_BOUNDARY_TOL = 1e-12  # discriminant == 0 resolution
LADDER_RESIDUAL_TOL = 1e-9
HOPF_CRITICAL_TOL = 1e-9


@dataclass(frozen=True)
class CharCoefficients:
    p0: float
    r0: float
    q0: float
    variant: str


@dataclass(frozen=True)
class HCase:
    """Positive-root classification of the auxiliary quadratic."""

    tag: str  # H1..H6
    discriminant: float
    roots: tuple[float, ...]  # positive roots, descending
    note: str = ""


@dataclass(frozen=True)
class TransversalityReport:
    h_prime_z0: float
    D: float
    re_lambda_prime: float
    sign: int


@dataclass(frozen=True)
class SpectralReport:
    coefficients: CharCoefficients
    h_case: HCase
    stable_at_zero: bool
    delay_independent: bool
    omegas: tuple[float, ...] = ()
    tau_ladders: tuple[tuple[float, ...], ...] = ()
    tau0: float | None = None
    omega0: float | None = None
    z0: float | None = None
    transversality: TransversalityReport | None = None

    def to_dict(self, verdict: str | None = None) -> dict:
        doc = {
            "p0": self.coefficients.p0,
            "r0": self.coefficients.r0,
            "q0": self.coefficients.q0,
            "h_case": self.h_case.tag,
            "omega": list(self.omegas),
            "tau_ladder": [list(l) for l in self.tau_ladders],
            "tau0": self.tau0,
            "omega0": self.omega0,
            "z0": self.z0,
            "h_prime_z0": (self.transversality.h_prime_z0
                           if self.transversality else None),
            "re_lambda_prime": (self.transversality.re_lambda_prime
                                if self.transversality else None),
            "stable_at_zero": self.stable_at_zero,
            "delay_independent": self.delay_independent,
        }
        if self.h_case.note:
            doc["h_case_note"] = self.h_case.note
        if verdict is not None:
            doc["verdict"] = verdict
        return doc


@dataclass(frozen=True)
class Verdict:
    kind: str  # stable_all_delays | stable | hopf_critical | unstable | unstable_at_zero
    tau: float
    interval: tuple[float, float] | None
    report: SpectralReport


def char_coefficients(eq: Equilibrium, coeffs: SubsystemCoefficients) -> CharCoefficients:
    be, le = eq.beta_e, eq.lambda_e
    gc, wd = coeffs.growth_coupling, coeffs.wage_damping
    # delta0 - wage_damping recovers g*delta for both variants
    return CharCoefficients(
        p0=wd * le - gc * be,
        r0=(coeffs.delta0 - wd) * gc * be * le,
        q0=coeffs.delta0 * coeffs.rho1 * be * le,
        variant=coeffs.variant,
    )


def stable_at_zero_delay(c: CharCoefficients) -> bool:
    """Routh-Hurwitz for the tau = 0 quadratic."""
    return c.p0 > 0 and c.r0 + c.q0 > 0


def h_value(c: CharCoefficients, z: float) -> float:
    return z * z + (c.p0 ** 2 - 2 * c.r0) * z + c.r0 ** 2 - c.q0 ** 2


def h_prime(c: CharCoefficients, z: float) -> float:
    return 2 * z + c.p0 ** 2 - 2 * c.r0


def char_residual(c: CharCoefficients, omega: float, tau: float) -> float:
    """|P(i*omega; tau)|."""
    x = 1j * omega
    return abs(x * x + c.p0 * x + c.r0 + c.q0 * cmath.exp(-x * tau))


def classify_h(c: CharCoefficients) -> HCase:
    """Assign the exhaustive H1..H6 tag and the positive roots of h."""
    a = c.p0 ** 2 - 2 * c.r0           # linear coefficient; h'(z) = 2z + a
    const = c.r0 ** 2 - c.q0 ** 2
    disc = a * a - 4 * const
    note = ""
    if const < 0:
        tag = "H4"
        # sqrt(disc) > |a|: the + root is positive, the - root negative
        z = (-a + math.sqrt(disc)) / 2.0
        roots = (z,)
    elif disc < -DELTA_BOUNDARY_TOL:
        tag, roots = "H1", ()
    elif disc <= DELTA_BOUNDARY_TOL:
        if 2 * c.r0 - c.p0 ** 2 > 0:
            tag, roots = "H3", (-a / 2.0,)
        else:
            tag, roots = "H2", ()
    else:
        # disc > 0, const >= 0
        if 2 * c.r0 - c.p0 ** 2 > 0:
            tag = "H6"
            z1 = (-a + math.sqrt(disc)) / 2.0
            if const == 0.0:
                # one root at exactly zero: not a crossing frequency
                roots = (z1,)
                note = "r0^2 - q0^2 = 0 exactly; z = 0 treated as non-crossing"
            else:
                roots = (z1, const / z1)
        else:
            tag, roots = "H5", ()
    roots = tuple(z for z in roots if z > 0.0)
    return HCase(tag=tag, discriminant=disc, roots=roots, note=note)


def crossing_frequencies(h: HCase) -> tuple[float, ...]:
    """omega_k = sqrt(z_k), ordered by descending z."""
    if not h.roots:
        raise NoCrossing(f"case {h.tag}: no positive root of h")
    return tuple(math.sqrt(z) for z in h.roots)


def critical_delays(c: CharCoefficients, omega: float, j_max: int = 3) -> tuple[float, ...]:
    """Delay ladder tau^j, j = 0..j_max, at one crossing frequency.

    The principal arccos branch assumes sin(omega*tau) = p0*omega/q0 >= 0;
    when the sine consistency check prefers the reflected branch
    (reachable for p0 < 0 in sweeps), 2*pi - arccos(...) is used instead.
    """
    if omega <= 0:
        raise AcosDomain("omega must be positive")
    if c.q0 == 0:
        raise AcosDomain("q0 = 0: no delayed term in the characteristic function")
    arg = (omega * omega - c.r0) / c.q0
    if abs(arg) > 1.0 + 1e-12:
        raise AcosDomain(f"arccos argument {arg!r} outside [-1, 1]")
    arg = min(1.0, max(-1.0, arg))
    base = math.acos(arg)
    # sin(2*pi - base) = -sin(base): pick the branch matching p0*omega = q0*sin
    if abs(c.q0 * math.sin(base) - c.p0 * omega) > abs(-c.q0 * math.sin(base) - c.p0 * omega):
        base = 2.0 * math.pi - base
    ladder = tuple((base + 2.0 * math.pi * j) / omega for j in range(j_max + 1))
    for tau in ladder:
        res = char_residual(c, omega, tau)
        if res > LADDER_RESIDUAL_TOL:
            raise ResidualCheckFailed(
                f"|P(i*{omega}; {tau})| = {res!r} exceeds {LADDER_RESIDUAL_TOL}"
            )
    return ladder


def transversality(c: CharCoefficients, z0: float, omega0: float,
                   tau0: float) -> TransversalityReport:
    """Sign and value of d(Re x)/dtau at the crossing (omega0, tau0)."""
    hp = h_prime(c, z0)
    if abs(hp) < 1e-12:
        raise DegenerateCrossing(f"h'(z0) = {hp!r} within 1e-12 of zero")
    wt = omega0 * tau0
    D = ((c.p0 * math.cos(wt) - 2 * omega0 * math.sin(wt) - c.q0 * tau0) ** 2
         + (c.p0 * math.sin(wt) + 2 * omega0 * math.cos(wt)) ** 2)
    re_lp = omega0 * omega0 * hp / D
    return TransversalityReport(h_prime_z0=hp, D=D, re_lambda_prime=re_lp,
                                sign=1 if hp > 0 else -1)


def analyze_spectrum(eq: Equilibrium, coeffs: SubsystemCoefficients,
                     j_max: int = 3) -> SpectralReport:
    """Full spectral report: coefficients, H-case, ladders, tau0, slope."""
    c = char_coefficients(eq, coeffs)
    h = classify_h(c)
    stable0 = stable_at_zero_delay(c)
    try:
        omegas = crossing_frequencies(h)
    except NoCrossing:
        return SpectralReport(coefficients=c, h_case=h, stable_at_zero=stable0,
                              delay_independent=True)
    ladders = tuple(critical_delays(c, w, j_max) for w in omegas)
    k0 = min(range(len(omegas)), key=lambda k: ladders[k][0])
    tau0 = ladders[k0][0]
    omega0 = omegas[k0]
    z0 = h.roots[k0]
    tv = transversality(c, z0, omega0, tau0)
    return SpectralReport(
        coefficients=c, h_case=h, stable_at_zero=stable0,
        delay_independent=False, omegas=omegas, tau_ladders=ladders,
        tau0=tau0, omega0=omega0, z0=z0, transversality=tv,
    )


def stability_verdict(p: ModelParameters, variant: str, tau: float,
                      j_max: int = 3) -> Verdict:
    """Stability classification of the equilibrium at a given delay."""
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    coeffs = subsystem_coefficients(p, variant)
    eq = equilibrium(coeffs, p)
    report = analyze_spectrum(eq, coeffs, j_max=j_max)
    if not report.stable_at_zero:
        return Verdict(kind="unstable_at_zero", tau=tau, interval=None, report=report)
    if report.delay_independent:
        return Verdict(kind="stable_all_delays", tau=tau, interval=None, report=report)
    tau0 = report.tau0
    later = [t for ladder in report.tau_ladders for t in ladder if t > tau0]
    tau1 = min(later) if later else None
    interval = (tau0, tau1) if tau1 is not None else None
    if abs(tau - tau0) < HOPF_CRITICAL_TOL:
        kind = "hopf_critical"
    elif tau < tau0:
        kind = "stable"
    else:
        kind = "unstable"
    return Verdict(kind=kind, tau=tau, interval=interval, report=report)
