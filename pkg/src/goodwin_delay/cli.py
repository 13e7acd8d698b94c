"""Command-line front end: analyze / simulate / sweep.

Exit codes: 0 success, 1 configuration error, 2 analysis-precondition
failure, 3 simulation failure.  All emitted files use shortest
round-trip float formatting, so identical configs produce byte-identical
outputs.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .errors import (
    ConstraintViolation,
    GoodwinDelayError,
    InconsistentPsi,
    MissingField,
    NoOscillation,
    StepTooLarge,
    UnknownField,
    VariantConstraint,
    WindowTooShort,
)
from .model import (
    PARAM_FIELDS,
    equilibrium,
    load_config,
    subsystem_coefficients,
    validate_parameters,
)
from .normal_form import hopf_analysis
from .simulate import HistorySpec, classify_dynamics, oscillation_period, simulate
from .spectral import stability_verdict

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_ANALYSIS = 2
EXIT_SIMULATION = 3

CONFIG_ERRORS = (MissingField, UnknownField, ConstraintViolation, VariantConstraint)
SIMULATION_ERRORS = (StepTooLarge, WindowTooShort, NoOscillation)

MAX_SWEEP_POINTS = 1_000_000


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _write_json(path: Path, doc: dict) -> None:
    path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _load_params(args):
    raw = load_config(args.config)
    return validate_parameters(raw)


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_analyze(args) -> int:
    p = _load_params(args)
    out = _outdir(args)
    verdict = stability_verdict(p, args.variant, args.tau, j_max=args.jmax)
    report = verdict.report
    coeffs = subsystem_coefficients(p, args.variant)
    eq = equilibrium(coeffs, p)
    hopf = None
    if report.tau0 is not None:
        hopf = hopf_analysis(eq, coeffs, report)
    doc = {
        "engine_version": __version__,
        "variant": args.variant,
        "tau": args.tau,
        "parameters": {k: getattr(p, k) for k in PARAM_FIELDS},
        "derived": {"g": p.derived.g, "rho0": p.derived.rho0, "rho1": p.derived.rho1},
        "equilibrium": {
            "beta_e": eq.beta_e, "lambda_e": eq.lambda_e,
            "interior": eq.interior, "lambda_star": eq.lambda_star,
        },
        "spectral": report.to_dict(verdict=verdict.kind),
        "instability_interval": list(verdict.interval) if verdict.interval else None,
        "hopf": hopf.to_dict() if hopf else None,
    }
    _write_json(out / "analysis.json", doc)
    print(f"equilibrium: beta_e={_fmt(eq.beta_e)} lambda_e={_fmt(eq.lambda_e)}"
          f" interior={eq.interior}")
    print(f"h_case: {report.h_case.tag}  stable_at_zero: {report.stable_at_zero}")
    if report.tau0 is not None:
        print(f"tau0: {_fmt(report.tau0)}  omega0: {_fmt(report.omega0)}"
              f"  h'(z0): {_fmt(report.transversality.h_prime_z0)}")
    else:
        print("tau0: none (delay-independent stability)")
    print(f"verdict at tau={_fmt(args.tau)}: {verdict.kind}")
    if hopf:
        print(f"hopf: c1(0)={complex(hopf.c1_0)!r} direction={hopf.direction}"
              f" orbit={hopf.orbit_stability}"
              f" period_estimate={_fmt(hopf.period_estimate)}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    p = _load_params(args)
    out = _outdir(args)
    coeffs = subsystem_coefficients(p, args.variant)
    eq = equilibrium(coeffs, p)
    if args.init is not None:
        b0, l0 = (float(x) for x in args.init.split(","))
    else:
        # repo convention: the reference figures never state their start
        b0, l0 = eq.beta_e - 0.05, eq.lambda_e - 0.05
    history = HistorySpec(beta=b0, lambda_=l0)
    traj = simulate(coeffs, args.tau, history, args.t_end, step_hint=args.step)
    _write_csv(out / "trajectory.csv", ["t", "beta", "lambda"],
               zip(traj.times.tolist(), traj.beta.tolist(), traj.lambda_.tolist()))
    _write_csv(out / "phase.csv", ["beta", "lambda"],
               zip(traj.beta.tolist(), traj.lambda_.tolist()))
    sidecar = {
        "engine_version": __version__,
        "variant": args.variant,
        "tau": args.tau,
        "t_end": args.t_end,
        "step": traj.step,
        "overflow": traj.overflow,
        "history": {"kind": history.kind, "beta": b0, "lambda": l0},
        "parameters": {k: getattr(p, k) for k in PARAM_FIELDS},
    }
    _write_json(out / "run.json", sidecar)
    label = classify_dynamics(traj)
    extra = " (overflow: run truncated)" if traj.overflow else ""
    print(f"classification: {label}{extra}")
    try:
        print(f"measured_period: {_fmt(oscillation_period(traj))}")
    except NoOscillation:
        pass
    return EXIT_OK


def _sweep_row(p_raw, args, value):
    """One sweep row; errors are captured into the row, not raised."""
    base = [value]
    blank = [None] * (8 + (6 if args.with_hopf else 0))
    try:
        raw = dict(p_raw)
        tau = args.tau
        if args.param == "tau":
            tau = value
        else:
            raw[args.param] = value
        p = validate_parameters(raw)
        verdict = stability_verdict(p, args.variant, tau, j_max=args.jmax)
        report = verdict.report
        eq_ = equilibrium(subsystem_coefficients(p, args.variant), p)
        row = base + [
            eq_.beta_e, eq_.lambda_e,
            report.coefficients.p0, report.coefficients.r0, report.coefficients.q0,
            report.h_case.tag, report.tau0, verdict.kind,
        ]
        if args.with_hopf:
            if report.tau0 is not None:
                hopf = hopf_analysis(eq_, subsystem_coefficients(p, args.variant),
                                     report)
                row += [hopf.c1_0.real, hopf.c1_0.imag, hopf.mu2_bar, hopf.beta2,
                        hopf.direction, hopf.orbit_stability]
            else:
                row += [None] * 6
        return row + [""]
    except GoodwinDelayError as exc:
        return base + blank + [type(exc).__name__]


def cmd_sweep(args) -> int:
    raw = load_config(args.config)
    validate_parameters(raw)  # config-grade errors surface before the sweep
    if args.param != "tau" and args.param not in PARAM_FIELDS:
        raise ConstraintViolation("param", args.param, "a sweep axis name")
    if args.count < 1 or args.count > MAX_SWEEP_POINTS:
        raise ConstraintViolation("count", args.count,
                                  f"1 <= count <= {MAX_SWEEP_POINTS}")
    if not (math.isfinite(args.start) and math.isfinite(args.stop)):
        raise ConstraintViolation("range", (args.start, args.stop), "finite range")
    out = _outdir(args)
    if args.count == 1:
        values = [args.start]
    else:
        step = (args.stop - args.start) / (args.count - 1)
        values = [args.start + i * step for i in range(args.count)]
    threads = int(os.environ.get("GOODWIN_DELAY_THREADS", "1"))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda v: _sweep_row(raw, args, v), values))
    else:
        rows = [_sweep_row(raw, args, v) for v in values]
    header = [args.param, "beta_e", "lambda_e", "p0", "r0", "q0", "h_case",
              "tau0", "verdict"]
    if args.with_hopf:
        header += ["c1_re", "c1_im", "mu2_bar", "beta2", "direction",
                   "orbit_stability"]
    header += ["error"]
    _write_csv(out / "sweep.csv", header, rows)
    print(f"wrote {len(rows)} rows to {out / 'sweep.csv'}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="goodwin-delay",
        description="Delay-induced Hopf bifurcation analysis of the "
                    "employment/wage-share growth-cycle subsystems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", required=True, help="JSON parameter file")
        sp.add_argument("--variant", choices=("A", "B"), default="A")
        sp.add_argument("--out", default=".", help="output directory")
        sp.add_argument("--jmax", type=int, default=3,
                        help="delay-ladder depth per crossing frequency")

    sp = sub.add_parser("analyze", help="spectral + normal-form report")
    common(sp)
    sp.add_argument("--tau", type=float, default=0.0)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("simulate", help="integrate a trajectory")
    common(sp)
    sp.add_argument("--tau", type=float, required=True)
    sp.add_argument("--t-end", dest="t_end", type=float, required=True)
    sp.add_argument("--step", type=float, default=None, help="step hint")
    sp.add_argument("--init", default=None,
                    help="initial state 'beta,lambda' (default: equilibrium - 0.05)")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("sweep", help="CSV table over a parameter range")
    common(sp)
    sp.add_argument("--param", default="tau",
                    help="sweep axis: 'tau' or a parameter name")
    sp.add_argument("--start", type=float, required=True)
    sp.add_argument("--stop", type=float, required=True)
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--tau", type=float, default=0.0,
                    help="fixed delay when sweeping a model parameter")
    sp.add_argument("--with-hopf", dest="with_hopf", action="store_true")
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CONFIG_ERRORS as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SIMULATION_ERRORS as exc:
        print(f"simulation error: {exc}", file=sys.stderr)
        return EXIT_SIMULATION
    except GoodwinDelayError as exc:
        # InconsistentPsi and the spectral/normal-form preconditions
        print(f"analysis error: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS


if __name__ == "__main__":
    sys.exit(main())
