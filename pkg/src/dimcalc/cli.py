"""``dimcli``: dimension checks, Pi reduction and gravitation experiments from the shell.

Exit codes: 0 success or consistent, 1 semantic failure (inconsistent
dimensions, invariance violated, residual check failed), 2 input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import expr as ex
from .dimension import LTM
from .errors import DimcalcError, DimensionMismatchError, ParseError
from .gravsim import (
    RESIDUAL_THRESHOLD,
    DilationLTM,
    Mode,
    ResidualSummary,
    integrate,
    measure_gamma,
    residual_summary,
    time_reflect,
    transform_report,
)
from .pi import kernel_basis, log_uniform, reduce_law
from .quantity import Quantity, UnitFrame
from .theory import Theory, load_law, load_theory
from .traceio import load_sim_config, read_trace, write_trace

OK, FAIL, INPUT_ERROR = 0, 1, 2


def _emit(args, payload: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _resolve_check_input(args) -> tuple[str, Optional[Theory]]:
    theory = load_theory(args.theory) if args.theory else None
    p = Path(args.input)
    if p.suffix == ".json" and p.is_file():
        law = load_law(p)
        return law.equation, theory or law.theory
    return args.input, theory


def cmd_check(args) -> int:
    text, theory = _resolve_check_input(args)
    frame = theory.frame if theory else UnitFrame.default(LTM)
    env = theory.matrix.dims() if theory else {}
    node = ex.parse(text, frame.unit_names)
    try:
        report = ex.check(node, env, frame)
    except ex.DimensionCheckError as err:
        _emit(args, {"consistent": False, "error": err.bare_message, "line": err.line, "column": err.column},
              [f"inconsistent: {err}"])
        return FAIL
    width = max(len(s) for s, _ in report.steps)
    lines = [f"  {s.ljust(width)}  {d}" for s, d in report.steps]
    if isinstance(node, ex.Equation):
        lines.append(f"consistent: both sides have dimension {report.dimension}")
    else:
        lines.append(f"consistent: dimension {report.dimension}")
    _emit(args, {"consistent": True, "dimension": str(report.dimension),
                 "steps": [[s, str(d)] for s, d in report.steps]}, lines)
    return OK


def cmd_pi(args) -> int:
    theory = load_theory(args.theory)
    A = theory.matrix
    B = kernel_basis(A)
    names = A.derived_names
    payload = {"K": B.K, "R": B.rank, "L": A.n_derived, "derived": list(names),
               "kernel": [list(v) for v in B.vectors], "pi": B.render(names)}
    lines = [f"K = {B.K}  R = {B.rank}  L = {A.n_derived}"]
    if B.K == 0:
        lines.append("no dimensionless combinations")
    else:
        lines.append("kernel vectors (" + ", ".join(names) + "):")
        lines += ["  (" + ", ".join(str(e) for e in v) + ")" for v in B.vectors]
        lines += B.render(names)
    _emit(args, payload, lines)
    return OK


def _on_law_sampler(eq: ex.Equation, names: tuple[str, ...], frame: UnitFrame, dims, lo=1e-3, hi=1e3):
    """Sample tuples on the law when it solves for a single quantity (``omega = ...``); else None."""
    if not isinstance(eq.lhs, ex.Ident) or eq.lhs.name in ex.identifiers(eq.rhs):
        return None
    target = names.index(eq.lhs.name)
    flip = [False]

    def sample(rng: np.random.Generator):
        mags = log_uniform(rng, lo, hi, len(names))
        flip[0] = not flip[0]
        if flip[0]:
            values = {n: Quantity(m, dims[n], frame) for n, m in zip(names, mags)}
            try:
                v = ex.evaluate(eq.rhs, values, frame).magnitude
            except DimcalcError:
                return mags
            if v > 0 and math.isfinite(v):
                mags[target] = v
        return mags

    return sample


def cmd_reduce(args) -> int:
    law = load_law(args.law)
    theory = law.theory
    frame, A = theory.frame, theory.matrix
    dims = A.dims()
    eq = ex.parse(law.equation, frame.unit_names)
    if not isinstance(eq, ex.Equation):
        raise ParseError("law must be an equation 'lhs = rhs'")
    try:
        ex.check(eq, dims, frame)
    except ex.DimensionCheckError as err:
        _emit(args, {"consistent": False, "error": str(err)}, [f"inconsistent law: {err}"])
        return FAIL
    names = A.derived_names
    B = kernel_basis(A)
    f = ex.law_residual(eq, names, frame, dims)
    zero_tol = args.tol if args.tol is not None else 1e-9
    reduced = reduce_law(A, B, f, samples=args.samples, seed=args.seed, zero_tol=zero_tol,
                         sampler=_on_law_sampler(eq, names, frame, dims))
    rep = reduced.report
    ones = tuple(1.0 for _ in range(B.K))
    f_one = reduced(*ones) if B.K else f(tuple(1.0 for _ in names))
    lines = [f"law: {ex.render(eq)}"]
    lines += B.render(names) if B.K else ["no dimensionless combinations"]
    lines += [
        "section: " + ", ".join(reduced.section_columns) + " set to 1",
        f"F({', '.join('1' for _ in ones)}) = {f_one!r}",
        f"invariance: {rep.samples} samples (seed {args.seed}), {rep.on_law_samples} on the law, "
        f"{rep.dilation_violations} dilation violations, {rep.roundtrip_violations} reduction mismatches",
        rep.note,
    ]
    _emit(args, {"pi": B.render(names), "kernel": [list(v) for v in B.vectors],
                 "F_at_ones": f_one, "samples": rep.samples, "on_law": rep.on_law_samples,
                 "dilation_violations": rep.dilation_violations,
                 "roundtrip_violations": rep.roundtrip_violations, "ok": rep.ok}, lines)
    return OK if rep.ok else FAIL


def _summary_lines(s: ResidualSummary) -> list[str]:
    verdict = "PASS" if s.passes else "FAIL"
    return [f"residual check: {verdict} (max residual {s.max_residual}, relative {s.relative:.3e}, "
            f"threshold {s.threshold:.1e})",
            f"acceleration factor (model / numerical): {s.accel_factor:.6g}"]


def _summary_json(s: ResidualSummary) -> dict:
    return {"max_residual": s.max_residual.magnitude, "relative": s.relative,
            "accel_factor": s.accel_factor, "threshold": s.threshold, "passes": s.passes}


def cmd_simulate(args) -> int:
    system, init, opts = load_sim_config(args.config)
    if args.tol is not None:
        opts["tol"] = args.tol
    traj = integrate(system, init, **opts)
    out = write_trace(traj, args.output or Path(args.config).with_suffix(".csv").name)
    s = residual_summary(traj, args.threshold)
    lines = [f"wrote {out} ({len(traj)} samples)", f"termination: {traj.termination.value}"] + _summary_lines(s)
    _emit(args, {"trace": str(out), "samples": len(traj), "termination": traj.termination.value,
                 "residual": _summary_json(s)}, lines)
    return OK


def cmd_scale(args) -> int:
    traj = read_trace(args.trace)
    d = DilationLTM(args.lam, args.tau, args.mu)
    rep = transform_report(traj, d, args.mode)
    out = args.output or Path(args.trace).with_name(Path(args.trace).stem + f"_{rep.mode.value}.csv")
    write_trace(rep.trajectory, out)
    s = residual_summary(rep.trajectory, args.threshold)
    sat = "satisfied" if d.constraint_satisfied else "violated"
    if rep.mode is Mode.LEIBNIZ:
        verdict = "N/A"
        status = OK
    else:
        verdict = "PASS" if s.passes else "FAIL"
        status = OK if s.passes else FAIL
    lines = [f"wrote {out} (mode {rep.mode.value})",
             f"lambda^3 tau^-2 mu^-1 = {d.constraint_value!r} ({sat})",
             *_summary_lines(s),
             f"verdict: {verdict}"]
    if rep.mode is Mode.LEIBNIZ:
        lines.append("numerals unchanged; units rescaled with the quantities (isomorphism, not a symmetry)")
    _emit(args, {"trace": str(out), "mode": rep.mode.value, "constraint_value": d.constraint_value,
                 "constraint_satisfied": d.constraint_satisfied, "residual": _summary_json(s),
                 "verdict": verdict, "units": list(rep.frame.unit_names),
                 "unit_scales": list(rep.frame.unit_scales), "masses": list(rep.mass_numerals),
                 "gamma": rep.gamma_numeral}, lines)
    return status


def cmd_measure_gamma(args) -> int:
    traj = read_trace(args.trace)
    fit = measure_gamma(traj)
    lines = [f"Gamma = {fit.gamma}",
             f"fit through origin over {fit.points} points: rms residual {fit.rms_residual:.3e} "
             f"(relative {fit.relative_rms:.3e})"]
    _emit(args, {"gamma": fit.gamma.magnitude, "units": traj.frame.render(fit.gamma.dim),
                 "points": fit.points, "rms_residual": fit.rms_residual,
                 "relative_rms": fit.relative_rms}, lines)
    return OK


def cmd_reflect(args) -> int:
    traj = read_trace(args.trace)
    ref = time_reflect(traj)
    out = args.output or Path(args.trace).with_name(Path(args.trace).stem + "_reflected.csv")
    write_trace(ref, out)
    s = residual_summary(ref, args.threshold)
    _emit(args, {"trace": str(out), "termination": ref.termination.value, "residual": _summary_json(s)},
          [f"wrote {out}", f"termination: {ref.termination.value}"] + _summary_lines(s))
    return OK if s.passes else FAIL


def _positive(text: str) -> float:
    v = float(text)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be positive and finite, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                        help="integration tolerance (simulate) or law zero tolerance (reduce)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for sampled checks")

    p = argparse.ArgumentParser(prog="dimcli", description=__doc__.splitlines()[0], parents=[common])
    p.set_defaults(json=False, tol=None, seed=0)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="dimension-check an expression or law")
    c.add_argument("input", help="expression text, 'lhs = rhs', or a law file (.json)")
    c.add_argument("--theory", help="theory file declaring the identifiers")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("pi", parents=[common], help="dimensionless groups of a theory")
    c.add_argument("theory")
    c.set_defaults(func=cmd_pi)

    c = sub.add_parser("reduce", parents=[common], help="reduce a law to Pi variables and test invariance")
    c.add_argument("law")
    c.add_argument("--samples", type=int, default=1000)
    c.set_defaults(func=cmd_reduce)

    c = sub.add_parser("simulate", parents=[common], help="integrate an N-body config to a trace")
    c.add_argument("config")
    c.add_argument("-o", "--output")
    c.add_argument("--threshold", type=float, default=RESIDUAL_THRESHOLD)
    c.set_defaults(func=cmd_simulate)

    c = sub.add_parser("scale", parents=[common], help="dilate a trace and check it still solves the dynamics")
    c.add_argument("trace")
    c.add_argument("--lambda", dest="lam", type=_positive, default=1.0)
    c.add_argument("--tau", type=_positive, default=1.0)
    c.add_argument("--mu", type=_positive, default=1.0)
    c.add_argument("--mode", choices=[m.value for m in Mode], default="active")
    c.add_argument("-o", "--output")
    c.add_argument("--threshold", type=float, default=RESIDUAL_THRESHOLD)
    c.set_defaults(func=cmd_scale)

    c = sub.add_parser("measure-gamma", parents=[common], help="fit Gamma from a trace")
    c.add_argument("trace")
    c.set_defaults(func=cmd_measure_gamma)

    c = sub.add_parser("reflect", parents=[common], help="time-reverse a trace")
    c.add_argument("trace")
    c.add_argument("-o", "--output")
    c.add_argument("--threshold", type=float, default=RESIDUAL_THRESHOLD)
    c.set_defaults(func=cmd_reflect)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        return args.func(args)
    except DimensionMismatchError as exc:
        # only reachable from malformed inputs (e.g. a config whose Gamma has the wrong units)
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except (DimcalcError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
