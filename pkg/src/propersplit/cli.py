"""Command-line front end.

Every subcommand prints one JSON report on stdout and a short human summary
on stderr.  Exit codes: 0 when all checks pass, 1 when a check fails or the
computation breaks down numerically, 2 on usage, file, or precondition
errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from datetime import datetime, timezone

import numpy as np

from .alternate import (
    ALT_COMPARE_MODES,
    alternating_solve,
    build_alternating,
    compare_alternating,
    induced_splitting,
    mp_iterate,
)
from .cases import run_suite
from .generator import FAMILIES, generate_random_splitting
from .matcore import DEFAULT_TOLS, NumericalError, Tolerances, pinv
from .mmio import ParseError, read_matrix, write_matrix
from .solver import DEFAULT_STOP, StopRule, stationary_solve, verify_solution
from .spectral import eigenvalues, gelfand_radius, spectral_radius
from .splitting import (
    COMPARE_MODES,
    SplitClass,
    build_splitting,
    compare_splittings,
    is_semimonotone,
    iteration_identities,
)

__all__ = ["main", "run_command"]


def _check(name, expected, actual, tolerance, ok):
    return {
        "name": name,
        "expected": _jsonable(expected),
        "actual": _jsonable(actual),
        "tolerance": tolerance,
        "pass": bool(ok),
    }


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, (np.floating, np.integer)):
        return float(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def _vec(path):
    return read_matrix(path).reshape(-1)


def _stop(args) -> StopRule:
    stop = DEFAULT_STOP
    if getattr(args, "tol", None) is not None:
        stop = dataclasses.replace(stop, rel_tol=args.tol)
    if getattr(args, "max_iters", None) is not None:
        stop = dataclasses.replace(stop, max_iters=args.max_iters)
    return stop


def _solution_checks(a, b, rep, tols):
    ver = verify_solution(a, b, rep.final, tols)
    return ver, [
        _check("converged", True, rep.converged, 0.0, rep.converged),
        _check(
            "solution_matches_pinv",
            True,
            ver.matches_pinv_solution,
            tols.eq_tol,
            ver.matches_pinv_solution,
        ),
    ]


def cmd_classify(args, tols, stop):
    s = build_splitting(read_matrix(args.A), read_matrix(args.U), tols)
    results = {
        "class": s.split_class.label,
        "range_match": s.range_match,
        "null_match": s.null_match,
        "rho_uv": spectral_radius(s.h),
        "semimonotone": is_semimonotone(s, tols),
    }
    if s.proper:
        ids = iteration_identities(s, tols)
        results["factorization_residual"] = ids.factorization_residual
        results["pinv_residual"] = ids.pinv_residual
    return results, []


def cmd_solve(args, tols, stop):
    a = read_matrix(args.A)
    b = _vec(args.b)
    s = build_splitting(a, read_matrix(args.U), tols)
    x0 = _vec(args.x0) if args.x0 else None
    rep = stationary_solve(s, b, x0=x0, stop=stop)
    ver, checks = _solution_checks(a, b, rep, tols)
    results = {
        "final": rep.final,
        "iterations": rep.iterations,
        "converged": rep.converged,
        "stop_reason": rep.stop_reason,
        "normal_residual": ver.normal_residual,
        "in_rowspace": ver.in_rowspace,
        "matches_pinv_solution": ver.matches_pinv_solution,
    }
    return results, checks


def cmd_alternate(args, tols, stop):
    a = read_matrix(args.A)
    b = _vec(args.b)
    sch = build_alternating(a, read_matrix(args.M), read_matrix(args.U), tols)
    x0 = _vec(args.x0) if args.x0 else None
    rep = alternating_solve(sch, b, x0=x0, stop=stop)
    ver, checks = _solution_checks(a, b, rep, tols)
    results = {
        "final": rep.final,
        "iterations": rep.iterations,
        "converged": rep.converged,
        "stop_reason": rep.stop_reason,
        "rho_h": spectral_radius(sch.h),
        "normal_residual": ver.normal_residual,
        "in_rowspace": ver.in_rowspace,
        "matches_pinv_solution": ver.matches_pinv_solution,
    }
    return results, checks


def cmd_induced(args, tols, stop):
    a = read_matrix(args.A)
    sch = build_alternating(a, read_matrix(args.M), read_matrix(args.U), tols)
    ind = induced_splitting(sch, tols)
    n = sch.h.shape[0]
    results = {
        "b_matrix": ind.b,
        "c_matrix": ind.c,
        "class": ind.split_class.label,
        "hypotheses_ok": ind.hypotheses_ok,
        "rho_h": spectral_radius(sch.h),
    }
    checks = []
    applicable = (
        ind.hypotheses_ok
        and sch.first.split_class >= SplitClass.PROPER_WEAK_REGULAR
        and sch.second.split_class >= SplitClass.PROPER_WEAK_REGULAR
        and is_semimonotone(a, tols)
    )
    results["identities_applicable"] = applicable
    if applicable:
        b_pinv = pinv(ind.b, tols)
        res_pinv = float(np.max(np.abs(b_pinv - (np.eye(n) - sch.h) @ sch.first.a_pinv)))
        res_comp = float(np.max(np.abs(b_pinv @ ind.c - sch.h)))
        res_resolvent = float(np.max(np.abs(ind.b - a @ np.linalg.inv(np.eye(n) - sch.h))))
        checks = [
            _check("pinv_identity_residual", 0.0, res_pinv, tols.eq_tol, res_pinv <= tols.eq_tol),
            _check("composite_identity_residual", 0.0, res_comp, tols.eq_tol, res_comp <= tols.eq_tol),
            _check(
                "resolvent_identity_residual",
                0.0,
                res_resolvent,
                tols.eq_tol,
                res_resolvent <= tols.eq_tol,
            ),
            _check(
                "class_at_least_weak_regular",
                True,
                ind.split_class >= SplitClass.PROPER_WEAK_REGULAR,
                0.0,
                ind.split_class >= SplitClass.PROPER_WEAK_REGULAR,
            ),
        ]
    return results, checks


def cmd_compare(args, tols, stop):
    a = read_matrix(args.A)
    first = build_splitting(a, read_matrix(args.U1), tols)
    second = build_splitting(a, read_matrix(args.U2), tols)
    rep = compare_splittings(first, second, args.mode, tols)
    results = {
        "mode": rep.mode,
        "hypotheses_ok": rep.hypotheses_ok,
        "rho_first": rep.rho_first,
        "rho_second": rep.rho_second,
        "conclusion_ok": rep.conclusion_ok,
    }
    vacuous = rep.conclusion_ok if rep.hypotheses_ok else True
    return results, [_check("conclusion_when_hypotheses", True, vacuous, 0.0, vacuous)]


def cmd_compare_alt(args, tols, stop):
    a = read_matrix(args.A)
    sch = build_alternating(a, read_matrix(args.M), read_matrix(args.U), tols)
    rep = compare_alternating(sch, args.mode, tols)
    results = {
        "mode": rep.mode,
        "hypotheses_ok": rep.hypotheses_ok,
        "rho_h": rep.rho_h,
        "rho_first": rep.rho_first,
        "rho_second": rep.rho_second,
        "conclusion_ok": rep.conclusion_ok,
    }
    vacuous = rep.conclusion_ok if rep.hypotheses_ok else True
    return results, [_check("conclusion_when_hypotheses", True, vacuous, 0.0, vacuous)]


def cmd_spectrum(args, tols, stop):
    h = read_matrix(args.H)
    rep = eigenvalues(h)
    gel = gelfand_radius(h)
    diff = abs(rep.radius - gel)
    tol = 1e-6 * (1.0 + rep.radius)
    results = {
        "radius": rep.radius,
        "method": rep.method,
        "eigenvalues": list(rep.eigenvalues),
        "gelfand_radius": gel,
    }
    return results, [_check("radius_cross_check", 0.0, diff, tol, diff <= tol)]


def cmd_pinv(args, tols, stop):
    a = read_matrix(args.A)
    g = pinv(a, tols)
    residuals = {
        "aga": float(np.max(np.abs(a @ g @ a - a))),
        "gag": float(np.max(np.abs(g @ a @ g - g))),
        "ag_symmetric": float(np.max(np.abs((a @ g).T - a @ g))),
        "ga_symmetric": float(np.max(np.abs((g @ a).T - g @ a))),
    }
    checks = [
        _check(f"penrose_{k}", 0.0, v, tols.eq_tol, v <= tols.eq_tol) for k, v in residuals.items()
    ]
    return {"pinv": g, "residuals": residuals}, checks


def cmd_mp_iterate(args, tols, stop):
    a = read_matrix(args.A)
    sch = build_alternating(a, read_matrix(args.M), read_matrix(args.U), tols)
    rep = mp_iterate(sch, stop=stop)
    target = pinv(a, tols)
    err = float(np.linalg.norm(rep.final - target))
    tol = 1e-6 * (1.0 + float(np.linalg.norm(target)))
    results = {
        "final": rep.final,
        "iterations": rep.iterations,
        "converged": rep.converged,
        "stop_reason": rep.stop_reason,
        "pinv_error_fro": err,
    }
    checks = [
        _check("converged", True, rep.converged, 0.0, rep.converged),
        _check("matches_pinv", 0.0, err, tol, err <= tol),
    ]
    return results, checks


def cmd_suite(args, tols, stop):
    res = run_suite(args.manifest, tols, stop)
    checks = []
    for case in res["cases"]:
        for chk in case["checks"]:
            checks.append(
                _check(
                    f"{case['name']}.{chk['name']}",
                    chk["expected"],
                    chk["actual"],
                    chk["tolerance"],
                    chk["pass"],
                )
            )
    results = {
        "cases": [{"name": c["name"], "pass": c["pass"]} for c in res["cases"]],
        "warnings": res["warnings"],
    }
    return results, checks


def cmd_generate(args, tols, stop):
    gen = generate_random_splitting(args.seed, tuple(args.shape), args.family, tols)
    results = {
        "family": gen.family,
        "seed": gen.seed,
        "accepted": gen.accepted,
        "attempts": gen.attempts,
        "parameter": gen.parameter,
    }
    checks = []
    if not gen.accepted:
        results["warnings"] = ["rejection budget exhausted; no pair emitted"]
        return results, checks
    s = build_splitting(gen.a, gen.u, tols)
    results["class"] = s.split_class.label
    floor = (
        SplitClass.PROPER_REGULAR if gen.family == "scaling" else SplitClass.PROPER_WEAK_REGULAR
    )
    ok = s.split_class >= floor
    checks.append(_check("family_guarantee", floor.label, s.split_class.label, 0.0, ok))
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        a_path = os.path.join(args.out_dir, "A.mtx")
        u_path = os.path.join(args.out_dir, "U.mtx")
        write_matrix(a_path, gen.a)
        write_matrix(u_path, gen.u)
        results["files"] = {"A": a_path, "U": u_path}
    return results, checks


_COMMANDS = {
    "classify": cmd_classify,
    "solve": cmd_solve,
    "alternate": cmd_alternate,
    "induced": cmd_induced,
    "compare": cmd_compare,
    "compare-alt": cmd_compare_alt,
    "spectrum": cmd_spectrum,
    "pinv": cmd_pinv,
    "mp-iterate": cmd_mp_iterate,
    "suite": cmd_suite,
    "generate": cmd_generate,
}


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="propersplit",
        description="Stationary and alternating iterations for rectangular linear systems",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, files=(), **extra):
        sp = sub.add_parser(name)
        for f in files:
            sp.add_argument(f"--{f}", required=True, metavar="FILE")
        return sp

    def iter_flags(sp, x0=True):
        if x0:
            sp.add_argument("--x0", metavar="FILE")
        sp.add_argument("--tol", type=float)
        sp.add_argument("--max-iters", dest="max_iters", type=int)

    add("classify", ["A", "U"])
    iter_flags(add("solve", ["A", "U", "b"]))
    iter_flags(add("alternate", ["A", "M", "U", "b"]))
    add("induced", ["A", "M", "U"])
    sp = add("compare", ["A", "U1", "U2"])
    sp.add_argument("--mode", choices=COMPARE_MODES, required=True)
    sp = add("compare-alt", ["A", "M", "U"])
    sp.add_argument("--mode", choices=ALT_COMPARE_MODES, required=True)
    add("spectrum", ["H"])
    add("pinv", ["A"])
    iter_flags(add("mp-iterate", ["A", "M", "U"]), x0=False)
    sp = sub.add_parser("suite")
    sp.add_argument("--manifest", required=True, metavar="FILE")
    sp = sub.add_parser("generate")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--shape", type=int, nargs=2, default=[3, 3], metavar=("M", "N"))
    sp.add_argument("--family", choices=FAMILIES, default="scaling")
    sp.add_argument("--out-dir", dest="out_dir")
    return p


def run_command(argv) -> tuple[dict, int]:
    """Parse argv, run the subcommand, return (report, exit_code)."""
    args = _build_parser().parse_args(argv)
    tols = Tolerances.from_env()
    stop = _stop(args)
    inputs = {
        k: v for k, v in vars(args).items() if k != "command" and v is not None
    }
    try:
        results, checks = _COMMANDS[args.command](args, tols, stop)
    except NumericalError as exc:
        report = _report(args.command, inputs, {"error": str(exc)}, [], False)
        return report, 1
    ok = all(c["pass"] for c in checks)
    report = _report(args.command, inputs, results, checks, ok)
    return report, 0 if ok else 1


def _report(command, inputs, results, checks, ok) -> dict:
    return {
        "command": command,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "inputs": _jsonable(inputs),
        "results": _jsonable(results),
        "checks": checks,
        "pass": bool(ok),
    }


def main(argv=None) -> int:
    try:
        report, code = run_command(argv if argv is not None else sys.argv[1:])
    except SystemExit as exc:
        # argparse already printed usage
        return int(exc.code or 0)
    except (ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(report, indent=2))
    failed = [c for c in report["checks"] if not c["pass"]]
    status = "PASS" if report["pass"] else "FAIL"
    print(
        f"{report['command']}: {status} "
        f"({len(report['checks']) - len(failed)}/{len(report['checks'])} checks)",
        file=sys.stderr,
    )
    for c in failed:
        print(f"  failed: {c['name']} expected={c['expected']} actual={c['actual']}", file=sys.stderr)
    if isinstance(report.get("results"), dict):
        for w in report["results"].get("warnings", []) or []:
            print(f"  warning: {w}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
