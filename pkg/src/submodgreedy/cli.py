"""Command-line interface.

Exit codes: 0 success, 1 a checked property failed, 2 bad invocation or
input, 3 resource limit exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds, lp
from .core import format_value, parse_rat
from .errors import InvalidArgument, ResourceLimit, SubmodError, DegenerateInstance
from .greedy import FIRST_INDEX, LAST_INDEX, TiePolicy, prefer_listed, run_greedy, run_lazy_greedy
from .instances import TightFamilyInstance, default_r, predicted_values, tight_instance, TightFamilyParams
from .jsonio import load_instance, save_instance
from .verify import (SCAN_MAX_N, brute_force_opt, check_lemma51, check_monotone, check_submodular,
                     total_curvature, verify_theorem1)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=1)
    sys.stdout.write("\n")


def _alpha_arg(text: str) -> Fraction:
    try:
        a = parse_rat(text)
    except InvalidArgument as exc:
        raise UsageError(str(exc)) from None
    if not 0 < a <= 1:
        raise UsageError(f"alpha must lie in (0, 1], got {text}")
    return a


def _policy_arg(text: str) -> TiePolicy:
    if text == "first":
        return FIRST_INDEX
    if text == "last":
        return LAST_INDEX
    if text.startswith("prefer:"):
        try:
            return prefer_listed([int(x) for x in text[7:].split(",") if x])
        except ValueError:
            raise UsageError(f"bad preference list {text!r}") from None
    raise UsageError(f"unknown policy {text!r} (use first, last or prefer:i,j,...)")


def _n_range(text: str) -> range:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            r = range(int(lo), int(hi) + 1)
        else:
            r = range(int(text), int(text) + 1)
    except ValueError:
        raise UsageError(f"bad n range {text!r} (use a..b)") from None
    if not r or r.start < 1:
        raise UsageError(f"empty or nonpositive n range {text!r}")
    return r


def cmd_solve(args) -> int:
    policy = _policy_arg(args.policy)
    inst = load_instance(args.instance)
    if not 1 <= args.T <= inst.n:
        raise UsageError(f"T={args.T} outside [1, {inst.n}]")
    trace = (run_lazy_greedy if args.lazy else run_greedy)(inst, args.T, policy)
    _emit({"chosen": trace.chosen, "value": format_value(trace.value), "trace": trace.to_json()})
    return EXIT_OK


def cmd_gen_tight(args) -> int:
    alpha = _alpha_arg(args.alpha)
    if not 1 <= args.T <= args.n:
        raise UsageError(f"need 1 <= T <= n, got T={args.T}, n={args.n}")
    r = default_r(args.n, args.T) if args.r is None else args.r
    params = TightFamilyParams(args.n, args.T, alpha, r)
    inst = tight_instance(params)
    save_instance(inst, args.out)
    out = {"out": str(args.out), "params": params.to_json(), "b_elements": params.k,
           "padding_elements": params.padding, "convention": params.convention, "predicted": None}
    if params.convention:
        out["note"] = ("parameters outside the T > n/2, r = n-T construction; "
                       "ratio = g_tilde is a convention checked by brute force only")
    if 2 * args.T > args.n and (args.T == args.n or r == args.n - args.T):
        opt, greedy, ratio = predicted_values(params)
        out["predicted"] = {"opt": format_value(opt), "greedy": format_value(greedy),
                            "ratio": format_value(ratio)}
    else:
        out["g_tilde"] = format_value(bounds.g_tilde(args.T, alpha, args.n))
    _emit(out)
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = load_instance(args.instance)
    T = args.T
    if T is None:
        if not isinstance(inst, TightFamilyInstance):
            raise UsageError("--T is required for non tight-family instances")
        T = inst.params.T
    if not 1 <= T <= inst.n:
        raise UsageError(f"T={T} outside [1, {inst.n}]")
    if inst.n > SCAN_MAX_N:
        raise ResourceLimit(f"verification limited to n <= {SCAN_MAX_N}, got {inst.n}")
    mono = check_monotone(inst)
    sub = check_submodular(inst)
    report = {"n": inst.n, "T": T, "monotone": mono, "submodular": sub,
              "curvature": None, "theorem1": None, "lemma51": None}
    ok = mono and sub
    if ok:
        inst.monotone = inst.submodular = True
        try:
            alpha = total_curvature(inst)
        except DegenerateInstance as exc:
            report["error"] = str(exc)
            _emit(report)
            return EXIT_FAIL
        report["curvature"] = format_value(alpha)
        check = verify_theorem1(inst, T, FIRST_INDEX, alpha)
        report["theorem1"] = check.to_json()
        opt = brute_force_opt(inst, T)
        report["lemma51"] = all(check_lemma51(inst, T, FIRST_INDEX, s, alpha) for s in opt.optima)
        report["greedy"] = run_greedy(inst, T).to_json()
        if isinstance(inst, TightFamilyInstance) and alpha != 0:
            report["ratio_equals_g_tilde"] = check.ratio == check.g_tilde
        ok = check.passed and report["lemma51"]
    _emit(report)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_lp_cert(args) -> int:
    alpha = _alpha_arg(args.alpha)
    if not 0 <= args.m < args.T:
        raise UsageError(f"need 0 <= m < T, got m={args.m}, T={args.T}")
    report = lp.certificate_report(args.T, alpha, args.m)
    _emit(report)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_audit(args) -> int:
    alpha = _alpha_arg(args.alpha)
    if args.n < 2:
        raise UsageError(f"n must be >= 2, got {args.n}")
    report = bounds.audit_corollary(args.n, alpha)
    out = report.to_json()
    if report.witness_instance is not None:
        d = Path(args.witness_dir)
        d.mkdir(parents=True, exist_ok=True)
        path = d / f"witness_n{args.n}_T{report.min_T}.json"
        path.write_text(json.dumps(report.witness_instance["instance"], indent=1) + "\n")
        out["witness_path"] = str(path)
    _emit(out)
    return EXIT_OK if report.consistent else EXIT_FAIL


SWEEP_HEADER = ["n", "T", "alpha", "m_lower", "g_nwf", "g_cc", "g_tilde",
                "g_nwf_exact", "g_cc_exact", "g_tilde_exact"]


def sweep_rows(ns, alphas):
    for n in ns:
        for a in alphas:
            for T in range(1, n + 1):
                vals = [bounds.g_nwf(T), bounds.g_cc(T, a), bounds.g_tilde(T, a, n)]
                yield ([n, T, format_value(a), bounds.overlap_lower_bound(T, n)]
                       + [f"{float(v):.12g}" for v in vals]
                       + [format_value(v) for v in vals])


def cmd_sweep(args) -> int:
    ns = _n_range(args.n)
    alphas = [_alpha_arg(a) for a in args.alpha.split(",") if a.strip()]
    if not alphas:
        raise UsageError("alpha list is empty")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    count = 0
    for row in sweep_rows(ns, alphas):
        w.writerow(row)
        count += 1
    if args.out is None:
        sys.stdout.write(buf.getvalue())
        return EXIT_OK
    try:
        Path(args.out).write_text(buf.getvalue())
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}") from None
    _emit({"out": str(args.out), "rows": count})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="submodgreedy", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="run greedy on an instance file")
    s.add_argument("--instance", required=True)
    s.add_argument("--T", type=int, required=True)
    s.add_argument("--policy", default="first", help="first, last or prefer:i,j,...")
    s.add_argument("--lazy", action="store_true")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("gen-tight", help="write a tight worst-case instance")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--T", type=int, required=True)
    s.add_argument("--alpha", required=True, help='rational in (0, 1], e.g. "3/4"')
    s.add_argument("--r", type=int)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_gen_tight)

    s = sub.add_parser("verify-instance", help="brute-force property and guarantee checks")
    s.add_argument("--instance", required=True)
    s.add_argument("--T", type=int)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("lp-cert", help="closed-form dual certificate with exact checks")
    s.add_argument("--T", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--alpha", required=True)
    s.set_defaults(func=cmd_lp_cert)

    s = sub.add_parser("audit-corollary", help="compare the n-only bound with exhaustive minima")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--alpha", required=True)
    s.add_argument("--witness-dir", default=".")
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("sweep", help="tabulate guarantees as CSV")
    s.add_argument("--n", required=True, help="range a..b or a single n")
    s.add_argument("--alpha", required=True, help="comma-separated rationals")
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidArgument) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except SubmodError as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
