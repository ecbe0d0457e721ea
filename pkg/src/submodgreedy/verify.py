"""Brute-force oracles and property checks for small instances."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .bounds import g, g_cc, g_nwf, g_tilde, overlap_lower_bound
from .core import FLOAT_TOL, Instance, TableInstance, Value, format_value, full_mask, popcount, subsets_of_size
from .errors import DegenerateInstance, InvalidArgument, ResourceLimit
from .greedy import FIRST_INDEX, TiePolicy, normalized_gains, run_greedy

SCAN_MAX_N = 16
ENUM_MAX_N = 24
CLOSED_FORM_MAX_N = 20


@dataclass
class OptResult:
    best_value: Value
    optima: list[int]


@dataclass
class TheoremCheck:
    T: int
    ratio: Value
    alpha: Value
    greedy_mask: int
    m_per_optimum: list[int]
    bound_per_optimum: list[Value]
    g_tilde: Value | None
    g_cc: Value | None
    g_nwf: Value
    passed: bool
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        fv = lambda v: None if v is None else format_value(v)  # noqa: E731
        return {
            "T": self.T,
            "ratio": fv(self.ratio),
            "alpha": fv(self.alpha),
            "m_per_optimum": self.m_per_optimum,
            "bound_per_optimum": [fv(b) for b in self.bound_per_optimum],
            "g_tilde": fv(self.g_tilde),
            "g_cc": fv(self.g_cc),
            "g_nwf": fv(self.g_nwf),
            "passed": self.passed,
            "notes": self.notes,
        }


def _scan_values(instance: Instance) -> list:
    """All 2**n values, as common-denominator integers in exact mode.

    Scaling by a positive constant keeps every (in)equality the checkers
    test, and integer comparisons are much cheaper than Fraction ones.
    """
    if instance.n > SCAN_MAX_N:
        raise ResourceLimit(f"exhaustive scans are limited to n <= {SCAN_MAX_N}, got {instance.n}")
    if isinstance(instance, TableInstance):
        vals = list(instance.values)
    else:
        vals = [instance._eval(m) for m in range(1 << instance.n)]
    if instance.exact:
        den = 1
        for v in vals:
            den = lcm(den, Fraction(v).denominator)
        vals = [int(Fraction(v) * den) for v in vals]
    return vals


def brute_force_opt(instance: Instance, T: int) -> OptResult:
    """Exact optimum over all T-subsets, with every maximizer."""
    limit = ENUM_MAX_N if isinstance(instance, TableInstance) or instance.kind in (
        "coverage", "additive", "concave-cardinality") else CLOSED_FORM_MAX_N
    if instance.n > limit:
        raise ResourceLimit(f"brute force limited to n <= {limit} for {instance.kind}, got {instance.n}")
    if not 1 <= T <= instance.n:
        raise InvalidArgument(f"need 1 <= T <= n={instance.n}, got T={T}")
    tol = 0 if instance.exact else FLOAT_TOL
    best = None
    optima: list[int] = []
    for s in subsets_of_size(instance.n, T):
        v = instance.evaluate(s)
        if best is None or v > best + tol:
            best, optima = v, [s]
        elif v >= best - tol:
            optima.append(s)
            if v > best:
                best = v
    return OptResult(best, optima)


def check_monotone(instance: Instance) -> bool:
    vals = _scan_values(instance)
    tol = 0 if instance.exact else FLOAT_TOL
    n = instance.n
    for s in range(1 << n):
        fs = vals[s]
        for x in range(n):
            if not s >> x & 1 and vals[s | 1 << x] - fs < -tol:
                return False
    return True


def check_submodular(instance: Instance) -> bool:
    """Pairwise diminishing-returns test over all S and distinct x, y outside S."""
    vals = _scan_values(instance)
    tol = 0 if instance.exact else FLOAT_TOL
    n = instance.n
    for s in range(1 << n):
        fs = vals[s]
        outside = [x for x in range(n) if not s >> x & 1]
        for i, x in enumerate(outside):
            sx = s | 1 << x
            fx = vals[sx]
            for y in outside[i + 1:]:
                if fx + vals[s | 1 << y] - vals[sx | 1 << y] - fs < -tol:
                    return False
    return True


def is_additive(instance: Instance) -> bool:
    """True when every pairwise submodularity inequality holds with equality."""
    vals = _scan_values(instance)
    tol = 0 if instance.exact else FLOAT_TOL
    n = instance.n
    for s in range(1 << n):
        outside = [x for x in range(n) if not s >> x & 1]
        for i, x in enumerate(outside):
            for y in outside[i + 1:]:
                d = vals[s | 1 << x] + vals[s | 1 << y] - vals[s | 1 << x | 1 << y] - vals[s]
                if abs(d) > tol:
                    return False
    return True


def total_curvature(instance: Instance) -> Value:
    """Largest relative drop of a singleton's marginal from the empty set to X - {x}.

    In float mode the result is clamped to [0, 1] and values within 1e-12 of
    0 snap to 0.
    """
    n = instance.n
    full = full_mask(n)
    f_empty = instance.evaluate(0)
    f_full = instance.evaluate(full)
    best = None
    for x in range(n):
        single = instance.evaluate(1 << x) - f_empty
        if single == 0:
            continue
        c = 1 - (f_full - instance.evaluate(full & ~(1 << x))) / single
        if best is None or c > best:
            best = c
    if best is None:
        raise DegenerateInstance("every singleton has value f(empty set); curvature undefined")
    if not instance.exact:
        best = min(1.0, max(0.0, float(best)))
        if best <= FLOAT_TOL:
            best = 0.0
    return best


def overlap(s1: int, s2: int) -> int:
    return popcount(s1 & s2)


def verify_theorem1(instance: Instance, T: int, policy: TiePolicy = FIRST_INDEX,
                    alpha: Value | None = None) -> TheoremCheck:
    """Run greedy, brute-force every optimum and test the overlap-aware bound against each."""
    if alpha is None:
        alpha = total_curvature(instance)
    trace = run_greedy(instance, T, policy)
    opt = brute_force_opt(instance, T)
    exact = instance.exact
    tol = 0 if exact else FLOAT_TOL
    if opt.best_value <= 0:
        raise DegenerateInstance("optimal value is zero")
    ratio = trace.value / opt.best_value
    gr = trace.mask
    ms = [overlap(gr, s) for s in opt.optima]
    notes = []
    passed = True
    lower = overlap_lower_bound(T, instance.n)
    if any(m < lower for m in ms):
        passed = False
        notes.append(f"overlap below forced lower bound {lower}")
    if alpha == 0:
        bounds = [1 for _ in ms]
        gt = gc = None
        if abs(ratio - 1) > tol:
            passed = False
            notes.append("curvature 0 but greedy is not optimal")
        gn = g_nwf(T, exact)
    else:
        bounds = [g(T, alpha, m) for m in ms]
        gt = g_tilde(T, alpha, instance.n)
        gc = g_cc(T, alpha)
        gn = g_nwf(T, exact)
        for m, b in zip(ms, bounds):
            if ratio < b - tol:
                passed = False
                notes.append(f"ratio {ratio} below g(T, alpha, {m}) = {b}")
        if ratio < gt - tol:
            passed = False
            notes.append(f"ratio {ratio} below g_tilde = {gt}")
        if ratio < gc - tol or gc < gn - tol:
            passed = False
            notes.append("classical chain ratio >= g_cc >= g_nwf violated")
    return TheoremCheck(T, ratio, alpha, gr, ms, bounds, gt, gc, gn, passed, notes)


def lemma51_slacks(instance: Instance, T: int, policy: TiePolicy, s_opt: int,
                   alpha: Value | None = None) -> list[Value]:
    """Right-hand side minus 1 for each of the T per-step inequalities."""
    if alpha is None:
        alpha = total_curvature(instance)
    trace = run_greedy(instance, T, policy)
    opt_value = instance.evaluate(s_opt)
    a = normalized_gains(trace, opt_value)
    slacks = []
    for t in range(1, T + 1):
        outside = inside = 0
        in_count = 0
        for i in range(1, t):
            y = trace.chosen[i - 1]
            if s_opt >> y & 1:
                inside += a[i - 1]
                in_count += 1
            else:
                outside += a[i - 1]
        rhs = alpha * outside + inside + (T - in_count) * a[t - 1]
        slacks.append(rhs - 1)
    return slacks


def check_lemma51(instance: Instance, T: int, policy: TiePolicy, s_opt: int,
                  alpha: Value | None = None) -> bool:
    tol = 0 if instance.exact else FLOAT_TOL
    return all(s >= -tol for s in lemma51_slacks(instance, T, policy, s_opt, alpha))
