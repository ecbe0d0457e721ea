"""Closed-form greedy guarantees and the corollary auditor.

All guarantee functions are exact (``Fraction``) when ``alpha`` is an int or
a Fraction and fall back to floats when ``alpha`` is a float.  The float
path is written with ``log1p``/``expm1`` so tiny curvatures do not cancel.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import Value, format_value, parse_rat
from .errors import InvalidArgument


def _alpha(alpha) -> Value:
    if isinstance(alpha, bool):
        raise InvalidArgument(f"bad alpha {alpha!r}")
    if isinstance(alpha, float):
        a = alpha
    else:
        a = parse_rat(alpha)
    if not 0 < a <= 1:
        raise InvalidArgument(f"alpha must lie in (0, 1], got {alpha}")
    return a


def _check_T(T) -> None:
    if isinstance(T, bool) or not isinstance(T, int) or T < 1:
        raise InvalidArgument(f"T must be a positive integer, got {T!r}")


def _g_float(T: int, a: float, m: int) -> float:
    if m == T:
        return 1.0
    head = 1.0 - a * m / T
    base = 1.0 - a / T
    if head == 0.0 or base == 0.0:
        return 1.0 / a
    return -math.expm1(math.log1p(-a * m / T) + (T - m) * math.log1p(-a / T)) / a


def g_nwf(T: int, exact: bool = True) -> Value:
    """``1 - (1 - 1/T)**T``."""
    _check_T(T)
    if exact:
        return 1 - (1 - Fraction(1, T)) ** T
    return _g_float(T, 1.0, 0)


def g_cc(T: int, alpha) -> Value:
    """Curvature guarantee ``(1/alpha) * (1 - (1 - alpha/T)**T)``."""
    _check_T(T)
    return g(T, alpha, 0)


def g(T: int, alpha, m: int) -> Value:
    """Overlap-aware guarantee for greedy/optimal overlap ``m``."""
    _check_T(T)
    a = _alpha(alpha)
    if isinstance(m, bool) or not isinstance(m, int) or not 0 <= m <= T:
        raise InvalidArgument(f"need 0 <= m <= T={T}, got m={m!r}")
    if isinstance(a, float):
        return _g_float(T, a, m)
    return (1 - (1 - a * m / T) * (1 - a / T) ** (T - m)) / a


def overlap_lower_bound(T: int, n: int) -> int:
    if not 1 <= T <= n:
        raise InvalidArgument(f"need 1 <= T <= n, got T={T}, n={n}")
    return max(0, 2 * T - n)


def g_tilde(T: int, alpha, n: int) -> Value:
    """Guarantee using only the forced overlap ``max(0, 2T - n)``."""
    _check_T(T)
    if T > n:
        raise InvalidArgument(f"need T <= n, got T={T}, n={n}")
    return g(T, alpha, overlap_lower_bound(T, n))


def g_limit_alpha_zero(T: int, m: int) -> Fraction:
    """Limit of ``g(T, alpha, m)`` as alpha goes to 0 from above."""
    if not 0 <= m <= T:
        raise InvalidArgument(f"need 0 <= m <= T, got m={m}, T={T}")
    return Fraction(1)


def corollary_bound(n: int, alpha) -> tuple[Value, Value]:
    """The n-only bound in floor form and its weaker continuous form.

    The weak form has exponent ``n/2``; for odd ``n`` it is returned as a
    float since it is irrational in general.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise InvalidArgument(f"n must be an integer >= 2, got {n!r}")
    a = _alpha(alpha)
    h = n // 2
    floor_form = g(h, a, 0)
    if n % 2 == 0:
        weak_form = floor_form
    else:
        fa = float(a)
        weak_form = -math.expm1((n / 2) * math.log1p(-2 * fa / n)) / fa
    return floor_form, weak_form


def min_gtilde_over_T(n: int, alpha) -> tuple[int, Value]:
    """Exhaustive minimum of ``g_tilde(T, alpha, n)`` over ``T = 1..n``; smallest T on ties."""
    if n < 1:
        raise InvalidArgument(f"n must be >= 1, got {n}")
    best_T, best = 1, g_tilde(1, alpha, n)
    for T in range(2, n + 1):
        v = g_tilde(T, alpha, n)
        if v < best:
            best_T, best = T, v
    return best_T, best


def gtilde_continuous(T: float, alpha, n: int) -> float:
    """``g_tilde`` with a real-valued cardinality, evaluated in floats."""
    a = float(_alpha(alpha))
    m = max(0.0, 2 * T - n)
    if m >= T:
        return 1.0
    head = 1.0 - a * m / T
    base = 1.0 - a / T
    if head <= 0.0 or base <= 0.0:
        return 1.0 / a
    return -math.expm1(math.log1p(-a * m / T) + (T - m) * math.log1p(-a / T)) / a


def probe_continuous_minimum(n: int, alpha, steps_per_unit: int = 100) -> dict:
    """Grid search of the real-T minimum of ``g_tilde`` on ``[1, n]``."""
    grid = [1 + k / steps_per_unit for k in range((n - 1) * steps_per_unit + 1)]
    vals = [gtilde_continuous(t, alpha, n) for t in grid]
    k = min(range(len(vals)), key=vals.__getitem__)
    at_half = gtilde_continuous(n / 2, alpha, n) if n >= 2 else vals[0]
    return {
        "argmin_T": grid[k],
        "min_value": vals[k],
        "value_at_half_n": at_half,
        "min_at_half_n": abs(grid[k] - n / 2) <= 1 / steps_per_unit,
    }


@dataclass
class AuditReport:
    n: int
    alpha: Value
    corollary_floor: Value
    corollary_weak: Value
    min_T: int
    min_value: Value
    consistent: bool
    witness_instance: dict | None = None
    continuous_probe: dict | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "alpha": format_value(self.alpha),
            "corollary_floor": format_value(self.corollary_floor),
            "corollary_weak": format_value(self.corollary_weak),
            "min_T": self.min_T,
            "min_value": format_value(self.min_value),
            "consistent": self.consistent,
            "witness_instance": self.witness_instance,
            "continuous_probe": self.continuous_probe,
            "notes": list(self.notes),
        }


def audit_corollary(n: int, alpha, with_witness: bool = True) -> AuditReport:
    """Compare the n-only floor bound with the exhaustive minimum of g_tilde.

    A minimum strictly below the floor bound is reported as a discrepancy,
    with a tight instance realizing the lower ratio attached as witness.
    """
    a = _alpha(alpha)
    floor_form, weak_form = corollary_bound(n, a)
    T_star, min_value = min_gtilde_over_T(n, a)
    consistent = not (min_value < floor_form)
    report = AuditReport(n, a, floor_form, weak_form, T_star, min_value, consistent)
    report.continuous_probe = probe_continuous_minimum(n, a)
    if not report.continuous_probe["min_at_half_n"]:
        report.notes.append(
            f"real-T minimum of g_tilde found near T={report.continuous_probe['argmin_T']:.2f}, "
            f"not at n/2={n / 2}")
    if consistent:
        report.notes.append("exhaustive minimum over T agrees with the floor-form bound")
        return report
    report.notes.append(
        f"floor-form bound {format_value(floor_form)} exceeds achievable "
        f"g_tilde({T_star}, alpha, {n}) = {format_value(min_value)}")
    if with_witness:
        report.witness_instance = build_witness(n, T_star, a)
    return report


def build_witness(n: int, T: int, alpha) -> dict:
    """Tight instance for (n, T, alpha) plus its brute-force verified ratio."""
    from .instances import default_r, tight_instance, TightFamilyParams
    from .greedy import run_greedy
    from .verify import brute_force_opt

    params = TightFamilyParams(n, T, parse_rat(alpha) if not isinstance(alpha, float) else alpha,
                               default_r(n, T))
    inst = tight_instance(params)
    trace = run_greedy(inst, T)
    opt = brute_force_opt(inst, T)
    ratio = trace.value / opt.best_value
    desc = inst.to_json()
    return {
        "instance": desc,
        "T": T,
        "greedy_value": format_value(trace.value),
        "opt_value": format_value(opt.best_value),
        "verified_ratio": format_value(ratio),
        "ratio_equals_g_tilde": ratio == g_tilde(T, alpha, n),
        "convention": T <= n / 2 or T == n,
    }
