"""The bound LP, its dual, the closed-form dual certificate and an exact simplex.

Indices ``t`` and ``i`` are 1-based throughout, matching the usual
statement of the LP; list positions are ``t - 1``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .bounds import g
from .core import format_value, parse_rat
from .errors import InvalidArgument, LPInfeasible, LPUnbounded


@dataclass
class LinearProgram:
    sense: str                      # "min" or "max"
    objective: list[Fraction]
    rows: list[list[Fraction]]
    rhs: list[Fraction]
    row_sense: list[str]            # ">=", "<=" or "=="; variables are all >= 0

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise InvalidArgument(f"bad sense {self.sense!r}")
        nv = len(self.objective)
        if len(self.rows) != len(self.rhs) or len(self.rows) != len(self.row_sense):
            raise InvalidArgument("rows, rhs and row_sense lengths differ")
        if any(len(r) != nv for r in self.rows):
            raise InvalidArgument("constraint row length differs from number of variables")
        if any(s not in (">=", "<=", "==") for s in self.row_sense):
            raise InvalidArgument("row sense must be '>=', '<=' or '=='")

    def row_values(self, x: list[Fraction]) -> list[Fraction]:
        return [sum((a * v for a, v in zip(r, x)), Fraction(0)) for r in self.rows]

    def is_feasible(self, x: list[Fraction]) -> bool:
        if any(v < 0 for v in x):
            return False
        for lhs, b, s in zip(self.row_values(x), self.rhs, self.row_sense):
            if (s == ">=" and lhs < b) or (s == "<=" and lhs > b) or (s == "==" and lhs != b):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "sense": self.sense,
            "objective": [format_value(v) for v in self.objective],
            "rows": [[format_value(v) for v in r] for r in self.rows],
            "rhs": [format_value(v) for v in self.rhs],
            "row_sense": list(self.row_sense),
        }


def _alpha(alpha) -> Fraction:
    a = parse_rat(alpha)
    if not 0 < a <= 1:
        raise InvalidArgument(f"alpha must lie in (0, 1], got {a}")
    return a


def build_primal(T: int, alpha, U: Iterable[int]) -> LinearProgram:
    """Minimize sum(b) subject to one covering row per greedy step t = 1..T."""
    a = _alpha(alpha)
    U = set(U)
    if T < 1:
        raise InvalidArgument(f"T must be >= 1, got {T}")
    if not U <= set(range(1, T + 1)):
        raise InvalidArgument(f"U must be a subset of 1..{T}, got {sorted(U)}")
    rows = []
    for t in range(1, T + 1):
        row = [Fraction(0)] * T
        inside = 0
        for i in range(1, t):
            if i in U:
                row[i - 1] = Fraction(1)
                inside += 1
            else:
                row[i - 1] = a
        row[t - 1] = Fraction(T - inside)
        rows.append(row)
    return LinearProgram("min", [Fraction(1)] * T, rows, [Fraction(1)] * T, [">="] * T)


def build_dual(T: int, alpha, m: int) -> LinearProgram:
    """Maximize sum(c); the dual of ``build_primal(T, alpha, {T-m+1..T})``."""
    a = _alpha(alpha)
    if not 0 <= m < T:
        raise InvalidArgument(f"need 0 <= m < T, got m={m}, T={T}")
    rows = []
    for t in range(1, T + 1):
        row = [Fraction(0)] * T
        if t <= T - m:
            row[t - 1] = Fraction(T)
            tail = a
        else:
            row[t - 1] = Fraction(2 * T - m + 1 - t)
            tail = Fraction(1)
        for i in range(t + 1, T + 1):
            row[i - 1] = tail
        rows.append(row)
    return LinearProgram("max", [Fraction(1)] * T, rows, [Fraction(1)] * T, ["<="] * T)


@dataclass
class DualCertificate:
    c: list[Fraction]
    feasible: bool
    objective: Fraction
    slacks: list[Fraction] = field(default_factory=list)

    def tight_rows(self) -> list[int]:
        return [t for t, s in enumerate(self.slacks, start=1) if s == 0]

    def to_json(self) -> dict:
        return {
            "c": [format_value(v) for v in self.c],
            "feasible": self.feasible,
            "objective": format_value(self.objective),
            "row_slacks": [format_value(v) for v in self.slacks],
            "tight_rows": self.tight_rows(),
        }


def dual_closed_form(T: int, alpha, m: int) -> DualCertificate:
    a = _alpha(alpha)
    if not 0 <= m < T:
        raise InvalidArgument(f"need 0 <= m < T, got m={m}, T={T}")
    q = 1 - a / T
    lead = (1 - a * m / T) / T
    c = []
    for t in range(1, T + 1):
        if t <= T - m:
            c.append(lead * q ** (T - m - t))
        else:
            c.append(Fraction(T - m, (2 * T - m + 1 - t) * (2 * T - m - t)))
    lp = build_dual(T, a, m)
    slacks = [b - v for b, v in zip(lp.rhs, lp.row_values(c))]
    feasible = all(v >= 0 for v in c) and all(s >= 0 for s in slacks)
    return DualCertificate(c, feasible, sum(c, Fraction(0)), slacks)


def partial_sums(cert: DualCertificate, T: int, alpha, m: int) -> tuple[Fraction, Fraction]:
    """Sums of the certificate over its two branches: ``(head, tail)``."""
    if len(cert.c) != T or not 0 <= m < T:
        raise InvalidArgument("certificate does not match (T, m)")
    head = sum(cert.c[:T - m], Fraction(0))
    tail = sum(cert.c[T - m:], Fraction(0))
    return head, tail


def partial_sums_closed(T: int, alpha, m: int) -> tuple[Fraction, Fraction]:
    a = _alpha(alpha)
    head = (1 - a * m / T) * (1 - (1 - a / T) ** (T - m)) / a
    return head, Fraction(m, T)


# -- exact simplex -------------------------------------------------------------

def _pivot(A, b, basis, r, j):
    piv = A[r][j]
    row = A[r]
    for k in range(len(row)):
        row[k] /= piv
    b[r] /= piv
    for i in range(len(A)):
        if i != r and A[i][j] != 0:
            f = A[i][j]
            Ai = A[i]
            for k in range(len(Ai)):
                if row[k]:
                    Ai[k] -= f * row[k]
            b[i] -= f * b[r]
    basis[r] = j


def _run(A, b, basis, cost, allowed):
    """Minimize cost.x over the canonical tableau with Bland's rule."""
    m = len(A)
    while True:
        entering = None
        for j in allowed:
            if j in basis:
                continue
            d = cost[j] - sum((cost[basis[i]] * A[i][j] for i in range(m)), Fraction(0))
            if d < 0:
                entering = j
                break
        if entering is None:
            return
        best = None
        for i in range(m):
            if A[i][entering] > 0:
                ratio = b[i] / A[i][entering]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise LPUnbounded("objective is unbounded")
        _pivot(A, b, basis, best[1], entering)


def simplex_solve(lp: LinearProgram) -> tuple[Fraction, list[Fraction]]:
    """Exact two-phase simplex with Bland's anti-cycling rule.

    Returns the optimal value (in the LP's own sense) and an optimal vertex.
    Raises ``LPInfeasible`` or ``LPUnbounded``.
    """
    nv = len(lp.objective)
    m = len(lp.rows)
    rows, rhs, senses = [], [], []
    for r, bi, s in zip(lp.rows, lp.rhs, lp.row_sense):
        r = [Fraction(v) for v in r]
        bi = Fraction(bi)
        if bi < 0:
            r = [-v for v in r]
            bi = -bi
            s = {">=": "<=", "<=": ">=", "==": "=="}[s]
        rows.append(r)
        rhs.append(bi)
        senses.append(s)
    n_slack = sum(1 for s in senses if s != "==")
    n_art = sum(1 for s in senses if s != "<=")
    N = nv + n_slack + n_art
    A = [[Fraction(0)] * N for _ in range(m)]
    basis = [0] * m
    si, ai = nv, nv + n_slack
    artificial = set()
    for i, (r, s) in enumerate(zip(rows, senses)):
        A[i][:nv] = r
        if s == "<=":
            A[i][si] = Fraction(1)
            basis[i] = si
            si += 1
        else:
            if s == ">=":
                A[i][si] = Fraction(-1)
                si += 1
            A[i][ai] = Fraction(1)
            basis[i] = ai
            artificial.add(ai)
            ai += 1
    b = rhs

    if artificial:
        cost1 = [Fraction(1) if j in artificial else Fraction(0) for j in range(N)]
        _run(A, b, basis, cost1, range(N))
        if sum((b[i] for i in range(m) if basis[i] in artificial), Fraction(0)) > 0:
            raise LPInfeasible("no feasible point")
        # drive zero-level artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(A):
            if basis[i] in artificial:
                j = next((j for j in range(N) if j not in artificial and A[i][j] != 0), None)
                if j is None:
                    del A[i], b[i], basis[i]
                    continue
                _pivot(A, b, basis, i, j)
            i += 1

    sign = 1 if lp.sense == "min" else -1
    cost2 = [sign * Fraction(v) for v in lp.objective] + [Fraction(0)] * (N - nv)
    allowed = [j for j in range(N) if j not in artificial]
    _run(A, b, basis, cost2, allowed)
    x = [Fraction(0)] * N
    for i, j in enumerate(basis):
        x[j] = b[i]
    sol = x[:nv]
    value = sum((Fraction(c) * v for c, v in zip(lp.objective, sol)), Fraction(0))
    return value, sol


# -- B(U) and the ordering facts ----------------------------------------------------

def B(T: int, alpha, U: Iterable[int]) -> Fraction:
    """Optimal value of ``build_primal(T, alpha, U)``."""
    return simplex_solve(build_primal(T, alpha, U))[0]


def suffix(lo: int, T: int) -> frozenset[int]:
    """The index set ``{lo, ..., T}`` (empty when ``lo > T``)."""
    return frozenset(range(max(lo, 1), T + 1))


def check_B_monotonicity(T: int, alpha, trials: int = 50, seed: int = 0) -> dict:
    """Sample index sets and check the three orderings of B used to reduce to a suffix.

    * for U without T: ``B(U) >= B({T - |U|, ..., T})``;
    * for l = 1..T-1: ``B({T-l..T}) >= B({T-l+1..T})``;
    * for U with T: ``B(U) == B(U - {T})``.
    """
    if not 1 <= T <= 8:
        raise InvalidArgument(f"check_B_monotonicity supports 1 <= T <= 8, got {T}")
    a = _alpha(alpha)
    rng = random.Random(seed)
    cache: dict[frozenset, Fraction] = {}

    def val(U):
        U = frozenset(U)
        if U not in cache:
            cache[U] = B(T, a, U)
        return cache[U]

    violations = []
    drop_checks = reduce_checks = 0
    for _ in range(trials):
        U = frozenset(i for i in range(1, T) if rng.random() < 0.5)
        target = suffix(T - len(U), T)
        reduce_checks += 1
        if val(U) < val(target):
            violations.append({"fact": "reduce", "U": sorted(U), "target": sorted(target),
                               "B_U": format_value(val(U)), "B_target": format_value(val(target))})
        V = U | {T}
        drop_checks += 1
        if val(V) != val(U):
            violations.append({"fact": "drop_T", "U": sorted(V),
                               "B_U": format_value(val(V)), "B_without_T": format_value(val(U))})
    chain = []
    for l in range(1, T):
        bigger, smaller = val(suffix(T - l, T)), val(suffix(T - l + 1, T))
        chain.append(format_value(bigger))
        if bigger < smaller:
            violations.append({"fact": "suffix", "l": l, "B_big": format_value(bigger),
                               "B_small": format_value(smaller)})
    return {
        "T": T,
        "alpha": format_value(a),
        "trials": trials,
        "seed": seed,
        "reduce_checks": reduce_checks,
        "drop_checks": drop_checks,
        "suffix_checks": T - 1,
        "violations": violations,
        "passed": not violations,
    }


def certificate_report(T: int, alpha, m: int, simplex_max_T: int = 12) -> dict:
    """Everything ``lp-cert`` prints: certificate, row slacks, partial sums, simplex cross-check."""
    a = _alpha(alpha)
    cert = dual_closed_form(T, a, m)
    head, tail = partial_sums(cert, T, a, m)
    head_cf, tail_cf = partial_sums_closed(T, a, m)
    bound = g(T, a, m)
    first_rows_tight = all(s == 0 for s in cert.slacks[:T - m])
    report = {
        "T": T,
        "m": m,
        "alpha": format_value(a),
        "certificate": cert.to_json(),
        "first_rows_tight": first_rows_tight,
        "partial_sums": {
            "head": format_value(head),
            "tail": format_value(tail),
            "head_closed_form": format_value(head_cf),
            "tail_closed_form": format_value(tail_cf),
            "match": head == head_cf and tail == tail_cf,
        },
        "g": format_value(bound),
        "objective_equals_g": cert.objective == bound,
        "simplex": None,
    }
    if T <= simplex_max_T:
        primal, _ = simplex_solve(build_primal(T, a, suffix(T - m + 1, T)))
        dual, _ = simplex_solve(build_dual(T, a, m))
        report["simplex"] = {
            "primal_value": format_value(primal),
            "dual_value": format_value(dual),
            "weak_duality": primal >= cert.objective,
            "certificate_optimal": dual == cert.objective,
        }
    report["passed"] = (cert.feasible and first_rows_tight and report["partial_sums"]["match"]
                        and report["objective_equals_g"]
                        and (report["simplex"] is None or report["simplex"]["weak_duality"]))
    return report
