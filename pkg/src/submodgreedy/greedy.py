"""Greedy maximization under a cardinality constraint, plain and lazy."""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import FLOAT_TOL, Instance, Value, format_value
from .errors import DegenerateInstance, InvalidArgument, MonotonicityViolation, SubmodularityViolation


@dataclass(frozen=True)
class TiePolicy:
    """Which maximizer to take when several candidates tie.

    ``kind`` is ``"first"`` (lowest index), ``"last"`` (highest index) or
    ``"prefer"`` (elements of ``preferred`` in list order, then the rest by
    index).
    """

    kind: str = "first"
    preferred: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("first", "last", "prefer"):
            raise InvalidArgument(f"unknown tie policy {self.kind!r}")
        if len(set(self.preferred)) != len(self.preferred):
            raise InvalidArgument("preferred elements must be distinct")

    def rank(self, x: int, n: int) -> int:
        if self.kind == "first":
            return x
        if self.kind == "last":
            return n - 1 - x
        try:
            return self.preferred.index(x)
        except ValueError:
            return len(self.preferred) + x

    def validate(self, n: int) -> None:
        for x in self.preferred:
            if not 0 <= x < n:
                raise InvalidArgument(f"preferred element {x} outside ground set of size {n}")


FIRST_INDEX = TiePolicy("first")
LAST_INDEX = TiePolicy("last")


def prefer_listed(elements: Sequence[int]) -> TiePolicy:
    return TiePolicy("prefer", tuple(elements))


@dataclass
class GreedyTrace:
    chosen: list[int]
    prefix_values: list[Value]
    gains: list[Value]
    # candidates[t] maps each candidate x to f(S_t + x); empty for lazy runs
    candidates: list[dict[int, Value]] = field(default_factory=list, repr=False)

    @property
    def mask(self) -> int:
        m = 0
        for x in self.chosen:
            m |= 1 << x
        return m

    @property
    def value(self) -> Value:
        return self.prefix_values[-1]

    def to_json(self) -> dict:
        return {
            "chosen": list(self.chosen),
            "prefix_values": [format_value(v) for v in self.prefix_values],
            "gains": [format_value(v) for v in self.gains],
        }


def _check_T(instance: Instance, T: int) -> None:
    if not isinstance(T, int) or not 1 <= T <= instance.n:
        raise InvalidArgument(f"need 1 <= T <= n={instance.n}, got T={T!r}")


def run_greedy(instance: Instance, T: int, policy: TiePolicy = FIRST_INDEX) -> GreedyTrace:
    """Add, T times, an element maximizing ``f(S + x)``; ties go by ``policy``."""
    _check_T(instance, T)
    policy.validate(instance.n)
    n = instance.n
    tol = 0 if instance.exact else FLOAT_TOL
    current = 0
    value = instance.evaluate(0)
    chosen, prefix, gains, snaps = [], [value], [], []
    for _ in range(T):
        cand = {x: instance.evaluate(current | 1 << x)
                for x in range(n) if not current >> x & 1}
        best = max(cand.values())
        if instance.monotone:
            worst = min(cand.values())
            if worst - value < -tol:
                raise MonotonicityViolation(
                    f"negative marginal {worst - value} at step {len(chosen) + 1}")
        ties = [x for x, v in cand.items() if best - v <= tol]
        x = min(ties, key=lambda e: policy.rank(e, n))
        current |= 1 << x
        new_value = cand[x]
        chosen.append(x)
        gains.append(new_value - value)
        prefix.append(new_value)
        snaps.append(cand)
        value = new_value
    return GreedyTrace(chosen, prefix, gains, snaps)


def run_lazy_greedy(instance: Instance, T: int, policy: TiePolicy = FIRST_INDEX) -> GreedyTrace:
    """Lazy (accelerated) greedy, valid for submodular instances.

    Keeps stale upper bounds on marginal gains in a heap and only re-evaluates
    the top candidate.  A re-evaluated gain above its stale bound means the
    instance is not submodular.
    """
    _check_T(instance, T)
    policy.validate(instance.n)
    if not instance.submodular:
        raise InvalidArgument("lazy greedy requires an instance declared submodular")
    n = instance.n
    tol = 0 if instance.exact else FLOAT_TOL
    current = 0
    value = instance.evaluate(0)
    # entries: (-bound, rank, x, step at which bound was computed)
    heap = []
    for x in range(n):
        gain = instance.evaluate(1 << x) - value
        heap.append((-gain, policy.rank(x, n), x, 0))
    heapq.heapify(heap)
    chosen, prefix, gains = [], [value], []
    step = 0
    def refresh(entry):
        neg_bound, rk, x, _ = entry
        gain = instance.evaluate(current | 1 << x) - value
        if gain > -neg_bound + tol:
            raise SubmodularityViolation(
                f"marginal of element {x} rose from {-neg_bound} to {gain}")
        return (-gain, rk, x, step)

    while step < T:
        top = heapq.heappop(heap)
        if top[3] != step:
            heapq.heappush(heap, refresh(top))
            continue
        # a fresh maximum; anything whose bound is within the tie tolerance
        # could still tie once refreshed, so settle those before choosing
        best = -top[0]
        contenders = [top]
        while heap and -heap[0][0] >= best - tol:
            e = heapq.heappop(heap)
            contenders.append(e if e[3] == step else refresh(e))
        best = max(-e[0] for e in contenders)
        pick = min((e for e in contenders if -e[0] >= best - tol), key=lambda e: e[1])
        for e in contenders:
            if e is not pick:
                heapq.heappush(heap, e)
        gain, x = -pick[0], pick[2]
        if instance.monotone and gain < -tol:
            raise MonotonicityViolation(f"negative marginal {gain} at step {step + 1}")
        current |= 1 << x
        new_value = instance.evaluate(current)
        chosen.append(x)
        gains.append(new_value - value)
        prefix.append(new_value)
        value = new_value
        step += 1
    return GreedyTrace(chosen, prefix, gains)


def normalized_gains(trace: GreedyTrace, opt_value: Value) -> list[Value]:
    """Per-step gains divided by the optimum; they sum to the greedy ratio."""
    if opt_value <= 0:
        raise DegenerateInstance(f"optimal value must be positive, got {opt_value}")
    if isinstance(opt_value, Fraction):
        return [Fraction(g) / opt_value for g in trace.gains]
    return [g / opt_value for g in trace.gains]
