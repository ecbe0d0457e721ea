"""Tight worst-case instances and a zoo of random submodular functions.

The tight family lives on the ground set ``a_1..a_r, b_1..b_k, d_1..d_p``
(in that index order).  With ``q = 1 - alpha/k``, ``s`` chosen a-elements
``a_{i_1}..a_{i_s}`` and ``u`` chosen b-elements,

    f = u + (1 - alpha*u/k) * sum_j q**(i_j - 1)

and the padding elements ``d`` are worth nothing.  The b-block size is
``k = min(T, n - r)`` and ``p = n - r - k``.  When ``T > n/2`` and
``r = n - T`` this is exactly ``k = T``, ``p = 0``.  Putting a-elements
first makes lowest-index tie-breaking reproduce the adversarial greedy run.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import g_tilde
from .core import (AdditiveInstance, ConcaveCardinalityInstance, CoverageInstance, Instance,
                   format_value, parse_rat)
from .errors import InvalidArgument, UnsupportedCase


@dataclass(frozen=True)
class TightFamilyParams:
    n: int
    T: int
    alpha: Fraction
    r: int

    def __post_init__(self):
        n, T, r = self.n, self.T, self.r
        if not isinstance(n, int) or n < 2:
            raise InvalidArgument(f"tight family needs n >= 2, got {n!r}")
        if not isinstance(T, int) or not 1 <= T <= n:
            raise InvalidArgument(f"need 1 <= T <= n, got T={T!r}, n={n}")
        a = self.alpha
        if isinstance(a, float):
            raise InvalidArgument("tight family requires a rational alpha")
        a = parse_rat(a)
        object.__setattr__(self, "alpha", a)
        if not 0 < a <= 1:
            raise InvalidArgument(f"alpha must lie in (0, 1], got {a}")
        if not isinstance(r, int) or not 1 <= r <= n // 2:
            raise InvalidArgument(f"r must lie in [1, {n // 2}], got {r!r}")
        if r > T:
            raise InvalidArgument(f"r={r} > T={T} would push curvature above alpha")

    @property
    def k(self) -> int:
        """Number of b-elements."""
        return min(self.T, self.n - self.r)

    @property
    def padding(self) -> int:
        return self.n - self.r - self.k

    @property
    def convention(self) -> bool:
        """True when the parameters fall outside the T > n/2, r = n - T case."""
        return not (2 * self.T > self.n and self.T < self.n and self.r == self.n - self.T)

    def to_json(self) -> dict:
        return {"n": self.n, "kind": "tight-family", "T": self.T,
                "alpha": format_value(self.alpha), "r": self.r}


class TightFamilyInstance(Instance):
    kind = "tight-family"

    def __init__(self, params: TightFamilyParams):
        super().__init__(params.n, True, curvature=params.alpha)
        self.params = params
        r, k = params.r, params.k
        q = 1 - params.alpha / k
        self._pow = [q ** i for i in range(r)]
        self._amask = (1 << r) - 1
        self._bmask = ((1 << k) - 1) << r
        self._step = params.alpha / k

    def _eval(self, mask):
        u = bin(mask & self._bmask).count("1")
        a_part = Fraction(0)
        am = mask & self._amask
        i = 0
        while am:
            if am & 1:
                a_part += self._pow[i]
            am >>= 1
            i += 1
        return u + (1 - self._step * u) * a_part

    def label(self, x: int) -> str:
        r, k = self.params.r, self.params.k
        if x < r:
            return f"a{x + 1}"
        if x < r + k:
            return f"b{x - r + 1}"
        return f"d{x - r - k + 1}"

    def to_json(self):
        return self.params.to_json()


def default_r(n: int, T: int) -> int:
    """Number of a-elements used when the caller does not fix ``r``.

    ``n - T`` for ``n/2 < T < n``.  Otherwise a convention: ``min(T, n//2)``
    for ``T <= n/2`` and 1 for ``T = n``.
    """
    if not 1 <= T <= n:
        raise InvalidArgument(f"need 1 <= T <= n, got T={T}, n={n}")
    if T == n:
        return 1
    if 2 * T > n:
        return n - T
    return min(T, n // 2)


def tight_params(n: int, T: int, alpha, r: int | None = None) -> TightFamilyParams:
    return TightFamilyParams(n, T, parse_rat(alpha), default_r(n, T) if r is None else r)


def tight_instance(params: TightFamilyParams) -> TightFamilyInstance:
    return TightFamilyInstance(params)


def predicted_values(params: TightFamilyParams) -> tuple[Fraction, Fraction, Fraction]:
    """Closed-form (opt, greedy, ratio) for ``T > n/2``.

    At ``T = n`` this returns the trivial ``(T, T, 1)`` of the formula; the
    generated instance there has a different optimum but the same ratio.
    """
    n, T, a = params.n, params.T, params.alpha
    if 2 * T <= n:
        raise UnsupportedCase("closed form only covers T > n/2")
    if T < n and params.r != n - T:
        raise UnsupportedCase(f"closed form needs r = n - T = {n - T}, got r={params.r}")
    m = 2 * T - n
    opt = Fraction(T)
    greedy = T / a * (1 - (1 - a * m / T) * (1 - a / T) ** (n - T))
    ratio = greedy / opt
    assert n - T == T - m
    assert ratio == g_tilde(T, a, n)
    return opt, greedy, ratio


def geometric_sum_direct(l: int, T: int, alpha) -> Fraction:
    q = 1 - parse_rat(alpha) / T
    return sum((q ** (k - 1) for k in range(1, l + 1)), Fraction(0))


def geometric_sum_closed(l: int, T: int, alpha) -> Fraction:
    a = parse_rat(alpha)
    return T / a * (1 - (1 - a / T) ** l)


def geometric_sum(l: int, T: int, alpha) -> Fraction:
    """``sum_{k=1..l} (1 - alpha/T)**(k-1)``, cross-checked against its closed form."""
    if l < 0:
        raise InvalidArgument(f"l must be >= 0, got {l}")
    direct = geometric_sum_direct(l, T, alpha)
    closed = geometric_sum_closed(l, T, alpha)
    if direct != closed:
        raise ArithmeticError(f"geometric sum mismatch: {direct} != {closed}")
    return direct


# -- zoo ---------------------------------------------------------------------

ZOO_KINDS = ("weighted-coverage", "concave-cardinality", "additive")


@dataclass
class FunctionZooSpec:
    """Recipe for a random (or explicit) monotone submodular instance.

    ``params`` may fix the data outright (``weights``/``sets`` for coverage,
    ``g`` for concave-cardinality, ``weights`` for additive) or tune the
    generator (``universe``, ``density``).
    """

    kind: str
    n: int
    seed: int = 0
    exact: bool = False
    params: dict = field(default_factory=dict)


def _rand_weight(rng: random.Random, exact: bool):
    if exact:
        return Fraction(rng.randint(1, 20))
    return rng.uniform(0.1, 1.0)


def make_zoo_instance(spec: FunctionZooSpec) -> Instance:
    if spec.kind not in ZOO_KINDS:
        raise InvalidArgument(f"unknown zoo kind {spec.kind!r}")
    if not isinstance(spec.n, int) or spec.n < 1:
        raise InvalidArgument(f"n must be positive, got {spec.n!r}")
    rng = random.Random(spec.seed)
    p = spec.params
    n = spec.n
    if spec.kind == "weighted-coverage":
        if "sets" in p:
            sets = p["sets"]
            universe = 1 + max((u for s in sets for u in s), default=0)
            weights = p.get("weights", [1] * universe)
            if len(sets) != n:
                raise InvalidArgument(f"expected {n} sets, got {len(sets)}")
            return CoverageInstance(weights, sets)
        universe = p.get("universe", 2 * n)
        density = p.get("density", 0.3)
        sets = []
        for _ in range(n):
            s = [u for u in range(universe) if rng.random() < density]
            sets.append(s or [rng.randrange(universe)])
        weights = p.get("weights") or [_rand_weight(rng, spec.exact) for _ in range(universe)]
        return CoverageInstance(weights, sets)
    if spec.kind == "concave-cardinality":
        if "g" in p:
            if len(p["g"]) != n + 1:
                raise InvalidArgument(f"g needs n+1={n + 1} entries")
            return ConcaveCardinalityInstance(p["g"])
        inc = sorted((_rand_weight(rng, spec.exact) for _ in range(n)), reverse=True)
        if spec.exact:
            g = [Fraction(0)]
        else:
            g = [0.0]
        for d in inc:
            g.append(g[-1] + d)
        return ConcaveCardinalityInstance(g)
    weights = p.get("weights") or [_rand_weight(rng, spec.exact) for _ in range(n)]
    if len(weights) != n:
        raise InvalidArgument(f"expected {n} weights, got {len(weights)}")
    return AdditiveInstance(weights)
