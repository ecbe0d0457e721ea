"""Ground sets, scalar modes and the set-function oracle contract.

Subsets of the ground set ``{0, ..., n-1}`` are plain ``int`` bit masks: bit
``i`` set means element ``i`` is in the subset.  Every instance works in one
scalar mode, exact (``fractions.Fraction``) or approximate (``float``).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence, Union

from .errors import ElementPresent, InvalidArgument, InvalidMask, ModeMismatch, ResourceLimit

Value = Union[Fraction, float]

MAX_N = 63
TABLE_MAX_N = 20
FLOAT_TOL = 1e-12


# -- scalars -----------------------------------------------------------------

def parse_rat(x) -> Fraction:
    """Parse ``"p/q"`` strings, ints and Fractions into a Fraction."""
    if isinstance(x, bool):
        raise InvalidArgument(f"not a rational: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidArgument(f"not a rational: {x!r}") from exc
    raise InvalidArgument(f"not a rational: {x!r}")


def format_value(v: Value) -> str | float:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return float(v)


def coerce_values(raw: Iterable) -> tuple[list[Value], bool]:
    """Convert raw scalars to a single mode.

    Strings and Fractions are exact, floats approximate; ints fit either.
    Returns ``(values, exact)``.
    """
    raw = list(raw)
    has_exact = any(isinstance(v, (str, Fraction)) for v in raw)
    has_float = any(isinstance(v, float) for v in raw)
    if has_exact and has_float:
        raise ModeMismatch("exact and floating values mixed in one instance")
    if has_float:
        out = []
        for v in raw:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise InvalidArgument(f"not a number: {v!r}")
            out.append(float(v))
        return out, False
    return [parse_rat(v) for v in raw], True


def zero(exact: bool) -> Value:
    return Fraction(0) if exact else 0.0


# -- masks -------------------------------------------------------------------

def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def elements_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def check_mask(mask: int, n: int) -> None:
    if not isinstance(mask, int) or mask < 0 or mask >> n:
        raise InvalidMask(f"mask {mask!r} has bits outside the ground set of size {n}")


def subsets_of_size(n: int, k: int) -> Iterator[int]:
    """Yield all ``k``-subsets of ``{0..n-1}`` in increasing mask order."""
    if not 0 <= n <= MAX_N:
        raise InvalidArgument(f"n must lie in [0, {MAX_N}], got {n}")
    if not 0 <= k <= n:
        raise InvalidArgument(f"need 0 <= k <= n, got k={k}, n={n}")
    if k == 0:
        yield 0
        return
    s = (1 << k) - 1
    limit = 1 << n
    while s < limit:
        yield s
        # Gosper's hack: next integer with the same popcount
        low = s & -s
        ripple = s + low
        s = (((ripple ^ s) >> 2) // low) | ripple


# -- instances ---------------------------------------------------------------

class Instance:
    """A normalized set function on ``n`` elements.

    Subclasses implement ``_eval(mask)``.  Instances are immutable after
    construction.  ``monotone`` and ``submodular`` are declarations made by
    the constructor of the instance, not verified facts; see ``verify``.
    """

    kind = "abstract"

    def __init__(self, n: int, exact: bool, *, monotone: bool = True,
                 submodular: bool = True, curvature: Value | None = None):
        if not isinstance(n, int) or not 1 <= n <= MAX_N:
            raise InvalidArgument(f"ground set size must lie in [1, {MAX_N}], got {n!r}")
        self.n = n
        self.exact = exact
        self.monotone = monotone
        self.submodular = submodular
        self.curvature = curvature

    def _eval(self, mask: int) -> Value:
        raise NotImplementedError

    def evaluate(self, mask: int) -> Value:
        check_mask(mask, self.n)
        return self._eval(mask)

    def marginal_gain(self, mask: int, x: int) -> Value:
        check_mask(mask, self.n)
        if not 0 <= x < self.n:
            raise InvalidArgument(f"element {x} outside ground set of size {self.n}")
        if mask >> x & 1:
            raise ElementPresent(f"element {x} already in subset")
        return self._eval(mask | 1 << x) - self._eval(mask)

    def to_json(self) -> dict:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, exact={self.exact})"


def evaluate(instance: Instance, s: int) -> Value:
    return instance.evaluate(s)


def marginal_gain(instance: Instance, s: int, x: int) -> Value:
    return instance.marginal_gain(s, x)


def _ser(values: Sequence[Value]) -> list:
    return [format_value(v) for v in values]


class TableInstance(Instance):
    """Explicit table of all ``2**n`` values, indexed by mask."""

    kind = "explicit-table"

    def __init__(self, n: int, values: Sequence, *, monotone: bool = False,
                 submodular: bool = False, exact: bool | None = None):
        if isinstance(n, int) and n > TABLE_MAX_N:
            raise ResourceLimit(f"explicit tables are limited to n <= {TABLE_MAX_N}, got {n}")
        if exact is None:
            vals, exact = coerce_values(values)
        else:
            vals = list(values)
        super().__init__(n, exact, monotone=monotone, submodular=submodular)
        if len(vals) != 1 << self.n:
            raise InvalidArgument(f"table needs {1 << n} values, got {len(vals)}")
        if vals[0] != 0:
            raise InvalidArgument("table is not normalized: f(empty set) != 0")
        if any(v < 0 for v in vals):
            raise InvalidArgument("set function values must be nonnegative")
        self.values = tuple(vals)

    def _eval(self, mask):
        return self.values[mask]

    def to_json(self):
        return {"n": self.n, "kind": self.kind, "values": _ser(self.values),
                "monotone": self.monotone, "submodular": self.submodular}


class CoverageInstance(Instance):
    """Weighted coverage: ``f(S)`` is the weight of the union of the sets in ``S``."""

    kind = "coverage"

    def __init__(self, weights: Sequence, sets: Sequence[Iterable[int]]):
        w, exact = coerce_values(weights)
        super().__init__(len(sets), exact)
        if any(x < 0 for x in w):
            raise InvalidArgument("coverage weights must be nonnegative")
        self.weights = tuple(w)
        self.sets = tuple(tuple(sorted(set(s))) for s in sets)
        for s in self.sets:
            for u in s:
                if not 0 <= u < len(w):
                    raise InvalidArgument(f"universe index {u} outside [0, {len(w)})")
        self._cover = tuple(mask_of(s) for s in self.sets)

    def _eval(self, mask):
        covered = 0
        i = 0
        while mask:
            if mask & 1:
                covered |= self._cover[i]
            mask >>= 1
            i += 1
        total = zero(self.exact)
        for u in elements_of(covered):
            total += self.weights[u]
        return total

    def to_json(self):
        return {"n": self.n, "kind": self.kind, "weights": _ser(self.weights),
                "sets": [list(s) for s in self.sets]}


class AdditiveInstance(Instance):
    kind = "additive"

    def __init__(self, weights: Sequence):
        w, exact = coerce_values(weights)
        super().__init__(len(w), exact, curvature=zero(exact))
        if any(x < 0 for x in w):
            raise InvalidArgument("additive weights must be nonnegative")
        self.weights = tuple(w)

    def _eval(self, mask):
        total = zero(self.exact)
        for i in elements_of(mask):
            total += self.weights[i]
        return total

    def to_json(self):
        return {"n": self.n, "kind": self.kind, "weights": _ser(self.weights)}


class ConcaveCardinalityInstance(Instance):
    """``f(S) = g(|S|)`` for a nondecreasing concave ``g`` with ``g(0) = 0``."""

    kind = "concave-cardinality"

    def __init__(self, g: Sequence):
        vals, exact = coerce_values(g)
        if len(vals) < 2:
            raise InvalidArgument("g needs at least two entries")
        super().__init__(len(vals) - 1, exact)
        if vals[0] != 0:
            raise InvalidArgument("g(0) must be 0")
        tol = 0 if exact else FLOAT_TOL
        inc = [b - a for a, b in zip(vals, vals[1:])]
        if any(d < -tol for d in inc):
            raise InvalidArgument("g must be nondecreasing")
        if any(d2 > d1 + tol for d1, d2 in zip(inc, inc[1:])):
            raise InvalidArgument("g must be concave (nonincreasing increments)")
        self.g = tuple(vals)

    def _eval(self, mask):
        return self.g[popcount(mask)]

    def to_json(self):
        return {"n": self.n, "kind": self.kind, "g": _ser(self.g)}


class FunctionInstance(Instance):
    """Wraps an arbitrary callable on masks; used for ad hoc oracles in tests."""

    kind = "callable"

    def __init__(self, n: int, fn: Callable[[int], Value], exact: bool, **flags):
        super().__init__(n, exact, **flags)
        self._fn = fn

    def _eval(self, mask):
        return self._fn(mask)


def tabulate(instance: Instance) -> TableInstance:
    """Evaluate every subset once and return an equivalent explicit table."""
    if isinstance(instance, TableInstance):
        return instance
    if instance.n > TABLE_MAX_N:
        raise ResourceLimit(f"cannot tabulate n={instance.n} > {TABLE_MAX_N}")
    vals = [instance._eval(m) for m in range(1 << instance.n)]
    t = TableInstance(instance.n, vals, monotone=instance.monotone,
                      submodular=instance.submodular, exact=instance.exact)
    t.curvature = instance.curvature
    return t
