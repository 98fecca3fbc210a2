"""Commutative monoids and semirings over the extended reals.

Carriers are plain floats (or ints) extended with +/-infinity. Each named
structure records the metadata the approximation algorithms need: whether
addition is monotone, whether it introduces error, and whether folding k
copies of a value is stable under perturbation of k ("repeatable").
"""

import math
import operator
from dataclasses import dataclass
from itertools import product

INF = math.inf


@dataclass(frozen=True, eq=False)
class Semiring:
    name: str
    plus: callable
    times: callable
    zero: float
    one: float
    # 'increasing' means x (+) y >= max(x, y); 'decreasing' means <= min(x, y)
    plus_monotone: str = "none"
    plus_no_error: bool = True
    times_bounded_error: bool = True

    def __repr__(self):
        return f"Semiring({self.name!r})"


@dataclass(frozen=True, eq=False)
class Monoid:
    name: str
    plus: callable
    identity: float
    repeatable: bool = True
    no_error: bool = True

    def __repr__(self):
        return f"Monoid({self.name!r})"


def _tropical_times(zero):
    # I_0 annihilates; avoids inf + -inf = nan outside the carrier.
    def times(a, b):
        if a == zero or b == zero:
            return zero
        return a + b

    return times


_SEMIRINGS = {
    "counting": Semiring(
        name="counting",
        plus=operator.add,
        times=operator.mul,
        zero=0,
        one=1,
        plus_monotone="increasing",  # on the nonnegative carrier
    ),
    "min-plus": Semiring(
        name="min-plus",
        plus=min,
        times=_tropical_times(INF),
        zero=INF,
        one=0.0,
        plus_monotone="decreasing",
    ),
    "max-plus": Semiring(
        name="max-plus",
        plus=max,
        times=_tropical_times(-INF),
        zero=-INF,
        one=0.0,
        plus_monotone="increasing",
    ),
}

_MONOIDS = {
    "sum": Monoid(name="sum", plus=operator.add, identity=0),
    "min": Monoid(name="min", plus=min, identity=INF),
    "max": Monoid(name="max", plus=max, identity=-INF),
}


def make_named(name):
    """Named semiring or monoid; instances are cached singletons."""
    if name in _SEMIRINGS:
        return _SEMIRINGS[name]
    if name in _MONOIDS:
        return _MONOIDS[name]
    known = sorted(_SEMIRINGS) + sorted(_MONOIDS)
    raise KeyError(f"unknown algebra {name!r}; known: {', '.join(known)}")


def repeat(monoid, x, k):
    """Fold of k copies of x under the monoid, by doubling (O(log k) ops)."""
    k = int(k)
    if k < 0:
        raise ValueError(f"repeat count must be nonnegative, got {k}")
    acc = monoid.identity
    base = x
    while k:
        if k & 1:
            acc = monoid.plus(acc, base)
        k >>= 1
        if k:
            base = monoid.plus(base, base)
    return acc


@dataclass(frozen=True)
class LawViolation:
    law: str
    witness: tuple

    def __str__(self):
        return f"{self.law} fails on {self.witness}"


def find_law_violation(plus, times, zero, one, triples):
    """First violated semiring law over the given (a, b, c) triples, else None.

    The eight laws: commutativity/associativity/identity for (+), the same
    for (x), annihilation by the zero, and distributivity.
    """
    for a, b, c in triples:
        if plus(a, b) != plus(b, a):
            return LawViolation("plus commutativity", (a, b))
        if plus(a, plus(b, c)) != plus(plus(a, b), c):
            return LawViolation("plus associativity", (a, b, c))
        if plus(a, zero) != a:
            return LawViolation("plus identity", (a,))
        if times(a, b) != times(b, a):
            return LawViolation("times commutativity", (a, b))
        if times(a, times(b, c)) != times(times(a, b), c):
            return LawViolation("times associativity", (a, b, c))
        if times(a, zero) != zero:
            return LawViolation("zero annihilation", (a,))
        if times(a, one) != a:
            return LawViolation("times identity", (a,))
        if times(a, plus(b, c)) != plus(times(a, b), times(a, c)):
            return LawViolation("distributivity", (a, b, c))
    return None


def check_axioms(semiring, samples):
    """True iff all eight semiring laws hold on every triple from samples."""
    triples = product(samples, repeat=3)
    return (
        find_law_violation(
            semiring.plus, semiring.times, semiring.zero, semiring.one, triples
        )
        is None
    )
