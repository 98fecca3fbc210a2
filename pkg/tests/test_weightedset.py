import math
import random

import pytest

from relagg import WeightedSet, lift, make_named, ws_convolve, ws_plus, ws_triangle
from relagg.weightedset import ws_empty, ws_one

MIN_PLUS = make_named("min-plus")
MAX_PLUS = make_named("max-plus")
COUNTING = make_named("counting")


def test_construction_rules():
    with pytest.raises(ValueError):
        WeightedSet(((1.0, math.inf),), MIN_PLUS)  # base zero weight
    with pytest.raises(ValueError):
        WeightedSet(((2.0, 1.0), (1.0, 1.0)), MIN_PLUS)


def test_lift():
    assert lift(3.0, 2.0, MIN_PLUS).entries == ((3.0, 2.0),)
    assert lift(3.0, math.inf, MIN_PLUS) == ws_empty(MIN_PLUS)


def test_weight_lookup():
    a = WeightedSet(((1.0, 4.0), (2.0, 7.0)), MIN_PLUS)
    assert a.weight(2.0) == 7.0
    assert a.weight(9.0) == math.inf
    assert a.dump() == "1.0:4.0 2.0:7.0"


def test_plus_min_base():
    a = WeightedSet(((1.0, 4.0), (2.0, 7.0)), MIN_PLUS)
    b = WeightedSet(((2.0, 3.0), (5.0, 1.0)), MIN_PLUS)
    assert ws_plus(a, b).entries == ((1.0, 4.0), (2.0, 3.0), (5.0, 1.0))


def test_convolve_min_base():
    a = WeightedSet(((0.0, 1.0), (1.0, 2.0)), MIN_PLUS)
    b = WeightedSet(((1.0, 5.0), (2.0, 0.0)), MIN_PLUS)
    # keys 1,2,3 with weights 6, min(1+0, 2+5)=1, 2
    assert ws_convolve(a, b).entries == ((1.0, 6.0), (2.0, 1.0), (3.0, 2.0))


def test_convolve_identities():
    a = WeightedSet(((1.0, 4.0),), MAX_PLUS)
    assert ws_convolve(a, ws_one(MAX_PLUS)) == a
    assert ws_convolve(a, ws_empty(MAX_PLUS)) == ws_empty(MAX_PLUS)


def test_base_mismatch_rejected():
    with pytest.raises(ValueError, match="mismatch"):
        ws_plus(ws_one(MIN_PLUS), ws_one(MAX_PLUS))


def test_zero_weights_dropped():
    # counting base: +1 and -1 cancel at the same key
    x = WeightedSet(((1.0, 1.0),), COUNTING)
    y = WeightedSet(((1.0, -1.0),), COUNTING)
    assert ws_plus(x, y) == ws_empty(COUNTING)


def test_triangle_min_base():
    a = WeightedSet(((1.0, 4.0), (2.0, 3.0), (5.0, 1.0)), MIN_PLUS)
    assert ws_triangle(a, 0.0) == math.inf
    assert ws_triangle(a, 2.0) == 3.0
    assert ws_triangle(a, 9.0) == 1.0


def test_triangle_counting_base():
    a = WeightedSet(((1.0, 2.0), (3.0, 5.0)), COUNTING)
    assert ws_triangle(a, 2.0) == 2.0
    assert ws_triangle(a, 3.0) == 7.0


def _random_ws(rng, base, max_keys=5):
    keys = sorted(rng.sample(range(-8, 9), rng.randint(0, max_keys)))
    entries = []
    for k in keys:
        w = float(rng.randint(-5, 5))
        if w != base.zero:
            entries.append((float(k), w))
    return WeightedSet(tuple(entries), base)


def test_semiring_laws_random():
    rng = random.Random(41)
    for base in (MIN_PLUS, MAX_PLUS, COUNTING):
        for _ in range(200):
            a, b, c = (_random_ws(rng, base) for _ in range(3))
            assert ws_plus(a, b) == ws_plus(b, a)
            assert ws_convolve(a, b) == ws_convolve(b, a)
            assert ws_plus(ws_plus(a, b), c) == ws_plus(a, ws_plus(b, c))
            assert ws_convolve(ws_convolve(a, b), c) == ws_convolve(
                a, ws_convolve(b, c)
            )
            assert ws_convolve(a, ws_plus(b, c)) == ws_plus(
                ws_convolve(a, b), ws_convolve(a, c)
            )


def test_triangle_distributes_over_plus():
    rng = random.Random(43)
    for base in (MIN_PLUS, MAX_PLUS):
        for _ in range(200):
            a, b = _random_ws(rng, base), _random_ws(rng, base)
            ell = float(rng.randint(-12, 12))
            assert ws_triangle(ws_plus(a, b), ell) == base.plus(
                ws_triangle(a, ell), ws_triangle(b, ell)
            )
