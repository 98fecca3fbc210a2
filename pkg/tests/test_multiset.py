import random

import pytest

from relagg import Multiset, ms_convolve, ms_triangle, ms_union
from relagg.multiset import MS_EMPTY, MS_ONE, ms_singleton


def test_construction_rules():
    with pytest.raises(ValueError):
        Multiset(((1.0, 0),))
    with pytest.raises(ValueError):
        Multiset(((2.0, 1), (1.0, 1)))
    with pytest.raises(ValueError):
        Multiset(((1.0, 1), (1.0, 2)))


def test_from_values():
    a = Multiset.from_values([3.0, 1.0, 3.0, 2.0, 3.0])
    assert a.entries == ((1.0, 1), (2.0, 1), (3.0, 3))
    assert a.total == 5
    assert a.count(3.0) == 3
    assert a.count(9.0) == 0
    assert len(a) == 3


def test_dump():
    assert ms_singleton(2.5, 4).dump() == "2.5:4"


def test_union_example():
    a = Multiset(((1.0, 2), (3.0, 1)))
    b = Multiset(((1.0, 1), (2.0, 5)))
    assert ms_union(a, b).entries == ((1.0, 3), (2.0, 5), (3.0, 1))


def test_union_identity():
    a = Multiset(((1.0, 2),))
    assert ms_union(a, MS_EMPTY) is a
    assert ms_union(MS_EMPTY, a) is a


def test_convolve_example():
    a = Multiset(((0.0, 1), (1.0, 2)))
    b = Multiset(((0.0, 1), (2.0, 1)))
    assert ms_convolve(a, b).entries == ((0.0, 1), (1.0, 2), (2.0, 1), (3.0, 2))


def test_convolve_identities():
    a = Multiset(((1.0, 2), (4.0, 3)))
    assert ms_convolve(a, MS_ONE) == a
    assert ms_convolve(a, MS_EMPTY) == MS_EMPTY


def test_triangle():
    a = Multiset(((1.0, 2), (3.0, 1), (5.0, 4)))
    assert ms_triangle(a, 0.0) == 0
    assert ms_triangle(a, 1.0) == 2
    assert ms_triangle(a, 4.0) == 3
    assert ms_triangle(a, 100.0) == 7
    assert a.total == ms_triangle(a, float("inf"))


def _random_ms(rng, max_keys=6, max_count=4):
    keys = sorted(rng.sample(range(-10, 11), rng.randint(0, max_keys)))
    return Multiset(tuple((float(k), rng.randint(1, max_count)) for k in keys))


def test_totals_compose():
    rng = random.Random(17)
    for _ in range(300):
        a, b = _random_ms(rng), _random_ms(rng)
        assert ms_union(a, b).total == a.total + b.total
        assert ms_convolve(a, b).total == a.total * b.total


def test_semiring_laws_random():
    rng = random.Random(23)
    for _ in range(300):
        a, b, c = _random_ms(rng), _random_ms(rng), _random_ms(rng)
        assert ms_union(a, b) == ms_union(b, a)
        assert ms_convolve(a, b) == ms_convolve(b, a)
        assert ms_union(ms_union(a, b), c) == ms_union(a, ms_union(b, c))
        assert ms_convolve(ms_convolve(a, b), c) == ms_convolve(
            a, ms_convolve(b, c)
        )
        assert ms_convolve(a, ms_union(b, c)) == ms_union(
            ms_convolve(a, b), ms_convolve(a, c)
        )


def test_triangle_distributes_over_union():
    rng = random.Random(29)
    for _ in range(200):
        a, b = _random_ms(rng), _random_ms(rng)
        t = float(rng.randint(-15, 15))
        assert ms_triangle(ms_union(a, b), t) == ms_triangle(a, t) + ms_triangle(b, t)
