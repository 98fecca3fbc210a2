"""Epsilon-compression of multisets and weighted sets.

The multiset sketch keeps one representative per geometric rank bucket: for
k = 0, 1, ... the element of 1-based rank floor((1+eps)^k) survives, carrying
the bucket's width as its count. Cumulative counts at any threshold t are
preserved within [(1-eps), 1].

The weighted-set sketch run-compresses keys in order of increasing cumulative
aggregate: a run absorbs keys while the cumulative stays within a (1+eps)
geometric band of the last retained boundary, then collapses to its last key
carrying the base (+)-aggregate of the run's weights. Cumulative aggregates
at every original key are preserved within a (1+eps) factor either way.
"""

import math

from .multiset import MS_EMPTY, Multiset, ms_convolve, ms_union
from .weightedset import WeightedSet, ws_convolve, ws_plus


def alpha_for(eps, m, n):
    """Per-operation sketch parameter for a total error budget of eps."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    if m < 1 or n < 1:
        raise ValueError("m and n must be at least 1")
    return eps / (m * m * math.log2(max(n, 2)) + m)


def ms_sketch(a, eps):
    """Rank-based compression of a multiset."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    size = a.total
    if size <= 1:
        return a
    log_base = math.log1p(eps)
    kmax = math.floor(math.log(size) / log_base)
    # Rank boundaries floor((1+eps)^k); floats can dip, so force monotone.
    prev_boundary = 0
    cum = []  # cumulative counts aligned with a.entries
    running = 0
    for _, count in a.entries:
        running += count
        cum.append(running)
    out = []
    idx = 0
    # The top bucket always closes at rank |A|: dropping it would lose the
    # largest elements entirely and break the cumulative lower bound.
    boundaries = []
    power = 1.0
    for _ in range(kmax + 1):
        boundaries.append(math.floor(power))
        power *= 1 + eps
    boundaries.append(size)
    for boundary in boundaries:
        if boundary > size:
            boundary = size
        if boundary <= prev_boundary:
            continue
        # element of rank `boundary` (1-based)
        while cum[idx] < boundary:
            idx += 1
        key = a.entries[idx][0]
        if out and out[-1][0] == key:
            out[-1] = (key, out[-1][1] + boundary - prev_boundary)
        else:
            out.append((key, boundary - prev_boundary))
        prev_boundary = boundary
    return Multiset(tuple(out))


def ws_sketch(a, eps):
    """Band-based run compression of a weighted set.

    Requires the base (+) to be monotone: cumulative aggregates are then
    monotone along keys and geometric banding is well defined.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    base = a.base
    if base.plus_monotone not in ("increasing", "decreasing"):
        raise ValueError(
            f"base {base.name!r} addition is not monotone; cannot sketch"
        )
    if len(a.entries) <= 1:
        return a
    # Cumulative aggregate at each key (fold over keys <= e, ascending).
    tri = []
    acc = base.zero
    for _, weight in a.entries:
        acc = base.plus(acc, weight)
        tri.append(acc)
    order = range(len(a.entries))
    if base.plus_monotone == "decreasing":
        order = reversed(order)
    order = list(order)  # processing order: increasing cumulative aggregate

    retained = []  # (key, aggregated weight)
    first = order[0]
    retained.append(a.entries[first])
    band_base = tri[first]
    run = []  # indices in the open run
    run_agg = None
    for j in order[1:]:
        if run and _leaves_band(tri[j], band_base, eps):
            last = run[-1]
            retained.append((a.entries[last][0], run_agg))
            band_base = tri[last]
            run = []
            run_agg = None
        run.append(j)
        w = a.entries[j][1]
        run_agg = w if run_agg is None else base.plus(run_agg, w)
    if run:
        last = run[-1]
        retained.append((a.entries[last][0], run_agg))
    retained = [(k, w) for k, w in retained if w != base.zero]
    retained.sort()
    return WeightedSet(tuple(retained), base)


def _leaves_band(value, band_base, eps):
    if band_base == math.inf:
        return False
    if band_base < 0:
        # Negative cumulative aggregates only arise from the identities of
        # the named bases (e.g. -inf); treat any change as a band break.
        return value != band_base
    return value > (1 + eps) * band_base


def approx_union(a, b, alpha):
    """Sketch of the exact union; alpha <= 0 degrades to the exact union."""
    exact = _union(a, b)
    if alpha <= 0:
        return exact
    return _sketch(exact, alpha)


def approx_convolve(a, b, alpha):
    """Sketch of the exact convolution; alpha <= 0 degrades to exact."""
    exact = _convolve(a, b)
    if alpha <= 0:
        return exact
    return _sketch(exact, alpha)


def _union(a, b):
    if isinstance(a, Multiset) and isinstance(b, Multiset):
        return ms_union(a, b)
    if isinstance(a, WeightedSet) and isinstance(b, WeightedSet):
        return ws_plus(a, b)
    raise TypeError(f"mismatched operands: {type(a).__name__}, {type(b).__name__}")


def _convolve(a, b):
    if isinstance(a, Multiset) and isinstance(b, Multiset):
        return ms_convolve(a, b)
    if isinstance(a, WeightedSet) and isinstance(b, WeightedSet):
        return ws_convolve(a, b)
    raise TypeError(f"mismatched operands: {type(a).__name__}, {type(b).__name__}")


def _sketch(value, eps):
    if isinstance(value, Multiset):
        return ms_sketch(value, eps)
    return ws_sketch(value, eps)
