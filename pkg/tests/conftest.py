import random
from collections import Counter

import pytest

from relagg import AdditiveInequality, Database, FunctionSpec, Table
from relagg.bruteforce import materialize


@pytest.fixture
def db1():
    """Two tables joined on b; the 3-row join is (1,1,5),(1,2,6),(1,2,7)."""
    return Database(tables=(
        Table("t1", ("a", "b"), ((1.0, 1.0), (1.0, 2.0))),
        Table("t2", ("b", "c"), ((1.0, 5.0), (2.0, 6.0), (2.0, 7.0))),
    ))


def identity_fns(db):
    return {f: FunctionSpec("identity") for f in db.feature_tables}


def sum_leq(db, threshold):
    return AdditiveInequality(g=identity_fns(db), threshold=threshold)


# One line per acceptance criterion, shown after the run summary.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


# ---------------------------------------------------------------------------
# Independent oracles


def gyo_acyclic(schemas):
    """GYO reduction: repeatedly drop lone vertices and contained edges."""
    edges = [set(s) for s in schemas]
    changed = True
    while changed:
        changed = False
        counts = Counter(v for e in edges for v in e)
        for e in edges:
            lone = {v for v in e if counts[v] == 1}
            if lone:
                e -= lone
                changed = True
        for i, e in enumerate(edges):
            if any(i != j and e <= f for j, f in enumerate(edges)):
                edges.pop(i)
                changed = True
                break
    return len(edges) <= 1


def knapsack_count_dp(weights, capacity):
    """Pseudo-polynomial DP: subsets of `weights` with total <= capacity."""
    capacity = int(capacity)
    dp = [0] * (capacity + 1)
    dp[0] = 1
    for w in weights:
        w = int(w)
        if w == 0:
            dp = [2 * x for x in dp]
            continue
        for s in range(capacity, w - 1, -1):
            dp[s] += dp[s - w]
    return sum(dp)


# ---------------------------------------------------------------------------
# Random instance generation


def random_schemas(rng, max_m=6, max_d=8):
    m = rng.randint(1, max_m)
    features = [f"f{i}" for i in range(rng.randint(1, max_d))]
    schemas = []
    for _ in range(m):
        k = rng.randint(1, min(3, len(features)))
        schemas.append(tuple(sorted(rng.sample(features, k))))
    return schemas


def schemas_to_db(schemas):
    tables = []
    for i, schema in enumerate(schemas):
        tables.append(Table(name=f"t{i}", schema=tuple(schema), rows=()))
    return Database(tables=tuple(tables))


def random_acyclic_db(rng, max_m=4, max_n=20, max_d=6, join_cap=20000):
    """Tables built along a random tree: every non-root table's shared
    features sit inside its parent, which keeps the join acyclic."""
    while True:
        m = rng.randint(1, max_m)
        d = rng.randint(1, max_d)
        features = [f"f{i}" for i in range(d)]
        schemas = []
        first = tuple(sorted(rng.sample(features, rng.randint(1, min(3, d)))))
        schemas.append(first)
        for i in range(1, m):
            parent = schemas[rng.randrange(i)]
            shared = tuple(rng.sample(parent, rng.randint(1, len(parent))))
            fresh = [f for f in features if all(f not in s for s in schemas)]
            extra = rng.sample(fresh, min(len(fresh), rng.randint(0, 2)))
            schemas.append(tuple(sorted(set(shared) | set(extra))))
        tables = []
        for i, schema in enumerate(schemas):
            n = rng.randint(1, max_n)
            rows = tuple(
                tuple(float(rng.randint(-5, 5)) for _ in schema)
                for _ in range(n)
            )
            tables.append(Table(name=f"t{i}", schema=schema, rows=rows))
        db = Database(tables=tuple(tables))
        try:
            join = materialize(db, cap=join_cap)
        except Exception:
            continue
        if len(join) > 0:
            return db


def random_affine_inequality(rng, db):
    g = {}
    for f in db.feature_tables:
        a = rng.randint(-3, 3)
        b = rng.randint(-3, 3)
        g[f] = FunctionSpec("affine", (float(a), float(b)))
    threshold = float(rng.randint(-20, 20))
    return AdditiveInequality(g=g, threshold=threshold)
