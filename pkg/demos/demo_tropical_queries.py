"""SumSum and SumProd aggregates over a join, restricted by an inequality.

The same join tree answers very different questions depending on the algebra:
a sum of per-feature terms (SumSum over a monoid), or a min/max over join
rows of a sum of terms (SumProd over a tropical semiring).
"""

import random

from relagg import (
    Database,
    FunctionSpec,
    QuerySpec,
    Table,
    oracle_eval,
    sumprod,
    sumsum,
)
from relagg.queryspec import AdditiveInequality, identity

rng = random.Random(21)

points = Database(tables=(
    Table("xy", ("x", "y"), tuple(
        (float(rng.randint(0, 9)), float(rng.randint(0, 9))) for _ in range(25)
    )),
    Table("yz", ("y", "z"), tuple(
        (float(rng.randint(0, 9)), float(rng.randint(0, 9))) for _ in range(25)
    )),
))

# Restrict to join rows with x + y + z <= 12.
ineq = AdditiveInequality(
    g={f: identity() for f in ("x", "y", "z")}, threshold=12.0
)

# SumSum: total of z over qualifying rows, and its min and max.
F = {"z": identity()}
total = sumsum(points, "sum", F, ineq)
lo = sumsum(points, "min", F, ineq)
hi = sumsum(points, "max", F, ineq)
print(f"sum of z over qualifying rows: {total} (range {lo}..{hi})")

# SumProd over min-plus: the cheapest qualifying row, where each feature
# contributes its distance from 5.
cost = {f: FunctionSpec("abs_offset", (5.0,)) for f in ("x", "y", "z")}
cheapest = sumprod(points, "min-plus", cost, ineq)
dearest = sumprod(points, "max-plus", cost, ineq)
print(f"min total distance from (5,5,5): {cheapest}; max: {dearest}")

for kind, algebra, F_used, got in (
    ("sumsum", "sum", F, total),
    ("sumprod", "min-plus", cost, cheapest),
    ("sumprod", "max-plus", cost, dearest),
):
    spec = QuerySpec(kind=kind, algebra=algebra, F=F_used, inequalities=(ineq,))
    assert oracle_eval(points, spec) == got
print("all answers confirmed by brute force")
