"""Accuracy/size trade-off of the approximate mode.

Counts subsets of 18 random weights under a budget. Exact dynamic
programming carries one multiset entry per distinct subset sum; the sketched
mode compresses every intermediate to logarithmic size while keeping the
answer within the requested relative error.
"""

import random

from relagg import ApproxParams, Instrumentation, count_rows, gen_knapsack

rng = random.Random(5)
weights = [rng.randint(1, 60) for _ in range(18)]
capacity = sum(weights) // 2
db, ineq = gen_knapsack(weights, capacity)

print(f"weights: {weights}")
print(f"subsets with total <= {capacity}:")

instr = Instrumentation()
exact = count_rows(db, ineq, instr=instr)
print(f"  exact: {exact}  (largest intermediate: {instr.max_value_size} entries)")

for eps in (0.3, 0.1, 0.02):
    instr = Instrumentation()
    got = count_rows(
        db, ineq, params=ApproxParams(epsilon=eps), mode="approx", instr=instr
    )
    err = abs(got - exact) / exact
    print(
        f"  eps={eps:<5} -> {got}  "
        f"(relative error {err:.4f}, "
        f"largest intermediate: {instr.max_value_size} entries)"
    )
    assert err <= eps
