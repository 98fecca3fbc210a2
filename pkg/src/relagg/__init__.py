"""Aggregate queries under one additive inequality over acyclic joins.

Evaluates row-count, SumSum, and SumProd aggregates restricted by a single
additive inequality, exactly or with (1 + eps) relative-error guarantees,
without ever materializing the join. A brute-force oracle provides ground
truth for verification.
"""

from .algebra import Monoid, Semiring, check_axioms, make_named, repeat
from .bruteforce import (
    gen_knapsack,
    gen_partition,
    materialize,
    oracle_eval,
)
from .drivers import ApproxParams, count_rows, run_query, sumprod, sumsum
from .engine import (
    EngineConfig,
    Instrumentation,
    assign_features,
    balanced_fold,
    evaluate,
    evaluate_to_root,
)
from .errors import (
    CapExceeded,
    CyclicJoinError,
    QueryRejected,
    RelaggError,
    TableError,
)
from .jointree import (
    HypertreeDecomposition,
    build_decomposition,
    verify_decomposition,
)
from .multiset import Multiset, ms_convolve, ms_triangle, ms_union
from .queryspec import (
    AdditiveInequality,
    FunctionSpec,
    QuerySpec,
    preset,
    spec_from_json,
    validate,
)
from .sketch import alpha_for, approx_convolve, approx_union, ms_sketch, ws_sketch
from .tables import Database, Table, active_domain, load_table, stats
from .weightedset import WeightedSet, lift, ws_convolve, ws_plus, ws_triangle

__version__ = "0.1.0"
