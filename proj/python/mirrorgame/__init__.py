"""Mirror game simulator: memory-bounded open-book players.

Thin re-export of the compiled core. All heavy lifting (game engine, belief
enumeration, decoy planning, oracles) lives in C++; this package keeps the
Python surface to plain ints, strings, and lists.
"""

from ._core import (
    BudgetError,
    ConfigError,
    InvariantError,
    alice_names,
    bob_names,
    bounds,
    even_union_pairs,
    exact_distribution,
    gf2_rank,
    is_oddtown,
    minimax_value,
    run_match,
    simulate,
)

__all__ = [
    "BudgetError",
    "ConfigError",
    "InvariantError",
    "alice_names",
    "bob_names",
    "bounds",
    "even_union_pairs",
    "exact_distribution",
    "gf2_rank",
    "is_oddtown",
    "minimax_value",
    "run_match",
    "simulate",
]
