"""Juniper Green game engine."""

from ._core import (
    JuniperError,
    best_move,
    classify,
    forced_pairs,
    greedy_pairing,
    interval_bounds,
    legal_moves,
    principal_line,
    solve,
    table,
    three_prime_plan,
    verify_certificate,
)

__all__ = [
    "JuniperError",
    "best_move",
    "classify",
    "forced_pairs",
    "greedy_pairing",
    "interval_bounds",
    "legal_moves",
    "principal_line",
    "solve",
    "table",
    "three_prime_plan",
    "verify_certificate",
]
