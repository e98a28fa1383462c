"""Adversarial price-movement solvers for bounded trades.

Given a book of stop-loss/take-profit trades, find the price path that
maximizes the house's profit — exactly, via a bipartite min-cut — plus
expected-value variants for probabilistic and uniform trades, brute-force
oracles, and a turn-based game engine where the broker provably never loses.
"""

from .trades import (
    Money,
    Price,
    PriceMovement,
    ProfitFunction,
    SessionOutcome,
    Trade,
    TradeError,
    default_profit,
    pair_compatible,
    simulate,
    trade_profit,
    validate_trade,
)
from .mtl import IncompatibilityGraph, MtlSolution, build_graph, construct_movement, max_weight_independent_set, solve_mtl
from .metl import ProbabilisticTrade, expand, solve_metl
from .uniform import CollapsedTrade, UniformTrade, collapse, solve_uniform
from .oracle import BudgetExceededError, OracleBudget, oracle_metl, oracle_movement_search, oracle_mtl
from .game import Game, GamePosition, TurnRecord, broker_move, close_at_will, open_trade, step_turn

__all__ = [
    "Money",
    "Price",
    "PriceMovement",
    "ProfitFunction",
    "SessionOutcome",
    "Trade",
    "TradeError",
    "default_profit",
    "pair_compatible",
    "simulate",
    "trade_profit",
    "validate_trade",
    "IncompatibilityGraph",
    "MtlSolution",
    "build_graph",
    "construct_movement",
    "max_weight_independent_set",
    "solve_mtl",
    "ProbabilisticTrade",
    "expand",
    "solve_metl",
    "CollapsedTrade",
    "UniformTrade",
    "collapse",
    "solve_uniform",
    "BudgetExceededError",
    "OracleBudget",
    "oracle_metl",
    "oracle_movement_search",
    "oracle_mtl",
    "Game",
    "GamePosition",
    "TurnRecord",
    "broker_move",
    "close_at_will",
    "open_trade",
    "step_turn",
]
