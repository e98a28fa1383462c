"""Brute-force reference solvers.

Two independent routes to the optimal profit at desk scale: subset
enumeration over the pairwise-compatibility predicate, and exhaustive search
over minimal zig-zag price movements. Their agreement is what the whole
solver stack is validated against. Exponential by design, guarded by explicit
budgets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .metl import ProbabilisticTrade, expanded_id, require_valid_probabilistic
from .mtl import resolve_profits
from .trades import (
    PriceMovement,
    ProfitFunction,
    Trade,
    ZERO,
    pair_compatible,
    require_session,
    trade_profit,
)


@dataclass(frozen=True)
class OracleBudget:
    """Hard limits keeping exhaustive enumeration to a few seconds."""

    max_trades: int = 12
    price_radius: int = 16


DEFAULT_BUDGET = OracleBudget()


class BudgetExceededError(RuntimeError):
    """The instance is too large for exhaustive enumeration."""


def oracle_mtl(
    trades: Iterable[Trade],
    profits: Mapping[str, ProfitFunction] | None = None,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> Fraction:
    """Maximum profit by enumerating every subset of trades to win.

    A subset is feasible iff pairwise compatible; its value is the winners'
    win profits plus everyone else's loss profits.
    """
    session = require_session(trades)
    n = len(session)
    if n > budget.max_trades:
        raise BudgetExceededError(f"{n} trades exceed the budget of {budget.max_trades}")
    pfs = resolve_profits(session, profits)
    wins = [pfs[t.id].win_profit for t in session]
    losses = [pfs[t.id].loss_profit for t in session]
    conflict = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if not pair_compatible(session[i], session[j]):
                conflict[i] |= 1 << j
                conflict[j] |= 1 << i
    best: Fraction | None = None
    for mask in range(1 << n):
        value = ZERO
        feasible = True
        for i in range(n):
            if mask >> i & 1:
                if conflict[i] & mask:
                    feasible = False
                    break
                value += wins[i]
            else:
                value += losses[i]
        if feasible and (best is None or value > best):
            best = value
    assert best is not None
    return best


def minimal_zigzag_movements(
    radius: int, pool: Iterable[int] | None = None
) -> Iterator[PriceMovement]:
    """Yield every minimal zig-zag movement over the turning-point pool.

    The pool defaults to all nonzero integers within ±radius. Turning points
    alternate sign and grow strictly in magnitude on each side, per the
    minimality shape of optimal movements.
    """
    prices = list(pool) if pool is not None else list(range(-radius, radius + 1))
    pos = sorted(p for p in prices if p > 0)
    neg = sorted((p for p in prices if p < 0), key=abs)

    def walk(seq: tuple[int, ...], side: int, floor_pos: int, floor_neg: int) -> Iterator[PriceMovement]:
        candidates = pos if side > 0 else neg
        floor = floor_pos if side > 0 else floor_neg
        for c in candidates:
            if abs(c) <= floor:
                continue
            nxt = seq + (c,)
            yield nxt
            if side > 0:
                yield from walk(nxt, -1, abs(c), floor_neg)
            else:
                yield from walk(nxt, 1, floor_pos, abs(c))

    yield (0,)
    yield from walk((0,), 1, 0, 0)
    yield from walk((0,), -1, 0, 0)


def oracle_movement_search(
    trades: Iterable[Trade],
    budget: OracleBudget = DEFAULT_BUDGET,
    profits: Mapping[str, ProfitFunction] | None = None,
) -> Fraction:
    """Maximum profit over all minimal zig-zag movements that close every trade.

    Enumerates movements turning only where some still-open trade closes (a
    turn anywhere else could be straightened out without changing any closing
    price), simulating each candidate as it is built up run by run.
    """
    session = require_session(trades)
    if not session:
        return ZERO
    n = len(session)
    if n > budget.max_trades:
        raise BudgetExceededError(f"{n} trades exceed the budget of {budget.max_trades}")
    needed = max(abs(b) for t in session for b in (t.win, t.lose)) + 1
    if needed > budget.price_radius:
        raise BudgetExceededError(
            f"closing prices need radius {needed}, budget allows {budget.price_radius}"
        )
    pfs = resolve_profits(session, profits)

    best: Fraction | None = None

    def search(open_trades: tuple[Trade, ...], acc: Fraction, sides: tuple[int, ...]) -> None:
        nonlocal best
        if not open_trades:
            if best is None or acc > best:
                best = acc
            return
        for side in sides:
            # every still-open trade has exactly one bound on this side, all
            # beyond the prices visited so far
            stops = sorted(
                {t.positive_bound if side > 0 else t.negative_bound for t in open_trades},
                key=abs,
            )
            for stop in stops:
                gained = acc
                remaining = []
                for t in open_trades:
                    b = t.positive_bound if side > 0 else t.negative_bound
                    if abs(b) <= abs(stop):
                        gained += trade_profit(t, b, pfs[t.id])
                    else:
                        remaining.append(t)
                search(tuple(remaining), gained, (-side,))

    search(tuple(session), ZERO, (1, -1))
    assert best is not None
    return best


def oracle_metl(
    prob_trades: Iterable[ProbabilisticTrade], budget: OracleBudget = DEFAULT_BUDGET
) -> Fraction:
    """Expected-profit maximum: expand the pmfs, then search movements."""
    expanded: list[Trade] = []
    for t in prob_trades:
        require_valid_probabilistic(t)
        for w, fw in t.win_pmf:
            for l, gl in t.lose_pmf:
                expanded.append(Trade(expanded_id(t.id, w, l), t.open, w, l, fw * gl * t.size))
    return oracle_movement_search(expanded, budget)
