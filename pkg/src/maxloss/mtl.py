"""Maximum trader-loss solver.

Pipeline: build the incompatibility graph over the trade set (bipartite by
sign), pick the winning set as a maximum-weight independent set via a min-cut
reduction, then construct a minimal zig-zag movement that wins exactly that
set. Everything downstream of the cut is verified by re-simulation before a
solution is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .flow import FlowNetwork
from .trades import (
    PriceMovement,
    ProfitFunction,
    Trade,
    TradeError,
    ZERO,
    default_profit,
    pair_compatible,
    require_session,
    simulate,
)


@dataclass(frozen=True)
class IncompatibilityGraph:
    """Trades as vertices, incompatible pairs as edges, transformed weights.

    The weight of a trade is win_profit - loss_profit, which is what a
    max-weight independent set must optimize once the constant sum of all
    loss profits is set aside.
    """

    plus_ids: tuple[str, ...]
    minus_ids: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    weights: dict[str, Fraction]


@dataclass(frozen=True)
class MtlSolution:
    winners: tuple[str, ...]
    movement: PriceMovement
    total_profit: Fraction
    per_trade: dict[str, Fraction]


def resolve_profits(
    trades: Sequence[Trade], profits: Mapping[str, ProfitFunction] | None
) -> dict[str, ProfitFunction]:
    return {
        t.id: (profits[t.id] if profits is not None and t.id in profits else default_profit(t))
        for t in trades
    }


def build_graph(
    trades: Iterable[Trade], profits: Mapping[str, ProfitFunction] | None = None
) -> IncompatibilityGraph:
    session = require_session(trades)
    pfs = resolve_profits(session, profits)
    weights: dict[str, Fraction] = {}
    for t in session:
        w = pfs[t.id].win_profit - pfs[t.id].loss_profit
        assert w > 0
        weights[t.id] = w
    plus = tuple(t.id for t in session if t.sign == 1)
    minus = tuple(t.id for t in session if t.sign == -1)
    edges: list[tuple[str, str]] = []
    for i, t1 in enumerate(session):
        for t2 in session[i + 1 :]:
            if not pair_compatible(t1, t2):
                assert t1.sign != t2.sign, "incompatible same-side pair"
                pos, neg = (t1, t2) if t1.sign == 1 else (t2, t1)
                edges.append((pos.id, neg.id))
    return IncompatibilityGraph(plus, minus, tuple(edges), weights)


def max_weight_independent_set(g: IncompatibilityGraph) -> frozenset[str]:
    """Max-weight independent set of the bipartite graph via a minimum cut.

    Source feeds every plus vertex with its weight, every minus vertex feeds
    the sink with its weight, and incompatibility edges get a capacity
    exceeding any finite cut. A terminal link being cut means that vertex is
    dropped; the surviving vertices are independent because the oversized
    middle edges can never be part of a minimum cut.
    """
    ids = list(g.plus_ids) + list(g.minus_ids)
    if not ids:
        return frozenset()
    scale = math.lcm(*(g.weights[i].denominator for i in ids))
    caps = {i: int(g.weights[i] * scale) for i in ids}
    unbounded = 1 + sum(caps.values())

    node = {ident: k + 2 for k, ident in enumerate(ids)}
    net = FlowNetwork(len(ids) + 2)
    source, sink = 0, 1
    for ident in g.plus_ids:
        net.add_edge(source, node[ident], caps[ident])
    for ident in g.minus_ids:
        net.add_edge(node[ident], sink, caps[ident])
    for pos, neg in g.edges:
        net.add_edge(node[pos], node[neg], unbounded)
    net.max_flow(source, sink)
    reachable = net.residual_reachable(source)

    kept = [i for i in g.plus_ids if node[i] in reachable]
    kept += [i for i in g.minus_ids if node[i] not in reachable]
    return frozenset(kept)


def construct_movement(winners: Sequence[Trade]) -> PriceMovement:
    """Minimal zig-zag movement that wins every trade of a compatible set.

    Repeatedly look at the closing prices nearest to 0 on each side; for a
    pairwise-compatible set at least one side holds only winning closes, so
    the price can move there, bank those wins and recurse on the rest.
    Consecutive same-direction legs are merged, which makes the turning
    points alternate in sign with strictly growing magnitude.
    """
    open_trades = require_session(winners)
    for i, t1 in enumerate(open_trades):
        for t2 in open_trades[i + 1 :]:
            if not pair_compatible(t1, t2):
                raise TradeError(f"incompatible set: trades {t1.id!r} and {t2.id!r}")

    movement = [0]

    def push(target: int) -> None:
        if len(movement) >= 2 and (movement[-1] > movement[-2]) == (target > movement[-1]):
            movement[-1] = target
        else:
            movement.append(target)

    while open_trades:
        p_minus = max(t.negative_bound for t in open_trades)
        p_plus = min(t.positive_bound for t in open_trades)
        target = None
        for candidate in (p_minus, p_plus):
            closers = [t for t in open_trades if candidate in (t.win, t.lose)]
            if all(t.win == candidate for t in closers):
                target = candidate
                break
        if target is None:
            raise TradeError("incompatible set: no side closes with wins only")
        push(target)
        open_trades = [t for t in open_trades if target not in (t.win, t.lose)]
    return tuple(movement)


def solve_mtl(
    trades: Iterable[Trade], profits: Mapping[str, ProfitFunction] | None = None
) -> MtlSolution:
    """Optimal price movement and winner set for a deterministic trade set."""
    session = require_session(trades)
    graph = build_graph(session, profits)
    winner_set = max_weight_independent_set(graph)
    winners = [t for t in session if t.id in winner_set]

    movement = list(construct_movement(winners))
    # Maximality of the winner set already forces every loser to close at its
    # losing price en route; the extension below only fires for degenerate
    # hand-built winner sets and keeps the movement closing everything.
    from .trades import closing_price  # local import to keep module top lean

    def extend_for(t: Trade) -> None:
        if len(movement) >= 2 and (movement[-1] > movement[-2]) == (t.lose > movement[-1]):
            movement[-1] = t.lose
        else:
            movement.append(t.lose)

    guard = 0
    while True:
        still_open = [t for t in session if closing_price(t, tuple(movement)) is None]
        if not still_open:
            break
        extend_for(still_open[0])
        guard += 1
        if guard > len(session) + 1:
            raise AssertionError("movement extension failed to close all trades")

    final = tuple(movement)
    pfs = resolve_profits(session, profits)
    outcome = simulate(session, final, pfs)
    for t in session:
        close = outcome.closes[t.id]
        if t.id in winner_set:
            assert close.price == t.win, f"winner {t.id!r} did not close at its win"
        else:
            assert close.price == t.lose, f"loser {t.id!r} did not close at its loss"
    per_trade = {ident: c.profit for ident, c in outcome.closes.items()}
    return MtlSolution(
        winners=tuple(t.id for t in winners),
        movement=final,
        total_profit=sum(per_trade.values(), ZERO),
        per_trade=per_trade,
    )
