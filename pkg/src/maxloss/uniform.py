"""Uniform-trade solver, polynomial in the trade count.

A uniform trade opens at 0 with closing prices uniformly distributed up to
its two bounds, so its expansion has a deterministic trade per price pair —
exponentially many for wide bounds. Optimal movements only need to turn at
the bounds themselves though, so the expansion collapses to one weighted
trade per cell of the bound grid, with closed-form win/loss payouts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .metl import ProbabilisticTrade
from .mtl import MtlSolution, solve_mtl
from .trades import (
    ProfitFunction,
    Trade,
    TradeError,
    TradeFileError,
    money_str,
    parse_money,
)


@dataclass(frozen=True)
class UniformTrade:
    """(bwin, blose, size): open at 0, uniform closing pmfs toward each bound."""

    id: str
    bwin: int
    blose: int
    size: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "size", parse_money(self.size))

    @property
    def sign(self) -> int:
        return 1 if self.bwin > 0 else -1


def validate_uniform(t: UniformTrade) -> list[str]:
    v: list[str] = []
    if t.bwin == 0:
        v.append("bwin must be nonzero")
    if t.blose == 0:
        v.append("blose must be nonzero")
    if t.bwin != 0 and t.blose != 0 and (t.bwin > 0) == (t.blose > 0):
        v.append("bwin and blose must lie on opposite sides of 0")
    if t.size <= 0:
        v.append("size must be positive")
    return v


def require_valid_uniform(t: UniformTrade) -> None:
    violations = validate_uniform(t)
    if violations:
        raise TradeError(f"invalid uniform trade {t.id!r}: " + "; ".join(violations))


@dataclass(frozen=True)
class CollapseGrid:
    """Bound prices of the instance: the only places a movement needs to turn.

    ``s_plus`` ascends from 0, ``s_minus`` descends; the implicit 0 in front
    of each side delimits the first grid cell.
    """

    s_plus: tuple[int, ...]
    s_minus: tuple[int, ...]


def build_grid(trades: Iterable[UniformTrade]) -> CollapseGrid:
    bounds = {b for t in trades for b in (t.bwin, t.blose)}
    return CollapseGrid(
        s_plus=tuple(sorted(b for b in bounds if b > 0)),
        s_minus=tuple(sorted((b for b in bounds if b < 0), reverse=True)),
    )


@dataclass(frozen=True)
class CollapsedTrade:
    """One grid cell of a uniform trade, with its aggregated payouts.

    Winning (losing) the carrier trade stands for winning (losing) every
    expanded trade whose bounds fall in this cell, so the custom profit
    function pays the cell's summed win and loss amounts.
    """

    trade: Trade
    profit: ProfitFunction
    source_id: str
    cell: tuple[int, int]


def collapse(trades: Iterable[UniformTrade]) -> list[CollapsedTrade]:
    """Collapse each trade onto the bound grid with closed-form cell payouts.

    For a cell (p_i, q_j] x [q_j, q_{j-1}) the positive-side payout is the
    probability-weighted sum of prices in (p_{i-1}, p_i], and symmetrically on
    the negative side; telescoping the price sums gives the quadratic forms
    below. The formulas are pinned by the per-cell aggregation tests against
    the raw expansion.
    """
    source = list(trades)
    for t in source:
        require_valid_uniform(t)
    grid = build_grid(source)
    p = (0,) + grid.s_plus
    q = (0,) + grid.s_minus
    out: list[CollapsedTrade] = []
    for t in source:
        pos_bound = t.bwin if t.sign == 1 else t.blose
        neg_bound = t.blose if t.sign == 1 else t.bwin
        denom = 2 * abs(t.bwin) * abs(t.blose)
        for i in range(1, len(p)):
            if p[i] > pos_bound:
                break
            for j in range(1, len(q)):
                if q[j] < neg_bound:
                    break
                assert p[i - 1] < p[i] <= pos_bound and q[j - 1] > q[j] >= neg_bound
                p_win = (
                    Fraction((q[j - 1] - q[j]) * (p[i] ** 2 + p[i] - p[i - 1] ** 2 - p[i - 1]))
                    * t.size
                    / denom
                )
                q_loss = (
                    Fraction((p[i] - p[i - 1]) * (-(q[j] ** 2) + q[j] + q[j - 1] ** 2 - q[j - 1]))
                    * t.size
                    / denom
                )
                ident = f"{t.id}#{i}.{j}"
                if t.sign == 1:
                    carrier = Trade(ident, 0, p[i], q[j], t.size)
                    pf = ProfitFunction(p_win, q_loss)
                else:
                    carrier = Trade(ident, 0, q[j], p[i], t.size)
                    pf = ProfitFunction(-q_loss, -p_win)
                out.append(CollapsedTrade(carrier, pf, t.id, (i, j)))
    return out


def solve_uniform(trades: Iterable[UniformTrade]) -> MtlSolution:
    """Optimal expected profit for uniform trades, independent of bound widths.

    The grid has at most 2n prices, so collapsing emits O(n^2) carrier trades
    and the whole solve stays within O(n^6) no matter how wide the bounds are
    (a straight expansion would be exponential in the bound encoding).
    """
    collapsed = collapse(trades)
    solution = solve_mtl(
        [c.trade for c in collapsed], {c.trade.id: c.profit for c in collapsed}
    )
    grid = build_grid(trades)
    allowed = set(grid.s_plus) | set(grid.s_minus)
    assert all(point in allowed for point in solution.movement[1:]), (
        "movement turned outside the bound grid"
    )
    return solution


def uniform_to_probabilistic(t: UniformTrade) -> ProbabilisticTrade:
    """Spell out the implicit uniform pmfs (for cross-checks and the oracle)."""
    require_valid_uniform(t)

    def uniform_pmf(bound: int) -> list[tuple[int, Fraction]]:
        step = 1 if bound > 0 else -1
        share = Fraction(1, abs(bound))
        return [(price, share) for price in range(step, bound + step, step)]

    return ProbabilisticTrade(
        id=t.id,
        open=0,
        sign=t.sign,
        size=t.size,
        win_pmf=uniform_pmf(t.bwin),
        lose_pmf=uniform_pmf(t.blose),
    )


def parse_uniform(text: str) -> list[UniformTrade]:
    """Parse the uniform trade-set format: ``id bwin blose size`` per line."""
    problems: list[tuple[int, str]] = []
    trades: list[UniformTrade] = []
    seen: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            problems.append((lineno, "expected 4 fields: id bwin blose size"))
            continue
        ident, bw, bl, s = parts
        try:
            trade = UniformTrade(ident, int(bw), int(bl), parse_money(s))
        except (ValueError, TradeError) as exc:
            problems.append((lineno, str(exc)))
            continue
        violations = validate_uniform(trade)
        if violations:
            problems.append((lineno, f"invalid uniform trade {ident!r}: " + "; ".join(violations)))
            continue
        if ident in seen:
            problems.append((lineno, f"duplicate trade id {ident!r} (first seen on line {seen[ident]})"))
            continue
        seen[ident] = lineno
        trades.append(trade)
    if problems:
        raise TradeFileError(problems)
    return trades


def format_uniform(trades: Iterable[UniformTrade]) -> str:
    lines = ["# id bwin blose size"]
    for t in trades:
        lines.append(f"{t.id} {t.bwin} {t.blose} {money_str(t.size)}")
    return "\n".join(lines) + "\n"
