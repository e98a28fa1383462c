"""Bounded trades, exact profit arithmetic, and the unit-path price simulator.

Prices are integers and the market always sits at 0 when a session starts.
Money (profits, sizes) is kept as exact rationals end to end so results can be
compared for equality against brute-force references; nothing in this package
ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

Price = int
Money = Fraction
PriceMovement = tuple[int, ...]

ZERO = Fraction(0)


class TradeError(ValueError):
    """A trade, movement, or closing-price precondition was violated."""


class TradeFileError(ValueError):
    """A trade-set file could not be parsed; carries line-precise messages."""

    def __init__(self, problems: list[tuple[int, str]]):
        self.problems = list(problems)
        super().__init__("; ".join(f"line {n}: {msg}" for n, msg in self.problems))


def parse_money(value: int | str | Fraction) -> Fraction:
    """Parse an exact rational from an int or a decimal/fraction string.

    Floats are rejected outright: a binary float silently misrepresents inputs
    like 0.1, and every downstream comparison in this package is exact.
    """
    if isinstance(value, bool):
        raise TradeError(f"not an exact number: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        raise TradeError(
            f"refusing inexact float {value!r}; pass a string like '3/2' or '0.25'"
        )
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise TradeError(f"not a rational number: {value!r}") from exc
    raise TradeError(f"not an exact number: {value!r}")


def money_str(x: Fraction) -> str:
    """Canonical fraction-string rendering ("5", "-3/2")."""
    return str(Fraction(x))


@dataclass(frozen=True)
class Trade:
    """A deterministic bounded trade.

    ``win`` and ``lose`` are the two prices at which the trade closes
    automatically, whichever the price path reaches first. Profits are seen
    from the optimizer's (house) side: closing at ``win`` is a gain, at
    ``lose`` a loss. "Buy" (sign +1) means ``win > open > lose``; "sell"
    (sign -1) the mirror image.
    """

    id: str
    open: int
    win: int
    lose: int
    size: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "size", parse_money(self.size))

    @property
    def sign(self) -> int:
        return 1 if self.win > self.open else -1

    @property
    def positive_bound(self) -> int:
        """The closing price above 0 (valid trades have exactly one)."""
        return self.win if self.win > 0 else self.lose

    @property
    def negative_bound(self) -> int:
        """The closing price below 0 (valid trades have exactly one)."""
        return self.win if self.win < 0 else self.lose


def validate_trade(t: Trade) -> list[str]:
    """Return every violated trade invariant, empty when the trade is valid."""
    v: list[str] = []
    if t.size <= 0:
        v.append("size must be positive")
    if not (t.win > t.open > t.lose or t.win < t.open < t.lose):
        v.append("win and lose must lie strictly on opposite sides of open")
    if t.win == 0:
        v.append("win must be nonzero (a bound at 0 would trigger immediately)")
    if t.lose == 0:
        v.append("lose must be nonzero (a bound at 0 would trigger immediately)")
    for name, b in (("win", t.win), ("lose", t.lose)):
        if (t.open > 0 and 0 < b < t.open) or (t.open < 0 and t.open < b < 0):
            v.append(f"{name}={b} lies between the open price {t.open} and the market price 0")
    return v


def require_valid(t: Trade) -> None:
    violations = validate_trade(t)
    if violations:
        raise TradeError(f"invalid trade {t.id!r}: " + "; ".join(violations))


def require_session(trades: Iterable[Trade]) -> list[Trade]:
    """Validate a trade set for use as one session: all valid, ids unique."""
    out: list[Trade] = []
    seen: set[str] = set()
    for t in trades:
        require_valid(t)
        if t.id in seen:
            raise TradeError(f"duplicate trade id {t.id!r}")
        seen.add(t.id)
        out.append(t)
    return out


@dataclass(frozen=True)
class ProfitFunction:
    """Two-valued profit function: a positive win payout, a negative loss."""

    win_profit: Fraction
    loss_profit: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "win_profit", parse_money(self.win_profit))
        object.__setattr__(self, "loss_profit", parse_money(self.loss_profit))
        if self.win_profit <= 0:
            raise TradeError("win_profit must be positive")
        if self.loss_profit >= 0:
            raise TradeError("loss_profit must be negative")


def default_profit(t: Trade) -> ProfitFunction:
    """The real-money profit function sign*(closing - open)*size."""
    return ProfitFunction(
        win_profit=t.sign * (t.win - t.open) * t.size,
        loss_profit=t.sign * (t.lose - t.open) * t.size,
    )


def trade_profit(t: Trade, closing: int, pf: ProfitFunction | None = None) -> Fraction:
    """Profit realized by closing ``t`` at one of its bounds."""
    if closing == t.win:
        return pf.win_profit if pf is not None else t.sign * (t.win - t.open) * t.size
    if closing == t.lose:
        return pf.loss_profit if pf is not None else t.sign * (t.lose - t.open) * t.size
    raise TradeError(f"{closing} is not a closing price of trade {t.id!r}")


def validate_movement(m: PriceMovement) -> None:
    """Check the turning-point representation: starts at 0, points alternate."""
    if len(m) == 0:
        raise TradeError("movement must contain at least the starting price")
    if m[0] != 0:
        raise TradeError("movement must start at price 0")
    for a, b in zip(m, m[1:]):
        if a == b:
            raise TradeError("consecutive turning points must differ")


def is_minimal_zigzag(m: PriceMovement) -> bool:
    """True when turning points alternate sign with strictly growing magnitude."""
    for i in range(2, len(m)):
        if m[i] == 0 or m[i - 1] == 0:
            return False
        if (m[i] > 0) == (m[i - 1] > 0):
            return False
        if abs(m[i]) <= abs(m[i - 2]):
            return False
    return True


def closing_price(t: Trade, m: PriceMovement) -> int | None:
    """First of the trade's bounds reached by the unit path, None if neither.

    The path is scanned one turning segment at a time; within a segment the
    nearer bound wins, which is exactly first-hit order on the unit path.
    """
    cur = 0
    for target in m[1:]:
        d = 1 if target > cur else -1
        hit: int | None = None
        for b in (t.win, t.lose):
            if (b - cur) * d > 0 and (target - b) * d >= 0:
                if hit is None or abs(b - cur) < abs(hit - cur):
                    hit = b
        if hit is not None:
            return hit
        cur = target
    return None


class Close(NamedTuple):
    price: int
    profit: Fraction


@dataclass(frozen=True)
class SessionOutcome:
    """Per-trade closing prices and profits for one simulated session."""

    closes: dict[str, Close]

    @property
    def total_profit(self) -> Fraction:
        return sum((c.profit for c in self.closes.values()), ZERO)


def simulate(
    trades: Iterable[Trade],
    movement: PriceMovement,
    profits: Mapping[str, ProfitFunction] | None = None,
) -> SessionOutcome:
    """Run a trade set through a price movement with first-hit close semantics.

    Every trade must be closed by the movement; otherwise TradeError. Trades
    are independent, so the outcome is keyed in input order regardless of the
    order in which closes happen along the path.
    """
    session = require_session(trades)
    validate_movement(movement)
    closes: dict[str, Close] = {}
    for t in session:
        p = closing_price(t, movement)
        if p is None:
            raise TradeError(f"movement does not close trade {t.id!r}")
        pf = profits.get(t.id) if profits is not None else None
        closes[t.id] = Close(p, trade_profit(t, p, pf))
    return SessionOutcome(closes)


def pair_compatible(t1: Trade, t2: Trade) -> bool:
    """Whether a single price movement can win both trades.

    Same-sign trades are always compatible; opposite-sign trades conflict
    exactly when each one's losing price sits no farther from 0 than the
    other's winning price, so the first bound hit must be a loss.
    """
    if t1.sign == t2.sign:
        return True
    return not (abs(t1.lose) <= abs(t2.win) and abs(t2.lose) <= abs(t1.win))


def parse_trades(text: str) -> list[Trade]:
    """Parse the deterministic trade-set format (see docs/formats.md).

    One record per line: ``id open win lose size``, ``#`` comments and blank
    lines ignored. Sizes accept integers, decimals and fractions ("3/2").
    """
    problems: list[tuple[int, str]] = []
    trades: list[Trade] = []
    seen: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 5:
            problems.append((lineno, "expected 5 fields: id open win lose size"))
            continue
        ident, o, w, l, s = parts
        try:
            trade = Trade(ident, int(o), int(w), int(l), parse_money(s))
        except (ValueError, TradeError) as exc:
            problems.append((lineno, str(exc)))
            continue
        violations = validate_trade(trade)
        if violations:
            problems.append((lineno, f"invalid trade {ident!r}: " + "; ".join(violations)))
            continue
        if ident in seen:
            problems.append((lineno, f"duplicate trade id {ident!r} (first seen on line {seen[ident]})"))
            continue
        seen[ident] = lineno
        trades.append(trade)
    if problems:
        raise TradeFileError(problems)
    return trades


def format_trades(trades: Iterable[Trade]) -> str:
    lines = ["# id open win lose size"]
    for t in trades:
        lines.append(f"{t.id} {t.open} {t.win} {t.lose} {money_str(t.size)}")
    return "\n".join(lines) + "\n"
