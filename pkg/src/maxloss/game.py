"""Turn-based online trade game.

Each turn the trader opens any number of trades at the live price (or locks
existing ones with mirror counter-trades), then the broker moves the price by
one unit. The broker's greedy rule — step toward the side with the larger
successor total value — keeps gain-plus-open-value from ever decreasing, so
a game that ends never ends with the broker in the red.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .trades import Trade, ZERO, money_str, parse_money

DEFAULT_MAX_TURNS = 10_000

STATUS_LIVE = "live"
STATUS_ENDED_BROKER = "ended-broker"
STATUS_ENDED_TRADER = "ended-trader"
STATUS_TRUNCATED = "truncated"


class GameError(ValueError):
    """An action or position precondition was violated."""


def trade_value(t: Trade, price: int) -> Fraction:
    """Mark-to-market value of an open trade for the broker at a price."""
    return t.sign * (price - t.open) * t.size


@dataclass(frozen=True)
class GamePosition:
    """Immutable game snapshot: open trades, banked gain, price, turn index."""

    trades: tuple[Trade, ...] = ()
    gain: Fraction = ZERO
    price: int = 0
    turn: int = 0

    @property
    def value(self) -> Fraction:
        return sum((trade_value(t, self.price) for t in self.trades), ZERO)

    @property
    def total_value(self) -> Fraction:
        return self.value + self.gain

    def find(self, trade_id: str) -> Trade | None:
        for t in self.trades:
            if t.id == trade_id:
                return t
        return None


def validate_game_trade(t: Trade, price: int) -> list[str]:
    """Game-relative validity: opened at the live price, bounds straddle it."""
    v: list[str] = []
    if t.open != price:
        v.append(f"open price {t.open} differs from the current price {price}")
    if not (t.win > price > t.lose or t.win < price < t.lose):
        v.append("win and lose must lie strictly on opposite sides of the current price")
    if t.size <= 0:
        v.append("size must be positive")
    return v


def open_trade(pos: GamePosition, t: Trade) -> GamePosition:
    violations = validate_game_trade(t, pos.price)
    if violations:
        raise GameError(f"cannot open trade {t.id!r}: " + "; ".join(violations))
    if pos.find(t.id) is not None:
        raise GameError(f"duplicate trade id {t.id!r}")
    return GamePosition(pos.trades + (t,), pos.gain, pos.price, pos.turn)


def close_at_will(pos: GamePosition, trade_id: str) -> GamePosition:
    """Lock a trade's current value by opening its mirror counter-trade.

    The counter-trade swaps the bounds and opens at the live price; both
    trades then close at the same price under any continuation and their
    profits sum to the locked value.
    """
    t = pos.find(trade_id)
    if t is None:
        raise GameError(f"no open trade with id {trade_id!r}")
    n = 1
    while pos.find(f"{trade_id}~lock{n}") is not None:
        n += 1
    counter = Trade(f"{trade_id}~lock{n}", pos.price, t.lose, t.win, t.size)
    return open_trade(pos, counter)


def price_step(pos: GamePosition, direction: int) -> tuple[GamePosition, tuple[tuple[Trade, Fraction], ...]]:
    """Move the price one unit, banking every trade whose bound is reached."""
    assert direction in (1, -1)
    new_price = pos.price + direction
    closed: list[tuple[Trade, Fraction]] = []
    remaining: list[Trade] = []
    gain = pos.gain
    for t in pos.trades:
        if new_price in (t.win, t.lose):
            banked = trade_value(t, new_price)
            closed.append((t, banked))
            gain += banked
        else:
            remaining.append(t)
    nxt = GamePosition(tuple(remaining), gain, new_price, pos.turn + 1)
    return nxt, tuple(closed)


def broker_move(pos: GamePosition) -> tuple[int, GamePosition]:
    """Greedy never-go-down step: pick the direction with the larger total.

    On a tie, move toward 0 (up when already at 0). The chosen successor's
    total value never drops below the current one.
    """
    up, _ = price_step(pos, 1)
    down, _ = price_step(pos, -1)
    if up.total_value > down.total_value:
        direction = 1
    elif down.total_value > up.total_value:
        direction = -1
    else:
        direction = -1 if pos.price > 0 else 1
    chosen = up if direction == 1 else down
    assert chosen.total_value >= pos.total_value, "never-go-down violated"
    return direction, chosen


@dataclass(frozen=True)
class OpenAction:
    id: str
    win: int
    lose: int
    size: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "size", parse_money(self.size))


@dataclass(frozen=True)
class CloseAtWillAction:
    id: str


TraderAction = OpenAction | CloseAtWillAction


@dataclass(frozen=True)
class TurnRecord:
    """One turn: positions before the trader, after the trader, after the broker."""

    index: int
    start: GamePosition
    after_trader: GamePosition
    after_broker: GamePosition
    actions: tuple[TraderAction, ...]
    opened: tuple[Trade, ...]
    closed: tuple[tuple[Trade, Fraction], ...]
    direction: int

    @property
    def game_over(self) -> bool:
        return len(self.after_broker.trades) == 0


def apply_action(pos: GamePosition, action: TraderAction) -> GamePosition:
    if isinstance(action, OpenAction):
        return open_trade(pos, Trade(action.id, pos.price, action.win, action.lose, action.size))
    if isinstance(action, CloseAtWillAction):
        return close_at_will(pos, action.id)
    raise GameError(f"unknown action {action!r}")


def step_turn(pos: GamePosition, trader_actions: Sequence[TraderAction]) -> TurnRecord:
    """Play one full turn; raises GameError leaving the caller's position intact."""
    work = pos
    for action in trader_actions:
        work = apply_action(work, action)
    assert work.total_value == pos.total_value, "trader phase moved total value"
    after_trader = work
    direction, after_broker = broker_move(after_trader)
    before_ids = {t.id for t in pos.trades}
    opened = tuple(t for t in after_trader.trades if t.id not in before_ids)
    after_ids = {t.id for t in after_broker.trades}
    closed = tuple(
        (t, trade_value(t, after_broker.price))
        for t in after_trader.trades
        if t.id not in after_ids
    )
    return TurnRecord(
        index=pos.turn,
        start=pos,
        after_trader=after_trader,
        after_broker=after_broker,
        actions=tuple(trader_actions),
        opened=opened,
        closed=closed,
        direction=direction,
    )


@dataclass
class Game:
    """A full game session: strictly sequential turns plus an action log."""

    max_turns: int = DEFAULT_MAX_TURNS
    position: GamePosition = field(default_factory=GamePosition)
    records: list[TurnRecord] = field(default_factory=list)
    status: str = STATUS_LIVE

    def play_turn(self, actions: Sequence[TraderAction]) -> TurnRecord:
        if self.status != STATUS_LIVE:
            raise GameError(f"game over ({self.status})")
        record = step_turn(self.position, actions)
        self.position = record.after_broker
        self.records.append(record)
        if record.game_over:
            self.status = (
                STATUS_ENDED_TRADER if self.position.gain < 0 else STATUS_ENDED_BROKER
            )
        elif len(self.records) >= self.max_turns:
            self.status = STATUS_TRUNCATED
        return record

    @property
    def ended(self) -> bool:
        return self.status != STATUS_LIVE


# --- replay log -----------------------------------------------------------
#
# The log keeps, per turn, the trader's actions plus the broker's direction
# and the resulting closures and checkpoints. Re-running the actions through
# the engine must reproduce every checkpoint bit-exactly.


class ReplayError(ValueError):
    """A replay log does not match what the engine reproduces."""


def action_to_json(action: TraderAction) -> dict:
    if isinstance(action, OpenAction):
        return {
            "type": "open",
            "id": action.id,
            "win": action.win,
            "lose": action.lose,
            "size": money_str(action.size),
        }
    return {"type": "close_at_will", "id": action.id}


def action_from_json(doc: dict) -> TraderAction:
    kind = doc.get("type")
    if kind == "open":
        return OpenAction(str(doc["id"]), int(doc["win"]), int(doc["lose"]), parse_money(doc["size"]))
    if kind == "close_at_will":
        return CloseAtWillAction(str(doc["id"]))
    raise GameError(f"unknown action type {kind!r}")


def record_to_json(record: TurnRecord) -> dict:
    return {
        "turn": record.index,
        "actions": [action_to_json(a) for a in record.actions],
        "direction": record.direction,
        "opened": [
            {"id": t.id, "open": t.open, "win": t.win, "lose": t.lose, "size": money_str(t.size)}
            for t in record.opened
        ],
        "closed": [
            {"id": t.id, "price": record.after_broker.price, "value": money_str(v)}
            for t, v in record.closed
        ],
        "price": record.after_broker.price,
        "gain": money_str(record.after_broker.gain),
        "total_value": money_str(record.after_broker.total_value),
    }


def game_log(game: Game) -> dict:
    return {
        "max_turns": game.max_turns,
        "status": game.status,
        "final_gain": money_str(game.position.gain),
        "turns": [record_to_json(r) for r in game.records],
    }


def replay(log: dict) -> Game:
    """Re-run a log through the engine, verifying bit-exact agreement."""
    game = Game(max_turns=int(log.get("max_turns", DEFAULT_MAX_TURNS)))
    for entry in log["turns"]:
        actions = [action_from_json(a) for a in entry["actions"]]
        record = game.play_turn(actions)
        produced = record_to_json(record)
        for key in ("turn", "direction", "price", "gain", "total_value"):
            if produced[key] != entry[key]:
                raise ReplayError(
                    f"turn {entry['turn']}: {key} mismatch "
                    f"(log {entry[key]!r}, engine {produced[key]!r})"
                )
        logged_closed = {(c["id"], c["value"]) for c in entry["closed"]}
        engine_closed = {(c["id"], c["value"]) for c in produced["closed"]}
        if logged_closed != engine_closed:
            raise ReplayError(f"turn {entry['turn']}: closed-trade mismatch")
    if log.get("status") is not None and game.status != log["status"]:
        raise ReplayError(f"status mismatch (log {log['status']!r}, engine {game.status!r})")
    if log.get("final_gain") is not None and money_str(game.position.gain) != log["final_gain"]:
        raise ReplayError("final gain mismatch")
    return game


def dump_log(game: Game) -> str:
    return json.dumps(game_log(game), indent=2) + "\n"


def load_log(text: str) -> dict:
    return json.loads(text)
