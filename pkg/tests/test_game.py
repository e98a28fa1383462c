"""Turn engine: trade opening, value locking, the greedy broker, replays."""

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxloss.game import (
    CloseAtWillAction,
    Game,
    GameError,
    GamePosition,
    OpenAction,
    ReplayError,
    broker_move,
    close_at_will,
    dump_log,
    game_log,
    load_log,
    open_trade,
    price_step,
    replay,
    step_turn,
    trade_value,
)
from maxloss.generators import STRATEGIES, play_scripted_game
from maxloss.trades import Trade


def pos_with(*trades: Trade, gain=0, price=0, turn=0) -> GamePosition:
    return GamePosition(tuple(trades), Fraction(gain), price, turn)


class TestOpenTrade:
    def test_opening_does_not_move_total_value(self):
        pos = GamePosition()
        nxt = open_trade(pos, Trade("a", 0, 1, -1, 1))
        assert nxt.total_value == pos.total_value == 0

    def test_open_away_from_zero(self):
        pos = pos_with(price=3)
        nxt = open_trade(pos, Trade("a", 3, 5, 1, 2))
        assert nxt.find("a") is not None

    def test_bounds_must_straddle_price(self):
        with pytest.raises(GameError, match="opposite sides"):
            open_trade(GamePosition(), Trade("a", 0, -1, -2, 1))

    def test_open_price_must_be_live_price(self):
        with pytest.raises(GameError, match="differs from the current price"):
            open_trade(GamePosition(), Trade("a", 1, 2, -1, 1))

    def test_bound_equal_to_price_rejected(self):
        # a bound at the live price would close instantly; rejected
        with pytest.raises(GameError):
            open_trade(pos_with(price=2), Trade("a", 2, 2, -1, 1))

    def test_duplicate_id(self):
        pos = open_trade(GamePosition(), Trade("a", 0, 1, -1, 1))
        with pytest.raises(GameError, match="duplicate"):
            open_trade(pos, Trade("a", 0, 2, -2, 1))


def walk_until_closed(pos: GamePosition, ids: set[str], directions) -> dict[str, Fraction]:
    """Force price steps until every id in ids has banked, returning values."""
    banked: dict[str, Fraction] = {}
    while not ids <= set(banked):
        pos, closed = price_step(pos, next(directions))
        for t, v in closed:
            banked[t.id] = v
    return banked


class TestCloseAtWill:
    def test_counter_trade_mirrors_bounds(self):
        t = Trade("a", 0, 2, -1, 1)
        pos = pos_with(t, price=1)
        locked = close_at_will(pos, "a")
        counter = locked.find("a~lock1")
        assert counter == Trade("a~lock1", 1, -1, 2, 1)

    @pytest.mark.parametrize("updown", [(1,), (-1,)])
    def test_pair_nets_locked_value_under_any_continuation(self, updown):
        t = Trade("a", 0, 2, -1, 1)
        pos = pos_with(t, price=1)
        locked = close_at_will(pos, "a")
        directions = iter(updown * 50)
        banked = walk_until_closed(locked, {"a", "a~lock1"}, directions)
        assert banked["a"] + banked["a~lock1"] == trade_value(t, 1) == 1

    def test_lock_at_open_price_nets_zero(self):
        t = Trade("a", 0, 3, -2, 4)
        locked = close_at_will(pos_with(t), "a")
        directions = iter([1] * 50)
        banked = walk_until_closed(locked, {"a", "a~lock1"}, directions)
        assert banked["a"] + banked["a~lock1"] == 0

    def test_double_lock_locks_again_at_new_price(self):
        t = Trade("a", 0, 4, -4, 1)
        pos = close_at_will(pos_with(t, price=1), "a")
        pos, _ = price_step(pos, 1)  # price 2
        pos = close_at_will(pos, "a")
        counter2 = pos.find("a~lock2")
        assert counter2 is not None and counter2.open == 2
        # the re-lock pins the first counter-trade's drift: whatever happens,
        # a + lock1 = val(a @1) and a + lock2 = val(a @2)
        directions = iter([1] * 50)
        banked = walk_until_closed(pos, {"a", "a~lock1", "a~lock2"}, directions)
        assert banked["a"] + banked["a~lock1"] == trade_value(t, 1)
        assert banked["a"] + banked["a~lock2"] == trade_value(t, 2)

    def test_unknown_id(self):
        with pytest.raises(GameError, match="no open trade"):
            close_at_will(GamePosition(), "ghost")


class TestBrokerMove:
    def test_prefers_the_winning_side(self):
        pos = pos_with(Trade("a", 0, 1, -1, 1))
        direction, nxt = broker_move(pos)
        assert direction == 1
        assert nxt.gain == 1 and nxt.trades == () and nxt.total_value == 1

    def test_tie_on_empty_book(self):
        direction, nxt = broker_move(GamePosition())
        assert direction == 1  # at price 0 ties go up
        assert nxt.total_value == 0
        direction, _ = broker_move(pos_with(price=5))
        assert direction == -1  # away from 0 ties move toward it

    def test_symmetric_pair_ties_at_zero(self):
        pos = pos_with(Trade("a", 0, 1, -1, 1), Trade("b", 0, -1, 1, 1))
        direction, nxt = broker_move(pos)
        assert nxt.total_value == 0

    @given(st.data())
    @settings(max_examples=60)
    def test_antisymmetry(self, data):
        rng = random.Random(data.draw(st.integers(0, 10_000)))
        pos = random_position(rng)
        up, _ = price_step(pos, 1)
        down, _ = price_step(pos, -1)
        assert up.total_value - pos.total_value == -(down.total_value - pos.total_value)
        _, chosen = broker_move(pos)
        assert chosen.total_value >= pos.total_value


def random_position(rng: random.Random) -> GamePosition:
    price = rng.randint(-5, 5)
    trades = []
    for k in range(rng.randint(0, 5)):
        opened = rng.randint(price - 3, price + 3)
        hi = price + rng.randint(1, 4)
        lo = price - rng.randint(1, 4)
        # bounds must straddle the *current* price; the open price may drift
        win, lose = (hi, lo) if rng.random() < 0.5 else (lo, hi)
        trades.append(Trade(f"t{k}", opened, win, lose, rng.randint(1, 5)))
    return GamePosition(tuple(trades), Fraction(rng.randint(-3, 3)), price, 0)


class TestStepTurn:
    def test_empty_turn_on_empty_position_ends_game(self):
        record = step_turn(GamePosition(), [])
        assert record.game_over
        assert record.after_broker.gain == 0

    def test_open_then_broker_banks(self):
        record = step_turn(GamePosition(), [OpenAction("a", 1, -1, 1)])
        assert record.direction == 1
        assert record.game_over
        assert record.after_broker.total_value == 1
        assert [t.id for t, _ in record.closed] == ["a"]

    def test_atomic_rejection(self):
        pos = GamePosition()
        actions = [OpenAction("a", 1, -1, 1), OpenAction("a", 2, -2, 1)]
        with pytest.raises(GameError, match="duplicate"):
            step_turn(pos, actions)
        assert pos.trades == ()  # caller's position untouched

    def test_trader_phase_is_value_neutral(self):
        pos = pos_with(Trade("x", 0, 5, -5, 2), price=0)
        record = step_turn(pos, [OpenAction("y", 3, -2, 7), CloseAtWillAction("x")])
        assert record.after_trader.total_value == pos.total_value

    def test_long_random_script_never_goes_down(self):
        game = play_scripted_game(123, "random-opener", 1000)
        assert game.records, "script should play at least one turn"
        for record in game.records:
            assert record.after_broker.total_value >= record.start.total_value
        if game.status != "truncated":
            assert game.position.gain >= 0


class TestGameSession:
    def test_end_state_gain_equals_total_value(self):
        for seed in range(30):
            game = play_scripted_game(seed, "close-at-will-mixer", 200)
            if game.status != "truncated":
                assert game.position.value == 0
                assert game.position.gain == game.position.total_value
                assert (game.status == "ended-trader") == (game.position.gain < 0)

    def test_truncation_reports_no_trader_win(self):
        game = play_scripted_game(77, "martingale", 5)
        assert game.status == "truncated"
        assert game.position.total_value >= 0

    def test_cannot_play_after_end(self):
        game = Game(max_turns=10)
        game.play_turn([])
        with pytest.raises(GameError, match="game over"):
            game.play_turn([])


class TestReplay:
    def test_round_trip(self):
        for name in STRATEGIES:
            game = play_scripted_game(21, name, 120)
            log = load_log(dump_log(game))
            replayed = replay(log)
            assert replayed.status == game.status
            assert replayed.position == game.position

    def test_tampered_gain_detected(self):
        game = play_scripted_game(5, "random-opener", 50)
        log = game_log(game)
        log["turns"][-1]["gain"] = "999999"
        with pytest.raises(ReplayError, match="gain mismatch"):
            replay(log)

    def test_tampered_direction_detected(self):
        game = play_scripted_game(5, "random-opener", 50)
        log = game_log(game)
        log["turns"][0]["direction"] = -log["turns"][0]["direction"]
        with pytest.raises(ReplayError, match="direction"):
            replay(log)

    def test_log_is_json(self):
        game = play_scripted_game(9, "martingale", 40)
        parsed = json.loads(dump_log(game))
        assert parsed["turns"][0]["turn"] == 0
