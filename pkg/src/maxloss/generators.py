"""Seeded random instance generators and scripted trader strategies.

Shared by the CLI ``gen`` subcommand, the test suite and the acceptance
harness so that "instance k of seed s" means the same thing everywhere.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .game import CloseAtWillAction, Game, OpenAction, TraderAction
from .metl import ProbabilisticTrade
from .trades import Trade
from .uniform import UniformTrade


def random_mtl_instance(
    rng: random.Random,
    n: int,
    price_radius: int = 12,
    max_size: int = 5,
    open_spread: int = 3,
) -> list[Trade]:
    """Random deterministic trades with closing prices within ±price_radius."""
    trades = []
    for k in range(n):
        sign = rng.choice((1, -1))
        open_price = rng.randint(-open_spread, open_spread)
        if sign == 1:
            win = rng.randint(max(open_price, 0) + 1, price_radius)
            lose = rng.randint(-price_radius, min(open_price, 0) - 1)
        else:
            win = rng.randint(-price_radius, min(open_price, 0) - 1)
            lose = rng.randint(max(open_price, 0) + 1, price_radius)
        trades.append(Trade(f"t{k}", open_price, win, lose, rng.randint(1, max_size)))
    return trades


def _random_pmf(rng: random.Random, prices: Sequence[int]) -> list[tuple[int, Fraction]]:
    chosen = sorted(rng.sample(list(prices), rng.randint(1, len(prices))))
    weights = [rng.randint(1, 4) for _ in chosen]
    total = sum(weights)
    return [(p, Fraction(w, total)) for p, w in zip(chosen, weights)]


def random_metl_instance(
    rng: random.Random,
    n: int,
    support_limit: int = 8,
    max_size: int = 5,
) -> list[ProbabilisticTrade]:
    """Random probabilistic trades whose joint support stays within the limit."""
    pos_count = rng.randint(1, max(1, support_limit // 2))
    neg_count = rng.randint(1, max(1, support_limit - pos_count))
    pos_pool = sorted(rng.sample(range(1, support_limit + 1), pos_count))
    neg_pool = sorted(rng.sample(range(-support_limit, 0), neg_count))
    trades = []
    for k in range(n):
        sign = rng.choice((1, -1))
        win_side, lose_side = (pos_pool, neg_pool) if sign == 1 else (neg_pool, pos_pool)
        trades.append(
            ProbabilisticTrade(
                id=f"p{k}",
                open=0,
                sign=sign,
                size=rng.randint(1, max_size),
                win_pmf=_random_pmf(rng, win_side),
                lose_pmf=_random_pmf(rng, lose_side),
            )
        )
    return trades


def random_uniform_instance(
    rng: random.Random,
    n: int,
    max_bound: int = 6,
    max_size: int = 5,
) -> list[UniformTrade]:
    trades = []
    for k in range(n):
        sign = rng.choice((1, -1))
        bwin = sign * rng.randint(1, max_bound)
        blose = -sign * rng.randint(1, max_bound)
        trades.append(UniformTrade(f"u{k}", bwin, blose, rng.randint(1, max_size)))
    return trades


# --- trader strategies ------------------------------------------------------


class RandomOpener:
    """Opens 0-2 trades per turn with random bounds around the live price."""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.counter = 0

    def actions(self, game: Game) -> list[TraderAction]:
        out: list[TraderAction] = []
        for _ in range(self.rng.choice((0, 1, 1, 1, 2))):
            price = game.position.price
            up = price + self.rng.randint(1, 4)
            down = price - self.rng.randint(1, 4)
            win, lose = (up, down) if self.rng.random() < 0.5 else (down, up)
            self.counter += 1
            out.append(OpenAction(f"r{self.counter}", win, lose, self.rng.randint(1, 5)))
        return out


class MartingaleDoubler:
    """Doubles the stake after every banked loss, classic martingale style.

    Keeps one wide anchor trade open so the game does not end between bets;
    the game runs until the anchor itself is swept or the turn budget hits.
    """

    def __init__(self, rng: random.Random, anchor_width: int = 64):
        self.rng = rng
        self.anchor_width = anchor_width
        self.stake = Fraction(1)
        self.counter = 0

    def actions(self, game: Game) -> list[TraderAction]:
        out: list[TraderAction] = []
        pos = game.position
        if not game.records:
            out.append(
                OpenAction("anchor", pos.price + self.anchor_width, pos.price - self.anchor_width, 1)
            )
        else:
            for t, value in game.records[-1].closed:
                if t.id.startswith("m") and value < 0:
                    self.stake *= 2
        if pos.find(f"m{self.counter}") is None:
            self.counter += 1
            width = self.rng.randint(1, 3)
            out.append(OpenAction(f"m{self.counter}", pos.price + width, pos.price - width, self.stake))
        return out


class CloseAtWillMixer:
    """Opens trades and randomly locks open ones with counter-trades."""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.counter = 0

    def actions(self, game: Game) -> list[TraderAction]:
        out: list[TraderAction] = []
        pos = game.position
        lockable = [t.id for t in pos.trades if "~lock" not in t.id]
        if lockable and self.rng.random() < 0.3:
            out.append(CloseAtWillAction(self.rng.choice(lockable)))
        if self.rng.random() < 0.6:
            price = pos.price
            spread_up = self.rng.randint(1, 5)
            spread_down = self.rng.randint(1, 5)
            win, lose = (
                (price + spread_up, price - spread_down)
                if self.rng.random() < 0.5
                else (price - spread_down, price + spread_up)
            )
            self.counter += 1
            out.append(OpenAction(f"c{self.counter}", win, lose, self.rng.randint(1, 3)))
        return out


STRATEGIES = {
    "random-opener": RandomOpener,
    "martingale": MartingaleDoubler,
    "close-at-will-mixer": CloseAtWillMixer,
}


def play_scripted_game(seed: int, strategy_name: str, turns: int) -> Game:
    """Run one seeded game of a named strategy against the greedy broker."""
    rng = random.Random(seed)
    strategy = STRATEGIES[strategy_name](rng)
    game = Game(max_turns=turns)
    while not game.ended:
        game.play_turn(strategy.actions(game))
    return game
