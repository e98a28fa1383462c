"""Shared hypothesis strategies for valid domain objects."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from maxloss.trades import Trade

sizes = st.fractions(min_value=Fraction(1, 4), max_value=Fraction(8), max_denominator=6).filter(
    lambda x: x > 0
)


@st.composite
def valid_trades(draw, ident: str = "t", radius: int = 10, open_spread: int = 3) -> Trade:
    sign = draw(st.sampled_from((1, -1)))
    open_price = draw(st.integers(-open_spread, open_spread))
    above = st.integers(max(open_price, 0) + 1, radius)
    below = st.integers(-radius, min(open_price, 0) - 1)
    if sign == 1:
        win, lose = draw(above), draw(below)
    else:
        win, lose = draw(below), draw(above)
    return Trade(ident, open_price, win, lose, draw(sizes))


@st.composite
def trade_lists(draw, max_n: int = 8, radius: int = 10) -> list[Trade]:
    n = draw(st.integers(0, max_n))
    return [draw(valid_trades(ident=f"t{i}", radius=radius)) for i in range(n)]
