"""Uniform-trade collapsing: cell payouts, solver equivalence, grid movement."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxloss.generators import random_uniform_instance
from maxloss.metl import expand, solve_metl
from maxloss.mtl import solve_mtl
from maxloss.trades import Trade, TradeError, simulate, trade_profit
from maxloss.uniform import (
    UniformTrade,
    build_grid,
    collapse,
    format_uniform,
    parse_uniform,
    solve_uniform,
    uniform_to_probabilistic,
    validate_uniform,
)


class TestValidation:
    def test_valid(self):
        assert validate_uniform(UniformTrade("u", 2, -2, 4)) == []

    def test_same_side_bounds(self):
        assert validate_uniform(UniformTrade("u", 2, 3, 1))

    def test_zero_bound(self):
        assert validate_uniform(UniformTrade("u", 0, -2, 1))

    def test_sign(self):
        assert UniformTrade("u", 2, -3, 1).sign == 1
        assert UniformTrade("u", -2, 3, 1).sign == -1


class TestCollapse:
    def test_single_symmetric_trade(self):
        (cell,) = collapse([UniformTrade("u", 2, -2, 4)])
        assert cell.trade == Trade("u#1.1", 0, 2, -2, 4)
        assert cell.profit.win_profit == 6
        assert cell.profit.loss_profit == -6

    def test_point_width_cell_reduces_to_expanded_trade(self):
        # unit bounds: the single cell is one expanded trade of full size
        (cell,) = collapse([UniformTrade("u", 1, -1, 1)])
        assert cell.profit.win_profit == 1
        assert cell.profit.loss_profit == -1

    def test_cells_outside_support_are_skipped(self):
        narrow = UniformTrade("n", 1, -1, 1)
        wide = UniformTrade("w", 3, -2, 1)
        cells = {(c.source_id, c.cell) for c in collapse([narrow, wide])}
        # grid: p = (1, 3), q = (-1, -2); the narrow trade only covers cell (1,1)
        assert ("n", (1, 1)) in cells
        assert ("n", (2, 1)) not in cells and ("n", (1, 2)) not in cells
        assert {c for s, c in cells if s == "w"} == {(1, 1), (1, 2), (2, 1), (2, 2)}

    def test_grid_collects_bounds_only(self):
        grid = build_grid([UniformTrade("a", 4, -2, 1), UniformTrade("b", -3, 4, 1)])
        assert grid.s_plus == (4,) and grid.s_minus == (-2, -3)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10_000))
    def test_per_cell_aggregation_identity(self, seed):
        # each cell's payouts equal the brute-force profit sums over the
        # expanded trades whose bounds fall in that cell
        rng = random.Random(seed)
        instance = random_uniform_instance(rng, rng.randint(1, 3))
        grid = build_grid(instance)
        p = (0,) + grid.s_plus
        q = (0,) + grid.s_minus
        expanded = {t.id: expand(uniform_to_probabilistic(t)) for t in instance}
        for cell in collapse(instance):
            i, j = cell.cell
            members = [
                x
                for x in expanded[cell.source_id]
                if p[i - 1] < x.positive_bound <= p[i]
                and q[j - 1] > x.negative_bound >= q[j]
            ]
            assert members, "every emitted cell covers at least one expanded trade"
            win_sum = sum((trade_profit(x, x.win) for x in members), Fraction(0))
            loss_sum = sum((trade_profit(x, x.lose) for x in members), Fraction(0))
            assert cell.profit.win_profit == win_sum
            assert cell.profit.loss_profit == loss_sum


class TestSolveUniform:
    def test_single_symmetric(self):
        sol = solve_uniform([UniformTrade("u", 2, -2, 4)])
        assert sol.total_profit == 6
        assert sol.movement == (0, 2)

    def test_degenerate_unit_trade(self):
        sol = solve_uniform([UniformTrade("u", 1, -1, 1)])
        assert sol.total_profit == 1

    def test_buy_sell_pair_matches_metl(self):
        instance = [UniformTrade("a", 2, -2, 1), UniformTrade("b", -2, 2, 1)]
        expected = solve_metl([uniform_to_probabilistic(t) for t in instance])
        assert solve_uniform(instance).total_profit == expected.total_profit

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10_000))
    def test_collapse_expansion_equivalence(self, seed):
        rng = random.Random(seed)
        instance = random_uniform_instance(rng, rng.randint(1, 4))
        via_collapse = solve_uniform(instance)
        via_expansion = solve_metl([uniform_to_probabilistic(t) for t in instance])
        assert via_collapse.total_profit == via_expansion.total_profit

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000))
    def test_movement_turns_only_on_the_grid(self, seed):
        rng = random.Random(seed)
        instance = random_uniform_instance(rng, rng.randint(1, 5))
        grid = build_grid(instance)
        allowed = set(grid.s_plus) | set(grid.s_minus)
        sol = solve_uniform(instance)
        assert all(point in allowed for point in sol.movement[1:])

    @settings(max_examples=40, deadline=None)
    @given(
        st.integers(0, 10_000),
        st.fractions(min_value=Fraction(1, 5), max_value=Fraction(9), max_denominator=7),
    )
    def test_scale_invariance(self, seed, factor):
        if factor <= 0:
            factor = Fraction(1, 5)
        rng = random.Random(seed)
        instance = random_uniform_instance(rng, rng.randint(1, 4))
        scaled = [UniformTrade(t.id, t.bwin, t.blose, t.size * factor) for t in instance]
        base = solve_uniform(instance)
        rescaled = solve_uniform(scaled)
        assert rescaled.total_profit == base.total_profit * factor
        assert rescaled.winners == base.winners

    def test_solution_resimulates(self):
        instance = [UniformTrade("a", 3, -2, 2), UniformTrade("b", -4, 1, 1)]
        collapsed = collapse(instance)
        sol = solve_uniform(instance)
        out = simulate(
            [c.trade for c in collapsed],
            sol.movement,
            {c.trade.id: c.profit for c in collapsed},
        )
        assert out.total_profit == sol.total_profit


class TestUniformFile:
    def test_round_trip(self):
        rng = random.Random(4)
        instance = random_uniform_instance(rng, 4)
        assert parse_uniform(format_uniform(instance)) == instance

    def test_errors_have_line_numbers(self):
        with pytest.raises(Exception) as err:
            parse_uniform("u1 2 -2 1\nu2 2 2 1\n")
        assert "line 2" in str(err.value)
