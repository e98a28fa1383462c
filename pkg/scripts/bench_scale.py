"""Timing sweep for the deterministic solver across instance sizes.

Usage: python3 scripts/bench_scale.py [max_n]
"""

import random
import sys
import time

from maxloss.generators import random_mtl_instance
from maxloss.mtl import solve_mtl
from maxloss.trades import simulate


def main() -> None:
    max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
    n = 125
    while n <= max_n:
        instance = random_mtl_instance(random.Random(99), n, price_radius=12, max_size=5)
        started = time.monotonic()
        sol = solve_mtl(instance)
        elapsed = time.monotonic() - started
        assert simulate(instance, sol.movement).total_profit == sol.total_profit
        print(
            f"n={n:5d}  solve={elapsed:7.3f}s  winners={len(sol.winners):5d}  "
            f"total={sol.total_profit}  movement_len={len(sol.movement)}"
        )
        n *= 2


if __name__ == "__main__":
    main()
