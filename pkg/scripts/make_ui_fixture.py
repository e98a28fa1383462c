"""Regenerate the frontend's replay-log test fixture (deterministic).

Writes a 100-turn game log to frontend/tests/fixtures/replay100.json.
"""

import json
from pathlib import Path

from maxloss.game import game_log
from maxloss.generators import play_scripted_game


def main() -> None:
    game = play_scripted_game(seed=75, strategy_name="random-opener", turns=100)
    log = game_log(game)
    assert len(log["turns"]) == 100, "fixture must span a full 100 turns"
    out = Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures"
    out.mkdir(parents=True, exist_ok=True)
    target = out / "replay100.json"
    target.write_text(json.dumps(log, indent=2) + "\n")
    print(f"wrote {target}: {len(log['turns'])} turns, status {log['status']}")


if __name__ == "__main__":
    main()
