"""Terminal game against the broker: open trades, watch the price respond.

Commands at the prompt:
    open WIN LOSE SIZE   queue a trade (bounds are absolute prices)
    lock ID              queue a close-at-will counter-trade for ID
    go                   submit the turn (also: empty input)
    quit
"""

from maxloss.game import CloseAtWillAction, Game, GameError, OpenAction
from maxloss.trades import money_str


def show(game: Game) -> None:
    pos = game.position
    print(
        f"\nturn {pos.turn}  price {pos.price}  gain {money_str(pos.gain)}  "
        f"total value {money_str(pos.total_value)}"
    )
    for t in pos.trades:
        print(f"  open {t.id}: win@{t.win} lose@{t.lose} size {money_str(t.size)}")


def main() -> None:
    game = Game()
    counter = 0
    print(__doc__)
    while not game.ended:
        show(game)
        actions = []
        while True:
            try:
                line = input("> ").strip()
            except EOFError:
                return
            if line in ("", "go"):
                break
            if line == "quit":
                return
            parts = line.split()
            try:
                if parts[0] == "open" and len(parts) == 4:
                    counter += 1
                    actions.append(
                        OpenAction(f"t{counter}", int(parts[1]), int(parts[2]), parts[3])
                    )
                elif parts[0] == "lock" and len(parts) == 2:
                    actions.append(CloseAtWillAction(parts[1]))
                else:
                    print("commands: open WIN LOSE SIZE | lock ID | go | quit")
            except ValueError as exc:
                print(f"bad input: {exc}")
        try:
            record = game.play_turn(actions)
        except GameError as exc:
            print(f"turn rejected: {exc}")
            continue
        arrow = "up" if record.direction == 1 else "down"
        print(f"broker moves {arrow} to {record.after_broker.price}")
        for t, v in record.closed:
            print(f"  closed {t.id} for {money_str(v)}")
    print(f"\ngame over: {game.status}, broker gain {money_str(game.position.gain)}")


if __name__ == "__main__":
    main()
