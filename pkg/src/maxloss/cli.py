"""Command-line front door for the solvers, oracles, generator and game tools.

Everything numeric is printed as exact fraction strings by default so output
is stable enough for golden files; ``--decimal`` adds human-friendly
approximations. Exit codes: 1 for validation/parse problems, 2 when an oracle
refuses an instance as over budget.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import game as game_mod
from . import metl, mtl, oracle, trades, uniform
from .generators import random_metl_instance, random_mtl_instance, random_uniform_instance

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_BUDGET = 2


def _fmt(x: Fraction, decimal: bool) -> str:
    s = trades.money_str(x)
    if decimal and "/" in s:
        return f"{s} (~{float(x):.6g})"
    return s


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _solution_report(
    solution: mtl.MtlSolution,
    instance: list[trades.Trade],
    profits=None,
    per_source: dict[str, Fraction] | None = None,
) -> dict:
    # every emitted movement must re-simulate to the reported totals
    outcome = trades.simulate(instance, solution.movement, profits)
    assert outcome.total_profit == solution.total_profit
    report = {
        "total": trades.money_str(solution.total_profit),
        "movement": list(solution.movement),
        "movement_length": len(solution.movement),
        "winners": list(solution.winners),
        "per_trade": {
            ident: {
                "close": outcome.closes[ident].price,
                "profit": trades.money_str(profit),
                "won": ident in solution.winners,
            }
            for ident, profit in solution.per_trade.items()
        },
    }
    if per_source is not None:
        report["per_source"] = {k: trades.money_str(v) for k, v in per_source.items()}
    return report


def _print_report(report: dict, as_json: bool, decimal: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2))
        return
    total = Fraction(report["total"])
    print(f"total {_fmt(total, decimal)}")
    print("movement " + " ".join(str(p) for p in report["movement"]))
    print("winners " + (" ".join(report["winners"]) if report["winners"] else "(none)"))
    for ident, row in report["per_trade"].items():
        tag = "won " if row["won"] else "lost"
        print(f"  {ident}: {tag} close={row['close']} profit={_fmt(Fraction(row['profit']), decimal)}")
    if "per_source" in report:
        print("per-source expected profit:")
        for ident, value in report["per_source"].items():
            print(f"  {ident}: {_fmt(Fraction(value), decimal)}")


def cmd_solve(args) -> int:
    instance = trades.parse_trades(_read(args.input))
    solution = mtl.solve_mtl(instance)
    _print_report(_solution_report(solution, instance), args.json, args.decimal)
    return EXIT_OK


def cmd_solve_prob(args) -> int:
    instance = metl.parse_probabilistic(_read(args.input))
    solution = metl.solve_metl(instance)
    expanded = [t for p in instance for t in metl.expand(p)]
    report = _solution_report(
        solution, expanded, per_source=metl.aggregate_by_source(solution)
    )
    _print_report(report, args.json, args.decimal)
    return EXIT_OK


def cmd_solve_uniform(args) -> int:
    instance = uniform.parse_uniform(_read(args.input))
    collapsed = uniform.collapse(instance)
    solution = uniform.solve_uniform(instance)
    profits = {c.trade.id: c.profit for c in collapsed}
    per_source: dict[str, Fraction] = {}
    for c in collapsed:
        per_source[c.source_id] = per_source.get(c.source_id, Fraction(0)) + solution.per_trade[c.trade.id]
    report = _solution_report(solution, [c.trade for c in collapsed], profits, per_source)
    _print_report(report, args.json, args.decimal)
    return EXIT_OK


def cmd_oracle(args) -> int:
    budget = oracle.OracleBudget(max_trades=args.budget_trades, price_radius=args.budget_radius)
    text = _read(args.input)
    if args.kind == "det":
        instance = trades.parse_trades(text)
        if args.method == "movement":
            total = oracle.oracle_movement_search(instance, budget)
        else:
            total = oracle.oracle_mtl(instance, budget=budget)
    elif args.kind == "prob":
        total = oracle.oracle_metl(metl.parse_probabilistic(text), budget)
    else:
        pmfs = [uniform.uniform_to_probabilistic(t) for t in uniform.parse_uniform(text)]
        total = oracle.oracle_metl(pmfs, budget)
    if args.json:
        print(json.dumps({"total": trades.money_str(total)}))
    else:
        print(f"total {_fmt(total, args.decimal)}")
    return EXIT_OK


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    if args.kind == "det":
        text = trades.format_trades(
            random_mtl_instance(rng, args.n, args.radius, args.max_size)
        )
    elif args.kind == "prob":
        text = metl.format_probabilistic(random_metl_instance(rng, args.n))
    else:
        text = uniform.format_uniform(random_uniform_instance(rng, args.n))
    _write(args.output, text)
    return EXIT_OK


def cmd_replay(args) -> int:
    log = game_mod.load_log(_read(args.input))
    game = game_mod.replay(log)
    result = {
        "ok": True,
        "turns": len(game.records),
        "status": game.status,
        "final_gain": trades.money_str(game.position.gain),
        "final_price": game.position.price,
    }
    if args.json:
        print(json.dumps(result))
    else:
        print(f"replay ok: {result['turns']} turns, status {result['status']}, "
              f"final gain {result['final_gain']}, final price {result['final_price']}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(log_dir=Path(args.log_dir) if args.log_dir else None)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxloss",
        description="Adversarial price-movement solvers for bounded trades.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("input", help="instance file, or - for stdin")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--decimal", action="store_true",
                       help="append decimal approximations for humans")

    p = sub.add_parser("solve", help="optimal movement for deterministic trades")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("solve-prob", help="optimal movement for probabilistic trades")
    common(p)
    p.set_defaults(func=cmd_solve_prob)

    p = sub.add_parser("solve-uniform", help="optimal movement for uniform trades")
    common(p)
    p.set_defaults(func=cmd_solve_uniform)

    p = sub.add_parser("oracle", help="brute-force reference answer (desk scale)")
    common(p)
    p.add_argument("--kind", choices=("det", "prob", "uniform"), default="det")
    p.add_argument("--method", choices=("subset", "movement"), default="subset",
                   help="deterministic instances: subset enumeration or movement search")
    p.add_argument("--budget-trades", type=int, default=oracle.DEFAULT_BUDGET.max_trades)
    p.add_argument("--budget-radius", type=int, default=oracle.DEFAULT_BUDGET.price_radius)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="seeded random instance generator")
    p.add_argument("--kind", choices=("det", "prob", "uniform"), default="det")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--radius", type=int, default=12, help="price radius (det)")
    p.add_argument("--max-size", type=int, default=5)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("replay", help="verify a game replay log against the engine")
    common(p)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("serve", help="run the game service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--log-dir", default=None,
                   help="append per-session replay logs under this directory")
    p.set_defaults(func=cmd_serve)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except trades.TradeFileError as exc:
        for line, msg in exc.problems:
            print(f"error: line {line}: {msg}", file=sys.stderr)
        return EXIT_INVALID
    except oracle.BudgetExceededError as exc:
        print(f"budget refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (trades.TradeError, game_mod.GameError, game_mod.ReplayError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
