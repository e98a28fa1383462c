"""Maximum expected trader-loss via expansion to weighted deterministic trades.

A probabilistic trade carries finite pmfs over its winning and losing prices.
Expanding it into one deterministic trade per (win, lose) support pair, sized
by the pair's probability, turns the expected-profit objective into the plain
deterministic one, so the bipartite solver applies unchanged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .mtl import MtlSolution, solve_mtl
from .trades import Trade, TradeError, TradeFileError, ZERO, parse_money, money_str

Pmf = tuple[tuple[int, Fraction], ...]


def _as_pmf(entries) -> Pmf:
    pairs = []
    for price, prob in dict(entries).items():
        pairs.append((int(price), parse_money(prob)))
    pairs.sort()
    return tuple(pairs)


@dataclass(frozen=True)
class ProbabilisticTrade:
    """Trade whose winning and losing prices are drawn from finite pmfs.

    ``win_pmf`` and ``lose_pmf`` map prices to exact probabilities; the draws
    are independent. Accepts dicts or (price, probability) pair lists and
    normalizes to price-sorted tuples so instances hash and compare cleanly.
    """

    id: str
    open: int
    sign: int
    size: Fraction
    win_pmf: Pmf
    lose_pmf: Pmf

    def __post_init__(self) -> None:
        object.__setattr__(self, "size", parse_money(self.size))
        object.__setattr__(self, "win_pmf", _as_pmf(self.win_pmf))
        object.__setattr__(self, "lose_pmf", _as_pmf(self.lose_pmf))

    def support(self) -> tuple[int, ...]:
        return tuple(sorted({p for p, _ in self.win_pmf} | {p for p, _ in self.lose_pmf}))


def validate_probabilistic(t: ProbabilisticTrade) -> list[str]:
    v: list[str] = []
    if t.sign not in (1, -1):
        v.append("sign must be +1 or -1")
        return v
    if t.size <= 0:
        v.append("size must be positive")
    for name, pmf in (("win_pmf", t.win_pmf), ("lose_pmf", t.lose_pmf)):
        if not pmf:
            v.append(f"{name} must be nonempty")
            continue
        if any(prob <= 0 for _, prob in pmf):
            v.append(f"{name} probabilities must be positive")
        if sum(prob for _, prob in pmf) != 1:
            v.append(f"{name} probabilities must sum to exactly 1")
    win_side, lose_side = (1, -1) if t.sign == 1 else (-1, 1)
    for p, _ in t.win_pmf:
        if (p - t.open) * win_side <= 0:
            v.append(f"winning price {p} is not strictly on the winning side of open")
        elif _between_open_and_zero(p, t.open) or p == 0:
            v.append(f"winning price {p} must be nonzero and not between open and 0")
    for p, _ in t.lose_pmf:
        if (p - t.open) * lose_side <= 0:
            v.append(f"losing price {p} is not strictly on the losing side of open")
        elif _between_open_and_zero(p, t.open) or p == 0:
            v.append(f"losing price {p} must be nonzero and not between open and 0")
    return v


def _between_open_and_zero(p: int, open_price: int) -> bool:
    return (open_price > 0 and 0 < p < open_price) or (open_price < 0 and open_price < p < 0)


def require_valid_probabilistic(t: ProbabilisticTrade) -> None:
    violations = validate_probabilistic(t)
    if violations:
        raise TradeError(f"invalid probabilistic trade {t.id!r}: " + "; ".join(violations))


def support(trades: Iterable[ProbabilisticTrade]) -> tuple[int, ...]:
    """Union of all pmf supports, sorted."""
    prices: set[int] = set()
    for t in trades:
        prices.update(t.support())
    return tuple(sorted(prices))


def expanded_id(source: str, win: int, lose: int) -> str:
    return f"{source}@{win}/{lose}"


def expand(t: ProbabilisticTrade) -> list[Trade]:
    """One deterministic trade per (win, lose) support pair.

    Sizes are weighted by the pair probability, so the expanded sizes sum back
    to the original size and deterministic profit sums equal expectations.
    """
    require_valid_probabilistic(t)
    out: list[Trade] = []
    for w, fw in t.win_pmf:
        for l, gl in t.lose_pmf:
            out.append(Trade(expanded_id(t.id, w, l), t.open, w, l, fw * gl * t.size))
    return out


def solve_metl(trades: Iterable[ProbabilisticTrade]) -> MtlSolution:
    """Optimal movement for the expected-profit objective.

    The solution is expressed over the expanded trade ids; the total equals
    the maximum expected profit of the probabilistic instance. Expansion
    yields at most n * |support|^2 deterministic trades, so with the cubic
    deterministic solver the whole thing is O((n * |support|)^3) — polynomial
    in the input as long as the pmfs are given extensionally.
    """
    source = list(trades)
    seen: set[str] = set()
    for t in source:
        require_valid_probabilistic(t)
        if t.id in seen:
            raise TradeError(f"duplicate trade id {t.id!r}")
        seen.add(t.id)
    expanded: list[Trade] = []
    for t in source:
        expanded.extend(expand(t))
    return solve_mtl(expanded)


def aggregate_by_source(solution: MtlSolution) -> dict[str, Fraction]:
    """Re-aggregate expanded per-trade profits under their source trade ids."""
    agg: dict[str, Fraction] = {}
    for ident, profit in solution.per_trade.items():
        source = ident.rsplit("@", 1)[0] if "@" in ident else ident
        agg[source] = agg.get(source, ZERO) + profit
    return agg


def _reject_float(text: str) -> Fraction:
    raise TradeError(
        f"inexact float literal {text!r} in probabilistic trade file; use a string like \"1/2\""
    )


def parse_probabilistic(text: str) -> list[ProbabilisticTrade]:
    """Parse the JSON probabilistic trade-set format (see docs/formats.md)."""
    try:
        doc = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise TradeFileError([(exc.lineno, f"invalid JSON: {exc.msg}")]) from exc
    except TradeError as exc:
        raise TradeFileError([(1, str(exc))]) from exc
    records = doc["trades"] if isinstance(doc, dict) else doc
    if not isinstance(records, list):
        raise TradeFileError([(1, "expected a list of trade records or {\"trades\": [...]}")])
    out: list[ProbabilisticTrade] = []
    problems: list[tuple[int, str]] = []
    seen: set[str] = set()
    for i, rec in enumerate(records):
        try:
            t = ProbabilisticTrade(
                id=str(rec["id"]),
                open=int(rec["open"]),
                sign=int(rec["sign"]),
                size=parse_money(rec["size"]),
                win_pmf=[(int(p), parse_money(q)) for p, q in rec["win_pmf"]],
                lose_pmf=[(int(p), parse_money(q)) for p, q in rec["lose_pmf"]],
            )
            require_valid_probabilistic(t)
            if t.id in seen:
                raise TradeError(f"duplicate trade id {t.id!r}")
            seen.add(t.id)
            out.append(t)
        except (KeyError, TypeError, ValueError) as exc:
            problems.append((i + 1, f"record {i}: {exc}"))
    if problems:
        raise TradeFileError(problems)
    return out


def format_probabilistic(trades: Iterable[ProbabilisticTrade]) -> str:
    records = []
    for t in trades:
        records.append(
            {
                "id": t.id,
                "open": t.open,
                "sign": t.sign,
                "size": money_str(t.size),
                "win_pmf": [[p, money_str(q)] for p, q in t.win_pmf],
                "lose_pmf": [[p, money_str(q)] for p, q in t.lose_pmf],
            }
        )
    return json.dumps({"trades": records}, indent=2) + "\n"
