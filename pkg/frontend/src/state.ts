/**
 * View state as a pure fold over turn records.
 *
 * Replaying the same event log always rebuilds the identical state, so the
 * UI can recover from any stream hiccup by resubscribing from turn 0 (or the
 * last turn it trusts) and folding again.
 */

import { add, cmp, fracStr, fromInt, mul, parseFrac, sub, ZERO } from "./fraction.js";
import type { Frac } from "./fraction.js";
import type { Status, TurnRecord, WireTrade } from "./types.js";

export interface TradeRow {
  id: string;
  open: number;
  win: number;
  lose: number;
  size: string;
  openedTurn: number;
  /** live mark-to-market value (fraction string), refreshed every turn */
  value: string;
  closedTurn: number | null;
  closedPrice: number | null;
  closedValue: string | null;
}

export interface ViewState {
  /** next turn index the state expects to fold */
  nextTurn: number;
  price: number;
  gain: string;
  totalValue: string;
  /** price after each completed turn; index 0 is the starting price 0 */
  pricePath: number[];
  trades: TradeRow[];
  status: Status;
  banner: string | null;
  log: string[];
  maxTurns: number;
}

export function initialState(maxTurns: number): ViewState {
  return {
    nextTurn: 0,
    price: 0,
    gain: "0",
    totalValue: "0",
    pricePath: [0],
    trades: [],
    status: "live",
    banner: null,
    log: [],
    maxTurns,
  };
}

export class OutOfOrderEvent extends Error {
  constructor(readonly expected: number, readonly got: number) {
    super(`expected turn ${expected}, got ${got}; resync from ${expected}`);
  }
}

function tradeValue(t: WireTrade, price: number): Frac {
  const sign = t.win > t.open ? 1 : -1;
  return mul(fromInt(sign * (price - t.open)), parseFrac(t.size));
}

function describe(record: TurnRecord): string {
  const bits: string[] = [];
  for (const action of record.actions) {
    bits.push(action.type === "open" ? `open ${action.id}` : `lock ${action.id}`);
  }
  bits.push(record.direction === 1 ? `price up to ${record.price}` : `price down to ${record.price}`);
  for (const c of record.closed) {
    bits.push(`${c.id} closed at ${c.price} for ${c.value}`);
  }
  return `turn ${record.turn}: ${bits.join(", ")}`;
}

/** Fold one turn record into the view state. Pure: inputs are not mutated. */
export function reduce(state: ViewState, record: TurnRecord): ViewState {
  if (record.turn !== state.nextTurn) {
    throw new OutOfOrderEvent(state.nextTurn, record.turn);
  }
  const closedById = new Map(record.closed.map((c) => [c.id, c]));
  const trades: TradeRow[] = state.trades.map((row) => {
    if (row.closedTurn !== null) return row;
    const closure = closedById.get(row.id);
    if (closure) {
      return {
        ...row,
        value: closure.value,
        closedTurn: record.turn,
        closedPrice: closure.price,
        closedValue: closure.value,
      };
    }
    return { ...row, value: fracStr(tradeValue(row, record.price)) };
  });
  for (const opened of record.opened) {
    const closure = closedById.get(opened.id);
    trades.push({
      ...opened,
      openedTurn: record.turn,
      value: closure ? closure.value : fracStr(tradeValue(opened, record.price)),
      closedTurn: closure ? record.turn : null,
      closedPrice: closure ? closure.price : null,
      closedValue: closure ? closure.value : null,
    });
  }

  const openCount = trades.filter((t) => t.closedTurn === null).length;
  const gain = parseFrac(record.gain);
  let status: Status = "live";
  if (openCount === 0) {
    status = cmp(gain, ZERO) < 0 ? "ended-trader" : "ended-broker";
  } else if (record.turn + 1 >= state.maxTurns) {
    status = "truncated";
  }
  const banner =
    status === "truncated"
      ? "game truncated — trader does not win"
      : status === "ended-broker"
        ? `game over — broker keeps ${record.gain}`
        : status === "ended-trader"
          ? `game over — trader wins ${fracStr(sub(ZERO, gain))}`
          : null;

  return {
    nextTurn: record.turn + 1,
    price: record.price,
    gain: record.gain,
    totalValue: record.total_value,
    pricePath: [...state.pricePath, record.price],
    trades,
    status,
    banner,
    log: [...state.log, describe(record)],
    maxTurns: state.maxTurns,
  };
}

/** Fold a whole record list, e.g. a replay log or a stream backlog. */
export function replayRecords(records: TurnRecord[], maxTurns: number): ViewState {
  let state = initialState(maxTurns);
  for (const record of records) {
    state = reduce(state, record);
  }
  return state;
}

/** Consistency checks the UI relies on; used by tests and debug builds. */
export function totalValueIsMonotone(records: TurnRecord[]): boolean {
  let previous = ZERO;
  for (const record of records) {
    const total = parseFrac(record.total_value);
    if (cmp(total, previous) < 0) return false;
    previous = total;
  }
  return true;
}

/** Local mirror of the service-side action validation, for inline errors. */
export function validateOpenInput(price: number, win: number, lose: number, size: string): string | null {
  if (!Number.isInteger(win) || !Number.isInteger(lose)) return "bounds must be integers";
  if (!((win > price && lose < price) || (win < price && lose > price))) {
    return `win and lose must lie strictly on opposite sides of the current price ${price}`;
  }
  try {
    if (cmp(parseFrac(size), ZERO) <= 0) return "size must be positive";
  } catch {
    return "size must be a number like 2, 0.5 or 3/2";
  }
  return null;
}
