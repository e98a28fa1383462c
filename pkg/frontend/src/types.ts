/** Wire types mirroring the service payloads (docs/service-api.md). */

export interface OpenAction {
  type: "open";
  id: string;
  win: number;
  lose: number;
  size: string;
}

export interface CloseAtWillAction {
  type: "close_at_will";
  id: string;
}

export type Action = OpenAction | CloseAtWillAction;

export interface WireTrade {
  id: string;
  open: number;
  win: number;
  lose: number;
  size: string;
}

export interface Closure {
  id: string;
  price: number;
  value: string;
}

/** One replay-log entry; also the `record` half of an SSE event. */
export interface TurnRecord {
  turn: number;
  actions: Action[];
  direction: 1 | -1;
  opened: WireTrade[];
  closed: Closure[];
  price: number;
  gain: string;
  total_value: string;
}

export interface OpenTradeView extends WireTrade {
  value: string;
}

export interface Position {
  price: number;
  turn: number;
  gain: string;
  value: string;
  total_value: string;
  open_trades: OpenTradeView[];
}

export type Status = "live" | "ended-broker" | "ended-trader" | "truncated";

export interface SessionState {
  session_id: string;
  status: Status;
  turns_played: number;
  max_turns: number;
  position: Position;
}

export interface TurnEvent {
  record: TurnRecord;
  state: SessionState;
}

export interface ReplayLog {
  max_turns: number;
  status: Status;
  final_gain: string;
  turns: TurnRecord[];
}
