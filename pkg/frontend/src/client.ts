/**
 * Session client: REST for turns, fetch-based SSE reader for observation.
 *
 * The stream reader works in both browsers and node, resumes from the last
 * seen turn on disconnect, and guarantees in-order delivery to the callback.
 */

import type { Action, ReplayLog, SessionState, TurnEvent } from "./types.js";

export class ServiceError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
  }
}

async function expectJson(response: Response): Promise<any> {
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    throw new ServiceError(response.status, body.detail ?? response.statusText);
  }
  return body;
}

export async function createSession(base: string, maxTurns?: number): Promise<SessionState> {
  const response = await fetch(`${base}/sessions`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(maxTurns === undefined ? {} : { max_turns: maxTurns }),
  });
  return expectJson(response);
}

export async function fetchState(base: string, sessionId: string): Promise<SessionState> {
  return expectJson(await fetch(`${base}/sessions/${sessionId}`));
}

export async function fetchLog(base: string, sessionId: string): Promise<ReplayLog> {
  return expectJson(await fetch(`${base}/sessions/${sessionId}/log`));
}

export async function submitTurn(
  base: string,
  sessionId: string,
  actions: Action[],
): Promise<{ turn: TurnEvent["record"]; state: SessionState }> {
  const response = await fetch(`${base}/sessions/${sessionId}/turns`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ actions }),
  });
  return expectJson(response);
}

export interface ObserverHandle {
  stop(): void;
  done: Promise<void>;
}

/**
 * Subscribe to the session's turn events from a given turn. Events arrive
 * strictly in turn order; on transport errors the reader reconnects with
 * resume-from-turn so no event is skipped or duplicated.
 */
export function observeTurns(
  base: string,
  sessionId: string,
  fromTurn: number,
  onEvent: (event: TurnEvent) => void,
  options: { follow?: boolean } = {},
): ObserverHandle {
  const follow = options.follow ?? true;
  let nextTurn = fromTurn;
  let stopped = false;
  const controller = () => new AbortController();
  let current = controller();

  const done = (async () => {
    while (!stopped) {
      current = controller();
      try {
        const response = await fetch(
          `${base}/sessions/${sessionId}/events?from_turn=${nextTurn}&follow=${follow}`,
          { signal: current.signal, headers: { accept: "text/event-stream" } },
        );
        if (!response.ok || !response.body) {
          throw new ServiceError(response.status, "stream unavailable");
        }
        const reader = response.body.getReader();
        const decoder = new TextDecoder();
        let buffer = "";
        let sawEnd = false;
        for (;;) {
          const { value, done: eof } = await reader.read();
          if (eof) break;
          buffer += decoder.decode(value, { stream: true });
          let cut;
          while ((cut = buffer.indexOf("\n\n")) >= 0) {
            const block = buffer.slice(0, cut);
            buffer = buffer.slice(cut + 2);
            const dataLine = block.split("\n").find((l) => l.startsWith("data: "));
            if (!dataLine) continue; // keepalive comment
            const event: TurnEvent = JSON.parse(dataLine.slice("data: ".length));
            if (event.record.turn < nextTurn) continue; // duplicate after resume
            onEvent(event);
            nextTurn = event.record.turn + 1;
            if (event.state.status !== "live") sawEnd = true;
          }
        }
        if (!follow || sawEnd) return;
        // stream closed while the game is live: reconnect and resume
      } catch (err) {
        if (stopped) return;
      }
      await new Promise((resolve) => setTimeout(resolve, 250));
    }
  })();

  return {
    stop() {
      stopped = true;
      current.abort();
    },
    done,
  };
}
