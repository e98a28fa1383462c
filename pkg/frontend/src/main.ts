/**
 * Session wiring: create (or rejoin) a session, fold the event stream into
 * the view state, and submit turns from the form. Turns are explicit — the
 * broker only answers when "Pass / submit turn" is pressed.
 */

import { createSession, observeTurns, submitTurn } from "./client.js";
import { initialState, OutOfOrderEvent, reduce, validateOpenInput } from "./state.js";
import type { ViewState } from "./state.js";
import { render, renderQueued, showFormError } from "./render.js";
import type { Action } from "./types.js";

const base = (window as any).MAXLOSS_SERVICE_URL ?? "http://127.0.0.1:8000";

let state: ViewState;
let sessionId: string;
let queued: Action[] = [];
let openCounter = 0;

function input(id: string): HTMLInputElement {
  return document.getElementById(id) as HTMLInputElement;
}

function subscribe(fromTurn: number): void {
  observeTurns(base, sessionId, fromTurn, (event) => {
    try {
      state = reduce(state, event.record);
    } catch (err) {
      if (err instanceof OutOfOrderEvent) {
        // rebuild from scratch; the stream is gap-free from turn 0
        state = initialState(state.maxTurns);
        subscribe(0);
        return;
      }
      throw err;
    }
    render(state);
  });
}

function queueOpen(): void {
  const win = Number(input("win").value);
  const lose = Number(input("lose").value);
  const size = input("size").value || "1";
  const problem = validateOpenInput(state.price, win, lose, size);
  showFormError(problem);
  if (problem) return;
  openCounter += 1;
  queued.push({ type: "open", id: `w${openCounter}`, win, lose, size });
  renderQueued(queued.map((a) => ({ label: describeAction(a) })));
}

function describeAction(a: Action): string {
  return a.type === "open" ? `open ${a.id}: win@${a.win} lose@${a.lose} × ${a.size}` : `lock ${a.id}`;
}

async function submit(): Promise<void> {
  const actions = queued;
  queued = [];
  renderQueued([]);
  try {
    await submitTurn(base, sessionId, actions);
    showFormError(null);
  } catch (err) {
    queued = actions; // keep the rejected turn editable
    renderQueued(queued.map((a) => ({ label: describeAction(a) })));
    showFormError(String((err as Error).message));
  }
}

async function start(): Promise<void> {
  const created = await createSession(base);
  sessionId = created.session_id;
  state = initialState(created.max_turns);
  render(state);
  subscribe(0);

  document.getElementById("queue-open")!.addEventListener("click", queueOpen);
  document.getElementById("submit-turn")!.addEventListener("click", () => void submit());
  document.body.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const lockId = target.dataset?.lock;
    if (lockId) {
      queued.push({ type: "close_at_will", id: lockId });
      renderQueued(queued.map((a) => ({ label: describeAction(a) })));
    }
  });
}

void start();
