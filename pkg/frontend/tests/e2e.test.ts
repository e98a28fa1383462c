/**
 * End-to-end: a scripted session through the client + reducer (the same code
 * path the browser uses) must reach the same final gain as the same action
 * script run directly against the Python game engine via `maxloss replay`.
 */

import { spawn, spawnSync } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { createSession, fetchLog, fetchState, observeTurns, submitTurn } from "../src/client.js";
import { initialState, reduce, replayRecords } from "../src/state.js";
import type { ViewState } from "../src/state.js";
import type { Action, TurnEvent } from "../src/types.js";

const repoRoot = fileURLToPath(new URL("../..", import.meta.url));
const port = 20000 + Math.floor(Math.random() * 20000);
const base = `http://127.0.0.1:${port}`;
let server: ReturnType<typeof spawn>;

async function serviceUp(): Promise<void> {
  for (let i = 0; i < 100; i++) {
    try {
      const r = await fetch(`${base}/sessions/probe`);
      if (r.status === 404) return;
    } catch {
      await new Promise((resolve) => setTimeout(resolve, 100));
    }
  }
  throw new Error("game service did not come up");
}

beforeAll(async () => {
  server = spawn("python3", ["-m", "maxloss.cli", "serve", "--port", String(port)], {
    cwd: repoRoot,
    stdio: "ignore",
  });
  await serviceUp();
});

afterAll(() => {
  server?.kill();
});

describe("scripted session against the live service", () => {
  it("reaches the same final gain as the engine replaying the script", async () => {
    const created = await createSession(base, 50);
    const sessionId = created.session_id;

    // fold the observe stream exactly like the browser does
    let view: ViewState = initialState(created.max_turns);
    const events: TurnEvent[] = [];
    const observer = observeTurns(base, sessionId, 0, (event) => {
      events.push(event);
      view = reduce(view, event.record);
    });

    // five turns, three trades: a wide anchor that stays open, then two
    // tight trades the broker sweeps, plus one close-at-will lock
    const turns: ((price: number) => Action[])[] = [
      (p) => [{ type: "open", id: "anchor", win: p + 8, lose: p - 8, size: "2" }],
      (p) => [{ type: "open", id: "tight1", win: p + 1, lose: p - 1, size: "3/2" }],
      () => [],
      (p) => [{ type: "open", id: "tight2", win: p - 2, lose: p + 2, size: "1" }],
      () => [{ type: "close_at_will", id: "anchor" }],
    ];

    let price = 0;
    for (const makeActions of turns) {
      const response = await submitTurn(base, sessionId, makeActions(price));
      expect(response.state.status).toBe("live");
      price = response.state.position.price;
    }

    // wait for the stream to deliver all five turns, then detach
    for (let i = 0; i < 100 && view.nextTurn < 5; i++) {
      await new Promise((resolve) => setTimeout(resolve, 50));
    }
    observer.stop();
    expect(view.nextTurn).toBe(5);

    // the view is a pure function of the events; the service agrees with it
    const state = await fetchState(base, sessionId);
    expect(view.gain).toBe(state.position.gain);
    expect(view.totalValue).toBe(state.position.total_value);
    expect(view.price).toBe(state.position.price);

    // same script, run directly against the game engine
    const log = await fetchLog(base, sessionId);
    expect(replayRecords(log.turns, log.max_turns)).toEqual(view);
    const logPath = join(mkdtempSync(join(tmpdir(), "maxloss-e2e-")), "game.json");
    writeFileSync(logPath, JSON.stringify(log));
    const replay = spawnSync(
      "python3",
      ["-m", "maxloss.cli", "replay", logPath, "--json"],
      { cwd: repoRoot, encoding: "utf8" },
    );
    expect(replay.status, replay.stderr).toBe(0);
    const engine = JSON.parse(replay.stdout);
    expect(engine.ok).toBe(true);
    expect(engine.final_gain).toBe(view.gain);
    expect(engine.turns).toBe(5);

    // at least one of the tight trades was swept and banked by the broker
    const closedIds = log.turns.flatMap((t) => t.closed.map((c) => c.id));
    expect(closedIds.length).toBeGreaterThan(0);
  });

  it("rejects invalid turns atomically and the view state is unaffected", async () => {
    const created = await createSession(base, 50);
    const sessionId = created.session_id;
    await submitTurn(base, sessionId, [
      { type: "open", id: "a", win: 5, lose: -5, size: "1" },
    ]);
    await expect(
      submitTurn(base, sessionId, [
        { type: "open", id: "b", win: 9, lose: -9, size: "1" },
        { type: "open", id: "a", win: 7, lose: -7, size: "1" },
      ]),
    ).rejects.toThrow(/duplicate/);
    const state = await fetchState(base, sessionId);
    expect(state.turns_played).toBe(1);
    expect(state.position.open_trades.map((t) => t.id)).toEqual(["a"]);
  });
});
