"""HTTP service exposing game sessions to interactive clients.

Turns are request/response (the broker answers inside the same request);
observers get an ordered, gap-free server-sent-event stream of turn records
with resume-from-turn support. All money values travel as fraction strings.
Payload schemas are documented field by field in docs/service-api.md.
"""

from __future__ import annotations

import json
import queue
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse, StreamingResponse

from .game import (
    DEFAULT_MAX_TURNS,
    Game,
    GameError,
    GamePosition,
    action_from_json,
    game_log,
    record_to_json,
    trade_value,
)
from .trades import money_str

SSE_KEEPALIVE_SECONDS = 15.0


def position_json(pos: GamePosition) -> dict:
    return {
        "price": pos.price,
        "turn": pos.turn,
        "gain": money_str(pos.gain),
        "value": money_str(pos.value),
        "total_value": money_str(pos.total_value),
        "open_trades": [
            {
                "id": t.id,
                "open": t.open,
                "win": t.win,
                "lose": t.lose,
                "size": money_str(t.size),
                "value": money_str(trade_value(t, pos.price)),
            }
            for t in pos.trades
        ],
    }


@dataclass
class Session:
    id: str
    game: Game
    lock: threading.Lock = field(default_factory=threading.Lock)
    observers: list[queue.SimpleQueue] = field(default_factory=list)
    events: list[dict] = field(default_factory=list)

    def state_json(self) -> dict:
        return {
            "session_id": self.id,
            "status": self.game.status,
            "turns_played": len(self.game.records),
            "max_turns": self.game.max_turns,
            "position": position_json(self.game.position),
        }


def create_app(log_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="maxloss game service")
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    def get_session(session_id: str) -> Session:
        with registry_lock:
            session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
        return session

    def persist(session: Session) -> None:
        if log_dir is None:
            return
        log_dir.mkdir(parents=True, exist_ok=True)
        (log_dir / f"{session.id}.json").write_text(
            json.dumps(game_log(session.game), indent=2) + "\n"
        )

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request) -> dict:
        body = await request.body()
        doc = json.loads(body) if body else {}
        max_turns = int(doc.get("max_turns", DEFAULT_MAX_TURNS))
        if max_turns < 1:
            raise HTTPException(status_code=422, detail="max_turns must be at least 1")
        session = Session(id=uuid.uuid4().hex, game=Game(max_turns=max_turns))
        with registry_lock:
            sessions[session.id] = session
        return session.state_json()

    @app.get("/sessions/{session_id}")
    def fetch_state(session_id: str) -> dict:
        return get_session(session_id).state_json()

    @app.get("/sessions/{session_id}/log")
    def fetch_log(session_id: str) -> dict:
        session = get_session(session_id)
        with session.lock:
            return game_log(session.game)

    @app.post("/sessions/{session_id}/turns")
    async def submit_turn(session_id: str, request: Request) -> dict:
        session = get_session(session_id)
        doc = json.loads(await request.body() or b"{}")
        try:
            actions = [action_from_json(a) for a in doc.get("actions", [])]
        except (GameError, ValueError, KeyError, TypeError) as exc:
            raise HTTPException(status_code=422, detail=f"bad action: {exc}")
        with session.lock:
            if session.game.ended:
                return JSONResponse(
                    status_code=409,
                    content={"detail": f"game over ({session.game.status})"},
                )
            try:
                record = session.game.play_turn(actions)
            except GameError as exc:
                # turn rejected atomically; the position is unchanged
                raise HTTPException(status_code=422, detail=str(exc))
            event = {
                "record": record_to_json(record),
                "state": session.state_json(),
            }
            session.events.append(event)
            for q in list(session.observers):
                q.put(event)
            persist(session)
            return {"turn": event["record"], "state": event["state"]}

    @app.get("/sessions/{session_id}/events")
    def observe(session_id: str, request: Request, from_turn: int = 0, follow: bool = True):
        session = get_session(session_id)
        last_event_id = request.headers.get("last-event-id")
        if last_event_id is not None:
            from_turn = int(last_event_id) + 1

        def sse(event: dict) -> str:
            turn = event["record"]["turn"]
            return f"id: {turn}\nevent: turn\ndata: {json.dumps(event)}\n\n"

        def stream():
            q: queue.SimpleQueue = queue.SimpleQueue()
            with session.lock:
                backlog = list(session.events)
                live = not session.game.ended
                if follow and live:
                    session.observers.append(q)
            try:
                for event in backlog:
                    if event["record"]["turn"] >= from_turn:
                        yield sse(event)
                if not (follow and live):
                    return
                while True:
                    try:
                        event = q.get(timeout=SSE_KEEPALIVE_SECONDS)
                    except queue.Empty:
                        yield ": keepalive\n\n"
                        continue
                    yield sse(event)
                    if event["state"]["status"] != "live":
                        return
            finally:
                with session.lock:
                    if q in session.observers:
                        session.observers.remove(q)

        return StreamingResponse(stream(), media_type="text/event-stream")

    return app


app = create_app()
