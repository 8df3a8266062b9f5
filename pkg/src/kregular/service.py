"""HTTP facade: play against an engine over a small JSON API.

POST /api/games             {k, n, engine, ell?, human_first} -> {game_id}
GET  /api/games/{id}        -> full snapshot
POST /api/games/{id}/moves  {u, v} -> {accepted, reason?, engine_move?, snapshot}
DELETE /api/games/{id}

The server is authoritative: every snapshot carries everything a client
needs (edges, deficits, component types, planarity, condition T, whose
turn), so clients never evaluate rules.  The human plays seat A when
human_first is true, otherwise seat B with the engine opening.
"""

from __future__ import annotations

import threading
import uuid
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.responses import FileResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .classify import TypeKind, check_condition_T
from .errors import GameError, IllegalMove, InvalidConfig
from .game import GameConfig, GameState, Move, apply_move, is_over, new_game
from .planarity import is_planar
from .strategies import STRATEGY_NAMES, make_player

MAX_INTERACTIVE_N = 2000


class CreateGameRequest(BaseModel):
    k: int = Field(ge=1, le=8)
    n: int = Field(ge=2, le=MAX_INTERACTIVE_N)
    engine: str
    ell: Optional[int] = Field(default=None, ge=2, le=8)
    human_first: bool = True
    seed: int = Field(default=0, ge=0)


class CreateGameResponse(BaseModel):
    game_id: str


class ComponentSnapshot(BaseModel):
    vertices: list[int]
    type: str
    deficit: int


class Snapshot(BaseModel):
    edges: list[tuple[int, int]]
    deficits: list[int]
    components: list[ComponentSnapshot]
    planar: bool
    condition_t: bool
    over: bool
    mover: str


class MoveRequest(BaseModel):
    u: int
    v: int


class MoveResponse(BaseModel):
    accepted: bool
    reason: Optional[str] = None
    engine_move: Optional[tuple[int, int]] = None
    snapshot: Snapshot


class _Session:
    def __init__(self, req: CreateGameRequest):
        human_seat = "A" if req.human_first else "B"
        engine_seat = "B" if req.human_first else "A"
        config = GameConfig(n=req.n, k=req.k, first_player="A", seed=req.seed)
        self.lock = threading.Lock()
        self.config = config
        self.human_seat = human_seat
        self.engine_seat = engine_seat
        self.engine = make_player(req.engine, engine_seat, config, ell=req.ell)
        self.state: GameState = new_game(config)
        self.last_human_move: Optional[Move] = None
        if engine_seat == "A":
            self._engine_reply()

    def _engine_reply(self) -> Optional[tuple[int, int]]:
        if is_over(self.state) or self.state.mover != self.engine_seat:
            return None
        mv = self.engine.move(self.state, self.last_human_move)
        self.state = apply_move(self.state, mv)
        return (mv.u, mv.v)

    def snapshot(self) -> Snapshot:
        state = self.state
        report = check_condition_T(state)
        comps = []
        for entry in report.per_component:
            kind = entry.classification.kind
            comps.append(
                ComponentSnapshot(
                    vertices=list(entry.vertices),
                    type="-" if kind is TypeKind.UNCLASSIFIED else kind.value,
                    deficit=entry.deficit,
                )
            )
        return Snapshot(
            edges=[tuple(e) for e in state.edges],
            deficits=[state.k - state.degree(v) for v in range(state.n)],
            components=comps,
            planar=is_planar(state.edges, state.n),
            condition_t=report.holds,
            over=is_over(state),
            mover=state.mover,
        )

    def play_human(self, u: int, v: int) -> MoveResponse:
        state = self.state
        if is_over(state):
            return MoveResponse(accepted=False, reason="game over", snapshot=self.snapshot())
        if state.mover != self.human_seat:
            return MoveResponse(accepted=False, reason="not your turn", snapshot=self.snapshot())
        try:
            mv = Move(u, v, self.human_seat)
            self.state = apply_move(state, mv)
        except IllegalMove as exc:
            return MoveResponse(accepted=False, reason=exc.reason, snapshot=self.snapshot())
        self.last_human_move = mv
        engine_move = self._engine_reply()
        return MoveResponse(accepted=True, engine_move=engine_move, snapshot=self.snapshot())


def create_app(static_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="k-regular graph game", version="0.1.0")
    games: dict[str, _Session] = {}

    @app.post("/api/games", response_model=CreateGameResponse)
    def create_game(req: CreateGameRequest):
        if req.engine not in STRATEGY_NAMES:
            raise HTTPException(422, f"unknown engine {req.engine!r}")
        try:
            session = _Session(req)
        except (InvalidConfig, GameError) as exc:
            raise HTTPException(422, str(exc))
        game_id = uuid.uuid4().hex[:12]
        games[game_id] = session
        return CreateGameResponse(game_id=game_id)

    def _session(game_id: str) -> _Session:
        session = games.get(game_id)
        if session is None:
            raise HTTPException(404, "no such game")
        return session

    @app.get("/api/games/{game_id}", response_model=Snapshot)
    def get_game(game_id: str):
        session = _session(game_id)
        with session.lock:
            return session.snapshot()

    @app.post("/api/games/{game_id}/moves", response_model=MoveResponse)
    def post_move(game_id: str, req: MoveRequest):
        session = _session(game_id)
        with session.lock:
            return session.play_human(req.u, req.v)

    @app.delete("/api/games/{game_id}", status_code=204)
    def delete_game(game_id: str):
        if game_id not in games:
            raise HTTPException(404, "no such game")
        del games[game_id]

    root = Path(static_dir) if static_dir else None
    if root and root.is_dir():
        app.mount("/assets", StaticFiles(directory=str(root)), name="assets")

        @app.get("/", include_in_schema=False)
        def index():
            return FileResponse(str(root / "index.html"))

    return app
