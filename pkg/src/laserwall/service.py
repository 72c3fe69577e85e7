"""HTTP session service exposing the layout environment to interactive clients.

Sessions are in-memory, one live episode each, with per-session request
serialization. Action names on the wire are strings ("move_ne",
"rotate_whole_cw", ...), not indices. An optional snapshot file persists
session configs and step logs across restarts by replaying them.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from contextlib import asynccontextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .env import EnvConfig, LayoutEnv, RewardBreakdown, make_env_config
from .errors import EpisodeFinished, ValidationError
from .geometry import TRANSFORMATION_BY_NAME, TRANSFORMATIONS
from .metrics import LayoutMetrics
from .planning import LIVING_ROOM
from .scenarios import builtin_scenarios


def _error(status: int, code: str, detail: str) -> HTTPException:
    return HTTPException(status_code=status,
                         detail={"error": code, "detail": detail})


@dataclass
class Session:
    id: str
    env: LayoutEnv
    lock: threading.Lock = field(default_factory=threading.Lock)
    created_at: float = field(default_factory=time.time)
    last_seed: Optional[int] = None
    action_log: list[int] = field(default_factory=list)
    last_reward: Optional[RewardBreakdown] = None
    last_outcome: str = "ok"


class CreateSessionRequest(BaseModel):
    scenario: int = 1
    light_mode: str = "off"
    infiltration: str = "fixed"
    horizon: Optional[int] = None
    wall_types: str = "both"
    max_steps: int = 200
    observation: str = "label_grid"
    seed: Optional[int] = None


class StepRequest(BaseModel):
    wall_id: int
    transformation: str


class ResetRequest(BaseModel):
    seed: Optional[int] = None


def _connection_checklist(metrics: LayoutMetrics, n_rooms: int) -> list[dict]:
    adjacency = metrics.adjacency_graph
    rows = []
    for room in range(1, n_rooms):
        pair = (min(LIVING_ROOM, room), max(LIVING_ROOM, room))
        rows.append({"kind": "living", "room": room,
                     "satisfied": pair in adjacency})
    for room in range(n_rooms):
        has_facade = room < len(metrics.facade_access) and metrics.facade_access[room]
        rows.append({"kind": "facade", "room": room,
                     "satisfied": bool(has_facade)})
    return rows


def _state_payload(session: Session) -> dict:
    env = session.env
    state = env.state
    metrics = env.metrics()
    n_rooms = env.config.scenario.n_rooms
    checklist = _connection_checklist(metrics, n_rooms)
    reward = session.last_reward
    mask = env.action_mask() if not env.done else None
    return {
        "session_id": session.id,
        "scenario": env.config.scenario.to_dict(),
        "rooms": state.room_label_grid().tolist(),
        "structure": env.structure_grid().tolist(),
        "walls": [w.to_dict() for w in state.walls],
        "metrics": metrics.to_dict(),
        "closeness": env.last_closeness,
        "connections": checklist,
        "satisfied_connections": [c for c in checklist if c["satisfied"]],
        "missed_connections": [c for c in checklist if not c["satisfied"]],
        "reward": reward.to_dict() if reward is not None else None,
        "outcome": session.last_outcome,
        "action_mask": mask.tolist() if mask is not None else None,
        "transformation_names": [t.value for t in TRANSFORMATIONS],
        "terminated": env.terminated,
        "truncated": env.truncated,
        "steps": env.steps,
        "seed": session.last_seed,
    }


def _legal_actions(env: LayoutEnv) -> list[dict]:
    mask = env.action_mask()
    out = []
    for index in range(env.action_count):
        if mask[index]:
            wall_id, t_ix = divmod(index, len(TRANSFORMATIONS))
            out.append({"action_index": index, "wall_id": wall_id,
                        "transformation": TRANSFORMATIONS[t_ix].value})
    return out


class SessionStore:
    def __init__(self, snapshot_path: Optional[Path] = None):
        self.sessions: dict[str, Session] = {}
        self.lock = threading.Lock()
        self.snapshot_path = snapshot_path

    def get(self, session_id: str) -> Session:
        with self.lock:
            session = self.sessions.get(session_id)
        if session is None:
            raise _error(404, "unknown_session",
                         f"no session with id {session_id!r}")
        return session

    def create(self, config: EnvConfig, seed: Optional[int]) -> Session:
        env = LayoutEnv(config)
        env.reset(seed=seed)
        session = Session(id=uuid.uuid4().hex, env=env, last_seed=env.episode_seed)
        with self.lock:
            self.sessions[session.id] = session
        return session

    def remove(self, session_id: str) -> None:
        with self.lock:
            if session_id not in self.sessions:
                raise _error(404, "unknown_session",
                             f"no session with id {session_id!r}")
            del self.sessions[session_id]

    def snapshot(self) -> None:
        if self.snapshot_path is None:
            return
        with self.lock:
            doc = {
                sid: {
                    "config": s.env.config.to_dict(),
                    "seed": s.last_seed,
                    "actions": list(s.action_log),
                    "created_at": s.created_at,
                }
                for sid, s in self.sessions.items()
            }
        self.snapshot_path.write_text(json.dumps(doc, indent=2) + "\n")

    def restore(self) -> int:
        if self.snapshot_path is None or not self.snapshot_path.exists():
            return 0
        doc = json.loads(self.snapshot_path.read_text())
        count = 0
        for sid, entry in doc.items():
            env = LayoutEnv(EnvConfig.from_dict(entry["config"]))
            env.reset(seed=entry["seed"])
            session = Session(id=sid, env=env, last_seed=entry["seed"],
                              created_at=entry.get("created_at", time.time()))
            for action in entry["actions"]:
                if env.done:
                    break
                env.step(action)
                session.action_log.append(action)
            with self.lock:
                self.sessions[sid] = session
            count += 1
        return count


def create_app(snapshot_path: Optional[str] = None) -> FastAPI:
    store = SessionStore(Path(snapshot_path) if snapshot_path else None)

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        store.restore()
        yield
        store.snapshot()

    app = FastAPI(title="laserwall layout service", lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.store = store

    @app.get("/scenarios")
    def list_scenarios() -> list[dict]:
        return [sc.to_dict() for sc in builtin_scenarios()]

    @app.post("/sessions", status_code=201)
    def create_session(req: CreateSessionRequest) -> dict:
        try:
            config = make_env_config(
                scenario=req.scenario, light_mode=req.light_mode,
                infiltration=req.infiltration, horizon=req.horizon,
                wall_types=req.wall_types, max_steps=req.max_steps,
                observation=req.observation, seed=req.seed)
        except (ValidationError, KeyError, ValueError) as exc:
            raise _error(422, "bad_config", str(exc))
        session = store.create(config, req.seed)
        with session.lock:
            return _state_payload(session)

    @app.get("/sessions/{session_id}/state")
    def get_state(session_id: str) -> dict:
        session = store.get(session_id)
        with session.lock:
            return _state_payload(session)

    @app.get("/sessions/{session_id}/actions")
    def get_actions(session_id: str) -> dict:
        session = store.get(session_id)
        with session.lock:
            if session.env.done:
                return {"session_id": session_id, "actions": []}
            return {"session_id": session_id,
                    "actions": _legal_actions(session.env)}

    @app.post("/sessions/{session_id}/step")
    def step(session_id: str, req: StepRequest) -> dict:
        session = store.get(session_id)
        transformation = TRANSFORMATION_BY_NAME.get(req.transformation)
        if transformation is None:
            raise _error(422, "unknown_transformation",
                         f"no transformation named {req.transformation!r}")
        with session.lock:
            env = session.env
            if not (0 <= req.wall_id < env.config.scenario.n_walls):
                raise _error(422, "unknown_wall",
                             f"wall id {req.wall_id} out of range")
            if env.done:
                raise _error(409, "episode_finished",
                             "episode already terminated or truncated")
            action = env.encode_action(req.wall_id, transformation)
            _obs, _reward, _term, _trunc, info = env.step(action)
            session.action_log.append(action)
            session.last_reward = env.last_breakdown
            session.last_outcome = info["outcome"] or "ok"
            return _state_payload(session)

    @app.post("/sessions/{session_id}/reset")
    def reset(session_id: str, req: ResetRequest) -> dict:
        session = store.get(session_id)
        with session.lock:
            session.env.reset(seed=req.seed)
            session.last_seed = session.env.episode_seed
            session.action_log.clear()
            session.last_reward = None
            session.last_outcome = "ok"
            return _state_payload(session)

    @app.delete("/sessions/{session_id}", status_code=204)
    def delete(session_id: str) -> None:
        store.remove(session_id)

    return app
