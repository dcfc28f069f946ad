"""Websocket bridge: streams simulation frames and accepts robot commands.

Wire protocol (UTF-8 JSON text frames, one message per frame):

  server -> client
    {"type": "hello", "doc": {...full scene document...}}
    {"type": "frame", "t": 1.25, "poses": [[id, [16 floats]], ...],
     "configs": [[robot_id, [q...]], ...]}
    {"type": "ack", "id": N, "ok": true}
    {"type": "error", "id": N, "message": "..."}

  client -> server (every request carries a client-assigned integer "id")
    {"type": "set_config", "id": N, "robot": rid, "q": [...]}
    {"type": "move_to_pose", "id": N, "robot": rid, "space": "joint"|"task",
     "target": [q...] | [16 floats]}
    {"type": "play", "id": N} / {"type": "pause", "id": N}
    {"type": "seek", "id": N, "t": 2.0}

Each request is answered with exactly one ack or error. A single asyncio
loop owns all mutable state; websocket sessions feed it commands in arrival
order and receive broadcast frames. While paused no periodic frames are
sent, but every applied command (and every tick of an in-flight motion)
emits one frame so clients observe the change. A robot that has been
commanded stops following its timeline tracks until the next seek.
"""

from __future__ import annotations

import asyncio
import contextlib
import json
import math
import threading
from dataclasses import dataclass, field

import numpy as np
from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import HTMLResponse, Response

from .errors import KinesimError
from .kinematics import IkParams, RobotModel
from .linalg import check_htm
from .scene import CONFIG_TRACK, POSE_TRACK, SceneDocument
from .serialization import export_html, to_json

MOVE_DURATION = 2.0  # s, fixed linear configuration interpolation
DEFAULT_FRAME_RATE = 20.0


@dataclass
class Motion:
    q_from: np.ndarray
    q_to: np.ndarray
    elapsed: float = 0.0
    duration: float = MOVE_DURATION


@dataclass
class LiveState:
    doc: SceneDocument
    robots: dict[str, RobotModel]
    t: float = 0.0
    playing: bool = True
    motions: dict[str, Motion] = field(default_factory=dict)
    live_driven: set[str] = field(default_factory=set)
    dirty: bool = False


def make_state(doc: SceneDocument, playing: bool = True) -> LiveState:
    robots = {rid: visual.model.copy() for rid, visual in doc.robots.items()}
    return LiveState(doc=doc, robots=robots, playing=playing)


def _reply_ack(req_id) -> dict:
    return {"type": "ack", "id": req_id, "ok": True}


def _reply_error(req_id, message: str) -> dict:
    return {"type": "error", "id": req_id, "message": message}


def handle(state: LiveState, msg: dict) -> list[dict]:
    """Apply one client message to the state; returns the replies it earns.

    Exactly one ack or error per request. Invalid messages never mutate state.
    """
    if not isinstance(msg, dict):
        return [_reply_error(None, "message must be a JSON object")]
    req_id = msg.get("id")
    if req_id is None:
        return [_reply_error(None, "request is missing its id")]
    kind = msg.get("type")
    try:
        if kind == "set_config":
            model = _robot_of(state, msg)
            q = model._check_q(msg.get("q"))
            model.set_config(q)
            state.motions.pop(msg["robot"], None)
            state.live_driven.add(msg["robot"])
        elif kind == "move_to_pose":
            rid = msg.get("robot")
            model = _robot_of(state, msg)
            space = msg.get("space")
            if space == "joint":
                q_to = model._check_q(msg.get("target"))
            elif space == "task":
                target = np.asarray(msg.get("target"), dtype=np.float64)
                if target.size != 16:
                    raise ValueError("task-space target must be 16 floats (row-major pose)")
                q_to = model.ikm(check_htm(target.reshape(4, 4)), params=IkParams())
            else:
                raise ValueError(f"unknown space {space!r}")
            state.motions[rid] = Motion(q_from=model.q.copy(), q_to=q_to)
            state.live_driven.add(rid)
        elif kind == "play":
            state.playing = True
        elif kind == "pause":
            state.playing = False
        elif kind == "seek":
            t = msg.get("t")
            if not isinstance(t, (int, float)) or isinstance(t, bool) or not math.isfinite(t):
                raise ValueError("seek needs a finite t")
            state.t = min(max(float(t), 0.0), state.doc.duration)
            state.motions.clear()
            state.live_driven.clear()
        else:
            raise ValueError(f"unknown message type {kind!r}")
    except (KinesimError, ValueError, TypeError) as exc:
        return [_reply_error(req_id, str(exc))]
    state.dirty = True
    return [_reply_ack(req_id)]


def _robot_of(state: LiveState, msg: dict) -> RobotModel:
    rid = msg.get("robot")
    if rid not in state.robots:
        raise ValueError(f"unknown robot id {rid!r}")
    return state.robots[rid]


def advance(state: LiveState, period: float) -> bool:
    """Advance playback time and in-flight motions by one frame period.

    Returns True when a frame should be broadcast. A state dirtied by a
    command is broadcast verbatim first (so e.g. the first post-seek frame
    carries exactly the seek target); playback resumes on the next tick.
    """
    if state.dirty:
        state.dirty = False
        return True
    changed = False
    if state.playing:
        state.t = min(state.t + period, state.doc.duration)
        changed = True
    done = []
    for rid, motion in state.motions.items():
        motion.elapsed += period
        s = min(motion.elapsed / motion.duration, 1.0) if motion.duration > 0 else 1.0
        state.robots[rid].set_config(motion.q_from + s * (motion.q_to - motion.q_from))
        if motion.elapsed >= motion.duration:
            done.append(rid)
        changed = True
    for rid in done:
        del state.motions[rid]
    return changed


def build_frame(state: LiveState) -> dict:
    """Current frame: object poses from the timeline, robot configs from live state."""
    t = state.t
    poses = []
    for oid in sorted(state.doc.objects):
        track = state.doc.tracks.get(oid)
        value = track.value_at(t) if track is not None and track.kind == POSE_TRACK else None
        pose = state.doc.objects[oid].initial_pose if value is None else value
        poses.append([oid, [float(v) for v in np.asarray(pose).reshape(-1)]])
    configs = []
    for rid in sorted(state.robots):
        model = state.robots[rid]
        if rid not in state.live_driven:
            track = state.doc.tracks.get(rid)
            value = track.value_at(t) if track is not None and track.kind == CONFIG_TRACK else None
            if value is not None:
                model.set_config(value)
        configs.append([rid, [float(v) for v in model.q]])
    return {"type": "frame", "t": float(t), "poses": poses, "configs": configs}


# ---------------------------------------------------------------------------
# transport


def create_app(doc: SceneDocument, frame_rate: float = DEFAULT_FRAME_RATE, playing: bool = True):
    """FastAPI app serving the viewer page, the document and the websocket."""
    state = make_state(doc, playing=playing)
    doc_bytes = to_json(doc)
    hello_text = '{"type":"hello","doc":' + doc_bytes.decode("utf-8") + "}"
    clients: dict[object, asyncio.Queue] = {}
    period = 1.0 / frame_rate

    @contextlib.asynccontextmanager
    async def lifespan(app):
        ticker = asyncio.create_task(_tick())
        try:
            yield
        finally:
            ticker.cancel()
            with contextlib.suppress(asyncio.CancelledError):
                await ticker

    async def _tick():
        while True:
            await asyncio.sleep(period)
            if advance(state, period):
                text = json.dumps(build_frame(state), separators=(",", ":"))
                for queue in clients.values():
                    queue.put_nowait(text)

    app = FastAPI(lifespan=lifespan)
    app.state.live = state  # test hook

    @app.get("/")
    def index() -> HTMLResponse:
        return HTMLResponse(export_html(doc))

    @app.get("/doc")
    def document() -> Response:
        return Response(content=doc_bytes, media_type="application/json")

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket):
        await ws.accept()
        queue: asyncio.Queue = asyncio.Queue()
        clients[ws] = queue
        await ws.send_text(hello_text)
        await ws.send_text(json.dumps(build_frame(state), separators=(",", ":")))

        async def writer():
            while True:
                await ws.send_text(await queue.get())

        writer_task = asyncio.create_task(writer())
        try:
            while True:
                raw = await ws.receive_text()
                try:
                    msg = json.loads(raw)
                except json.JSONDecodeError:
                    replies = [_reply_error(None, "not valid JSON")]
                else:
                    replies = handle(state, msg)
                for reply in replies:
                    await ws.send_text(json.dumps(reply, separators=(",", ":")))
        except WebSocketDisconnect:
            pass
        finally:
            writer_task.cancel()
            with contextlib.suppress(asyncio.CancelledError):
                await writer_task
            clients.pop(ws, None)

    return app


class ServerHandle:
    """A live server running on a background thread; stop() shuts it down."""

    def __init__(self, server, thread: threading.Thread, port: int):
        self._server = server
        self._thread = thread
        self.port = port

    def stop(self) -> None:
        self._server.should_exit = True
        self._thread.join(timeout=10.0)


def serve(
    doc: SceneDocument,
    port: int = 8700,
    frame_rate: float = DEFAULT_FRAME_RATE,
    host: str = "127.0.0.1",
) -> ServerHandle:
    """Start the bridge on a background thread. Raises OSError if the port is busy."""
    import socket

    import uvicorn

    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    sock.bind((host, port))  # OSError here if busy
    app = create_app(doc, frame_rate=frame_rate)
    config = uvicorn.Config(app, log_level="warning", ws="websockets")
    server = uvicorn.Server(config)
    thread = threading.Thread(
        target=server.run, kwargs={"sockets": [sock]}, name="kinesim-live", daemon=True
    )
    thread.start()
    return ServerHandle(server, thread, port)
