import json
import math

import numpy as np
import pytest
from starlette.testclient import TestClient

from kinesim.kinematics import create_planar_2r
from kinesim.linalg import trn
from kinesim.live_bridge import advance, build_frame, create_app, handle, make_state
from kinesim.scene import Ball, RobotVisual, SceneDocument, SceneObject
from kinesim.serialization import to_json


def demo_doc() -> SceneDocument:
    doc = SceneDocument()
    doc.add_object(SceneObject("marker", Ball(0.1)))
    doc.set_pose_at("marker", 0.0, trn((1, 0, 0)))
    doc.set_pose_at("marker", 1.0, trn((2, 0, 0)))
    doc.add_robot(RobotVisual("arm", create_planar_2r()))
    doc.set_config_at("arm", 0.0, [0.1, 0.2])
    doc.set_duration(3.0)
    return doc


class TestHandleCore:
    def test_set_config_applies_and_acks(self):
        state = make_state(demo_doc())
        replies = handle(state, {"type": "set_config", "id": 1, "robot": "arm", "q": [0.5, -0.5]})
        assert replies == [{"type": "ack", "id": 1, "ok": True}]
        assert np.allclose(state.robots["arm"].q, [0.5, -0.5])
        assert "arm" in state.live_driven

    def test_out_of_limit_config_errors_without_mutation(self):
        state = make_state(demo_doc())
        q0 = state.robots["arm"].q.copy()
        replies = handle(state, {"type": "set_config", "id": 2, "robot": "arm", "q": [9.0, 0.0]})
        assert replies[0]["type"] == "error" and replies[0]["id"] == 2
        assert np.array_equal(state.robots["arm"].q, q0)

    def test_unknown_robot_errors(self):
        state = make_state(demo_doc())
        replies = handle(state, {"type": "set_config", "id": 3, "robot": "ghost", "q": [0, 0]})
        assert replies[0]["type"] == "error"

    def test_missing_id_errors(self):
        state = make_state(demo_doc())
        replies = handle(state, {"type": "play"})
        assert replies[0]["type"] == "error" and replies[0]["id"] is None

    def test_move_to_pose_joint_zero_length(self):
        state = make_state(demo_doc())
        q0 = state.robots["arm"].q.copy()
        replies = handle(
            state,
            {"type": "move_to_pose", "id": 4, "robot": "arm", "space": "joint", "target": list(q0)},
        )
        assert replies[0]["type"] == "ack"
        for _ in range(50):
            advance(state, 0.05)
        assert np.array_equal(state.robots["arm"].q, q0)
        assert not state.motions

    def test_move_to_pose_joint_interpolates_linearly(self):
        state = make_state(demo_doc())
        handle(state, {"type": "set_config", "id": 5, "robot": "arm", "q": [0.0, 0.0]})
        handle(
            state,
            {"type": "move_to_pose", "id": 6, "robot": "arm", "space": "joint", "target": [1.0, -1.0]},
        )
        advance(state, 0.05)  # dirty flush
        advance(state, 0.05)
        qa = state.robots["arm"].q.copy()
        assert np.allclose(qa, [0.025, -0.025], atol=1e-12)  # 0.05 s of a 2 s move
        for _ in range(100):
            advance(state, 0.05)
        assert np.allclose(state.robots["arm"].q, [1.0, -1.0], atol=1e-12)

    def test_move_to_pose_task_runs_ik(self):
        state = make_state(demo_doc())
        target = state.robots["arm"].fkm([0.6, -0.3])
        replies = handle(
            state,
            {
                "type": "move_to_pose",
                "id": 7,
                "robot": "arm",
                "space": "task",
                "target": [float(v) for v in target.reshape(-1)],
            },
        )
        assert replies[0]["type"] == "ack"
        for _ in range(60):
            advance(state, 0.05)
        ee = state.robots["arm"].fkm()
        assert np.linalg.norm(ee[:3, 3] - target[:3, 3]) < 1e-3

    def test_move_to_pose_task_unreachable_errors(self):
        state = make_state(demo_doc())
        target = trn((2.5, 0.0, 0.0))
        replies = handle(
            state,
            {
                "type": "move_to_pose",
                "id": 8,
                "robot": "arm",
                "space": "task",
                "target": [float(v) for v in target.reshape(-1)],
            },
        )
        assert replies[0]["type"] == "error"
        assert "ik" in replies[0]["message"].lower()

    def test_seek_clamps_and_rebinds_timeline(self):
        state = make_state(demo_doc())
        handle(state, {"type": "set_config", "id": 9, "robot": "arm", "q": [1.0, 1.0]})
        assert "arm" in state.live_driven
        replies = handle(state, {"type": "seek", "id": 10, "t": 99.0})
        assert replies[0]["type"] == "ack"
        assert state.t == 3.0
        assert not state.live_driven and not state.motions

    def test_pause_stops_periodic_frames(self):
        state = make_state(demo_doc(), playing=False)
        advance(state, 0.05)
        assert advance(state, 0.05) is False

    def test_post_seek_frame_carries_target(self):
        state = make_state(demo_doc())
        for _ in range(5):
            advance(state, 0.05)
        handle(state, {"type": "seek", "id": 11, "t": 0.1})
        assert advance(state, 0.05) is True
        assert build_frame(state)["t"] == 0.1

    def test_frame_contents(self):
        state = make_state(demo_doc(), playing=False)
        frame = build_frame(state)
        assert frame["type"] == "frame"
        ids = [p[0] for p in frame["poses"]]
        assert ids == ["marker"]
        assert frame["configs"][0][0] == "arm"
        assert len(frame["configs"][0][1]) == 2


class TestWebsocket:
    def test_hello_handshake_carries_document(self):
        doc = demo_doc()
        app = create_app(doc, frame_rate=40.0)
        with TestClient(app) as client:
            with client.websocket_connect("/ws") as ws:
                hello = ws.receive_json()
                assert hello["type"] == "hello"
                assert json.dumps(hello["doc"], sort_keys=True) == json.dumps(
                    json.loads(to_json(doc)), sort_keys=True
                )
                snap = ws.receive_json()
                assert snap["type"] == "frame"

    def test_doc_endpoint_serves_canonical_bytes(self):
        doc = demo_doc()
        app = create_app(doc)
        with TestClient(app) as client:
            assert client.get("/doc").content == to_json(doc)
            page = client.get("/")
            assert page.status_code == 200
            assert to_json(doc) in page.content

    def test_broadcast_frames_identical_across_clients(self):
        app = create_app(demo_doc(), frame_rate=50.0)
        with TestClient(app) as client:
            with client.websocket_connect("/ws") as a, client.websocket_connect("/ws") as b:
                for ws in (a, b):
                    assert ws.receive_json()["type"] == "hello"
                    assert ws.receive_json()["type"] == "frame"  # connect snapshot
                fa = [self._next_frame(a) for _ in range(5)]
                fb = [self._next_frame(b) for _ in range(5)]
                assert [f["t"] for f in fa] == [f["t"] for f in fb]
                assert fa == fb

    @staticmethod
    def _next_frame(ws, skip_replies=True):
        while True:
            msg = ws.receive_json()
            if msg["type"] == "frame":
                return msg
            if not skip_replies:
                return msg

    def test_paused_connect_single_snapshot_until_play(self):
        app = create_app(demo_doc(), frame_rate=50.0, playing=False)
        with TestClient(app) as client:
            with client.websocket_connect("/ws") as ws:
                assert ws.receive_json()["type"] == "hello"
                assert ws.receive_json()["type"] == "frame"
                ws.send_text(json.dumps({"type": "play", "id": 1}))
                kinds = [ws.receive_json()["type"] for _ in range(3)]
                assert "ack" in kinds and "frame" in kinds

    def test_set_config_ack_and_unchanged_frame(self):
        app = create_app(demo_doc(), frame_rate=50.0, playing=False)
        with TestClient(app) as client:
            with client.websocket_connect("/ws") as ws:
                ws.receive_json()
                snap = ws.receive_json()
                q0 = dict(snap["configs"])["arm"]
                ws.send_text(
                    json.dumps({"type": "set_config", "id": 1, "robot": "arm", "q": q0})
                )
                ack = ws.receive_json()
                assert ack == {"type": "ack", "id": 1, "ok": True}
                frame = self._next_frame(ws)
                assert dict(frame["configs"])["arm"] == q0
                assert frame["t"] == snap["t"]

    def test_frame_monotonic_and_seek_target(self):
        app = create_app(demo_doc(), frame_rate=100.0)
        with TestClient(app) as client:
            with client.websocket_connect("/ws") as ws:
                ws.receive_json(), ws.receive_json()
                ts = [self._next_frame(ws)["t"] for _ in range(8)]
                assert all(b >= a for a, b in zip(ts, ts[1:]))
                ws.send_text(json.dumps({"type": "seek", "id": 2, "t": 0.02}))
                got = []
                while len(got) < 3:
                    msg = ws.receive_json()
                    if msg["type"] == "frame":
                        got.append(msg["t"])
                assert got[0] == 0.02
                assert all(b >= a for a, b in zip(got, got[1:]))

    def test_request_reply_bijection_randomized(self):
        rng = np.random.default_rng(77)
        app = create_app(demo_doc(), frame_rate=30.0)
        with TestClient(app) as client:
            with client.websocket_connect("/ws") as ws:
                ws.receive_json(), ws.receive_json()
                sent = {}
                for i in range(300):
                    kind = ("set_config", "move_to_pose", "play", "pause", "seek")[
                        int(rng.integers(0, 5))
                    ]
                    msg = {"type": kind, "id": i}
                    if kind == "set_config":
                        q = rng.uniform(-4, 4, 2)  # sometimes out of limits
                        msg |= {"robot": "arm" if rng.random() < 0.9 else "nope", "q": list(q)}
                    elif kind == "move_to_pose":
                        msg |= {
                            "robot": "arm",
                            "space": "joint" if rng.random() < 0.8 else "bad",
                            "target": list(rng.uniform(-3, 3, 2)),
                        }
                    elif kind == "seek":
                        msg["t"] = float(rng.uniform(-1, 5))
                    ws.send_text(json.dumps(msg))
                    sent[i] = msg
                replies = {}
                while len(replies) < len(sent):
                    msg = ws.receive_json()
                    if msg["type"] in ("ack", "error"):
                        assert msg["id"] not in replies, "duplicate reply"
                        replies[msg["id"]] = msg
                assert set(replies) == set(sent)

    def test_limits_never_violated_by_commands(self):
        rng = np.random.default_rng(78)
        app = create_app(demo_doc(), frame_rate=60.0)
        model = create_planar_2r()
        with TestClient(app) as client:
            with client.websocket_connect("/ws") as ws:
                ws.receive_json(), ws.receive_json()
                for i in range(60):
                    if rng.random() < 0.5:
                        msg = {
                            "type": "set_config",
                            "id": i,
                            "robot": "arm",
                            "q": list(rng.uniform(-6, 6, 2)),
                        }
                    else:
                        msg = {
                            "type": "move_to_pose",
                            "id": i,
                            "robot": "arm",
                            "space": "joint",
                            "target": list(rng.uniform(-6, 6, 2)),
                        }
                    ws.send_text(json.dumps(msg))
                seen = 0
                while seen < 60:
                    msg = ws.receive_json()
                    if msg["type"] == "frame":
                        q = np.array(dict(msg["configs"])["arm"])
                        assert np.all(q >= model.q_min - 1e-12)
                        assert np.all(q <= model.q_max + 1e-12)
                    else:
                        seen += 1

    def test_malformed_json_gets_error_reply(self):
        app = create_app(demo_doc(), frame_rate=50.0, playing=False)
        with TestClient(app) as client:
            with client.websocket_connect("/ws") as ws:
                ws.receive_json(), ws.receive_json()
                ws.send_text("{nope")
                msg = ws.receive_json()
                assert msg["type"] == "error" and msg["id"] is None


class TestServeHandle:
    def test_background_serve_and_stop(self):
        import socket
        import time
        import urllib.request

        from kinesim.live_bridge import serve

        with socket.socket() as probe:
            probe.bind(("127.0.0.1", 0))
            port = probe.getsockname()[1]
        doc = demo_doc()
        handle = serve(doc, port=port)
        try:
            deadline = time.time() + 10.0
            body = None
            while time.time() < deadline:
                try:
                    with urllib.request.urlopen(
                        f"http://127.0.0.1:{port}/doc", timeout=1.0
                    ) as resp:
                        body = resp.read()
                    break
                except OSError:
                    time.sleep(0.05)
            assert body == to_json(doc)
            with pytest.raises(OSError):
                serve(doc, port=port)  # port busy
        finally:
            handle.stop()
