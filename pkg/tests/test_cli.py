import json
import socket
import subprocess
import sys
import time
import urllib.request

import numpy as np
import pytest

from kinesim.cli import main
from kinesim.kinematics import create_generic_6r
from kinesim.serialization import find_external_refs, from_json, to_json


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestFk:
    def test_planar_2r_extended(self, capsys):
        code, out, _ = run_cli(capsys, "fk", "--robot", "planar2r", "--q", "0,0")
        assert code == 0
        pose = np.array(json.loads(out)).reshape(4, 4)
        assert np.allclose(pose[:3, 3], [2, 0, 0], atol=1e-15)

    def test_bad_robot_name(self, capsys):
        code, _, err = run_cli(capsys, "fk", "--robot", "nope", "--q", "0,0")
        assert code == 2 and "unknown robot" in err

    def test_arity_mismatch_names_expected(self, capsys):
        code, _, err = run_cli(capsys, "fk", "--robot", "planar2r", "--q", "0,0,0")
        assert code == 2 and "2" in err

    def test_json_errors_flag(self, capsys):
        code, _, err = run_cli(capsys, "--json-errors", "fk", "--robot", "nope", "--q", "0")
        assert code == 2
        payload = json.loads(err.strip())
        assert payload["error"] == "UsageError"


class TestIk:
    def test_round_trip_against_fk(self, capsys):
        model = create_generic_6r()
        q_ref = np.array([0.3, -0.5, 0.8, 0.2, 0.6, -0.4])
        target = model.fkm(q_ref)
        arg = ",".join(repr(float(v)) for v in target.reshape(-1))
        code, out, _ = run_cli(capsys, "ik", "--robot", "generic6r", "--target", arg)
        assert code == 0
        q = np.array(json.loads(out))
        r, _ = model.task_error(target, q)
        assert np.linalg.norm(r[:3]) < 1e-4
        assert np.linalg.norm(r[3:]) < 1e-3

    def test_unreachable_exit_3_with_residual(self, capsys):
        target = np.eye(4)
        target[0, 3] = 9.0
        arg = ",".join(str(float(v)) for v in target.reshape(-1))
        code, _, err = run_cli(capsys, "ik", "--robot", "planar2r", "--target", arg)
        assert code == 3
        assert "residual" in err

    def test_seeded_determinism(self, capsys):
        model = create_generic_6r()
        target = model.fkm(np.array([0.5, 0.2, -0.7, 0.9, -0.3, 0.1]))
        arg = ",".join(repr(float(v)) for v in target.reshape(-1))
        out1 = run_cli(capsys, "ik", "--robot", "generic6r", "--target", arg, "--seed", "5")
        out2 = run_cli(capsys, "ik", "--robot", "generic6r", "--target", arg, "--seed", "5")
        assert out1 == out2


class TestDemo:
    def test_dh_demo_contract(self, capsys, tmp_path):
        code, out, _ = run_cli(capsys, "demo", "dh", "--out", str(tmp_path / "dh"))
        assert code == 0
        doc = from_json((tmp_path / "dh.scene.json").read_bytes())
        frames = [oid for oid in doc.objects if oid.startswith("dh_frame")]
        assert len(frames) == doc.robots["robot"].model.dof
        html = (tmp_path / "dh.html").read_bytes()
        assert find_external_refs(html) == []

    def test_pickplace_carry_phase(self, capsys, tmp_path):
        from kinesim.linalg import inv_htm

        code, _, _ = run_cli(capsys, "demo", "pickplace", "--out", str(tmp_path / "pp"))
        assert code == 0
        doc = from_json((tmp_path / "pp.scene.json").read_bytes())
        model = doc.robots["robot"].model
        box_track = doc.tracks["box"]
        cfg_track = doc.tracks["robot"]
        # at every box keyframe (carry phase), box pose = eef(q(t)) . grasp
        t0, first_pose = box_track.keys[0]
        ee0 = model.fkm(cfg_track.value_at(t0))
        grasp = inv_htm(ee0) @ first_pose
        for t, pose in box_track.keys:
            ee = model.fkm(cfg_track.value_at(t))
            assert np.abs(ee @ grasp - pose).max() < 1e-9


class TestEvacuate:
    def test_zero_pedestrians_walls_only(self, capsys, tmp_path):
        code, _, _ = run_cli(
            capsys, "evacuate", "--n", "0", "--out", str(tmp_path / "e"), "--t-end", "0.5"
        )
        assert code == 0
        doc = from_json((tmp_path / "e.scene.json").read_bytes())
        assert len(doc.objects) == 4
        assert all(oid.startswith("wall") for oid in doc.objects)

    def test_seed_reproducibility_bytes(self, capsys, tmp_path):
        args = ("evacuate", "--n", "6", "--room", "6x6", "--seed", "9", "--t-end", "5")
        run_cli(capsys, *args, "--out", str(tmp_path / "a"))
        run_cli(capsys, *args, "--out", str(tmp_path / "b"))
        assert (tmp_path / "a.scene.json").read_bytes() == (tmp_path / "b.scene.json").read_bytes()

    def test_bad_room_spec(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "evacuate", "--room", "8by8", "--out", str(tmp_path / "x")
        )
        assert code == 2 and "WIDTHxHEIGHT" in err


class TestAnimateCsv:
    def test_drone_fixture(self, capsys, tmp_path, data_dir):
        code, out, _ = run_cli(
            capsys,
            "animate-csv",
            "--csv",
            str(data_dir / "drones.csv"),
            "--out",
            str(tmp_path / "drones"),
        )
        assert code == 0 and "3 objects" in out
        doc = from_json((tmp_path / "drones.scene.json").read_bytes())
        assert len(doc.objects) == 3

    def test_malformed_row_exit_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("t,id,x,y,z\n0.0,a,1,2,3\noops,a,1,2,3\n")
        code, _, err = run_cli(
            capsys, "animate-csv", "--csv", str(bad), "--out", str(tmp_path / "o")
        )
        assert code == 2 and "line 3" in err

    def test_header_only_warns(self, capsys, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("t,id,x,y,z\n")
        code, _, err = run_cli(
            capsys, "animate-csv", "--csv", str(empty), "--out", str(tmp_path / "o")
        )
        assert code == 0 and "warning" in err

    def test_missing_file_exit_4(self, capsys, tmp_path):
        code, _, _ = run_cli(
            capsys, "animate-csv", "--csv", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "o")
        )
        assert code == 4


def _free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


class TestServe:
    def test_serves_doc_bytes_and_busy_port(self, tmp_path, data_dir):
        doc_path = data_dir / "empty.scene.json"
        port = _free_port()
        proc = subprocess.Popen(
            [
                sys.executable,
                "-m",
                "kinesim.cli",
                "serve",
                "--doc",
                str(doc_path),
                "--port",
                str(port),
            ],
            stdout=subprocess.PIPE,
            stderr=subprocess.STDOUT,
        )
        try:
            deadline = time.time() + 15.0
            body = None
            while time.time() < deadline:
                try:
                    with urllib.request.urlopen(
                        f"http://127.0.0.1:{port}/doc", timeout=1.0
                    ) as resp:
                        body = resp.read()
                    break
                except OSError:
                    time.sleep(0.1)
            assert body == doc_path.read_bytes()
            # same port now busy -> exit 4
            code = main(["serve", "--doc", str(doc_path), "--port", str(port)])
            assert code == 4
        finally:
            proc.terminate()
            proc.wait(timeout=10)

    def test_missing_doc_exit_4(self, capsys, tmp_path):
        code, _, _ = run_cli(capsys, "serve", "--doc", str(tmp_path / "nope.json"), "--port", "1")
        assert code == 4
