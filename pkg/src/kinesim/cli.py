"""Command-line entry point.

Exit codes: 0 success, 2 usage error, 3 solver failure, 4 environment
failure. With --json-errors, failures print one JSON line to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .errors import CapacityError, IkFailureError, KinesimError, SchemaError
from .kinematics import FACTORIES, IkParams

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SOLVER = 3
EXIT_ENV = 4


class UsageError(ValueError):
    pass


def _floats_arg(text: str, expected: int | None = None, name: str = "value") -> np.ndarray:
    try:
        values = np.array([float(v) for v in text.split(",")])
    except ValueError:
        raise UsageError(f"--{name} must be a comma-separated list of numbers") from None
    if expected is not None and values.size != expected:
        raise UsageError(f"--{name} expects {expected} values, got {values.size}")
    return values


def _robot_arg(name: str):
    factory = FACTORIES.get(name)
    if factory is None:
        raise UsageError(f"unknown robot {name!r}; choose from {', '.join(sorted(FACTORIES))}")
    return factory()


def _write_outputs(doc, out: str) -> tuple[Path, Path]:
    from .serialization import export_html, to_json

    base = Path(out)
    for suffix in (".html", ".json"):
        if base.name.endswith(".scene" + suffix) or base.name.endswith(suffix):
            base = base.with_name(base.name[: -len(suffix)])
            if base.name.endswith(".scene"):
                base = base.with_name(base.name[: -len(".scene")])
    json_path = base.with_name(base.name + ".scene.json")
    html_path = base.with_name(base.name + ".html")
    json_path.parent.mkdir(parents=True, exist_ok=True)
    json_path.write_bytes(to_json(doc))
    html_path.write_bytes(export_html(doc))
    return json_path, html_path


def _cmd_fk(args) -> int:
    model = _robot_arg(args.robot)
    q = _floats_arg(args.q, model.dof, "q")
    pose = model.fkm(q)
    print(json.dumps([float(v) for v in pose.reshape(-1)], separators=(",", ":")))
    return EXIT_OK


def _cmd_ik(args) -> int:
    model = _robot_arg(args.robot)
    target = _floats_arg(args.target, 16, "target").reshape(4, 4)
    params = IkParams(seed=args.seed)
    q0 = _floats_arg(args.q0, model.dof, "q0") if args.q0 else None
    q = model.ikm(target, q0=q0, params=params)
    print(json.dumps([float(v) for v in q], separators=(",", ":")))
    return EXIT_OK


def _cmd_demo(args) -> int:
    from .demos import DEMOS

    doc = DEMOS[args.name]()
    json_path, html_path = _write_outputs(doc, args.out or args.name)
    print(f"wrote {json_path} and {html_path}")
    return EXIT_OK


def _cmd_evacuate(args) -> int:
    from .demos import evacuation_document

    try:
        w, _, h = args.room.partition("x")
        room = (float(w), float(h))
    except ValueError:
        raise UsageError("--room expects WIDTHxHEIGHT, e.g. 8x8") from None
    doc, world = evacuation_document(
        n=args.n,
        room=room,
        door_width=args.door,
        seed=args.seed,
        dt=args.dt,
        t_end=args.t_end,
        stride=args.stride,
    )
    json_path, html_path = _write_outputs(doc, args.out)
    remaining = world.active_count()
    print(
        f"wrote {json_path} and {html_path}; {args.n - remaining}/{args.n} pedestrians exited"
    )
    return EXIT_OK


def _cmd_animate_csv(args) -> int:
    from .serialization import import_trajectory_csv

    data = Path(args.csv).read_bytes()
    doc = import_trajectory_csv(data, shape_spec=args.shape)
    if not doc.objects:
        print("warning: no trajectory rows found; writing an empty document", file=sys.stderr)
    json_path, html_path = _write_outputs(doc, args.out)
    print(f"wrote {json_path} and {html_path} ({len(doc.objects)} objects)")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import socket

    import uvicorn

    from .live_bridge import create_app
    from .serialization import from_json

    doc = from_json(Path(args.doc).read_bytes())
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((args.host, args.port))
    except OSError as exc:
        sock.close()
        raise OSError(f"cannot bind port {args.port}: {exc}") from exc
    app = create_app(doc, frame_rate=args.rate)
    print(f"serving on http://{args.host}:{args.port} (ws at /ws)")
    server = uvicorn.Server(uvicorn.Config(app, log_level="warning", ws="websockets"))
    server.run(sockets=[sock])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kinesim",
        description="Manipulator and crowd simulation with shareable interactive scenes.",
    )
    parser.add_argument("--json-errors", action="store_true", help="machine-readable errors on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fk", help="forward kinematics of a built-in robot")
    p.add_argument("--robot", required=True)
    p.add_argument("--q", required=True, help="comma-separated configuration")
    p.set_defaults(func=_cmd_fk)

    p = sub.add_parser("ik", help="inverse kinematics to a target pose")
    p.add_argument("--robot", required=True)
    p.add_argument("--target", required=True, help="16 comma-separated floats, row-major pose")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--q0", default=None, help="optional start configuration")
    p.set_defaults(func=_cmd_ik)

    p = sub.add_parser("demo", help="write a built-in demo scene")
    p.add_argument("name", choices=["dh", "ik", "pickplace"])
    p.add_argument("--out", default=None, help="output base path")
    p.set_defaults(func=_cmd_demo)

    p = sub.add_parser("evacuate", help="run a room evacuation and record it")
    p.add_argument("--n", type=int, default=30)
    p.add_argument("--room", default="8x8")
    p.add_argument("--door", type=float, default=1.2)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument("--t-end", type=float, default=120.0, dest="t_end")
    p.add_argument("--stride", type=int, default=10)
    p.add_argument("--out", default="evacuation")
    p.set_defaults(func=_cmd_evacuate)

    p = sub.add_parser("animate-csv", help="turn a trajectory CSV into a scene")
    p.add_argument("--csv", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--shape", default="ball:0.1", help="e.g. ball:0.1 or box:0.2")
    p.set_defaults(func=_cmd_animate_csv)

    p = sub.add_parser("serve", help="serve a scene with the live websocket bridge")
    p.add_argument("--doc", required=True, help="path to a .scene.json document")
    p.add_argument("--port", type=int, default=8700)
    p.add_argument("--rate", type=float, default=20.0)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=_cmd_serve)
    return parser


def _fail(args, exc: Exception, code: int) -> int:
    if getattr(args, "json_errors", False):
        line = json.dumps({"error": type(exc).__name__, "message": str(exc)})
    else:
        line = f"error: {exc}"
    print(line, file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, SchemaError) as exc:
        return _fail(args, exc, EXIT_USAGE)
    except (IkFailureError, CapacityError) as exc:
        return _fail(args, exc, EXIT_SOLVER)
    except OSError as exc:
        return _fail(args, exc, EXIT_ENV)
    except (ValueError, KinesimError) as exc:
        return _fail(args, exc, EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
