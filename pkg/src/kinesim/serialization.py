"""Canonical on-disk forms: scene-document JSON, self-contained HTML, CSV trajectories.

The JSON encoding is canonical: object keys sorted lexicographically, floats
rendered as shortest round-trip decimals, no insignificant whitespace, and
every collection ordered by id, so structurally equal documents serialize to
identical bytes no matter how they were built. The "_version" field sorts
first among root keys.
"""

from __future__ import annotations

import json
import math
import re
from importlib import resources

import numpy as np

from .errors import KinesimError, SchemaError
from .kinematics import PRISMATIC, REVOLUTE, DhLink, LinkInertia, RobotModel
from .linalg import _rot_from_quat, check_htm
from .scene import (
    CONFIG_TRACK,
    DOC_VERSION,
    POSE_TRACK,
    Ball,
    Box,
    Camera,
    Cone,
    Cylinder,
    FrameAxes,
    Group,
    Material,
    PointCloud,
    RobotVisual,
    SceneDocument,
    SceneObject,
    Track,
)

_SCRIPT_UNSAFE = ("</script", "<!--")


def _num(v) -> float:
    # +0.0 normalizes -0.0 so equal documents share bytes
    return float(v) + 0.0


def _floats(arr) -> list[float]:
    return [_num(v) for v in np.asarray(arr, dtype=np.float64).reshape(-1)]


def _material_payload(m: Material) -> dict:
    return {
        "color": [int(c) for c in m.color],
        "metalness": _num(m.metalness),
        "opacity": _num(m.opacity),
        "roughness": _num(m.roughness),
    }


def _shape_payload(shape) -> dict:
    if isinstance(shape, Box):
        return {"kind": "box", "size": [_num(shape.width), _num(shape.height), _num(shape.depth)]}
    if isinstance(shape, Ball):
        return {"kind": "ball", "radius": _num(shape.radius)}
    if isinstance(shape, Cylinder):
        return {"kind": "cylinder", "height": _num(shape.height), "radius": _num(shape.radius)}
    if isinstance(shape, Cone):
        return {"kind": "cone", "height": _num(shape.height), "radius": _num(shape.radius)}
    if isinstance(shape, FrameAxes):
        return {"kind": "frame", "axis_length": _num(shape.axis_length)}
    if isinstance(shape, PointCloud):
        return {
            "kind": "point_cloud",
            "point_size": _num(shape.point_size),
            "points": [_floats(p) for p in shape.points],
        }
    if isinstance(shape, Group):
        return {
            "kind": "group",
            "children": [_object_payload(c) for c in shape.children],
            "offsets": [_floats(o) for o in shape.offsets],
        }
    raise ValueError(f"unknown shape {type(shape).__name__}")


def _object_payload(obj: SceneObject) -> dict:
    return {
        "id": obj.id,
        "initial_pose": _floats(obj.initial_pose),
        "material": _material_payload(obj.material),
        "shape": _shape_payload(obj.shape),
    }


def _robot_payload(visual: RobotVisual) -> dict:
    model = visual.model
    inertias = None
    if model.link_inertias is not None:
        inertias = [
            {"com": _floats(i.com), "inertia": _floats(i.inertia), "mass": _num(i.mass)}
            for i in model.link_inertias
        ]
    return {
        "id": visual.id,
        "link_style": visual.link_style,
        "material": _material_payload(visual.material),
        "model": {
            "base": _floats(model.base),
            "inertias": inertias,
            "links": [
                {
                    "a": _num(l.a),
                    "alpha": _num(l.alpha),
                    "d_off": _num(l.d_off),
                    "kind": l.kind,
                    "q_max": _num(l.q_max),
                    "q_min": _num(l.q_min),
                    "theta_off": _num(l.theta_off),
                }
                for l in model.links
            ],
            "name": model.name,
            "q": _floats(model.q),
            "tool": _floats(model.tool),
        },
    }


def to_json(doc: SceneDocument) -> bytes:
    """Canonical UTF-8 bytes of a document; equal documents yield equal bytes."""
    doc.validate()
    payload = {
        "_version": DOC_VERSION,
        "ambient_light_intensity": _num(doc.ambient_light_intensity),
        "background": [int(c) for c in doc.background],
        "camera": {
            "fov": _num(doc.camera.fov),
            "look_at": _floats(doc.camera.look_at),
            "position": _floats(doc.camera.position),
            "up": _floats(doc.camera.up),
        },
        "duration": _num(doc.duration),
        "grid_visible": doc.grid_visible,
        "objects": [_object_payload(doc.objects[k]) for k in sorted(doc.objects)],
        "robots": [_robot_payload(doc.robots[k]) for k in sorted(doc.robots)],
        "tracks": [
            {
                "id": k,
                "keys": [[_num(t), _floats(v)] for t, v in doc.tracks[k].keys],
                "kind": doc.tracks[k].kind,
            }
            for k in sorted(doc.tracks)
        ],
        "viewport": {"height": int(doc.viewport[1]), "width": int(doc.viewport[0])},
    }
    text = json.dumps(
        payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False, allow_nan=False
    )
    return text.encode("utf-8")


# ---------------------------------------------------------------------------
# decoding


def _expect(payload, path: str, keys: set[str]) -> None:
    if not isinstance(payload, dict):
        raise SchemaError("expected an object", path)
    got = set(payload)
    if got != keys:
        missing = sorted(keys - got)
        extra = sorted(got - keys)
        parts = []
        if missing:
            parts.append(f"missing keys {missing}")
        if extra:
            parts.append(f"unknown keys {extra}")
        raise SchemaError("; ".join(parts), path)


def _get_number(payload, path: str) -> float:
    if isinstance(payload, bool) or not isinstance(payload, (int, float)):
        raise SchemaError("expected a number", path)
    v = float(payload)
    if not math.isfinite(v):
        raise SchemaError("expected a finite number", path)
    return v


def _get_str(payload, path: str) -> str:
    if not isinstance(payload, str):
        raise SchemaError("expected a string", path)
    return payload


def _get_list(payload, path: str, length: int | None = None) -> list:
    if not isinstance(payload, list):
        raise SchemaError("expected an array", path)
    if length is not None and len(payload) != length:
        raise SchemaError(f"expected {length} entries, got {len(payload)}", path)
    return payload


def _get_vec(payload, path: str, length: int) -> np.ndarray:
    return np.array(
        [_get_number(v, f"{path}[{i}]") for i, v in enumerate(_get_list(payload, path, length))]
    )


def _get_pose(payload, path: str) -> np.ndarray:
    flat = _get_vec(payload, path, 16)
    try:
        return check_htm(flat.reshape(4, 4))
    except ValueError as exc:
        raise SchemaError(str(exc), path) from exc


def _get_ints(payload, path: str, length: int) -> list[int]:
    out = []
    for i, v in enumerate(_get_list(payload, path, length)):
        if isinstance(v, bool) or not isinstance(v, int):
            raise SchemaError("expected an integer", f"{path}[{i}]")
        out.append(v)
    return out


def _decode_material(payload, path: str) -> Material:
    _expect(payload, path, {"color", "metalness", "opacity", "roughness"})
    try:
        return Material(
            color=tuple(_get_ints(payload["color"], f"{path}.color", 3)),
            metalness=_get_number(payload["metalness"], f"{path}.metalness"),
            roughness=_get_number(payload["roughness"], f"{path}.roughness"),
            opacity=_get_number(payload["opacity"], f"{path}.opacity"),
        )
    except ValueError as exc:
        raise SchemaError(str(exc), path) from exc


def _decode_shape(payload, path: str):
    if not isinstance(payload, dict) or "kind" not in payload:
        raise SchemaError("expected a shape object with a kind", path)
    kind = _get_str(payload["kind"], f"{path}.kind")
    try:
        if kind == "box":
            _expect(payload, path, {"kind", "size"})
            w, h, d = _get_vec(payload["size"], f"{path}.size", 3)
            return Box(float(w), float(h), float(d))
        if kind == "ball":
            _expect(payload, path, {"kind", "radius"})
            return Ball(_get_number(payload["radius"], f"{path}.radius"))
        if kind == "cylinder":
            _expect(payload, path, {"kind", "height", "radius"})
            return Cylinder(
                _get_number(payload["radius"], f"{path}.radius"),
                _get_number(payload["height"], f"{path}.height"),
            )
        if kind == "cone":
            _expect(payload, path, {"kind", "height", "radius"})
            return Cone(
                _get_number(payload["radius"], f"{path}.radius"),
                _get_number(payload["height"], f"{path}.height"),
            )
        if kind == "frame":
            _expect(payload, path, {"kind", "axis_length"})
            return FrameAxes(_get_number(payload["axis_length"], f"{path}.axis_length"))
        if kind == "point_cloud":
            _expect(payload, path, {"kind", "point_size", "points"})
            pts = [
                _get_vec(p, f"{path}.points[{i}]", 3)
                for i, p in enumerate(_get_list(payload["points"], f"{path}.points"))
            ]
            return PointCloud(
                np.array(pts).reshape(-1, 3),
                _get_number(payload["point_size"], f"{path}.point_size"),
            )
        if kind == "group":
            _expect(payload, path, {"kind", "children", "offsets"})
            children = [
                _decode_object(c, f"{path}.children[{i}]")
                for i, c in enumerate(_get_list(payload["children"], f"{path}.children"))
            ]
            offsets = [
                _get_pose(o, f"{path}.offsets[{i}]")
                for i, o in enumerate(_get_list(payload["offsets"], f"{path}.offsets", len(children)))
            ]
            return Group(children, offsets)
    except ValueError as exc:
        raise SchemaError(str(exc), path) from exc
    raise SchemaError(f"unknown shape kind {kind!r}", f"{path}.kind")


def _decode_object(payload, path: str) -> SceneObject:
    _expect(payload, path, {"id", "initial_pose", "material", "shape"})
    try:
        return SceneObject(
            id=_get_str(payload["id"], f"{path}.id"),
            shape=_decode_shape(payload["shape"], f"{path}.shape"),
            material=_decode_material(payload["material"], f"{path}.material"),
            initial_pose=_get_pose(payload["initial_pose"], f"{path}.initial_pose"),
        )
    except ValueError as exc:
        raise SchemaError(str(exc), path) from exc


def _decode_robot(payload, path: str) -> RobotVisual:
    _expect(payload, path, {"id", "link_style", "material", "model"})
    mpath = f"{path}.model"
    model_p = payload["model"]
    _expect(model_p, mpath, {"base", "inertias", "links", "name", "q", "tool"})
    links = []
    for i, lp in enumerate(_get_list(model_p["links"], f"{mpath}.links")):
        lpath = f"{mpath}.links[{i}]"
        _expect(lp, lpath, {"a", "alpha", "d_off", "kind", "q_max", "q_min", "theta_off"})
        kind = _get_str(lp["kind"], f"{lpath}.kind")
        if kind not in (REVOLUTE, PRISMATIC):
            raise SchemaError(f"unknown joint kind {kind!r}", f"{lpath}.kind")
        try:
            links.append(
                DhLink(
                    theta_off=_get_number(lp["theta_off"], f"{lpath}.theta_off"),
                    d_off=_get_number(lp["d_off"], f"{lpath}.d_off"),
                    a=_get_number(lp["a"], f"{lpath}.a"),
                    alpha=_get_number(lp["alpha"], f"{lpath}.alpha"),
                    kind=kind,
                    q_min=_get_number(lp["q_min"], f"{lpath}.q_min"),
                    q_max=_get_number(lp["q_max"], f"{lpath}.q_max"),
                )
            )
        except ValueError as exc:
            raise SchemaError(str(exc), lpath) from exc
    inertias = None
    if model_p["inertias"] is not None:
        inertias = []
        for i, ip in enumerate(_get_list(model_p["inertias"], f"{mpath}.inertias", len(links))):
            ipath = f"{mpath}.inertias[{i}]"
            _expect(ip, ipath, {"com", "inertia", "mass"})
            try:
                inertias.append(
                    LinkInertia(
                        mass=_get_number(ip["mass"], f"{ipath}.mass"),
                        com=_get_vec(ip["com"], f"{ipath}.com", 3),
                        inertia=_get_vec(ip["inertia"], f"{ipath}.inertia", 9).reshape(3, 3),
                    )
                )
            except ValueError as exc:
                raise SchemaError(str(exc), ipath) from exc
    try:
        model = RobotModel(
            name=_get_str(model_p["name"], f"{mpath}.name"),
            links=links,
            base=_get_pose(model_p["base"], f"{mpath}.base"),
            tool=_get_pose(model_p["tool"], f"{mpath}.tool"),
            link_inertias=inertias,
            q=_get_vec(model_p["q"], f"{mpath}.q", len(links)),
        )
        return RobotVisual(
            id=_get_str(payload["id"], f"{path}.id"),
            model=model,
            link_style=_get_str(payload["link_style"], f"{path}.link_style"),
            material=_decode_material(payload["material"], f"{path}.material"),
        )
    except (ValueError, KinesimError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc), path) from exc


def from_json(data: bytes | str) -> SceneDocument:
    """Parse canonical document bytes; raises SchemaError with a field path."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SchemaError(f"not valid UTF-8: {exc}") from exc
    try:
        payload = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc.msg}", f"offset {exc.pos}") from exc
    if not isinstance(payload, dict):
        raise SchemaError("document root must be an object")
    version = payload.get("_version")
    if version != DOC_VERSION:
        raise SchemaError(f"unsupported version {version!r}", "_version")
    _expect(
        payload,
        "",
        {
            "_version",
            "ambient_light_intensity",
            "background",
            "camera",
            "duration",
            "grid_visible",
            "objects",
            "robots",
            "tracks",
            "viewport",
        },
    )
    cam_p = payload["camera"]
    _expect(cam_p, "camera", {"fov", "look_at", "position", "up"})
    view_p = payload["viewport"]
    _expect(view_p, "viewport", {"height", "width"})
    if not isinstance(payload["grid_visible"], bool):
        raise SchemaError("expected a boolean", "grid_visible")
    try:
        doc = SceneDocument(
            background=tuple(_get_ints(payload["background"], "background", 3)),
            ambient_light_intensity=_get_number(
                payload["ambient_light_intensity"], "ambient_light_intensity"
            ),
            camera=Camera(
                position=_get_vec(cam_p["position"], "camera.position", 3),
                look_at=_get_vec(cam_p["look_at"], "camera.look_at", 3),
                up=_get_vec(cam_p["up"], "camera.up", 3),
                fov=_get_number(cam_p["fov"], "camera.fov"),
            ),
            viewport=(
                _get_ints([view_p["width"]], "viewport.width", 1)[0],
                _get_ints([view_p["height"]], "viewport.height", 1)[0],
            ),
            grid_visible=payload["grid_visible"],
        )
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc

    for i, op in enumerate(_get_list(payload["objects"], "objects")):
        obj = _decode_object(op, f"objects[{i}]")
        try:
            doc.add_object(obj)
        except ValueError as exc:
            raise SchemaError(str(exc), f"objects[{i}]") from exc
    for i, rp in enumerate(_get_list(payload["robots"], "robots")):
        visual = _decode_robot(rp, f"robots[{i}]")
        try:
            doc.add_robot(visual)
        except ValueError as exc:
            raise SchemaError(str(exc), f"robots[{i}]") from exc

    for i, tp in enumerate(_get_list(payload["tracks"], "tracks")):
        tpath = f"tracks[{i}]"
        _expect(tp, tpath, {"id", "keys", "kind"})
        tid = _get_str(tp["id"], f"{tpath}.id")
        kind = _get_str(tp["kind"], f"{tpath}.kind")
        prev_t = -math.inf
        for k, kp in enumerate(_get_list(tp["keys"], f"{tpath}.keys")):
            kpath = f"{tpath}.keys[{k}]"
            entry = _get_list(kp, kpath, 2)
            t = _get_number(entry[0], f"{kpath}[0]")
            if t < 0.0:
                raise SchemaError("keyframe time must be >= 0", f"{kpath}[0]")
            if t <= prev_t:
                raise SchemaError("keyframe times must be strictly increasing", f"{kpath}[0]")
            prev_t = t
            try:
                if kind == POSE_TRACK:
                    doc.set_pose_at(tid, t, _get_pose(entry[1], f"{kpath}[1]"))
                elif kind == CONFIG_TRACK:
                    if tid not in doc.robots:
                        raise SchemaError(f"unknown robot id {tid!r}", f"{tpath}.id")
                    dof = doc.robots[tid].model.dof
                    doc.set_config_at(tid, t, _get_vec(entry[1], f"{kpath}[1]", dof))
                else:
                    raise SchemaError(f"unknown track kind {kind!r}", f"{tpath}.kind")
            except (ValueError, KinesimError) as exc:
                if isinstance(exc, SchemaError):
                    raise
                raise SchemaError(str(exc), kpath) from exc

    duration = _get_number(payload["duration"], "duration")
    try:
        doc.set_duration(duration)
    except ValueError as exc:
        raise SchemaError(str(exc), "duration") from exc
    doc.validate()
    return doc


# ---------------------------------------------------------------------------
# HTML export

_HTML_TEMPLATE = """<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<meta name="viewport" content="width=device-width, initial-scale=1">
<title>kinesim scene</title>
</head>
<body>
<script type="application/json" id="scene-doc">@DOC_JSON@</script>
<script>@VIEWER_BUNDLE@</script>
</body>
</html>
"""

_EXTERNAL_REF_PATTERNS = [
    re.compile(rb"""(?:src|href)\s*=\s*["']?\s*(?:https?:)?//[^\s"'>]+""", re.IGNORECASE),
    re.compile(rb"""url\(\s*["']?\s*(?:https?:)?//[^\s"')]+""", re.IGNORECASE),
    re.compile(rb"""@import\b""", re.IGNORECASE),
]


def default_viewer_bundle() -> bytes:
    """The viewer script packaged with this distribution."""
    return resources.files("kinesim").joinpath("_assets/viewer.js").read_bytes()


def export_html(doc: SceneDocument, viewer_bundle: bytes | None = None) -> bytes:
    """One self-contained HTML file: document JSON embedded verbatim plus the viewer."""
    bundle = default_viewer_bundle() if viewer_bundle is None else viewer_bundle
    if not bundle:
        raise ValueError("viewer bundle must be nonempty")
    doc_json = to_json(doc)
    for needle in _SCRIPT_UNSAFE:
        if needle.encode() in doc_json.lower():
            raise ValueError(
                f"document JSON contains {needle!r}; it cannot be embedded verbatim in HTML"
            )
        if needle.encode() in bundle.lower():
            raise ValueError(f"viewer bundle contains {needle!r}")
    html = _HTML_TEMPLATE.encode("utf-8")
    html = html.replace(b"@DOC_JSON@", doc_json)
    html = html.replace(b"@VIEWER_BUNDLE@", bundle)
    return html


def find_external_refs(html: bytes) -> list[bytes]:
    """Resource-loading references to external URLs (empty for valid exports)."""
    hits: list[bytes] = []
    for pattern in _EXTERNAL_REF_PATTERNS:
        hits.extend(pattern.findall(html))
    return hits


# ---------------------------------------------------------------------------
# CSV trajectories

_CSV_HEADER_XYZ = ["t", "id", "x", "y", "z"]
_CSV_HEADER_QUAT = _CSV_HEADER_XYZ + ["qw", "qx", "qy", "qz"]


def _parse_shape_spec(spec: str):
    kind, _, dims_text = spec.partition(":")
    dims = [float(v) for v in dims_text.split(",")] if dims_text else []
    if kind == "ball":
        return Ball(*(dims or [0.1]))
    if kind == "box":
        if len(dims) == 1:
            dims = dims * 3
        return Box(*(dims or [0.1, 0.1, 0.1]))
    if kind == "cylinder":
        return Cylinder(*(dims or [0.1, 0.2]))
    if kind == "cone":
        return Cone(*(dims or [0.1, 0.2]))
    raise ValueError(f"unknown shape spec {spec!r}")


def import_trajectory_csv(data: bytes | str, shape_spec: str = "ball:0.1") -> SceneDocument:
    """Build a document with one animated object per distinct trajectory id.

    Expects the header `t,id,x,y,z` with optional `qw,qx,qy,qz` columns
    (identity rotation when absent); rows must be time-sorted per id.
    Errors carry the 1-based line number.
    """
    import csv
    import io

    if isinstance(data, bytes):
        data = data.decode("utf-8")
    shape = _parse_shape_spec(shape_spec)
    reader = csv.reader(io.StringIO(data))
    try:
        header = next(reader)
    except StopIteration:
        raise ValueError("line 1: empty file, expected a header row") from None
    header = [h.strip() for h in header]
    if header == _CSV_HEADER_XYZ:
        has_quat = False
    elif header == _CSV_HEADER_QUAT:
        has_quat = True
    else:
        raise ValueError(f"line 1: expected header t,id,x,y,z[,qw,qx,qy,qz], got {','.join(header)}")

    doc = SceneDocument()
    last_t: dict[str, float] = {}
    first_pose: dict[str, np.ndarray] = {}
    rows = 0
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue  # tolerate a trailing blank line
        if len(row) != len(header):
            raise ValueError(f"line {lineno}: expected {len(header)} fields, got {len(row)}")
        oid = row[1].strip()
        if not oid:
            raise ValueError(f"line {lineno}: empty id")
        try:
            t = float(row[0])
            x, y, z = float(row[2]), float(row[3]), float(row[4])
            if has_quat:
                qw, qx, qy, qz = (float(v) for v in row[5:9])
        except ValueError:
            raise ValueError(f"line {lineno}: malformed numeric field") from None
        if not all(math.isfinite(v) for v in ((t, x, y, z, qw, qx, qy, qz) if has_quat else (t, x, y, z))):
            raise ValueError(f"line {lineno}: non-finite value")
        if t < 0.0:
            raise ValueError(f"line {lineno}: negative time")
        pose = np.eye(4)
        pose[:3, 3] = (x, y, z)
        if has_quat:
            norm = math.sqrt(qw * qw + qx * qx + qy * qy + qz * qz)
            if norm < 1e-12:
                raise ValueError(f"line {lineno}: zero-length quaternion")
            pose[:3, :3] = _rot_from_quat(qw / norm, qx / norm, qy / norm, qz / norm)
        if oid in last_t and t <= last_t[oid]:
            raise ValueError(f"line {lineno}: non-monotone time for id {oid!r}")
        last_t[oid] = t
        if oid not in first_pose:
            first_pose[oid] = pose
            doc.add_object(SceneObject(oid, shape, initial_pose=pose))
        doc.set_pose_at(oid, t, pose)
        rows += 1
    doc.set_duration(max(last_t.values(), default=0.0))
    return doc
