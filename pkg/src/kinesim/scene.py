"""Scene documents: objects, materials, camera, robots and keyframe tracks.

A SceneDocument is the in-memory unit of everything the viewer plays back.
Playback is sample-and-hold: querying time t returns, per object, the latest
keyframe at or before t (initial pose before the first key). Producers emit
dense keyframes at the simulation rate; nothing interpolates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .kinematics import RobotModel
from .linalg import Htm, check_htm

DOC_VERSION = "kinesim-doc/1"

POSE_TRACK = "pose"
CONFIG_TRACK = "config"


def _finite(*vals) -> bool:
    return all(math.isfinite(float(v)) for v in vals)


@dataclass
class Material:
    """Surface scalars: sRGB color 0-255, metalness/roughness/opacity 0-1."""

    color: tuple[int, int, int] = (200, 200, 210)
    metalness: float = 0.1
    roughness: float = 0.7
    opacity: float = 1.0

    def __post_init__(self):
        self.color = tuple(int(c) for c in self.color)
        if len(self.color) != 3 or any(c < 0 or c > 255 for c in self.color):
            raise ValueError("color must be three 0-255 components")
        for name in ("metalness", "roughness", "opacity"):
            v = getattr(self, name)
            if not (_finite(v) and 0.0 <= v <= 1.0):
                raise ValueError(f"{name} must be within [0, 1]")


@dataclass
class Box:
    width: float
    height: float
    depth: float

    def __post_init__(self):
        if not _finite(self.width, self.height, self.depth) or min(
            self.width, self.height, self.depth
        ) <= 0:
            raise ValueError("box dimensions must be positive")


@dataclass
class Ball:
    radius: float

    def __post_init__(self):
        if not _finite(self.radius) or self.radius <= 0:
            raise ValueError("ball radius must be positive")


@dataclass
class Cylinder:
    radius: float
    height: float

    def __post_init__(self):
        if not _finite(self.radius, self.height) or min(self.radius, self.height) <= 0:
            raise ValueError("cylinder dimensions must be positive")


@dataclass
class Cone:
    radius: float
    height: float

    def __post_init__(self):
        if not _finite(self.radius, self.height) or min(self.radius, self.height) <= 0:
            raise ValueError("cone dimensions must be positive")


@dataclass
class FrameAxes:
    axis_length: float = 0.2

    def __post_init__(self):
        if not _finite(self.axis_length) or self.axis_length <= 0:
            raise ValueError("axis_length must be positive")


@dataclass(eq=False)
class PointCloud:
    points: np.ndarray
    point_size: float = 0.02

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=np.float64).reshape(-1, 3)
        if not np.all(np.isfinite(self.points)):
            raise ValueError("point cloud must be finite")
        if not _finite(self.point_size) or self.point_size <= 0:
            raise ValueError("point_size must be positive")

    def __eq__(self, other):
        return (
            isinstance(other, PointCloud)
            and np.array_equal(self.points, other.points)
            and self.point_size == other.point_size
        )


@dataclass(eq=False)
class Group:
    children: list["SceneObject"]
    offsets: list[Htm]

    def __post_init__(self):
        if len(self.children) != len(self.offsets):
            raise ValueError("group needs one offset per child")
        self.offsets = [check_htm(o) for o in self.offsets]
        ids = [c.id for c in self.children]
        if len(set(ids)) != len(ids):
            raise ValueError("group children ids must be unique")

    def __eq__(self, other):
        return (
            isinstance(other, Group)
            and self.children == other.children
            and len(self.offsets) == len(other.offsets)
            and all(np.array_equal(a, b) for a, b in zip(self.offsets, other.offsets))
        )


SHAPE_TYPES = (Box, Ball, Cylinder, Cone, FrameAxes, PointCloud, Group)


@dataclass(eq=False)
class SceneObject:
    id: str
    shape: object
    material: Material = field(default_factory=Material)
    initial_pose: Htm = field(default_factory=lambda: np.eye(4))

    def __post_init__(self):
        if not self.id or not isinstance(self.id, str):
            raise ValueError("object id must be a non-empty string")
        if not isinstance(self.shape, SHAPE_TYPES):
            raise ValueError(f"unknown shape {type(self.shape).__name__}")
        self.initial_pose = check_htm(self.initial_pose)

    def leaf_count(self) -> int:
        if isinstance(self.shape, Group):
            return sum(c.leaf_count() for c in self.shape.children)
        return 1

    def all_ids(self) -> list[str]:
        out = [self.id]
        if isinstance(self.shape, Group):
            for c in self.shape.children:
                out.extend(c.all_ids())
        return out

    def __eq__(self, other):
        return (
            isinstance(other, SceneObject)
            and self.id == other.id
            and self.shape == other.shape
            and self.material == other.material
            and np.array_equal(self.initial_pose, other.initial_pose)
        )


@dataclass(eq=False)
class RobotVisual:
    """A robot rendered as a primitive chain (cylinder per link, ball per joint)."""

    id: str
    model: RobotModel
    link_style: str = "primitive_chain"
    material: Material = field(default_factory=Material)

    def __post_init__(self):
        if not self.id or not isinstance(self.id, str):
            raise ValueError("robot id must be a non-empty string")
        if self.link_style != "primitive_chain":
            raise ValueError("only primitive_chain robots are supported")

    def __eq__(self, other):
        if not isinstance(other, RobotVisual):
            return False
        a, b = self.model, other.model
        model_eq = (
            a.name == b.name
            and a.links == b.links
            and np.array_equal(a.base, b.base)
            and np.array_equal(a.tool, b.tool)
            and np.array_equal(a.q, b.q)
            and (a.link_inertias is None) == (b.link_inertias is None)
            and (
                a.link_inertias is None
                or all(
                    x.mass == y.mass
                    and np.array_equal(x.com, y.com)
                    and np.array_equal(x.inertia, y.inertia)
                    for x, y in zip(a.link_inertias, b.link_inertias)
                )
            )
        )
        return (
            self.id == other.id
            and self.link_style == other.link_style
            and self.material == other.material
            and model_eq
        )


@dataclass(eq=False)
class Track:
    object_id: str
    kind: str  # POSE_TRACK or CONFIG_TRACK
    keys: list[tuple[float, np.ndarray]] = field(default_factory=list)

    def __post_init__(self):
        if self.kind not in (POSE_TRACK, CONFIG_TRACK):
            raise ValueError(f"unknown track kind {self.kind!r}")

    def insert(self, t: float, value: np.ndarray) -> None:
        if not _finite(t) or t < 0.0:
            raise ValueError("keyframe time must be finite and >= 0")
        lo, hi = 0, len(self.keys)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.keys[mid][0] < t:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(self.keys) and self.keys[lo][0] == t:
            self.keys[lo] = (t, value)
        else:
            self.keys.insert(lo, (t, value))

    def value_at(self, t: float) -> np.ndarray | None:
        """Latest key value at or before t; None before the first key."""
        lo, hi = 0, len(self.keys)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.keys[mid][0] <= t:
                lo = mid + 1
            else:
                hi = mid
        return self.keys[lo - 1][1] if lo else None

    def __eq__(self, other):
        return (
            isinstance(other, Track)
            and self.object_id == other.object_id
            and self.kind == other.kind
            and len(self.keys) == len(other.keys)
            and all(
                ta == tb and np.array_equal(va, vb)
                for (ta, va), (tb, vb) in zip(self.keys, other.keys)
            )
        )


@dataclass(eq=False)
class Camera:
    position: np.ndarray = field(default_factory=lambda: np.array([3.0, 3.0, 2.0]))
    look_at: np.ndarray = field(default_factory=lambda: np.zeros(3))
    up: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))
    fov: float = 50.0  # degrees

    def __post_init__(self):
        self.position = np.asarray(self.position, dtype=np.float64).reshape(3)
        self.look_at = np.asarray(self.look_at, dtype=np.float64).reshape(3)
        self.up = np.asarray(self.up, dtype=np.float64).reshape(3)
        if not (0.0 < self.fov < 180.0):
            raise ValueError("fov must be in (0, 180) degrees")

    def __eq__(self, other):
        return (
            isinstance(other, Camera)
            and np.array_equal(self.position, other.position)
            and np.array_equal(self.look_at, other.look_at)
            and np.array_equal(self.up, other.up)
            and self.fov == other.fov
        )


class SceneDocument:
    """Camera, lighting, objects, robots and their animation tracks."""

    def __init__(
        self,
        background: tuple[int, int, int] = (18, 20, 26),
        ambient_light_intensity: float = 1.0,
        camera: Camera | None = None,
        viewport: tuple[int, int] = (960, 540),
        grid_visible: bool = True,
    ):
        self.version = DOC_VERSION
        self.background = tuple(int(c) for c in background)
        if any(c < 0 or c > 255 for c in self.background) or len(self.background) != 3:
            raise ValueError("background must be three 0-255 components")
        if not (0.0 <= ambient_light_intensity <= 10.0):
            raise ValueError("ambient_light_intensity must be within [0, 10]")
        self.ambient_light_intensity = float(ambient_light_intensity)
        self.camera = camera or Camera()
        self.viewport = (int(viewport[0]), int(viewport[1]))
        if min(self.viewport) <= 0:
            raise ValueError("viewport must be positive")
        self.grid_visible = bool(grid_visible)
        self.objects: dict[str, SceneObject] = {}
        self.robots: dict[str, RobotVisual] = {}
        self.tracks: dict[str, Track] = {}
        self.duration = 0.0

    # -- construction --------------------------------------------------------

    def _claim_ids(self, ids: list[str]) -> None:
        existing = set(self.robots)
        for obj in self.objects.values():
            existing.update(obj.all_ids())
        for i in ids:
            if i in existing:
                raise ValueError(f"id {i!r} already present in document")
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate ids within one object tree")

    def add_object(self, obj: SceneObject) -> "SceneDocument":
        self._claim_ids(obj.all_ids())
        self.objects[obj.id] = obj
        return self

    def add_robot(self, visual: RobotVisual) -> "SceneDocument":
        # snapshot the model so later mutations of the caller's copy do not
        # silently rewrite the document
        self._claim_ids([visual.id])
        self.robots[visual.id] = RobotVisual(
            visual.id, visual.model.copy(), visual.link_style, visual.material
        )
        return self

    def set_pose_at(self, object_id: str, t: float, pose: Htm) -> "SceneDocument":
        if object_id not in self.objects:
            raise ValueError(f"unknown object id {object_id!r}")
        pose = check_htm(pose)
        track = self.tracks.get(object_id)
        if track is None:
            track = self.tracks[object_id] = Track(object_id, POSE_TRACK)
        elif track.kind != POSE_TRACK:
            raise ValueError("cannot mix pose and configuration keys in one track")
        track.insert(float(t), pose)
        self.duration = max(self.duration, float(t))
        return self

    def set_config_at(self, robot_id: str, t: float, q) -> "SceneDocument":
        visual = self.robots.get(robot_id)
        if visual is None:
            raise ValueError(f"unknown robot id {robot_id!r}")
        q = visual.model._check_q(q)
        track = self.tracks.get(robot_id)
        if track is None:
            track = self.tracks[robot_id] = Track(robot_id, CONFIG_TRACK)
        elif track.kind != CONFIG_TRACK:
            raise ValueError("cannot mix pose and configuration keys in one track")
        track.insert(float(t), q)
        self.duration = max(self.duration, float(t))
        return self

    def set_duration(self, duration: float) -> "SceneDocument":
        max_key = max((tr.keys[-1][0] for tr in self.tracks.values() if tr.keys), default=0.0)
        if duration < max_key:
            raise ValueError("duration must cover every keyframe")
        self.duration = float(duration)
        return self

    # -- queries --------------------------------------------------------------

    def get_object(self, object_id: str) -> SceneObject:
        return self.objects[object_id]

    def get_robot(self, robot_id: str) -> RobotVisual:
        return self.robots[robot_id]

    def leaf_count(self) -> int:
        return sum(o.leaf_count() for o in self.objects.values())

    def robot_sample_ids(self, robot_id: str) -> list[str]:
        n = self.robots[robot_id].model.dof
        return [f"{robot_id}/link{i}" for i in range(n + 1)] + [f"{robot_id}/ee"]

    def sample(self, t: float) -> dict[str, Htm]:
        """World poses of every object at time t (sample-and-hold).

        Robots expand to per-link frame poses named "<id>/link<i>" (link0 is
        the base) plus "<id>/ee".
        """
        if not _finite(t) or t < 0.0 or t > self.duration:
            raise ValueError(f"sample time {t} outside [0, {self.duration}]")
        out: dict[str, Htm] = {}
        for oid, obj in self.objects.items():
            track = self.tracks.get(oid)
            value = track.value_at(t) if track else None
            out[oid] = obj.initial_pose if value is None else value
        for rid, visual in self.robots.items():
            track = self.tracks.get(rid)
            value = track.value_at(t) if track else None
            q = visual.model.q if value is None else value
            frames = visual.model.frames(q)
            for i in range(len(frames) - 1):
                out[f"{rid}/link{i}"] = frames[i]
            out[f"{rid}/ee"] = frames[-1]
        return out

    def validate(self) -> None:
        """Check document invariants; raises ValueError on violation."""
        ids: list[str] = list(self.robots)
        for obj in self.objects.values():
            ids.extend(obj.all_ids())
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate ids in document")
        for tid, track in self.tracks.items():
            if tid != track.object_id:
                raise ValueError("track registered under a foreign id")
            if tid not in self.objects and tid not in self.robots:
                raise ValueError(f"track references unknown id {tid!r}")
            if track.kind == CONFIG_TRACK and tid not in self.robots:
                raise ValueError("configuration track on a non-robot")
            times = [k[0] for k in track.keys]
            if any(b <= a for a, b in zip(times, times[1:])):
                raise ValueError("track times must be strictly increasing")
            if times and times[-1] > self.duration:
                raise ValueError("duration must cover every keyframe")

    def __eq__(self, other):
        return (
            isinstance(other, SceneDocument)
            and self.version == other.version
            and self.background == other.background
            and self.ambient_light_intensity == other.ambient_light_intensity
            and self.camera == other.camera
            and self.viewport == other.viewport
            and self.grid_visible == other.grid_visible
            and self.duration == other.duration
            and self.objects == other.objects
            and self.robots == other.robots
            and self.tracks == other.tracks
        )
