"""Built-in showcase documents used by the command-line demos and tests."""

from __future__ import annotations

import math

import numpy as np

from .kinematics import IkParams, RobotModel, create_kr5_like, create_planar_2r
from .linalg import rotz, trn
from .pedestrians import CrowdWorld, make_evacuation, record_crowd
from .scene import (
    Ball,
    Box,
    Camera,
    Cylinder,
    FrameAxes,
    Material,
    RobotVisual,
    SceneDocument,
    SceneObject,
    Track,
)

_PALETTE = [
    (229, 87, 64),
    (64, 150, 229),
    (90, 200, 120),
    (240, 190, 70),
    (170, 110, 220),
    (70, 210, 200),
]


def _color(i: int) -> tuple[int, int, int]:
    return _PALETTE[i % len(_PALETTE)]


def dh_demo_document(rate_hz: float = 20.0, dwell: float = 2.0) -> SceneDocument:
    """Joint-by-joint sweep with a coordinate frame riding on every link."""
    model = create_kr5_like()
    doc = SceneDocument(camera=Camera(position=(2.2, 2.2, 1.6)))
    doc.add_robot(RobotVisual("robot", model, material=Material(color=(150, 160, 175))))
    n = model.dof
    for i in range(1, n + 1):
        doc.add_object(
            SceneObject(f"dh_frame{i}", FrameAxes(0.14), material=Material(color=_color(i - 1)))
        )
    steps = max(2, int(round(dwell * rate_hz)))
    amplitudes = np.minimum(0.8, np.minimum(-model.q_min, model.q_max))
    q = np.zeros(n)
    t = 0.0
    for joint in range(n):
        for s in range(steps):
            q[joint] = amplitudes[joint] * math.sin(2.0 * math.pi * s / steps)
            doc.set_config_at("robot", t, q)
            frames = model.frames(q)
            for i in range(1, n + 1):
                doc.set_pose_at(f"dh_frame{i}", t, frames[i])
            t += 1.0 / rate_hz
        q[joint] = 0.0
    doc.set_duration(t)
    return doc


def ik_demo_document(seed: int = 0, targets: int = 4, rate_hz: float = 20.0) -> SceneDocument:
    """Reach sequence: the arm joint-interpolates between IK solutions for
    reachable targets marked with frames."""
    model = create_kr5_like()
    rng = np.random.default_rng(seed)
    doc = SceneDocument(camera=Camera(position=(2.4, 2.4, 1.8)))
    doc.add_robot(RobotVisual("robot", model, material=Material(color=(150, 160, 175))))
    goals = []
    for k in range(targets):
        q_goal = rng.uniform(model.q_min, model.q_max) * 0.5
        pose = model.fkm(q_goal)
        goals.append(pose)
        doc.add_object(
            SceneObject(f"target{k}", FrameAxes(0.1), material=Material(color=_color(k)), initial_pose=pose)
        )
    q = np.zeros(model.dof)
    t = 0.0
    leg = 2.0
    for pose in goals:
        q_next = model.ikm(pose, q0=q, params=IkParams(seed=seed))
        steps = int(leg * rate_hz)
        for s in range(1, steps + 1):
            doc.set_config_at("robot", t, q + (s / steps) * (q_next - q))
            t += 1.0 / rate_hz
        q = q_next
    doc.set_duration(t)
    return doc


def pickplace_document(rate_hz: float = 20.0) -> SceneDocument:
    """Catch-and-release: a planar arm grabs a box, carries it and sets it down."""
    model = create_planar_2r(1.0, 1.0)
    doc = SceneDocument(camera=Camera(position=(1.5, -2.6, 2.2)))
    doc.add_robot(RobotVisual("robot", model, material=Material(color=(150, 160, 175))))
    pick = trn((1.6, -0.6, 0.0)) @ rotz(-0.3590)
    place = trn((0.4, 1.7, 0.0)) @ rotz(1.7)
    box_pose = pick
    doc.add_object(
        SceneObject("box", Box(0.18, 0.18, 0.18), material=Material(color=_color(0)), initial_pose=pick)
    )
    q_home = np.array([0.0, 0.0])
    q_pick = model.ikm(pick, q0=q_home, position_only=True)
    q_place = model.ikm(place, q0=q_pick, position_only=True)

    t = 0.0
    leg = 2.0

    def joint_leg(q_from, q_to, carrying: bool):
        nonlocal t
        steps = int(leg * rate_hz)
        for s in range(1, steps + 1):
            qs = q_from + (s / steps) * (q_to - q_from)
            model.set_config(qs)
            doc.set_config_at("robot", t, qs)
            if carrying:
                doc.set_pose_at("box", t, model.attached_world_pose("box"))
            t += 1.0 / rate_hz

    joint_leg(q_home, q_pick, carrying=False)  # approach
    model.set_config(q_pick)
    model.attach("box", box_pose)
    joint_leg(q_pick, q_place, carrying=True)  # carry
    model.detach("box")
    joint_leg(q_place, q_home, carrying=False)  # retreat
    doc.set_duration(t)
    return doc


def evacuation_document(
    n: int = 30,
    room: tuple[float, float] = (8.0, 8.0),
    door_width: float = 1.2,
    seed: int = 42,
    dt: float = 0.01,
    t_end: float = 120.0,
    stride: int = 10,
) -> tuple[SceneDocument, CrowdWorld]:
    """Room-evacuation scene: wall boxes plus one animated cylinder per pedestrian."""
    world = make_evacuation(n, room, door_width, seed)
    doc = SceneDocument(
        camera=Camera(position=(0.0, -room[1] * 1.1, room[0] * 1.05), look_at=(0, 0, 0))
    )
    for i, wall in enumerate(world.walls):
        seg = wall.p1[:2] - wall.p0[:2]
        length = float(np.linalg.norm(seg))
        mid = (wall.p0[:2] + wall.p1[:2]) / 2.0
        angle = math.atan2(float(seg[1]), float(seg[0]))
        doc.add_object(
            SceneObject(
                f"wall{i}",
                Box(length, 0.08, 1.0),
                material=Material(color=(120, 124, 132)),
                initial_pose=trn((mid[0], mid[1], 0.5)) @ rotz(angle),
            )
        )
    for i, ped in enumerate(world.pedestrians):
        doc.add_object(
            SceneObject(
                ped.id,
                Cylinder(ped.radius, 1.7),
                material=Material(color=_color(i)),
                initial_pose=trn(ped.position),
            )
        )
    tracks = record_crowd(world, dt, t_end, stride)
    for pid, keys in tracks.items():
        for t, pose in keys:
            doc.set_pose_at(pid, t, pose)
    return doc, world


DEMOS = {
    "dh": dh_demo_document,
    "ik": ik_demo_document,
    "pickplace": pickplace_document,
}
