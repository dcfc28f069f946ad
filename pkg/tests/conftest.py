import math
from pathlib import Path

import numpy as np
import pytest

from kinesim.kinematics import create_generic_6r, create_planar_2r
from kinesim.linalg import htm_rand
from kinesim.scene import (
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
)

DATA_DIR = Path(__file__).parent / "data"


def random_material(rng) -> Material:
    return Material(
        color=tuple(int(c) for c in rng.integers(0, 256, 3)),
        metalness=float(rng.uniform(0, 1)),
        roughness=float(rng.uniform(0, 1)),
        opacity=float(rng.uniform(0.2, 1)),
    )


def random_shape(rng, depth: int = 0):
    kinds = ["box", "ball", "cylinder", "cone", "frame", "point_cloud"]
    if depth < 2:
        kinds.append("group")
    kind = kinds[int(rng.integers(0, len(kinds)))]
    if kind == "box":
        return Box(*(float(v) for v in rng.uniform(0.05, 2.0, 3)))
    if kind == "ball":
        return Ball(float(rng.uniform(0.05, 1.0)))
    if kind == "cylinder":
        return Cylinder(float(rng.uniform(0.05, 0.5)), float(rng.uniform(0.1, 2.0)))
    if kind == "cone":
        return Cone(float(rng.uniform(0.05, 0.5)), float(rng.uniform(0.1, 2.0)))
    if kind == "frame":
        return FrameAxes(float(rng.uniform(0.05, 0.5)))
    if kind == "point_cloud":
        return PointCloud(rng.uniform(-2, 2, (int(rng.integers(1, 30)), 3)), float(rng.uniform(0.005, 0.1)))
    children = [
        SceneObject(f"child{rng.integers(1e9)}_{i}", random_shape(rng, depth + 1), random_material(rng))
        for i in range(int(rng.integers(1, 4)))
    ]
    offsets = [htm_rand(rng, 1.0, True) for _ in children]
    return Group(children, offsets)


def random_document(seed: int, objects: int = 8, robots: int = 1, keys: int = 5) -> SceneDocument:
    """Seeded random document exercising every shape, robots and both track kinds."""
    rng = np.random.default_rng(seed)
    doc = SceneDocument(
        background=tuple(int(c) for c in rng.integers(0, 256, 3)),
        ambient_light_intensity=float(rng.uniform(0, 10)),
        camera=Camera(
            position=rng.uniform(-5, 5, 3),
            look_at=rng.uniform(-1, 1, 3),
            up=(0, 0, 1),
            fov=float(rng.uniform(20, 120)),
        ),
        viewport=(int(rng.integers(100, 1920)), int(rng.integers(100, 1080))),
        grid_visible=bool(rng.integers(0, 2)),
    )
    for i in range(objects):
        doc.add_object(
            SceneObject(
                f"obj{i}", random_shape(rng), random_material(rng), htm_rand(rng, 2.0, True)
            )
        )
        for k in range(int(rng.integers(0, keys + 1))):
            doc.set_pose_at(f"obj{i}", float(rng.uniform(0, 10)), htm_rand(rng, 2.0, True))
    for i in range(robots):
        model = create_generic_6r() if i % 2 == 0 else create_planar_2r(1.0, 0.7)
        model.set_config(rng.uniform(model.q_min, model.q_max))
        doc.add_robot(RobotVisual(f"rob{i}", model, material=random_material(rng)))
        for k in range(int(rng.integers(0, keys + 1))):
            doc.set_config_at(
                f"rob{i}", float(rng.uniform(0, 10)), rng.uniform(model.q_min, model.q_max)
            )
    doc.set_duration(doc.duration + float(rng.uniform(0, 2)))
    return doc


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR
