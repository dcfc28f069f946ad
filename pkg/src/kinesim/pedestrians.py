"""Social-force crowd simulation on the z = 0 plane.

Agents are driven toward their current waypoint by a relaxation force and
repelled from each other and from wall segments by exponential terms; an
optional linear body-contact term activates on overlap. Integration is
semi-implicit Euler with a hard speed cap. Everything is deterministic for a
fixed seed: forces are evaluated with vectorized numpy in a fixed reduction
order and agents update in list order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError
from .linalg import trn

WAYPOINT_RADIUS = 0.3  # m, arrival threshold before advancing to the next goal


@dataclass
class SfmParams:
    """Social-force coefficients (canonical literature magnitudes)."""

    relax_time: float = 0.5  # s
    repulsion_strength: float = 2000.0  # N
    repulsion_range: float = 0.08  # m
    body_stiffness: float = 0.0  # N/m, 0 disables the contact term
    wall_strength: float = 2000.0  # N
    wall_range: float = 0.08  # m
    desired_speed_default: float = 1.0  # m/s
    max_speed_factor: float = 1.3

    def __post_init__(self):
        if self.relax_time <= 0 or self.repulsion_range <= 0 or self.wall_range <= 0:
            raise ValueError("relax_time and interaction ranges must be > 0")
        if self.repulsion_strength < 0 or self.wall_strength < 0 or self.body_stiffness < 0:
            raise ValueError("force magnitudes must be >= 0")
        if self.max_speed_factor < 1.0:
            raise ValueError("max_speed_factor must be >= 1")


@dataclass
class Pedestrian:
    id: str
    position: np.ndarray
    velocity: np.ndarray = field(default_factory=lambda: np.zeros(3))
    radius: float = 0.25
    mass: float = 80.0
    desired_speed: float = 1.0
    waypoints: list = field(default_factory=list)
    waypoint_index: int = 0
    active: bool = True

    def __post_init__(self):
        self.position = np.asarray(self.position, dtype=np.float64).reshape(3)
        self.velocity = np.asarray(self.velocity, dtype=np.float64).reshape(3)
        self.waypoints = [np.asarray(w, dtype=np.float64).reshape(3) for w in self.waypoints]
        if self.radius <= 0 or self.mass <= 0 or self.desired_speed < 0:
            raise ValueError("radius and mass must be > 0, desired_speed >= 0")

    def current_waypoint(self) -> np.ndarray | None:
        if self.waypoint_index < len(self.waypoints):
            return self.waypoints[self.waypoint_index]
        return None


@dataclass
class WallSegment:
    p0: np.ndarray
    p1: np.ndarray

    def __post_init__(self):
        self.p0 = np.asarray(self.p0, dtype=np.float64).reshape(3)
        self.p1 = np.asarray(self.p1, dtype=np.float64).reshape(3)
        if np.array_equal(self.p0, self.p1):
            raise ValueError("wall segment endpoints must differ")


@dataclass
class ExitSegment:
    segment: WallSegment
    absorbing: bool = True


@dataclass
class CrowdWorld:
    pedestrians: list[Pedestrian] = field(default_factory=list)
    walls: list[WallSegment] = field(default_factory=list)
    exits: list[ExitSegment] = field(default_factory=list)
    params: SfmParams = field(default_factory=SfmParams)
    t: float = 0.0

    def active_count(self) -> int:
        return sum(1 for p in self.pedestrians if p.active)


def _goal_direction(ped: Pedestrian) -> np.ndarray:
    wp = ped.current_waypoint()
    if wp is None:
        return np.zeros(2)
    d = wp[:2] - ped.position[:2]
    n = float(np.linalg.norm(d))
    if n < 1e-12:
        return np.zeros(2)
    return d / n


def _wall_closest_points(pos: np.ndarray, wall: WallSegment) -> np.ndarray:
    a, b = wall.p0[:2], wall.p1[:2]
    ab = b - a
    t = np.clip((pos - a) @ ab / float(ab @ ab), 0.0, 1.0)
    return a + t[:, None] * ab


def _active_forces(world: CrowdWorld) -> tuple[list[Pedestrian], np.ndarray]:
    """Forces (N, xy) on all active pedestrians, in pedestrian-list order."""
    params = world.params
    active = [p for p in world.pedestrians if p.active]
    m = len(active)
    if m == 0:
        return active, np.zeros((0, 2))
    pos = np.array([p.position[:2] for p in active])
    vel = np.array([p.velocity[:2] for p in active])
    rad = np.array([p.radius for p in active])
    mass = np.array([p.mass for p in active])

    goal = np.array([_goal_direction(p) for p in active])
    vdes = np.array([p.desired_speed for p in active])
    forces = mass[:, None] * (vdes[:, None] * goal - vel) / params.relax_time

    if m > 1:
        diff = pos[:, None, :] - pos[None, :, :]
        dist = np.linalg.norm(diff, axis=2)
        np.fill_diagonal(dist, 1.0)
        nhat = diff / dist[:, :, None]
        overlap = rad[:, None] + rad[None, :] - dist
        mag = params.repulsion_strength * np.exp(overlap / params.repulsion_range)
        if params.body_stiffness > 0.0:
            mag = mag + params.body_stiffness * np.clip(overlap, 0.0, None)
        np.fill_diagonal(mag, 0.0)
        forces = forces + (mag[:, :, None] * nhat).sum(axis=1)

    for wall in world.walls:
        c = _wall_closest_points(pos, wall)
        away = pos - c
        d = np.maximum(np.linalg.norm(away, axis=1), 1e-12)
        nhat = away / d[:, None]
        wmag = params.wall_strength * np.exp((rad - d) / params.wall_range)
        forces = forces + wmag[:, None] * nhat
    return active, forces


def social_force(ped: Pedestrian, world: CrowdWorld) -> np.ndarray:
    """Net force (N) on one active pedestrian of the world, z component zero."""
    if not ped.active:
        raise ValueError("social_force is defined for active pedestrians")
    active, forces = _active_forces(world)
    for i, p in enumerate(active):
        if p is ped:
            return np.array([forces[i, 0], forces[i, 1], 0.0])
    raise ValueError(f"pedestrian {ped.id!r} is not part of this world")


def _segments_cross(p: np.ndarray, q: np.ndarray, a: np.ndarray, b: np.ndarray) -> bool:
    def orient(u, v, w) -> float:
        return (v[0] - u[0]) * (w[1] - u[1]) - (v[1] - u[1]) * (w[0] - u[0])

    d1, d2 = orient(a, b, p), orient(a, b, q)
    d3, d4 = orient(p, q, a), orient(p, q, b)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)):
        return True
    # touching counts as crossing (degenerate but absorbing)
    for u, v, w in ((a, b, p), (a, b, q), (p, q, a), (p, q, b)):
        if orient(u, v, w) == 0.0 and min(u[0], v[0]) <= w[0] <= max(u[0], v[0]) and min(
            u[1], v[1]
        ) <= w[1] <= max(u[1], v[1]):
            return True
    return False


def step(world: CrowdWorld, dt: float) -> CrowdWorld:
    """Advance the crowd one semi-implicit Euler step of length dt."""
    if dt <= 0.0:
        raise ValueError("dt must be > 0")
    active, forces = _active_forces(world)
    params = world.params
    for i, ped in enumerate(active):
        v = ped.velocity[:2] + forces[i] / ped.mass * dt
        speed = float(np.linalg.norm(v))
        vmax = params.max_speed_factor * ped.desired_speed
        if speed > vmax:
            v = v * (vmax / speed)
        old = ped.position[:2]
        new = old + v * dt
        wp = ped.current_waypoint()
        if wp is not None and float(np.linalg.norm(new - wp[:2])) < WAYPOINT_RADIUS:
            ped.waypoint_index += 1
        for ex in world.exits:
            if ex.absorbing and _segments_cross(old, new, ex.segment.p0[:2], ex.segment.p1[:2]):
                ped.active = False
        ped.position = np.array([new[0], new[1], 0.0])
        ped.velocity = np.array([v[0], v[1], 0.0])
    world.t += dt
    return world


def make_evacuation(
    n: int,
    room: tuple[float, float] = (8.0, 8.0),
    door_width: float = 1.2,
    seed: int = 0,
    params: SfmParams | None = None,
    radius: float = 0.25,
) -> CrowdWorld:
    """Rectangular room with a door gap at the south end of the east wall.

    Four wall segments; the exit segment spanning the gap is absorbing.
    Pedestrians get seeded non-overlapping positions and head for the door
    center, then a point outside.
    """
    params = params or SfmParams()
    if n < 0:
        raise ValueError("n must be >= 0")
    if door_width <= 2.0 * radius:
        raise ValueError("door_width must exceed the pedestrian diameter")
    w, h = float(room[0]), float(room[1])
    hw, hh = w / 2.0, h / 2.0
    if w <= 4 * radius or h <= 4 * radius:
        raise ValueError("room too small")
    walls = [
        WallSegment((-hw, -hh, 0), (-hw, hh, 0)),
        WallSegment((-hw, hh, 0), (hw, hh, 0)),
        WallSegment((-hw, -hh, 0), (hw, -hh, 0)),
        WallSegment((hw, -hh + door_width, 0), (hw, hh, 0)),
    ]
    door_y = -hh + door_width / 2.0
    exits = [ExitSegment(WallSegment((hw, -hh, 0), (hw, -hh + door_width, 0)))]
    waypoints = [(hw, door_y, 0.0), (hw + 1.5, door_y, 0.0)]

    rng = np.random.default_rng(seed)
    margin = radius + 0.05
    placed: list[np.ndarray] = []
    peds: list[Pedestrian] = []
    for k in range(n):
        for _ in range(1000):
            p = rng.uniform((-hw + margin, -hh + margin), (hw - margin, hh - margin))
            if all(float(np.linalg.norm(p - q)) >= 2.0 * radius + 0.05 for q in placed):
                placed.append(p)
                break
        else:
            raise CapacityError(f"could not place pedestrian {k} without overlap")
        peds.append(
            Pedestrian(
                id=f"ped{k}",
                position=(p[0], p[1], 0.0),
                radius=radius,
                desired_speed=params.desired_speed_default,
                waypoints=list(waypoints),
            )
        )
    return CrowdWorld(pedestrians=peds, walls=walls, exits=exits, params=params)


def record_crowd(
    world: CrowdWorld, dt: float, t_end: float, stride: int = 10
) -> dict[str, list[tuple[float, np.ndarray]]]:
    """Run the simulation to t_end, emitting a pose keyframe every `stride` steps.

    Returns {pedestrian id: [(t, pose), ...]}; inactive pedestrians stop
    emitting. Poses are pure translations of the ground position.
    """
    if dt <= 0.0 or t_end < 0.0 or stride < 1:
        raise ValueError("dt > 0, t_end >= 0 and stride >= 1 required")
    tracks: dict[str, list[tuple[float, np.ndarray]]] = {
        p.id: [(world.t, trn(p.position))] for p in world.pedestrians if p.active
    }
    steps = int(round(t_end / dt))
    for k in range(1, steps + 1):
        step(world, dt)
        if k % stride == 0:
            for p in world.pedestrians:
                if p.active:
                    tracks[p.id].append((world.t, trn(p.position)))
    return tracks
