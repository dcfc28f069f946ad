import math

import numpy as np
import pytest

from kinesim.errors import CapacityError
from kinesim.pedestrians import (
    CrowdWorld,
    ExitSegment,
    Pedestrian,
    SfmParams,
    WallSegment,
    make_evacuation,
    record_crowd,
    social_force,
    step,
)


def corridor_world(length=10.0):
    """Single pedestrian, straight run to an absorbing exit at x = length."""
    ped = Pedestrian(
        "runner",
        (0.0, 0.0, 0.0),
        desired_speed=1.0,
        waypoints=[(length, 0.0, 0.0), (length + 1.5, 0.0, 0.0)],
    )
    door = ExitSegment(WallSegment((length, -1.0, 0.0), (length, 1.0, 0.0)))
    return CrowdWorld(pedestrians=[ped], exits=[door])


class TestSocialForce:
    def test_rest_drive_magnitude(self):
        ped = Pedestrian("a", (0, 0, 0), mass=80.0, desired_speed=1.0, waypoints=[(5, 0, 0)])
        world = CrowdWorld(pedestrians=[ped], params=SfmParams(relax_time=0.5))
        f = social_force(ped, world)
        assert np.allclose(f, [160.0, 0.0, 0.0], atol=1e-12)

    def test_equilibrium_at_desired_velocity(self):
        ped = Pedestrian(
            "a", (0, 0, 0), velocity=(1.0, 0, 0), desired_speed=1.0, waypoints=[(5, 0, 0)]
        )
        world = CrowdWorld(pedestrians=[ped])
        assert np.abs(social_force(ped, world)).max() == 0.0

    def test_exhausted_waypoints_pure_damping(self):
        ped = Pedestrian("a", (0, 0, 0), velocity=(0.8, 0, 0), mass=80.0)
        world = CrowdWorld(pedestrians=[ped], params=SfmParams(relax_time=0.5))
        assert np.allclose(social_force(ped, world), [-128.0, 0.0, 0.0], atol=1e-12)

    def test_mirrored_pair_forces(self):
        a = Pedestrian("a", (-0.4, 0, 0), desired_speed=1.0, waypoints=[(5, 0, 0)])
        b = Pedestrian("b", (0.4, 0, 0), desired_speed=1.0, waypoints=[(-5, 0, 0)])
        world = CrowdWorld(pedestrians=[a, b])
        fa, fb = social_force(a, world), social_force(b, world)
        assert np.array_equal(fa, -fb)
        assert abs(fa[1]) == 0.0

    def test_wall_repulsion_direction(self):
        ped = Pedestrian("a", (0.0, 0.3, 0.0))
        wall = WallSegment((-5, 0, 0), (5, 0, 0))
        world = CrowdWorld(pedestrians=[ped], walls=[wall])
        f = social_force(ped, world)
        assert f[1] > 0.0 and f[0] == 0.0

    def test_foreign_pedestrian_rejected(self):
        world = CrowdWorld(pedestrians=[Pedestrian("a", (0, 0, 0))])
        with pytest.raises(ValueError):
            social_force(Pedestrian("ghost", (1, 1, 0)), world)


class TestStep:
    def test_empty_world_advances_time_only(self):
        world = CrowdWorld()
        step(world, 0.01)
        assert world.t == 0.01

    def test_corridor_exit_time_bound(self):
        world = corridor_world(10.0)
        tau = world.params.relax_time
        while world.active_count() > 0:
            step(world, 0.01)
            assert world.t < 20.0
        assert 10.0 <= world.t <= 10.0 + 5 * tau

    def test_isolated_speed_relaxation(self):
        world = corridor_world(100.0)
        ped = world.pedestrians[0]
        tau = world.params.relax_time
        while world.t < 5 * tau:
            step(world, 0.01)
        speed = float(np.linalg.norm(ped.velocity))
        assert abs(speed - ped.desired_speed) < 0.01 * ped.desired_speed

    def test_speed_cap(self):
        params = SfmParams(max_speed_factor=1.3)
        a = Pedestrian("a", (-0.3, 0, 0), desired_speed=1.0, waypoints=[(5, 0, 0)])
        b = Pedestrian("b", (0.3, 0, 0), desired_speed=1.0, waypoints=[(-5, 0, 0)])
        world = CrowdWorld(pedestrians=[a, b], params=params)
        for _ in range(200):
            step(world, 0.01)
            for p in world.pedestrians:
                assert np.linalg.norm(p.velocity) <= 1.3 * p.desired_speed + 1e-12

    def test_active_count_non_increasing(self):
        world = make_evacuation(8, (6, 6), 1.2, seed=3)
        prev = world.active_count()
        for _ in range(3000):
            step(world, 0.01)
            cur = world.active_count()
            assert cur <= prev
            prev = cur

    def test_mirror_symmetry_preserved(self):
        a = Pedestrian("a", (-5.0, 0.2, 0), desired_speed=1.0, waypoints=[(5.0, -0.2, 0)])
        b = Pedestrian("b", (5.0, -0.2, 0), desired_speed=1.0, waypoints=[(-5.0, 0.2, 0)])
        world = CrowdWorld(pedestrians=[a, b])
        for _ in range(1000):
            step(world, 0.01)
            assert np.abs(a.position + b.position).max() < 1e-9
            assert np.abs(a.velocity + b.velocity).max() < 1e-9

    def test_no_wall_tunnelling(self):
        from kinesim.pedestrians import _segments_cross

        world = make_evacuation(12, (6, 6), 1.2, seed=9)
        prev = {p.id: p.position[:2].copy() for p in world.pedestrians}
        for _ in range(2500):
            step(world, 0.01)
            for p in world.pedestrians:
                if not p.active:
                    continue
                for wall in world.walls:
                    assert not _segments_cross(
                        prev[p.id], p.position[:2], wall.p0[:2], wall.p1[:2]
                    )
                prev[p.id] = p.position[:2].copy()


class TestMakeEvacuation:
    def test_empty_room_geometry(self):
        world = make_evacuation(0, (8, 8), 1.2, seed=1)
        assert len(world.walls) == 4
        assert len(world.exits) == 1 and world.exits[0].absorbing
        assert world.pedestrians == []

    def test_seed_determinism(self):
        w1 = make_evacuation(20, (8, 8), 1.2, seed=42)
        w2 = make_evacuation(20, (8, 8), 1.2, seed=42)
        for a, b in zip(w1.pedestrians, w2.pedestrians):
            assert np.array_equal(a.position, b.position)

    def test_non_overlapping_start(self):
        world = make_evacuation(25, (8, 8), 1.2, seed=5)
        peds = world.pedestrians
        for i in range(len(peds)):
            for j in range(i + 1, len(peds)):
                d = np.linalg.norm(peds[i].position - peds[j].position)
                assert d >= peds[i].radius + peds[j].radius

    def test_infeasible_packing_rejected(self):
        with pytest.raises(CapacityError):
            make_evacuation(200, (3, 3), 1.2, seed=0)

    def test_narrow_door_rejected(self):
        with pytest.raises(ValueError):
            make_evacuation(1, (8, 8), 0.4, seed=0)


class TestRecordCrowd:
    def test_zero_horizon_single_keyframe(self):
        world = make_evacuation(5, (6, 6), 1.2, seed=2)
        tracks = record_crowd(world, 0.01, 0.0)
        assert len(tracks) == 5
        assert all(len(keys) == 1 and keys[0][0] == 0.0 for keys in tracks.values())

    def test_keyframe_count_bound(self):
        world = make_evacuation(5, (6, 6), 1.2, seed=2)
        dt, t_end, stride = 0.01, 3.0, 7
        tracks = record_crowd(world, dt, t_end, stride)
        bound = math.floor(t_end / (dt * stride)) + 1
        assert all(len(keys) <= bound for keys in tracks.values())

    def test_tracks_reproduce_exit_order(self):
        world = make_evacuation(10, (6, 6), 1.2, seed=4)
        sim = make_evacuation(10, (6, 6), 1.2, seed=4)
        exit_time = {}
        while sim.active_count() > 0 and sim.t < 60.0:
            step(sim, 0.01)
            for p in sim.pedestrians:
                if not p.active and p.id not in exit_time:
                    exit_time[p.id] = sim.t
        tracks = record_crowd(world, 0.01, 60.0, stride=5)
        last_key = {pid: keys[-1][0] for pid, keys in tracks.items()}
        order_sim = sorted(exit_time, key=exit_time.get)
        order_trk = sorted(last_key, key=last_key.get)
        assert order_sim == order_trk
