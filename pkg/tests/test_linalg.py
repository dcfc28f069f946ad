import math

import numpy as np
import pytest

from kinesim.errors import SingularMatrixError
from kinesim.linalg import (
    check_htm,
    dp_inv,
    euler_angles,
    htm_rand,
    inv_htm,
    num_jac,
    portable_cos,
    portable_sin,
    rot,
    rotation_vector,
    rotx,
    roty,
    rotz,
    skew,
    trn,
)


def random_htm(rng):
    return htm_rand(rng, trn_range=2.0, rot_enabled=True)


class TestRot:
    def test_quarter_turn_maps_x_to_y(self):
        h = rot((0, 0, 1), math.pi / 2)
        assert np.allclose(h[:3, :3] @ [1, 0, 0], [0, 1, 0], atol=1e-15)

    def test_axis_normalization(self):
        assert np.array_equal(rot((0, 0, 2), math.pi / 2), rot((0, 0, 1), math.pi / 2))

    def test_zero_angle_is_identity(self):
        assert np.allclose(rot((1, 2, -3), 0.0), np.eye(4), atol=0)

    def test_zero_axis_rejected(self):
        with pytest.raises(ValueError):
            rot((0, 0, 0), 1.0)

    def test_axis_aliases(self):
        for alias, axis in ((rotx, (1, 0, 0)), (roty, (0, 1, 0)), (rotz, (0, 0, 1))):
            assert np.array_equal(alias(0.37), rot(axis, 0.37))


class TestTrn:
    def test_zero_is_identity(self):
        assert np.array_equal(trn((0, 0, 0)), np.eye(4))

    def test_inverse_by_negation(self):
        h = trn((1, 2, 3)) @ trn((-1, -2, -3))
        assert np.allclose(h, np.eye(4), atol=0)

    def test_applies_to_point(self):
        p = trn((1, 0, 0)) @ np.array([0, 0, 0, 1.0])
        assert np.array_equal(p[:3], [1, 0, 0])

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            trn((math.nan, 0, 0))


class TestInvHtm:
    def test_identity(self):
        assert np.array_equal(inv_htm(np.eye(4)), np.eye(4))

    def test_translation(self):
        assert np.allclose(inv_htm(trn((1, 2, 3))), trn((-1, -2, -3)), atol=0)

    def test_rotation_inverse(self):
        assert np.allclose(inv_htm(rotz(0.7)), rotz(-0.7), atol=1e-15)

    def test_invalid_input_rejected(self):
        bad = np.eye(4)
        bad[0, 0] = 2.0
        with pytest.raises(ValueError):
            inv_htm(bad)

    def test_property_inverse_of_random(self):
        rng = np.random.default_rng(1)
        for _ in range(1000):
            h = random_htm(rng)
            assert np.linalg.norm(h @ inv_htm(h) - np.eye(4)) < 1e-12


class TestSkew:
    def test_basis_cross(self):
        assert np.array_equal(skew((1, 0, 0)) @ [0, 1, 0], [0, 0, 1])

    def test_self_cross_is_zero(self):
        v = np.array([3.0, -2.0, 5.0])
        assert np.array_equal(skew(v) @ v, np.zeros(3))

    def test_zero_vector(self):
        assert np.array_equal(skew((0, 0, 0)), np.zeros((3, 3)))

    def test_property_matches_cross(self):
        rng = np.random.default_rng(2)
        for _ in range(1000):
            v, w = rng.normal(size=3), rng.normal(size=3)
            assert np.all(np.abs(skew(v) @ w - np.cross(v, w)) < 1e-12)
            assert np.array_equal(skew(v).T, -skew(v))


def full_row_rank(rng, rows, cols, smin=0.15, smax=2.0):
    """Random rows x cols matrix with singular values in [smin, smax]."""
    a = rng.normal(size=(rows, cols))
    u, _, vt = np.linalg.svd(a, full_matrices=False)
    s = rng.uniform(smin, smax, size=min(rows, cols))
    return u @ np.diag(s) @ vt


class TestDpInv:
    def test_scalar_inverse(self):
        assert np.array_equal(dp_inv(np.array([[2.0]]), 0.0), [[0.5]])

    def test_scalar_damped(self):
        assert np.array_equal(dp_inv(np.array([[1.0]]), 1.0), [[0.5]])

    def test_zero_matrix_damped(self):
        out = dp_inv(np.zeros((2, 3)), 0.5)
        assert out.shape == (3, 2)
        assert np.array_equal(out, np.zeros((3, 2)))

    def test_singular_undamped_rejected(self):
        with pytest.raises(SingularMatrixError):
            dp_inv(np.zeros((2, 3)), 0.0)

    def test_property_damping_monotone_and_right_inverse(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            rows = int(rng.integers(1, 5))
            cols = int(rng.integers(rows, 7))
            m = full_row_rank(rng, rows, cols)
            exact = dp_inv(m, 0.0)
            assert np.linalg.norm(m @ exact - np.eye(rows)) < 1e-8
            errs = [np.linalg.norm(dp_inv(m, e) - exact) for e in (1e-1, 1e-2, 1e-3, 1e-4)]
            assert all(a >= b for a, b in zip(errs, errs[1:]))
            assert errs[-1] < 1e-4


class TestNumJac:
    def test_linear_function(self):
        a = np.array([[1.0, 2.0], [3.0, 4.0]])
        j = num_jac(lambda x: a @ x, np.array([0.3, -0.7]), 1e-6)
        assert np.all(np.abs(j - a) < 1e-9)

    def test_scalar_square(self):
        j = num_jac(lambda x: np.array([x[0] ** 2]), np.array([1.0]), 1e-6)
        assert abs(j[0, 0] - 2.0) < 1e-9

    def test_quadratic_exactness(self):
        # central differences are exact on degree <= 2 up to roundoff
        rng = np.random.default_rng(4)
        a = rng.normal(size=(3, 3))
        b = rng.normal(size=(3, 3))

        def f(x):
            return a @ x + 0.5 * (x @ b @ x) * np.ones(3)

        x0 = rng.normal(size=3)
        expected = a + 0.5 * np.outer(np.ones(3), (b + b.T) @ x0)
        j = num_jac(f, x0, 1e-5)
        assert np.all(np.abs(j - expected) < 1e-8)

    def test_non_finite_propagates(self):
        with pytest.raises(FloatingPointError):
            num_jac(lambda x: np.array([math.inf]), np.array([0.0]), 1e-6)


class TestEulerAngles:
    def test_identity(self):
        assert euler_angles(np.eye(4)) == (0.0, 0.0, 0.0)

    def test_single_axis(self):
        r, p, y = euler_angles(rotx(0.3))
        assert abs(r - 0.3) < 1e-15 and p == 0.0 and y == 0.0

    def test_round_trip(self):
        r0, p0, y0 = 0.2, 0.4, -1.1
        r, p, y = euler_angles(rotz(y0) @ roty(p0) @ rotx(r0))
        assert abs(r - r0) < 1e-9 and abs(p - p0) < 1e-9 and abs(y - y0) < 1e-9

    def test_gimbal_lock_convention(self):
        h = rotz(0.5) @ roty(math.pi / 2) @ rotx(0.2)
        r, p, y = euler_angles(h)
        assert r == 0.0
        assert abs(p - math.pi / 2) < 1e-9
        rebuilt = rotz(y) @ roty(p) @ rotx(r)
        assert np.linalg.norm(rebuilt - h) < 1e-7

    def test_property_round_trip_excluding_lock(self):
        rng = np.random.default_rng(5)
        count = 0
        while count < 500:
            r0 = rng.uniform(-math.pi + 1e-6, math.pi)
            p0 = rng.uniform(-math.pi / 2 + 1e-3, math.pi / 2 - 1e-3)
            y0 = rng.uniform(-math.pi + 1e-6, math.pi)
            r, p, y = euler_angles(rotz(y0) @ roty(p0) @ rotx(r0))
            assert abs(r - r0) < 1e-9 and abs(p - p0) < 1e-9 and abs(y - y0) < 1e-9
            count += 1


class TestHtmRand:
    def test_degenerate_is_identity(self):
        assert np.array_equal(htm_rand(0, trn_range=0.0, rot_enabled=False), np.eye(4))

    def test_outputs_are_valid(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            check_htm(htm_rand(rng, trn_range=3.0, rot_enabled=True))

    def test_seed_determinism(self):
        assert np.array_equal(htm_rand(123, 1.0, True), htm_rand(123, 1.0, True))

    def test_negative_range_rejected(self):
        with pytest.raises(ValueError):
            htm_rand(0, trn_range=-1.0)


class TestPortableTrig:
    def test_matches_libm(self):
        rng = np.random.default_rng(7)
        for x in rng.uniform(-50, 50, 2000):
            assert abs(portable_sin(x) - math.sin(x)) < 3e-16
            assert abs(portable_cos(x) - math.cos(x)) < 3e-16

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            portable_sin(math.inf)


class TestRotationVector:
    def test_round_trip(self):
        rng = np.random.default_rng(8)
        for _ in range(200):
            axis = rng.normal(size=3)
            axis /= np.linalg.norm(axis)
            angle = rng.uniform(1e-6, math.pi - 1e-3)
            v = rotation_vector(rot(axis, angle)[:3, :3])
            assert np.linalg.norm(v - angle * axis) < 1e-8
