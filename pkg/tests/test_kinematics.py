import math
import time

import numpy as np
import pytest

from kinesim.errors import IkFailureError, JointLimitError
from kinesim.kinematics import (
    PRISMATIC,
    REVOLUTE,
    DhLink,
    IkParams,
    LinkInertia,
    RobotModel,
    create_generic_6r,
    create_kr5_like,
    create_planar_2r,
    create_scara,
)
from kinesim.linalg import num_jac, rotz, skew, trn


def planar_2r():
    return create_planar_2r(1.0, 1.0)


def random_q(model, rng):
    return rng.uniform(model.q_min, model.q_max)


class TestFkm:
    def test_planar_fully_extended(self):
        assert np.allclose(planar_2r().fkm([0, 0])[:3, 3], [2, 0, 0], atol=1e-15)

    def test_planar_quarter_turn(self):
        assert np.allclose(planar_2r().fkm([math.pi / 2, 0])[:3, 3], [0, 2, 0], atol=1e-14)

    def test_planar_elbow_bend(self):
        assert np.allclose(planar_2r().fkm([0, math.pi / 2])[:3, 3], [1, 1, 0], atol=1e-14)

    def test_out_of_limit_names_joint(self):
        with pytest.raises(JointLimitError) as err:
            planar_2r().fkm([0, 4.0])
        assert err.value.joint == 1

    def test_closed_form_oracle(self):
        # independent planar closed form: x = l1 c1 + l2 c12, y = l1 s1 + l2 s12
        model = create_planar_2r(0.7, 1.3)
        rng = np.random.default_rng(11)
        for _ in range(200):
            q1, q2 = rng.uniform(-math.pi, math.pi, 2)
            p = model.fkm([q1, q2])[:3, 3]
            x = 0.7 * math.cos(q1) + 1.3 * math.cos(q1 + q2)
            y = 0.7 * math.sin(q1) + 1.3 * math.sin(q1 + q2)
            assert abs(p[0] - x) < 1e-12 and abs(p[1] - y) < 1e-12 and abs(p[2]) < 1e-12

    def test_chain_consistency(self):
        model = create_generic_6r()
        rng = np.random.default_rng(12)
        for _ in range(500):
            q = random_q(model, rng)
            for i in range(1, model.dof + 1):
                prev = model.fkm(q, upto=i - 1)
                step = np.array(model.links[i - 1].transform_rows(float(q[i - 1])))
                assert np.abs(prev @ step - model.fkm(q, upto=i)).max() < 1e-12

    def test_base_and_tool_applied(self):
        model = planar_2r()
        model.base = trn((0, 0, 0.5))
        model.tool = trn((0.1, 0, 0))
        assert np.allclose(model.fkm([0, 0])[:3, 3], [2.1, 0, 0.5], atol=1e-15)


class TestJacGeo:
    def test_planar_at_zero(self):
        jac, _ = planar_2r().jac_geo([0, 0])
        assert np.allclose(jac[:3, 0], [0, 2, 0], atol=1e-15)
        assert np.allclose(jac[:3, 1], [0, 1, 0], atol=1e-15)
        assert np.allclose(jac[3:, 0], [0, 0, 1], atol=0)
        assert np.allclose(jac[3:, 1], [0, 0, 1], atol=0)

    def test_single_prismatic_along_z(self):
        model = RobotModel("lift", [DhLink(0, 0, 0, 0, PRISMATIC, -1.0, 1.0)])
        jac, _ = model.jac_geo([0.3])
        assert np.array_equal(jac[:, 0], [0, 0, 1, 0, 0, 0])

    def test_translation_rows_match_num_jac(self):
        model = create_generic_6r()
        rng = np.random.default_rng(13)
        for _ in range(50):
            q = random_q(model, rng) * 0.9
            jac, _ = model.jac_geo(q)
            fd = num_jac(lambda qq: model.fkm(qq)[:3, 3], q, 1e-6)
            assert np.abs(jac[:3] - fd).max() < 1e-6

    def test_angular_rows_match_finite_differences(self):
        # d/dq of R gives omega through vee(dR R^T)
        model = create_generic_6r()
        rng = np.random.default_rng(14)
        delta = 1e-6
        for _ in range(25):
            q = random_q(model, rng) * 0.9
            jac, frames = model.jac_geo(q)
            r0 = frames[-1][:3, :3]
            for j in range(model.dof):
                dq = np.zeros(model.dof)
                dq[j] = delta
                r_hi = model.fkm(q + dq)[:3, :3]
                r_lo = model.fkm(q - dq)[:3, :3]
                w_mat = (r_hi - r_lo) / (2 * delta) @ r0.T
                w = np.array([w_mat[2, 1], w_mat[0, 2], w_mat[1, 0]])
                assert np.linalg.norm(jac[3:, j] - w) < 1e-5


class TestTaskError:
    def test_zero_residual_at_target(self):
        model = create_generic_6r()
        q = np.full(6, 0.3)
        r, _ = model.task_error(model.fkm(q), q)
        assert np.abs(r).max() < 1e-12

    def test_pure_translation_offset(self):
        model = create_generic_6r()
        q = np.full(6, 0.2)
        target = trn((0.1, 0, 0)) @ model.fkm(q)
        r, _ = model.task_error(target, q)
        assert np.allclose(r[:3], [-0.1, 0, 0], atol=1e-12)
        assert np.linalg.norm(r[3:]) < 1e-12

    def test_pure_rotation_offset(self):
        model = create_generic_6r()
        q = np.full(6, 0.2)
        target = model.fkm(q) @ rotz(0.2)
        r, _ = model.task_error(target, q)
        assert abs(np.linalg.norm(r[3:]) - 0.2) < 1e-9

    def test_small_error_linearization(self):
        model = create_generic_6r()
        rng = np.random.default_rng(15)
        for eta in (1e-3, 1e-4):
            for _ in range(20):
                q = random_q(model, rng) * 0.9
                target = model.fkm(q)
                dq = rng.normal(size=6)
                dq *= eta / np.linalg.norm(dq)
                r, jac = model.task_error(target, q + dq)
                assert np.linalg.norm(r - jac @ dq) <= 10 * eta * eta


class TestIkm:
    def test_already_converged_returns_q0(self):
        model = create_generic_6r()
        q0 = np.full(6, 0.4)
        out = model.ikm(model.fkm(q0), q0)
        assert np.array_equal(out, q0)

    def test_unreachable_position_only(self):
        model = planar_2r()
        with pytest.raises(IkFailureError) as err:
            model.ikm(trn((2.5, 0, 0)), [0.1, 0.1], position_only=True)
        assert err.value.best_pos >= 0.49

    def test_random_reachable_targets(self):
        model = create_generic_6r()
        rng = np.random.default_rng(16)
        params = IkParams()
        solved = 0
        for _ in range(30):
            target = model.fkm(rng.uniform(model.q_min, model.q_max) * 0.9)
            try:
                q = model.ikm(target, params=params)
            except IkFailureError:
                continue
            r, _ = model.task_error(target, q)
            assert np.linalg.norm(r[:3]) < params.tol_pos
            assert np.linalg.norm(r[3:]) < params.tol_ori
            assert np.all(q >= model.q_min) and np.all(q <= model.q_max)
            solved += 1
        assert solved >= 28

    def test_limits_hard_clamped(self):
        model = create_kr5_like()
        rng = np.random.default_rng(17)
        target = model.fkm(rng.uniform(model.q_min, model.q_max) * 0.8)
        q = model.ikm(target)
        assert np.all(q >= model.q_min) and np.all(q <= model.q_max)


class TestAttachments:
    def test_grasp_from_identity_eef(self):
        model = planar_2r()
        model.base = trn((-2, 0, 0))  # eef at origin, axes world-aligned
        obj = trn((0, 0, 0.1))
        model.attach("cup", obj)
        assert np.allclose(model.grasp_of("cup"), trn((0, 0, 0.1)), atol=1e-15)

    def test_attach_noop_motion(self):
        model = planar_2r()
        obj = trn((1.5, 0.2, 0))
        model.attach("cup", obj)
        model.set_config(model.q)
        assert np.abs(model.attached_world_pose("cup") - obj).max() < 1e-12

    def test_attach_detach_round_trip_bit_identical(self):
        model = create_generic_6r()
        model.set_config(np.full(6, 0.3))
        obj = rotz(0.4) @ trn((0.2, 0.1, 0.4))
        model.attach("cup", obj)
        assert np.array_equal(model.detach("cup"), obj)

    def test_carry_composes_transforms(self):
        model = planar_2r()
        obj = trn((2.0, 0.0, 0.0))  # at the eef when q = 0
        model.set_config([0.0, 0.0])
        model.attach("box", obj)
        model.set_config([math.pi / 2, 0.0])
        ee = model.fkm()
        expected = ee @ model.grasp_of("box")
        got = model.attached_world_pose("box")
        assert np.abs(got - expected).max() < 1e-12
        # rotating the base joint by pi/2 carries the object to (0, 2, 0)
        assert np.allclose(got[:3, 3], [0, 2, 0], atol=1e-12)

    def test_attach_twice_rejected(self):
        model = planar_2r()
        model.attach("a", trn((1, 0, 0)))
        with pytest.raises(ValueError):
            model.attach("a", trn((1, 0, 0)))

    def test_detach_unknown_rejected(self):
        with pytest.raises(ValueError):
            planar_2r().detach("ghost")


class TestFactories:
    def test_planar_2r_contract(self):
        assert np.allclose(create_planar_2r(1, 1).fkm([0, 0])[:3, 3], [2, 0, 0], atol=1e-15)

    def test_non_positive_length_rejected(self):
        with pytest.raises(ValueError):
            create_planar_2r(0.0, 1.0)

    def test_generic_6r_contract(self):
        model = create_generic_6r()
        assert model.dof == 6
        assert all(l.kind == REVOLUTE for l in model.links)
        assert np.all(model.q_min == -math.pi) and np.all(model.q_max == math.pi)

    def test_scara_structure(self):
        kinds = [l.kind for l in create_scara().links]
        assert kinds == [REVOLUTE, REVOLUTE, PRISMATIC, REVOLUTE]

    def test_names_stable(self):
        assert create_kr5_like().name == "kr5like"
        assert create_scara().name == "scara"

    def test_factory_inertias_valid(self):
        for model in (create_planar_2r(1, 1), create_scara(), create_generic_6r()):
            assert model.link_inertias is not None
            assert len(model.link_inertias) == model.dof


class TestLinkInertia:
    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError):
            LinkInertia(1.0, np.zeros(3), np.array([[1, 0.1, 0], [0, 1, 0], [0, 0, 1.0]]))

    def test_negative_eigenvalue_rejected(self):
        with pytest.raises(ValueError):
            LinkInertia(1.0, np.zeros(3), np.diag([-0.1, 1.0, 1.0]))

    def test_triangle_inequality_rejected(self):
        with pytest.raises(ValueError):
            LinkInertia(1.0, np.zeros(3), np.diag([0.1, 0.1, 1.0]))

    def test_zero_mass_rejected(self):
        with pytest.raises(ValueError):
            LinkInertia(0.0, np.zeros(3), np.eye(3))
