"""Open-chain manipulators: DH models, forward kinematics, Jacobians, damped-least-squares IK.

The DH convention is the standard (distal) one with link transform
Rotz(theta) Transz(d) Transx(a) Rotx(alpha); revolute joints add q to theta,
prismatic joints add q to d. The FK chain is evaluated with the portable
trig/matmul primitives from `linalg` so recorded robot animations replay
bit-exactly in the browser viewer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, IkFailureError, JointLimitError
from .linalg import Htm, check_htm, dp_inv, inv_htm, mm4, portable_sincos, rotation_vector

REVOLUTE = "revolute"
PRISMATIC = "prismatic"


@dataclass
class DhLink:
    """One Denavit-Hartenberg link row plus joint limits.

    theta_off/d_off are the constant parts of theta/d; the joint variable q
    adds to theta (revolute) or d (prismatic). Limits are radians or meters
    to match the joint kind.
    """

    theta_off: float
    d_off: float
    a: float
    alpha: float
    kind: str = REVOLUTE
    q_min: float = -math.pi
    q_max: float = math.pi

    def __post_init__(self):
        for name in ("theta_off", "d_off", "a", "alpha", "q_min", "q_max"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"DhLink.{name} must be finite")
        if self.kind not in (REVOLUTE, PRISMATIC):
            raise ValueError(f"unknown joint kind {self.kind!r}")
        if not self.q_min < self.q_max:
            raise ValueError("DhLink requires q_min < q_max")
        self._sin_alpha, self._cos_alpha = portable_sincos(self.alpha)

    def transform_rows(self, q: float) -> list[list[float]]:
        """Link transform Rotz(theta) Transz(d) Transx(a) Rotx(alpha) as nested lists."""
        if self.kind == REVOLUTE:
            theta = self.theta_off + q
            d = self.d_off
        else:
            theta = self.theta_off
            d = self.d_off + q
        st, ct = portable_sincos(theta)
        sa, ca = self._sin_alpha, self._cos_alpha
        a = self.a
        return [
            [ct, -st * ca, st * sa, a * ct],
            [st, ct * ca, -ct * sa, a * st],
            [0.0, sa, ca, d],
            [0.0, 0.0, 0.0, 1.0],
        ]


@dataclass
class LinkInertia:
    """Rigid-body parameters of one link, expressed in its own DH frame.

    inertia is the 3x3 tensor about the center of mass.
    """

    mass: float
    com: np.ndarray
    inertia: np.ndarray

    def __post_init__(self):
        if not (math.isfinite(self.mass) and self.mass > 0.0):
            raise ValueError("LinkInertia.mass must be finite and > 0")
        self.com = np.asarray(self.com, dtype=np.float64).reshape(3)
        self.inertia = np.asarray(self.inertia, dtype=np.float64).reshape(3, 3)
        if not np.all(np.isfinite(self.com)) or not np.all(np.isfinite(self.inertia)):
            raise ValueError("LinkInertia values must be finite")
        if np.abs(self.inertia - self.inertia.T).max() > 1e-12:
            raise ValueError("inertia tensor must be symmetric")
        ev = np.linalg.eigvalsh(self.inertia)
        if ev[0] < -1e-12:
            raise ValueError("inertia tensor must be positive semidefinite")
        lam = np.clip(ev, 0.0, None)
        if lam[0] + lam[1] < lam[2] - 1e-9 * max(1.0, lam[2]):
            raise ValueError("principal moments violate the triangle inequality")


@dataclass
class IkParams:
    """Damped-least-squares IK settings; defaults converge on all shipped models."""

    eps: float = 1e-3
    gain: float = 1.0
    max_iters: int = 200
    tol_pos: float = 1e-4
    tol_ori: float = 1e-3
    step_cap: float = 0.2
    restarts: int = 9
    seed: int = 0

    def __post_init__(self):
        if min(self.eps, self.gain, self.tol_pos, self.tol_ori, self.step_cap) <= 0:
            raise ValueError("IkParams scalars must be positive")
        if self.max_iters < 1 or self.restarts < 0:
            raise ValueError("IkParams counts out of range")


_ROD_RADIUS = 0.02  # m; keeps every joint-space inertia strictly positive


def _rod_inertia(link: DhLink, mass: float = 1.0) -> LinkInertia:
    # uniform slender cylinder spanning back to the previous frame origin:
    # along x over the `a` offset when a != 0, else along z over the `d`
    # offset; a ball of the same radius when both vanish
    r2 = _ROD_RADIUS * _ROD_RADIUS
    a, d = abs(link.a), abs(link.d_off)
    if a > 0.0:
        length, com = a, np.array([-a / 2.0, 0.0, 0.0])
        i_axis = 0.5 * mass * r2
        i_perp = mass * (length * length / 12.0 + r2 / 4.0)
        inertia = np.diag([i_axis, i_perp, i_perp])
    elif d > 0.0:
        length, com = d, np.array([0.0, 0.0, -d / 2.0])
        i_axis = 0.5 * mass * r2
        i_perp = mass * (length * length / 12.0 + r2 / 4.0)
        inertia = np.diag([i_perp, i_perp, i_axis])
    else:
        com = np.zeros(3)
        inertia = np.diag([0.4 * mass * r2] * 3)
    return LinkInertia(mass=mass, com=com, inertia=inertia)


class RobotModel:
    """A serial manipulator: DH table, limits, optional inertias, configuration.

    Instances are single-owner values: methods mutate in place and callers
    must not share one instance across threads.
    """

    def __init__(
        self,
        name: str,
        links: list[DhLink],
        base: Htm | None = None,
        tool: Htm | None = None,
        link_inertias: list[LinkInertia] | None = None,
        q: np.ndarray | None = None,
    ):
        if not links:
            raise ValueError("RobotModel requires at least one link")
        self.name = name
        self.links = list(links)
        self.base = check_htm(base if base is not None else np.eye(4))
        self.tool = check_htm(tool if tool is not None else np.eye(4))
        if link_inertias is not None and len(link_inertias) != len(links):
            raise ValueError("link_inertias length must match link count")
        self.link_inertias = list(link_inertias) if link_inertias is not None else None
        if q is None:
            q = np.clip(np.zeros(len(links)), self.q_min, self.q_max)
        self.q = self._check_q(q)
        # object id -> (grasp transform in the eef frame, cached world pose)
        self._attached: dict[str, tuple[Htm, Htm]] = {}

    # -- basic accessors ----------------------------------------------------

    @property
    def dof(self) -> int:
        return len(self.links)

    @property
    def q_min(self) -> np.ndarray:
        return np.array([l.q_min for l in self.links])

    @property
    def q_max(self) -> np.ndarray:
        return np.array([l.q_max for l in self.links])

    @property
    def attached_ids(self) -> list[str]:
        return list(self._attached)

    def copy(self) -> "RobotModel":
        m = RobotModel(
            self.name,
            [DhLink(l.theta_off, l.d_off, l.a, l.alpha, l.kind, l.q_min, l.q_max) for l in self.links],
            base=self.base.copy(),
            tool=self.tool.copy(),
            link_inertias=list(self.link_inertias) if self.link_inertias else None,
            q=self.q.copy(),
        )
        m._attached = {k: (g.copy(), w.copy()) for k, (g, w) in self._attached.items()}
        return m

    def _check_q(self, q) -> np.ndarray:
        q = np.asarray(q, dtype=np.float64).reshape(-1)
        if q.size != len(self.links):
            raise ValueError(f"expected {len(self.links)} joint values, got {q.size}")
        if not np.all(np.isfinite(q)):
            raise ValueError("configuration contains non-finite values")
        for i, link in enumerate(self.links):
            if q[i] < link.q_min or q[i] > link.q_max:
                raise JointLimitError(i, float(q[i]), link.q_min, link.q_max)
        return q

    # -- kinematics ---------------------------------------------------------

    def fkm(self, q=None, upto: int | None = None) -> Htm:
        """Pose of link frame `upto` (base * T_1 ... T_upto), or of the
        end-effector (tool included) when upto is None.

        upto = 0 returns the base frame; upto = dof the last link frame.
        """
        q = self.q if q is None else self._check_q(q)
        n = len(self.links)
        if upto is None:
            m = n
        elif 0 <= upto <= n:
            m = upto
        else:
            raise ValueError(f"upto must be in [0, {n}] or None")
        t = self.base.tolist()
        for i in range(m):
            t = mm4(t, self.links[i].transform_rows(float(q[i])))
        if upto is None:
            t = mm4(t, self.tool.tolist())
        return np.array(t, dtype=np.float64)

    def frames(self, q=None) -> list[Htm]:
        """All chain frames [base, link1, ..., linkN, end-effector]."""
        q = self.q if q is None else self._check_q(q)
        out = [self.base.copy()]
        t = self.base.tolist()
        for i, link in enumerate(self.links):
            t = mm4(t, link.transform_rows(float(q[i])))
            out.append(np.array(t, dtype=np.float64))
        out.append(np.array(mm4(t, self.tool.tolist()), dtype=np.float64))
        return out

    def jac_geo(self, q=None) -> tuple[np.ndarray, list[Htm]]:
        """Geometric Jacobian (6 x n, world frame, linear rows first) plus the
        chain frames used to build it."""
        frames = self.frames(q)
        ee_p = frames[-1][:3, 3]
        n = len(self.links)
        jac = np.zeros((6, n))
        for i, link in enumerate(self.links):
            z = frames[i][:3, 2]
            if link.kind == REVOLUTE:
                jac[:3, i] = np.cross(z, ee_p - frames[i][:3, 3])
                jac[3:, i] = z
            else:
                jac[:3, i] = z
        return jac, frames

    def task_error(self, target: Htm, q=None) -> tuple[np.ndarray, np.ndarray]:
        """Six-vector pose residual r (zero iff the pose matches the target)
        and the Jacobian consistent with it for small errors.

        r[:3] = p_e - p_target; r[3:] is minus the rotation vector taking the
        current orientation to the target's.
        """
        target = check_htm(target)
        jac, frames = self.jac_geo(q)
        ee = frames[-1]
        r = np.empty(6)
        r[:3] = ee[:3, 3] - target[:3, 3]
        r[3:] = -rotation_vector(target[:3, :3] @ ee[:3, :3].T)
        return r, jac

    def ikm(
        self,
        target: Htm,
        q0=None,
        params: IkParams | None = None,
        position_only: bool = False,
    ) -> np.ndarray:
        """Damped-least-squares inverse kinematics with hard limit clamping.

        Iterates q <- clip(q + dp_inv(J, eps) @ (-gain * r)) with a per-joint
        step cap until the residual tolerances hold, retrying from seeded
        random configurations on failure. Raises IkFailureError with the best
        residual achieved when every attempt is exhausted.
        """
        params = params or IkParams()
        target = check_htm(target)
        q = self.q.copy() if q0 is None else self._check_q(q0)
        lo, hi = self.q_min, self.q_max
        rng = np.random.default_rng(params.seed)
        best_pos, best_ori = math.inf, math.inf
        for attempt in range(params.restarts + 1):
            if attempt > 0:
                q = rng.uniform(lo, hi)
            for _ in range(params.max_iters + 1):
                r, jac = self.task_error(target, q)
                if position_only:
                    r, jac = r[:3], jac[:3]
                pos_n = float(np.linalg.norm(r[:3]))
                ori_n = 0.0 if position_only else float(np.linalg.norm(r[3:]))
                if pos_n < best_pos or (pos_n == best_pos and ori_n < best_ori):
                    best_pos, best_ori = pos_n, ori_n
                if pos_n < params.tol_pos and ori_n < params.tol_ori:
                    return q
                dq = dp_inv(jac, params.eps) @ (-params.gain * r)
                dq = np.clip(dq, -params.step_cap, params.step_cap)
                q = np.clip(q + dq, lo, hi)
        raise IkFailureError(best_pos, best_ori)

    # -- configuration and attachments ---------------------------------------

    def set_config(self, q) -> None:
        """Set the configuration; world poses of attached objects follow the hand."""
        self.q = self._check_q(q)
        if self._attached:
            ee = self.fkm()
            for oid, (grasp, _) in self._attached.items():
                self._attached[oid] = (grasp, np.array(mm4(ee, grasp), dtype=np.float64))

    def attach(self, object_id: str, object_htm: Htm) -> None:
        """Grab a scene object: its pose becomes rigid in the end-effector frame."""
        if object_id in self._attached:
            raise ValueError(f"object {object_id!r} is already attached")
        object_htm = check_htm(object_htm)
        grasp = np.array(mm4(inv_htm(self.fkm()), object_htm), dtype=np.float64)
        self._attached[object_id] = (grasp, object_htm.copy())

    def detach(self, object_id: str) -> Htm:
        """Release an object, returning the world pose it freezes at."""
        if object_id not in self._attached:
            raise ValueError(f"object {object_id!r} is not attached")
        _, world = self._attached.pop(object_id)
        return world

    def attached_world_pose(self, object_id: str) -> Htm:
        if object_id not in self._attached:
            raise ValueError(f"object {object_id!r} is not attached")
        return self._attached[object_id][1].copy()

    def grasp_of(self, object_id: str) -> Htm:
        if object_id not in self._attached:
            raise ValueError(f"object {object_id!r} is not attached")
        return self._attached[object_id][0].copy()

    def with_default_inertias(self, mass: float = 1.0) -> "RobotModel":
        """Fill missing inertias with unit-mass thin-rod defaults (illustrative)."""
        if self.link_inertias is None:
            self.link_inertias = [_rod_inertia(l, mass) for l in self.links]
        return self


def require_inertias(model: RobotModel) -> list[LinkInertia]:
    if model.link_inertias is None:
        raise ConfigurationError(
            f"model {model.name!r} has no link inertias; dynamics needs them"
        )
    return model.link_inertias


# ---------------------------------------------------------------------------
# factory models
#
# Parameter sets below are representative desk-scale geometries for teaching
# and testing, not vendor data.


def create_planar_2r(l1: float = 1.0, l2: float = 1.0) -> RobotModel:
    """Two-revolute planar arm in the z = 0 plane."""
    if l1 <= 0 or l2 <= 0:
        raise ValueError("link lengths must be positive")
    links = [
        DhLink(0.0, 0.0, l1, 0.0, REVOLUTE, -math.pi, math.pi),
        DhLink(0.0, 0.0, l2, 0.0, REVOLUTE, -math.pi, math.pi),
    ]
    return RobotModel("planar2r", links).with_default_inertias()


def create_scara() -> RobotModel:
    """SCARA arm: revolute, revolute, prismatic, revolute."""
    links = [
        DhLink(0.0, 0.20, 0.325, 0.0, REVOLUTE, -2.4, 2.4),
        DhLink(0.0, 0.0, 0.275, math.pi, REVOLUTE, -2.6, 2.6),
        DhLink(0.0, 0.0, 0.0, 0.0, PRISMATIC, 0.0, 0.18),
        DhLink(0.0, 0.0, 0.0, 0.0, REVOLUTE, -math.pi, math.pi),
    ]
    return RobotModel("scara", links).with_default_inertias()


def create_generic_6r() -> RobotModel:
    """Generic six-revolute arm with a wrist, limits all +/- pi."""
    pi2 = math.pi / 2.0
    links = [
        DhLink(0.0, 0.30, 0.05, pi2),
        DhLink(0.0, 0.0, 0.30, 0.0),
        DhLink(0.0, 0.0, 0.05, pi2),
        DhLink(0.0, 0.30, 0.0, -pi2),
        DhLink(0.0, 0.0, 0.0, pi2),
        DhLink(0.0, 0.10, 0.0, 0.0),
    ]
    return RobotModel("generic6r", links).with_default_inertias()


def create_kr5_like() -> RobotModel:
    """Six-revolute arm with industrial-style proportions and limits."""
    pi2 = math.pi / 2.0
    links = [
        DhLink(0.0, 0.40, 0.18, -pi2, REVOLUTE, -2.70, 2.70),
        DhLink(0.0, 0.0, 0.60, 0.0, REVOLUTE, -1.20, 2.40),
        DhLink(0.0, 0.0, 0.12, pi2, REVOLUTE, -2.20, 2.20),
        DhLink(0.0, 0.62, 0.0, -pi2, REVOLUTE, -3.00, 3.00),
        DhLink(0.0, 0.0, 0.0, pi2, REVOLUTE, -2.20, 2.20),
        DhLink(0.0, 0.115, 0.0, 0.0, REVOLUTE, -3.10, 3.10),
    ]
    return RobotModel("kr5like", links).with_default_inertias()


FACTORIES = {
    "planar2r": create_planar_2r,
    "scara": create_scara,
    "generic6r": create_generic_6r,
    "kr5like": create_kr5_like,
}
