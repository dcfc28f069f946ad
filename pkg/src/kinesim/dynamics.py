"""Rigid-body dynamics for DH chains: recursive Newton-Euler and forward integration.

All quantities are expressed in the world frame. Gravity enters as a
fictitious base acceleration (-g), the standard trick that folds weight into
the same recursion as inertial forces. Inverse dynamics is O(n); the dynamic
model matrices M, c, g are extracted from it by probing, and forward dynamics
solves M qdd = tau - c - g directly (desk-scale chains, n <= 7).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kinematics import PRISMATIC, REVOLUTE, RobotModel, require_inertias

DEFAULT_GRAVITY = (0.0, 0.0, -9.81)

SEMI_IMPLICIT_EULER = "semi_implicit_euler"
RK4 = "rk4"


@dataclass
class DynState:
    """Joint-space state of a chain at time t."""

    q: np.ndarray
    qdot: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        self.q = np.asarray(self.q, dtype=np.float64).reshape(-1)
        self.qdot = np.asarray(self.qdot, dtype=np.float64).reshape(-1)
        if self.q.size != self.qdot.size:
            raise ValueError("q and qdot must have the same length")
        if not (np.all(np.isfinite(self.q)) and np.all(np.isfinite(self.qdot))):
            raise ValueError("state must be finite")


def _cross(a, b) -> np.ndarray:
    # _cross carries ~10x overhead for single 3-vectors; this recursion is
    # the innermost loop of every dynamics call
    return np.array(
        (
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        )
    )


def _chain_frames(model: RobotModel, q: np.ndarray) -> list[np.ndarray]:
    # world poses of [base, link1 ... linkN]; no limit check so integrators
    # may evaluate slightly outside the clamped range
    t = model.base
    frames = [t]
    for i, link in enumerate(model.links):
        t = t @ np.asarray(link.transform_rows(float(q[i])))
        frames.append(t)
    return frames


def _state_vectors(model: RobotModel, *vecs) -> list[np.ndarray]:
    out = []
    for v in vecs:
        v = np.asarray(v, dtype=np.float64).reshape(-1)
        if v.size != model.dof:
            raise ValueError(f"expected length-{model.dof} vector, got {v.size}")
        out.append(v)
    return out


def inverse_dynamics(model: RobotModel, q, qdot, qddot, gravity=DEFAULT_GRAVITY) -> np.ndarray:
    """Joint torques/forces required for the motion (q, qdot, qddot) under gravity.

    Outward pass propagates angular velocity/acceleration and linear
    acceleration link by link; inward pass accumulates forces and moments and
    projects them on each joint axis.
    """
    inertias = require_inertias(model)
    q, qd, qdd = _state_vectors(model, q, qdot, qddot)
    n = model.dof
    frames = _chain_frames(model, q)
    g = np.asarray(gravity, dtype=np.float64).reshape(3)

    omega = np.zeros(3)
    alpha = np.zeros(3)
    a_origin = -g  # fictitious upward base acceleration replaces weight terms

    omegas = np.empty((n, 3))
    alphas = np.empty((n, 3))
    a_coms = np.empty((n, 3))
    coms_w = np.empty((n, 3))
    rot_w = [frames[i + 1][:3, :3] for i in range(n)]

    for i, link in enumerate(model.links):
        z = frames[i][:3, 2]
        r = frames[i + 1][:3, 3] - frames[i][:3, 3]
        if link.kind == REVOLUTE:
            omega_new = omega + qd[i] * z
            alpha_new = alpha + qdd[i] * z + _cross(omega, qd[i] * z)
            a_new = a_origin + _cross(alpha_new, r) + _cross(omega_new, _cross(omega_new, r))
        else:
            omega_new = omega
            alpha_new = alpha
            a_new = (
                a_origin
                + _cross(alpha_new, r)
                + _cross(omega_new, _cross(omega_new, r))
                + 2.0 * _cross(omega_new, qd[i] * z)
                + qdd[i] * z
            )
        omega, alpha, a_origin = omega_new, alpha_new, a_new
        s = rot_w[i] @ inertias[i].com
        coms_w[i] = frames[i + 1][:3, 3] + s
        a_coms[i] = a_origin + _cross(alpha, s) + _cross(omega, _cross(omega, s))
        omegas[i] = omega
        alphas[i] = alpha

    tau = np.empty(n)
    f_next = np.zeros(3)
    n_next = np.zeros(3)
    for i in range(n - 1, -1, -1):
        inertia_w = rot_w[i] @ inertias[i].inertia @ rot_w[i].T
        force = inertias[i].mass * a_coms[i]
        moment = inertia_w @ alphas[i] + _cross(omegas[i], inertia_w @ omegas[i])
        o_joint = frames[i][:3, 3]
        o_link = frames[i + 1][:3, 3]
        f_here = force + f_next
        n_here = (
            moment
            + n_next
            + _cross(coms_w[i] - o_joint, force)
            + _cross(o_link - o_joint, f_next)
        )
        z = frames[i][:3, 2]
        tau[i] = z @ n_here if model.links[i].kind == REVOLUTE else z @ f_here
        f_next, n_next = f_here, n_here
    return tau


def mass_matrix(model: RobotModel, q) -> np.ndarray:
    """Joint-space inertia matrix M(q), symmetric positive definite."""
    (q,) = _state_vectors(model, q)
    n = model.dof
    zero = np.zeros(n)
    m = np.empty((n, n))
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        m[:, j] = inverse_dynamics(model, q, zero, e, gravity=(0.0, 0.0, 0.0))
    return m


def gravity_vector(model: RobotModel, q, gravity=DEFAULT_GRAVITY) -> np.ndarray:
    """g(q): torques holding the chain static under gravity."""
    (q,) = _state_vectors(model, q)
    zero = np.zeros(model.dof)
    return inverse_dynamics(model, q, zero, zero, gravity)


def coriolis_vector(model: RobotModel, q, qdot) -> np.ndarray:
    """c(q, qdot): velocity-product torques (zero gravity, zero acceleration)."""
    q, qd = _state_vectors(model, q, qdot)
    zero = np.zeros(model.dof)
    return inverse_dynamics(model, q, qd, zero, gravity=(0.0, 0.0, 0.0))


def accel(model: RobotModel, q, qdot, tau, gravity=DEFAULT_GRAVITY) -> np.ndarray:
    """Forward-dynamics acceleration: qdd = M(q)^-1 (tau - c - g)."""
    q, qd, tau = _state_vectors(model, q, qdot, tau)
    zero = np.zeros(model.dof)
    bias = inverse_dynamics(model, q, qd, zero, gravity)  # c(q, qd) + g(q)
    return np.linalg.solve(mass_matrix(model, q), tau - bias)


def forward_step(
    model: RobotModel,
    state: DynState,
    tau,
    gravity=DEFAULT_GRAVITY,
    dt: float = 1e-3,
    integrator: str = RK4,
) -> DynState:
    """Advance one step; joint limits clamp position and zero the velocity on contact."""
    if dt <= 0.0:
        raise ValueError("dt must be > 0")
    (tau,) = _state_vectors(model, tau)
    q, qd = state.q.copy(), state.qdot.copy()
    if integrator == SEMI_IMPLICIT_EULER:
        qd = qd + accel(model, q, qd, tau, gravity) * dt
        q = q + qd * dt
    elif integrator == RK4:
        k1q, k1v = qd, accel(model, q, qd, tau, gravity)
        k2q = qd + 0.5 * dt * k1v
        k2v = accel(model, q + 0.5 * dt * k1q, k2q, tau, gravity)
        k3q = qd + 0.5 * dt * k2v
        k3v = accel(model, q + 0.5 * dt * k2q, k3q, tau, gravity)
        k4q = qd + dt * k3v
        k4v = accel(model, q + dt * k3q, k4q, tau, gravity)
        q = q + (dt / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)
        qd = qd + (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
    else:
        raise ValueError(f"unknown integrator {integrator!r}")
    lo, hi = model.q_min, model.q_max
    for i in range(model.dof):
        if q[i] < lo[i]:
            q[i], qd[i] = lo[i], 0.0
        elif q[i] > hi[i]:
            q[i], qd[i] = hi[i], 0.0
    return DynState(q=q, qdot=qd, t=state.t + dt)


def kinetic_energy(model: RobotModel, q, qdot) -> float:
    q, qd = _state_vectors(model, q, qdot)
    return float(0.5 * qd @ mass_matrix(model, q) @ qd)


def potential_energy(model: RobotModel, q, gravity=DEFAULT_GRAVITY) -> float:
    inertias = require_inertias(model)
    (q,) = _state_vectors(model, q)
    frames = _chain_frames(model, q)
    g = np.asarray(gravity, dtype=np.float64).reshape(3)
    v = 0.0
    for i, inertia in enumerate(inertias):
        com_w = frames[i + 1][:3, 3] + frames[i + 1][:3, :3] @ inertia.com
        v -= inertia.mass * float(g @ com_w)
    return v
