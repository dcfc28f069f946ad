"""Spatial-math utilities: homogeneous transforms, damped pseudoinverse, numeric Jacobians.

Conventions used throughout the toolkit:
  * poses are 4x4 homogeneous transformation matrices (row-major numpy arrays),
    block form [[R, p], [0 0 0 1]] with R a proper rotation and p in meters;
  * all angles are radians, all lengths meters;
  * every function is pure and safe to call concurrently.

Pose constructors (`rot*`, `trn`) and the 4x4 product `mm4` deliberately avoid
BLAS and libm: they use `portable_sin`/`portable_cos` and an unrolled
multiply built from plain IEEE-754 mul/add. Any runtime that performs the same
operations in the same order (e.g. the browser viewer) reproduces their output
bit for bit, which is what makes recorded animations replayable exactly.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from .errors import SingularMatrixError

Htm = np.ndarray  # (4, 4) float64
Vec3 = Sequence[float]

_ORTHO_TOL = 1e-9

# ---------------------------------------------------------------------------
# portable trig
#
# Cody-Waite style argument reduction by pi/2 (two-part constant) followed by
# fixed Horner polynomials using exact Taylor coefficients. Only +, -, *,
# floor and comparisons are used, all of which are correctly rounded IEEE-754
# double operations in both CPython and JavaScript, so results are identical
# across the two runtimes. Absolute error < 3e-16 for |x| <= 1e6.

_PIO2 = 1.5707963267948966
_PIO2_1 = 1.5707963267341256  # high 33 bits of pi/2
_PIO2_1T = 6.077100506506192e-11  # pi/2 - _PIO2_1

_S1 = -1.6666666666666666e-01  # -1/6
_S2 = 8.3333333333333332e-03  # 1/120
_S3 = -1.9841269841269841e-04  # -1/5040
_S4 = 2.7557319223985893e-06  # 1/362880
_S5 = -2.5052108385441720e-08  # -1/39916800
_S6 = 1.6059043836821613e-10  # 1/6227020800
_S7 = -7.6471637318198164e-13  # -1/1307674368000

_C1 = -5.0000000000000000e-01  # -1/2
_C2 = 4.1666666666666664e-02  # 1/24
_C3 = -1.3888888888888889e-03  # -1/720
_C4 = 2.4801587301587302e-05  # 1/40320
_C5 = -2.7557319223985888e-07  # -1/3628800
_C6 = 2.0876756987868100e-09  # 1/479001600
_C7 = -1.1470745597729725e-11  # -1/87178291200
_C8 = 4.7794773323873853e-14  # 1/20922789888000


def _sin_poly(r: float) -> float:
    z = r * r
    return r * (
        1.0
        + z * (_S1 + z * (_S2 + z * (_S3 + z * (_S4 + z * (_S5 + z * (_S6 + z * _S7))))))
    )


def _cos_poly(r: float) -> float:
    z = r * r
    return 1.0 + z * (
        _C1 + z * (_C2 + z * (_C3 + z * (_C4 + z * (_C5 + z * (_C6 + z * (_C7 + z * _C8))))))
    )


def portable_sincos(x: float) -> tuple[float, float]:
    """Sine and cosine with run-to-run and cross-runtime reproducible bits.

    Args:
        x: angle in radians, |x| <= 1e6 for full accuracy.
    Returns:
        (sin(x), cos(x)), each within 3e-16 of the exact value.
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("portable_sincos: non-finite angle")
    n = math.floor(x / _PIO2 + 0.5)
    r = (x - n * _PIO2_1) - n * _PIO2_1T
    m = n % 4.0
    s = _sin_poly(r)
    c = _cos_poly(r)
    if m == 0.0:
        return s, c
    if m == 1.0:
        return c, -s
    if m == 2.0:
        return -s, -c
    return -c, s


def portable_sin(x: float) -> float:
    return portable_sincos(x)[0]


def portable_cos(x: float) -> float:
    return portable_sincos(x)[1]


# ---------------------------------------------------------------------------
# 4x4 pose algebra


def mm4(a, b) -> list[list[float]]:
    """Naive 4x4 matrix product on nested lists (no BLAS, no FMA).

    Both operands may be numpy arrays or nested sequences; the result is a
    nested list of Python floats. Summation order is fixed (k = 0..3).
    """
    return [
        [
            a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j] + a[i][3] * b[3][j]
            for j in range(4)
        ]
        for i in range(4)
    ]


def _as_htm(rows: list[list[float]]) -> Htm:
    return np.array(rows, dtype=np.float64)


def check_htm(h: Htm) -> Htm:
    """Validate a homogeneous transform; raises ValueError on violation."""
    h = np.asarray(h, dtype=np.float64)
    if h.shape != (4, 4):
        raise ValueError(f"pose must be 4x4, got {h.shape}")
    if not np.all(np.isfinite(h)):
        raise ValueError("pose contains non-finite entries")
    if not (h[3, 0] == 0.0 and h[3, 1] == 0.0 and h[3, 2] == 0.0 and h[3, 3] == 1.0):
        raise ValueError("pose bottom row must be exactly (0, 0, 0, 1)")
    r = h[:3, :3]
    if np.linalg.norm(r.T @ r - np.eye(3)) > _ORTHO_TOL:
        raise ValueError("pose rotation block is not orthonormal")
    if abs(np.linalg.det(r) - 1.0) > _ORTHO_TOL:
        raise ValueError("pose rotation block must have determinant +1")
    return h


def eye4() -> Htm:
    return np.eye(4, dtype=np.float64)


def rot(axis: Vec3, angle: float) -> Htm:
    """Pure rotation about an arbitrary axis (Rodrigues), zero translation.

    Args:
        axis: rotation axis, any nonzero length (normalized internally).
        angle: radians.
    """
    ax, ay, az = float(axis[0]), float(axis[1]), float(axis[2])
    n = math.sqrt(ax * ax + ay * ay + az * az)
    if not math.isfinite(n) or n <= 1e-12:
        raise ValueError("rot: axis has (near-)zero length")
    ux, uy, uz = ax / n, ay / n, az / n
    s, c = portable_sincos(angle)
    t = 1.0 - c
    return _as_htm(
        [
            [c + ux * ux * t, ux * uy * t - uz * s, ux * uz * t + uy * s, 0.0],
            [uy * ux * t + uz * s, c + uy * uy * t, uy * uz * t - ux * s, 0.0],
            [uz * ux * t - uy * s, uz * uy * t + ux * s, c + uz * uz * t, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )


def rotx(angle: float) -> Htm:
    s, c = portable_sincos(angle)
    return _as_htm(
        [[1.0, 0.0, 0.0, 0.0], [0.0, c, -s, 0.0], [0.0, s, c, 0.0], [0.0, 0.0, 0.0, 1.0]]
    )


def roty(angle: float) -> Htm:
    s, c = portable_sincos(angle)
    return _as_htm(
        [[c, 0.0, s, 0.0], [0.0, 1.0, 0.0, 0.0], [-s, 0.0, c, 0.0], [0.0, 0.0, 0.0, 1.0]]
    )


def rotz(angle: float) -> Htm:
    s, c = portable_sincos(angle)
    return _as_htm(
        [[c, -s, 0.0, 0.0], [s, c, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]]
    )


def trn(v: Vec3) -> Htm:
    """Pure translation by v (identity rotation)."""
    x, y, z = float(v[0]), float(v[1]), float(v[2])
    if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(z)):
        raise ValueError("trn: non-finite translation")
    return _as_htm(
        [[1.0, 0.0, 0.0, x], [0.0, 1.0, 0.0, y], [0.0, 0.0, 1.0, z], [0.0, 0.0, 0.0, 1.0]]
    )


def inv_htm(h: Htm) -> Htm:
    """Inverse of a rigid transform: [[R^T, -R^T p], [0 0 0 1]]."""
    h = check_htm(h)
    r = h[:3, :3]
    p = h[:3, 3]
    out = np.eye(4, dtype=np.float64)
    out[:3, :3] = r.T
    out[:3, 3] = -(r.T @ p)
    return out


def skew(v: Vec3) -> np.ndarray:
    """3x3 skew-symmetric matrix S(v) with S(v) w = v x w."""
    x, y, z = float(v[0]), float(v[1]), float(v[2])
    return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]], dtype=np.float64)


def dp_inv(m: np.ndarray, eps: float) -> np.ndarray:
    """Damped pseudoinverse M^T (M M^T + eps^2 I)^-1.

    For eps = 0 this is the exact right pseudoinverse and M must have full
    row rank; a rank-deficient M M^T raises SingularMatrixError.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.size == 0:
        raise ValueError("dp_inv: expects a nonempty 2-D matrix")
    if eps < 0.0:
        raise ValueError("dp_inv: eps must be >= 0")
    a = m @ m.T + (eps * eps) * np.eye(m.shape[0])
    if eps == 0.0:
        try:
            np.linalg.cholesky(a)
        except np.linalg.LinAlgError as exc:
            raise SingularMatrixError("dp_inv: M M^T is singular and eps = 0") from exc
    return np.linalg.solve(a, m).T


def num_jac(
    f: Callable[[np.ndarray], np.ndarray], x: Sequence[float], delta: float = 1e-6
) -> np.ndarray:
    """Central-difference Jacobian of a vector-valued function, O(delta^2).

    Column j is (f(x + delta e_j) - f(x - delta e_j)) / (2 delta).
    """
    if delta <= 0.0:
        raise ValueError("num_jac: delta must be > 0")
    x = np.asarray(x, dtype=np.float64)
    cols = []
    with np.errstate(invalid="ignore"):
        for j in range(x.size):
            dx = np.zeros_like(x)
            dx[j] = delta
            hi = np.asarray(f(x + dx), dtype=np.float64)
            lo = np.asarray(f(x - dx), dtype=np.float64)
            cols.append((hi - lo) / (2.0 * delta))
        jac = np.stack(cols, axis=-1)
    if not np.all(np.isfinite(jac)):
        raise FloatingPointError("num_jac: function returned non-finite values")
    return jac


def euler_angles(h: Htm) -> tuple[float, float, float]:
    """Extrinsic X-Y-Z (roll, pitch, yaw) angles with R = Rz(yaw) Ry(pitch) Rx(roll).

    pitch is in [-pi/2, pi/2]; roll and yaw in (-pi, pi]. At gimbal lock
    (|pitch| = pi/2) roll is set to 0 and the remaining rotation folds into yaw.
    """
    h = check_htm(h)
    r = h[:3, :3]
    sp = -float(r[2, 0])
    sp = max(-1.0, min(1.0, sp))
    if 1.0 - abs(sp) < 1e-12:
        pitch = math.copysign(math.pi / 2.0, sp)
        roll = 0.0
        yaw = math.atan2(-float(r[0, 1]), float(r[1, 1]))
    else:
        pitch = math.asin(sp)
        roll = math.atan2(float(r[2, 1]), float(r[2, 2]))
        yaw = math.atan2(float(r[1, 0]), float(r[0, 0]))
    if roll <= -math.pi:
        roll = math.pi
    if yaw <= -math.pi:
        yaw = math.pi
    return roll, pitch, yaw


def htm_rand(
    rng: np.random.Generator | int, trn_range: float = 1.0, rot_enabled: bool = True
) -> Htm:
    """Random rigid transform, deterministic for a given seed.

    Translation components are uniform in [-trn_range, trn_range]; the
    rotation is uniform over SO(3) (unit-quaternion sampling) when enabled,
    identity otherwise.
    """
    if trn_range < 0.0:
        raise ValueError("htm_rand: trn_range must be >= 0")
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    out = np.eye(4, dtype=np.float64)
    if rot_enabled:
        q = rng.normal(size=4)
        q /= np.linalg.norm(q)
        out[:3, :3] = _rot_from_quat(q[0], q[1], q[2], q[3])
    if trn_range > 0.0:
        out[:3, 3] = rng.uniform(-trn_range, trn_range, size=3)
    return out


def _rot_from_quat(w: float, x: float, y: float, z: float) -> np.ndarray:
    """Rotation matrix of a unit quaternion (w, x, y, z)."""
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ],
        dtype=np.float64,
    )


def rotation_vector(r: np.ndarray) -> np.ndarray:
    """Axis-angle vector (axis * angle) of a 3x3 rotation, angle in [0, pi]."""
    tr = float(r[0, 0] + r[1, 1] + r[2, 2])
    cos_a = max(-1.0, min(1.0, 0.5 * (tr - 1.0)))
    angle = math.acos(cos_a)
    if angle < 1e-12:
        # first-order: vee of the skew part
        return 0.5 * np.array(
            [r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]], dtype=np.float64
        )
    if math.pi - angle < 1e-6:
        # near pi the skew part vanishes; recover the axis from R + I
        b = 0.5 * (np.asarray(r) + np.eye(3))
        k = int(np.argmax(np.diag(b)))
        axis = b[:, k] / math.sqrt(max(b[k, k], 1e-300))
        axis = axis / np.linalg.norm(axis)
        # fix the sign using the (possibly tiny) skew part
        v = np.array([r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]])
        if float(v @ axis) < 0.0:
            axis = -axis
        return angle * axis
    scale = angle / (2.0 * math.sin(angle))
    return scale * np.array(
        [r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]], dtype=np.float64
    )
