"""Exception types shared across the toolkit."""

from __future__ import annotations


class KinesimError(Exception):
    """Base class for all toolkit-specific errors."""


class SingularMatrixError(KinesimError):
    """Raised when an exact (undamped) inverse of a rank-deficient matrix is requested."""


class JointLimitError(KinesimError):
    """A configuration violates a joint limit.

    Attributes:
        joint: zero-based index of the offending joint.
    """

    def __init__(self, joint: int, value: float, lo: float, hi: float):
        self.joint = joint
        self.value = value
        self.lo = lo
        self.hi = hi
        super().__init__(
            f"joint {joint}: value {value:.6g} outside limits [{lo:.6g}, {hi:.6g}]"
        )


class IkFailureError(KinesimError):
    """Inverse kinematics did not converge after all restarts.

    Attributes:
        best_pos: smallest position residual norm achieved (m).
        best_ori: orientation residual norm at that iterate (rad).
    """

    def __init__(self, best_pos: float, best_ori: float):
        self.best_pos = best_pos
        self.best_ori = best_ori
        super().__init__(
            f"ik did not converge; best residual pos={best_pos:.3e} m ori={best_ori:.3e} rad"
        )


class ConfigurationError(KinesimError):
    """A model is missing data required by the requested operation (e.g. inertias)."""


class CapacityError(KinesimError):
    """Scenario construction could not place all agents without overlap."""


class SchemaError(KinesimError):
    """A document payload violates the on-disk schema.

    Attributes:
        path: dotted field path of the offending value, when known.
    """

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
