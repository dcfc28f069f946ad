"""Manipulator kinematics/dynamics and crowd simulation with shareable scenes.

Core surface:
  * linalg        - pose/transform utilities (rot/trn/inv_htm/skew/dp_inv/...)
  * kinematics    - DH robot models, FK, Jacobians, damped-least-squares IK
  * dynamics      - recursive Newton-Euler and forward integration
  * pedestrians   - social-force crowds and room evacuations
  * scene         - scene documents with keyframe timelines
  * serialization - canonical JSON, self-contained HTML export, CSV import
  * live_bridge   - websocket service streaming frames and taking commands
  * cli           - the `kinesim` command
"""

from .errors import (
    CapacityError,
    ConfigurationError,
    IkFailureError,
    JointLimitError,
    KinesimError,
    SchemaError,
    SingularMatrixError,
)
from .linalg import (
    dp_inv,
    euler_angles,
    htm_rand,
    inv_htm,
    num_jac,
    rot,
    rotx,
    roty,
    rotz,
    skew,
    trn,
)
from .kinematics import (
    DhLink,
    IkParams,
    LinkInertia,
    RobotModel,
    create_generic_6r,
    create_kr5_like,
    create_planar_2r,
    create_scara,
)
from .dynamics import (
    DynState,
    coriolis_vector,
    forward_step,
    gravity_vector,
    inverse_dynamics,
    mass_matrix,
)
from .pedestrians import (
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
from .scene import (
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
    Track,
)
from .serialization import export_html, from_json, import_trajectory_csv, to_json

__version__ = "0.1.0"
