"""Capability-gated kinematic robot and scripted waypoint controller"""

from .models import (
    NUM_JOINTS,
    Action,
    ControllerGains,
    RobotCapabilities,
    RobotState,
    StepEvent,
    StepOutcome,
)
from .controller import Policy, ScriptedPolicy, controller_step
from .integrator import CONTROL_DT, integrate, joint_posture

__all__ = [
    "NUM_JOINTS",
    "Action",
    "ControllerGains",
    "RobotCapabilities",
    "RobotState",
    "StepEvent",
    "StepOutcome",
    "Policy",
    "ScriptedPolicy",
    "controller_step",
    "CONTROL_DT",
    "integrate",
    "joint_posture",
]
