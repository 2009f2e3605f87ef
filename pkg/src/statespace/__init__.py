"""Explicit-state model checker for models written as plain Python classes.

The state space is built breadth-first over bit-packed state vectors and
checked on the fly for safety errors and illegal deadlocks; further
graph checks (may progress, must progress, reachability of termination)
run over a reversed-edge graph rebuilt by re-firing. Stubborn set and
symmetry reduction are available for models that provide the hooks.
"""

from .cli import main, run
from .explorer import ExplorationResult, counterexample, explore, stats_line, successors_of
from .layout import LayoutError, StateLayout, VarDecl, build_layout
from .model import (
    ConfigError,
    Model,
    ModelContractError,
    ModelError,
    RunConfig,
    RunPlan,
    fire_checked,
    validate,
)
from .models import MODELS, TokenRing, register_model
from .progress import (
    CheckError,
    ReverseGraph,
    backward_reach,
    build_reverse,
    check_may_progress,
    check_must_progress,
)
from .store import StateStore
from .stubborn import (
    ObligationEmitter,
    StubbornSelection,
    check_ag_ef_terminating,
    closure,
    select_stubborn,
)
from .symmetry import canonicalize

__all__ = [
    "CheckError",
    "ConfigError",
    "ExplorationResult",
    "LayoutError",
    "MODELS",
    "Model",
    "ModelContractError",
    "ModelError",
    "ObligationEmitter",
    "ReverseGraph",
    "RunConfig",
    "RunPlan",
    "StateLayout",
    "StateStore",
    "StubbornSelection",
    "TokenRing",
    "VarDecl",
    "backward_reach",
    "build_layout",
    "build_reverse",
    "canonicalize",
    "check_ag_ef_terminating",
    "check_may_progress",
    "check_must_progress",
    "closure",
    "counterexample",
    "explore",
    "fire_checked",
    "main",
    "register_model",
    "run",
    "select_stubborn",
    "stats_line",
    "successors_of",
    "validate",
]
