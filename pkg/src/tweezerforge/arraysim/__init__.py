"""Dual-species tweezer array loading, rearrangement, and loss modeling."""

from .execute import execute_plan, target_satisfied
from .loading import sample_loading
from .montecarlo import (benchmark_to_csv, default_workers,
                         scaling_benchmark, success_probability)
from .paths import corridor_path, parabolic_path, path_clearance, \
    path_near_sites
from .planner import PlanOptions, plan_rearrangement
from .types import (ArrayGeometry, ArrayState, DONT_CARE, DUAL, EMPTY,
                    InfeasiblePlanError, ISO1, ISO2, LoadingModel, LossModel,
                    Move, MovePlan, PHASES, TargetPattern, WANT1, WANT2,
                    checkerboard_target, stripe_target)

__all__ = [
    "ArrayGeometry", "ArrayState", "TargetPattern", "LoadingModel",
    "LossModel", "Move", "MovePlan", "PlanOptions", "InfeasiblePlanError",
    "EMPTY", "ISO1", "ISO2", "DUAL", "DONT_CARE", "WANT1", "WANT2", "PHASES",
    "checkerboard_target", "stripe_target", "sample_loading",
    "plan_rearrangement", "execute_plan", "target_satisfied",
    "corridor_path", "parabolic_path", "path_clearance", "path_near_sites",
    "success_probability", "scaling_benchmark", "benchmark_to_csv",
    "default_workers",
]
