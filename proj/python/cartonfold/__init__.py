"""Carton folding sequence planner."""

from ._cartonfold import (
    CartonSpec,
    KinematicTree,
    LimitError,
    PreconditionError,
    ValidationError,
    collision_check,
    enumerate_sequences,
    load_spec,
    obb_intersect,
    parse_spec,
    score_and_rank,
)

__all__ = [
    "CartonSpec",
    "KinematicTree",
    "LimitError",
    "PreconditionError",
    "ValidationError",
    "collision_check",
    "enumerate_sequences",
    "load_spec",
    "obb_intersect",
    "parse_spec",
    "score_and_rank",
]
