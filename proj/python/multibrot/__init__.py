"""Rational-ray combinatorics of Multibrot sets.

Exact laminations of parameter-ray landing groups, symbolic labels
(kneading sequences, internal addresses), structural queries (wakes,
branch points, separation witnesses, fibers at rational resolution),
and numerical ray tracing with renders.
"""

from ._core import (
    Angle,
    Lamination,
    classify,
    escape_iterations,
    kneading_sequence,
    map_d,
    periodic_angles,
    preperiodic_angles,
    set_png,
    trace_ray,
    validate_group,
)

__all__ = [
    "Angle",
    "Lamination",
    "classify",
    "escape_iterations",
    "kneading_sequence",
    "map_d",
    "periodic_angles",
    "preperiodic_angles",
    "set_png",
    "trace_ray",
    "validate_group",
]

__version__ = "0.1.0"
