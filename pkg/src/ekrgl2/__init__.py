"""Exact verification toolkit for intersecting sets in 2x2 linear groups."""

from .gf import DetSubgroup, Field, FieldError
from .groups import GroupSpec, GroupTable, Subset, build_group, group_spec
from .intersect import (
    CliqueReport,
    FixingGraph,
    build_fixing_graph,
    classify_maximum,
    enumerate_maximal_cliques,
    extend_to_maximum,
    is_intersecting,
    max_clique,
)

__version__ = "0.1.0"

__all__ = [
    "DetSubgroup",
    "Field",
    "FieldError",
    "GroupSpec",
    "GroupTable",
    "Subset",
    "build_group",
    "group_spec",
    "CliqueReport",
    "FixingGraph",
    "build_fixing_graph",
    "classify_maximum",
    "enumerate_maximal_cliques",
    "extend_to_maximum",
    "is_intersecting",
    "max_clique",
    "__version__",
]
