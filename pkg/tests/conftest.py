"""Shared builders with per-session caching of groups and graphs."""

from ekrgl2.gf import Field
from ekrgl2.groups import GroupSpec, build_group
from ekrgl2.intersect import build_fixing_graph

_FIELDS = {}
_GROUPS = {}
_GRAPHS = {}


def get_field(p, k=1):
    key = (p, k)
    if key not in _FIELDS:
        _FIELDS[key] = Field(p, k)
    return _FIELDS[key]


def get_group(p, k, d):
    key = (p, k, d)
    if key not in _GROUPS:
        field = get_field(p, k)
        _GROUPS[key] = build_group(GroupSpec(field, field.unit_subgroup(d)))
    return _GROUPS[key]


def get_graph(p, k, d):
    key = (p, k, d)
    if key not in _GRAPHS:
        _GRAPHS[key] = build_fixing_graph(get_group(p, k, d))
    return _GRAPHS[key]


# (p, k, d) for the (q, d) pairs exercised throughout the suite
SMALL_CONFIGS = [(3, 1, 2), (2, 2, 3), (5, 1, 2)]
MEDIUM_CONFIGS = SMALL_CONFIGS + [(5, 1, 4), (7, 1, 2)]
LARGE_CONFIGS = MEDIUM_CONFIGS + [(7, 1, 3), (7, 1, 6)]
ALL_ORDER_CONFIGS = LARGE_CONFIGS + [(2, 3, 7), (3, 2, 2), (3, 2, 4), (3, 2, 8)]
