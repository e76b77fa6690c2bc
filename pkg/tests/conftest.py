"""Shared helpers: cached lattices for the named corpus polytopes."""

import functools

import polysweep as ps
from polysweep.cli import parse_input


@functools.lru_cache(maxsize=None)
def lat(spec: str) -> ps.FaceLattice:
    """Hull lattice for a builtin spec string, cached per session."""
    return ps.hull_lattice(parse_input(spec))


@functools.lru_cache(maxsize=None)
def default_direction(spec: str) -> ps.SweepDirection:
    return ps.choose_direction(None, lat(spec).coords)
