"""Exact combinatorics of compact toric LCS manifolds of LCK type.

Good cones, the classification pair (C, a), moment polytope slices, the deck
scaling action and an LP certificate for positivity of invariant potentials.
"""
from .cone import Cone, Face, Ray, build_cone, face_lattice, membership, rays
from .exactlat import hnf, is_primitive, saturation_check, snf
from .goodness import brute_force_good, check_good
from .invariant import (
    deck_reduce,
    gl_equivalent,
    invariants_equal,
    make_invariant,
    moment_slice,
    orbit_summary,
)
from .lp import solve_feasibility
from .potential import build_lp, certify_positivity

__version__ = "0.1.0"

__all__ = [
    "Cone",
    "Face",
    "Ray",
    "brute_force_good",
    "build_cone",
    "build_lp",
    "certify_positivity",
    "check_good",
    "deck_reduce",
    "face_lattice",
    "gl_equivalent",
    "hnf",
    "invariants_equal",
    "is_primitive",
    "make_invariant",
    "membership",
    "moment_slice",
    "orbit_summary",
    "rays",
    "saturation_check",
    "snf",
    "solve_feasibility",
]
