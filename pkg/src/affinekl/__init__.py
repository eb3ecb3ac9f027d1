"""Parabolic affine Kazhdan-Lusztig polynomials for simple Lie types at a
level, by two cross-verifying methods: the classical alcove wall-crossing
recursion, and a piecewise-linear path algorithm that rides facets of large
stabilizer.  Includes the type-A applications (tilting tensor decompositions
and Hecke-algebra simple-module dimensions) and a CLI front end."""

from .laurent import LaurentPoly
from .rootdata import RootSystem, pt
from .alcove import (
    AffineElement,
    Alcove,
    Facet,
    ParabolicData,
    a_minus,
    a_plus,
    alcove_of,
    facet_of,
    fundamental_alcove,
    right_action,
    right_stabilizer,
    segment_events,
)
from .heckemod import (
    Memo,
    NVector,
    act_cs,
    act_hword,
    act_parabolic_closed,
    act_parabolic_naive,
    canonical_alcove,
    express_in_canonical,
)
from .pathops import (
    MVector,
    PathEngine,
    f_basis,
    f_step,
    plan_path,
    positivity,
    transport_direction,
)
from .apps import hecke_simple_dims, tensor_with_vector, tilting_dim

__version__ = "0.1.0"

__all__ = [
    "AffineElement",
    "Alcove",
    "Facet",
    "LaurentPoly",
    "MVector",
    "Memo",
    "NVector",
    "ParabolicData",
    "PathEngine",
    "RootSystem",
    "a_minus",
    "a_plus",
    "act_cs",
    "act_hword",
    "act_parabolic_closed",
    "act_parabolic_naive",
    "alcove_of",
    "canonical_alcove",
    "express_in_canonical",
    "f_basis",
    "f_step",
    "facet_of",
    "fundamental_alcove",
    "hecke_simple_dims",
    "plan_path",
    "positivity",
    "pt",
    "right_action",
    "right_stabilizer",
    "segment_events",
    "tensor_with_vector",
    "tilting_dim",
    "transport_direction",
]
