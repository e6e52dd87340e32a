"""Exact conjugacy limits of symmetric subgroups of GL_n(R)."""
from .exactmat import MatrixSubspace, RatMatrix, echelonize, contains, intersect
from .liealg import DiagonalDirection, bracket, centralizer_in, is_subalgebra, normalizer_dim, weight_decompose
from .limits import closed_form_limit, grassmann_limit, verify_limit
from .catalog import enumerate_directions, make_family, predicted_block_form
from .pfqf import SignatureSequence, build_poset, canonicalize, enumerate_limits, isom_algebra
from .charpoly import char_poly, in_char_h2xr, in_char_so31, obstruction_witness

__all__ = [
    "MatrixSubspace", "RatMatrix", "echelonize", "contains", "intersect",
    "DiagonalDirection", "bracket", "centralizer_in", "is_subalgebra", "normalizer_dim", "weight_decompose",
    "closed_form_limit", "grassmann_limit", "verify_limit",
    "enumerate_directions", "make_family", "predicted_block_form",
    "SignatureSequence", "build_poset", "canonicalize", "enumerate_limits", "isom_algebra",
    "char_poly", "in_char_h2xr", "in_char_so31", "obstruction_witness",
]
