"""Exact rational toolkit for regular subdivisions, tropical dual complexes,
painted complexes, secondary polytopes, and multiplihedra."""

from .errors import (
    DegenerateInputError,
    InconsistencyError,
    InputError,
    NoCertificateError,
    NotIsotopicError,
    ResourceCapError,
    VerificationError,
)
from .geometry import (
    AffineFunctional,
    affine_rank,
    lp_feasible_strict,
    simplex_normalized_volume,
    upper_hull_facets,
)
from .lattice import FaceLattice, Poset, graded_lattice, lattice_isomorphic
from .multiplihedra import (
    PaintedTree,
    admissible_alpha,
    multiplihedron_lattice,
    ngon_configuration,
    painted_tree_of,
    realize_edge_lengths,
    realize_painted_tree,
    verify_multiplihedron_theorem,
)
from .painting import (
    ColorFunction,
    PaintedComplex,
    PaintSpec,
    colors_from_vertices,
    enumerate_painted_complexes,
    paint,
    painting_cone,
)
from .painting_polytope import extend, verify_main_theorem
from .point_config import PointConfiguration, build_configuration, sign_vector
from .regular_subdivision import (
    Lifting,
    Subdivision,
    enumerate_coherent_subdivisions,
    enumerate_regular_triangulations,
    induce_subdivision,
    is_triangulation,
    secondary_cone,
)
from .secondary_polytope import (
    face_lattice_from_poset,
    secondary_polytope_vertices,
    subdivision_rank,
)
from .tropical_dual import TropicalComplex, TropicalPolynomial, dual_complex, evaluate

__all__ = [
    "AffineFunctional",
    "ColorFunction",
    "DegenerateInputError",
    "FaceLattice",
    "InconsistencyError",
    "InputError",
    "Lifting",
    "NoCertificateError",
    "NotIsotopicError",
    "PaintSpec",
    "PaintedComplex",
    "PaintedTree",
    "PointConfiguration",
    "Poset",
    "ResourceCapError",
    "Subdivision",
    "TropicalComplex",
    "TropicalPolynomial",
    "VerificationError",
    "admissible_alpha",
    "affine_rank",
    "build_configuration",
    "colors_from_vertices",
    "dual_complex",
    "enumerate_coherent_subdivisions",
    "enumerate_painted_complexes",
    "enumerate_regular_triangulations",
    "evaluate",
    "extend",
    "face_lattice_from_poset",
    "graded_lattice",
    "induce_subdivision",
    "is_triangulation",
    "lattice_isomorphic",
    "lp_feasible_strict",
    "multiplihedron_lattice",
    "ngon_configuration",
    "paint",
    "painted_tree_of",
    "painting_cone",
    "realize_edge_lengths",
    "realize_painted_tree",
    "secondary_cone",
    "secondary_polytope_vertices",
    "sign_vector",
    "simplex_normalized_volume",
    "subdivision_rank",
    "upper_hull_facets",
    "verify_main_theorem",
    "verify_multiplihedron_theorem",
]
