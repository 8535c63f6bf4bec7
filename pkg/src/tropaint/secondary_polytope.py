"""Volume vectors of coherent triangulations and the polytope they span.

Each triangulation T gets the vector whose coordinate at a point a is the
total normalized volume of the simplices of T having a as a mark.  These
vectors are the vertices of a polytope whose face lattice mirrors the
refinement poset of all coherent subdivisions; the lattice is assembled here
straight from that poset, with ranks read off secondary-cone dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .lattice import FaceLattice, Poset, graded_lattice
from .point_config import PointConfiguration
from .regular_subdivision import (
    Subdivision,
    enumerate_coherent_subdivisions,
    is_triangulation,
    secondary_cone,
)
from .geometry import simplex_normalized_volume

ZERO = Fraction(0)


@dataclass(frozen=True)
class GKZVector:
    """Per-point accumulated simplex volumes of one triangulation."""

    coordinates: tuple[Fraction, ...]

    def total(self) -> Fraction:
        return sum(self.coordinates, ZERO)


def gkz_vector(config: PointConfiguration, t: Subdivision) -> GKZVector:
    if not is_triangulation(t):
        raise InputError("volume vector requires a triangulation")
    coords = [ZERO] * len(config.points)
    for cell in t.maximal:
        vol = simplex_normalized_volume([config.points[i] for i in sorted(cell.marks)])
        for i in cell.marks:
            coords[i] += vol
    return GKZVector(tuple(coords))


def secondary_polytope_vertices(config: PointConfiguration, poset: Poset | None = None):
    """(GKZVector, Subdivision) per coherent triangulation; vectors verified distinct."""
    if poset is None:
        poset = enumerate_coherent_subdivisions(config)
    out = []
    for s in poset.elements:
        if is_triangulation(s):
            out.append((gkz_vector(config, s), s))
    seen = {}
    for vec, s in out:
        if vec.coordinates in seen:
            raise InputError("two triangulations share a volume vector")
        seen[vec.coordinates] = s
    return out


def subdivision_rank(config: PointConfiguration, s: Subdivision) -> int:
    """Height of s in the face lattice: 0 for triangulations, maximal for the
    trivial subdivision; computed as cone codimension complemented."""
    return len(config.points) - secondary_cone(config, s).dim()


def face_lattice_from_poset(config: PointConfiguration, poset: Poset) -> FaceLattice:
    ranks = [subdivision_rank(config, s) for s in poset.elements]
    payload = [
        "|".join(",".join(str(i) for i in sorted(m)) for m in sorted(s.key, key=sorted))
        for s in poset.elements
    ]
    return graded_lattice(ranks, poset.covers(), payload)
