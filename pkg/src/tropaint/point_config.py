"""Marked point configurations.

A configuration is a finite spanning point set together with the facet data of
its convex hull.  Points may lie in the interior or on proper faces; they stay
part of the configuration and can carry marks downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateInputError, InputError
from .geometry import (
    Vec,
    affine_rank,
    convex_hull_facets,
    hull_volume,
    matrix_rank,
    vdot,
    vector,
)


@dataclass(frozen=True)
class FacetSupport:
    """One hull facet as an inward inequality: normal(x) >= threshold holds on Q."""

    normal: Vec  # primitive integer vector
    threshold: Fraction
    members: frozenset[int]  # indices of all configuration points on the facet

    def value(self, x) -> Fraction:
        return vdot(self.normal, vector(x))


@dataclass(frozen=True)
class SignVector:
    """Per-facet position of a query point: +1 outside, 0 on, -1 strictly inside."""

    signs: tuple[int, ...]

    def __str__(self):
        return "(" + ",".join({1: "+", 0: "0", -1: "-"}[s] for s in self.signs) + ")"


class PointConfiguration:
    """Ordered distinct points spanning their ambient space, with hull facets."""

    def __init__(self, points: tuple[Vec, ...], labels: tuple[str, ...],
                 facets: tuple[FacetSupport, ...]):
        self.points = points
        self.labels = labels
        self.facets = facets
        self.dimension = len(points[0])

    def __eq__(self, other):
        return isinstance(other, PointConfiguration) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"PointConfiguration({len(self.points)} points, dim {self.dimension})"

    def index_of(self, point) -> int:
        p = vector(point)
        try:
            return self.points.index(p)
        except ValueError:
            raise InputError(f"{p} is not a configuration point") from None

    def vertex_indices(self) -> frozenset[int]:
        out = set()
        for i in range(len(self.points)):
            normals = [f.normal for f in self.facets if i in f.members]
            if len(normals) >= self.dimension and matrix_rank(normals) == self.dimension:
                out.add(i)
        return frozenset(out)

    def contains(self, x) -> bool:
        xv = vector(x)
        return all(f.value(xv) >= f.threshold for f in self.facets)

    def strictly_contains(self, x) -> bool:
        xv = vector(x)
        return all(f.value(xv) > f.threshold for f in self.facets)

    def hull_volume(self) -> Fraction:
        return hull_volume(self.points)


def build_configuration(points, labels=None) -> PointConfiguration:
    """Validate and package a point list, computing hull facet data.

    Requires pairwise distinct points of full affine rank (at least dim+1 of
    them).  Labels default to a0, a1, ... in input order.
    """
    pts = tuple(vector(p) for p in points)
    if not pts:
        raise InputError("empty point list")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise InputError("points of mixed dimension")
    if len(set(pts)) != len(pts):
        dup = next(p for p in pts if pts.count(p) > 1)
        raise InputError(f"duplicate point {tuple(map(str, dup))}")
    if len(pts) < d + 1 or affine_rank(pts) < d:
        raise DegenerateInputError(
            f"points span only {affine_rank(pts)} dimensions, need {d}"
        )
    if labels is None:
        labels = tuple(f"a{i}" for i in range(len(pts)))
    else:
        labels = tuple(labels)
        if len(labels) != len(pts) or len(set(labels)) != len(labels):
            raise InputError("labels must be distinct and match the point count")
    facets = tuple(
        FacetSupport(tuple(-w for w in f.normal), -f.offset, f.members)
        for f in convex_hull_facets(pts)
    )
    return PointConfiguration(pts, labels, facets)


def sign_vector(config: PointConfiguration, alpha) -> SignVector:
    """Three-way comparison of a point against every hull facet.

    +1 means the facet inequality is violated (the point lies beyond that
    facet), 0 means it sits on the facet hyperplane, -1 strictly inside.
    """
    a = vector(alpha)
    if len(a) != config.dimension:
        raise InputError("query point has the wrong dimension")
    signs = []
    for f in config.facets:
        v = f.value(a)
        signs.append(-1 if v > f.threshold else 0 if v == f.threshold else 1)
    return SignVector(tuple(signs))


def is_marked_simplex(cell_points, marks) -> bool:
    """A marked cell is a simplex when its dimension is one less than its mark count."""
    pts = [vector(p) for p in cell_points]
    mk = list(marks)
    return affine_rank(pts) == len(mk) - 1
