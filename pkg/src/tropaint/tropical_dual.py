"""Min-plus polynomials and the dual complex of a regular subdivision.

A lifting eta turns the configuration into the piecewise linear concave
function u -> min_a (u(a) + eta(a)) on the dual space.  Its domains of
linearity form a polyhedral complex whose face lattice is anti-isomorphic to
the induced subdivision; cells are built here dually, from the subdivision,
so the correspondence holds by construction.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError, NotIsotopicError
from .geometry import Vec, affine_rank, vadd, vdot, vector
from .point_config import PointConfiguration
from .regular_subdivision import Lifting, Subdivision, induce_subdivision

ZERO = Fraction(0)


class TropicalPolynomial:
    """u -> min over configuration points a of u(a) + eta(a)."""

    def __init__(self, config: PointConfiguration, eta: Lifting):
        if len(eta) != len(config.points):
            raise InputError("lifting length mismatch")
        self.config = config
        self.eta = eta

    def __call__(self, u) -> Fraction:
        return evaluate(self, u)[0]

    def argmin(self, u) -> frozenset[int]:
        return evaluate(self, u)[1]


def evaluate(f: TropicalPolynomial, u) -> tuple[Fraction, frozenset[int]]:
    """Minimum value at u together with the set of indices attaining it."""
    uu = vector(u)
    vals = [vdot(uu, a) + f.eta[i] for i, a in enumerate(f.config.points)]
    best = min(vals)
    return best, frozenset(i for i, v in enumerate(vals) if v == best)


class TropicalCell:
    """One cell of the dual complex, in V-representation.

    The cell is the convex hull of vertices plus the nonnegative span of
    rays.  marking lists the configuration indices whose affine pieces all
    attain the minimum everywhere on the cell; on the relative interior no
    other index does.  color stays None until a painting assigns one.
    """

    __slots__ = ("vertices", "rays", "marking", "dimension", "color")

    def __init__(self, vertices, rays, marking, dimension):
        self.vertices = tuple(sorted(vertices))
        self.rays = tuple(sorted(rays))
        self.marking = frozenset(marking)
        self.dimension = dimension
        self.color = None

    def is_compact(self) -> bool:
        return not self.rays

    def relint_sample(self) -> Vec:
        """Average of the vertices pushed by the sum of the rays."""
        n = len(self.vertices)
        acc = self.vertices[0]
        for v in self.vertices[1:]:
            acc = vadd(acc, v)
        acc = tuple(x / n for x in acc)
        for r in self.rays:
            acc = vadd(acc, r)
        return acc

    def __repr__(self):
        return f"TropicalCell(dim {self.dimension}, marking {sorted(self.marking)})"


class TropicalComplex:
    """All cells dual to the cells of one induced subdivision, keyed by marking.

    The face relation reverses mark inclusion: a cell is a face of another
    exactly when its marking strictly contains the other's.
    """

    def __init__(self, config, eta, subdivision, cells):
        self.config = config
        self.eta = eta
        self.subdivision = subdivision
        self.cells: dict[frozenset[int], TropicalCell] = cells
        self.dimension = config.dimension

    def cells_of_dim(self, k: int) -> list[TropicalCell]:
        return sorted(
            (c for c in self.cells.values() if c.dimension == k),
            key=lambda c: sorted(c.marking),
        )

    def vertices(self) -> list[TropicalCell]:
        return self.cells_of_dim(0)

    def face_pairs(self) -> list[tuple[frozenset[int], frozenset[int]]]:
        """(face marking, cell marking) pairs; face iff marking strictly grows."""
        keys = sorted(self.cells, key=sorted)
        return [(a, b) for a in keys for b in keys if a != b and b < a]

    def __repr__(self):
        return f"TropicalComplex({len(self.cells)} cells, dim {self.dimension})"


def dual_complex(config: PointConfiguration, eta) -> tuple[TropicalComplex, Subdivision]:
    """The complex of linearity domains of the min-plus polynomial of eta.

    Each subdivision cell contributes one dual cell: its vertices are the
    slopes of the supports of the maximal cells containing it, its rays the
    inward normals of the polytope facets containing it.  Dimensions are
    complementary and compactness matches interiority, both checked by the
    test suite rather than assumed here.
    """
    if not isinstance(eta, Lifting):
        eta = Lifting.of(config, eta)
    s = induce_subdivision(config, eta)
    supports = [(mc.marks, mc.support) for mc in s.maximal]
    cells: dict[frozenset[int], TropicalCell] = {}
    for marks in s.cells:
        verts = {sup.linear for m, sup in supports if marks <= m}
        rays = [f.normal for f in config.facets if marks <= f.members]
        base = next(iter(verts))
        span = list(verts) + [vadd(base, r) for r in rays]
        cells[marks] = TropicalCell(verts, rays, marks, affine_rank(span))
    return TropicalComplex(config, eta, s, cells), s


def isotopy_map(p1: TropicalComplex, p2: TropicalComplex):
    """Match cells of equal marking across two complexes of the same type.

    Both complexes must come from liftings inducing the same subdivision;
    otherwise there is no canonical correspondence and NotIsotopicError is
    raised.  Returns {marking: (cell of p1, cell of p2)}.
    """
    if p1.config != p2.config:
        raise NotIsotopicError("complexes over different configurations")
    if p1.subdivision.key != p2.subdivision.key:
        raise NotIsotopicError("different dual subdivisions")
    return {
        m: (p1.cells[m], p2.cells[m]) for m in sorted(p1.cells, key=sorted)
    }


def hypersurface(p: TropicalComplex) -> list[TropicalCell]:
    """The corner locus: cells below top dimension marked by at least two points."""
    out = [
        c
        for c in p.cells.values()
        if c.dimension < p.dimension and len(c.marking) >= 2
    ]
    return sorted(out, key=lambda c: (c.dimension, sorted(c.marking)))
