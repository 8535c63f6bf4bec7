"""Reducing painted complexes to plain subdivisions one dimension up.

Two extra points at heights 1 and 2 over the distinguished point turn a
(lifting, level) pair into a single lifting of the extended configuration.
The induced subdivision upstairs remembers the painting: each 0-cell picks up
the height-1 point when red, the height-2 point when blue, both when purple,
and purple 1-cells with a sign change contribute one extra 0-cell each at the
zero of the comparison function.  verify_main_theorem checks that this
correspondence is a poset isomorphism and reproduces every 0-cell upstairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, VerificationError
from .geometry import Vec, vdot, vector
from .lattice import lattice_isomorphic, poset_to_lattice
from .painting import (
    PURPLE,
    PaintedComplex,
    PaintSpec,
    enumerate_painted_complexes,
    painting_cone,
)
from .point_config import PointConfiguration, build_configuration
from .regular_subdivision import (
    Lifting,
    enumerate_coherent_subdivisions,
    induce_subdivision,
)
from .secondary_polytope import secondary_polytope_vertices, subdivision_rank
from .tropical_dual import dual_complex

ZERO = Fraction(0)


@dataclass(frozen=True)
class ExtendedConfiguration:
    """A configuration with its two-point tower over the distinguished point.

    extended holds (a, 0) for every base point in order, then the tower
    points at heights 1 and 2, labeled rho and beta.
    """

    base: PointConfiguration
    alpha: Vec
    extended: PointConfiguration
    rho: int
    beta: int


def extend(config: PointConfiguration, alpha) -> ExtendedConfiguration:
    alpha = vector(alpha)
    if len(alpha) != config.dimension:
        raise InputError("alpha dimension mismatch")
    pts = [a + (ZERO,) for a in config.points]
    pts.append(alpha + (Fraction(1),))
    pts.append(alpha + (Fraction(2),))
    labels = tuple(config.labels) + ("rho", "beta")
    ext = build_configuration(pts, labels)
    # the tower points leave the base hyperplane, so full-dimensionality of
    # the base forces it here
    assert ext.dimension == config.dimension + 1
    n = len(config.points)
    return ExtendedConfiguration(config, alpha, ext, n, n + 1)


def embed_lifting(spec: PaintSpec) -> Lifting:
    """The lifting upstairs: base heights unchanged, both tower points at the
    level."""
    return Lifting(tuple(spec.eta.values) + (spec.c, spec.c))


def _g_at(config, spec: PaintSpec, marking, u: Vec) -> Fraction:
    a = min(marking)
    pt = config.points[a]
    return vdot(u, pt) + spec.eta[a] - vdot(u, spec.alpha) - spec.c


def lifted_vertex(ext: ExtendedConfiguration, u, spec: PaintSpec):
    """The unique 0-cell of the extended dual complex over a 0-cell u.

    Returns its position in one higher dimension and its marking in the
    extended configuration.  The last coordinate is the comparison value at u
    when nonnegative and half of it when negative; the marking gains rho,
    both tower points, or beta as that value is positive, zero, or negative.
    """
    u = vector(u)
    if spec.alpha != vector(ext.alpha):
        raise InputError("spec and extension disagree on alpha")
    p, _ = dual_complex(ext.base, spec.eta)
    marking = None
    for cell in p.cells_of_dim(0):
        if cell.vertices[0] == u:
            marking = cell.marking
            break
    if marking is None:
        raise InputError(f"{u} is not a 0-cell of the dual complex")
    g = _g_at(ext.base, spec, marking, u)
    if g > 0:
        d, gain = g, {ext.rho}
    elif g == 0:
        d, gain = ZERO, {ext.rho, ext.beta}
    else:
        d, gain = g / 2, {ext.beta}
    return u + (d,), frozenset(marking) | gain


def _expected_extended_vertices(ext: ExtendedConfiguration, painted: PaintedComplex):
    """All 0-cells the extended dual complex must have, as (position, marking).

    One per base 0-cell via lifted_vertex, plus one per purple 1-cell whose
    comparison function is not identically zero: there the unique interior
    zero lifts to height 0 with both tower points marked.  Purple 1-cells
    with rays count too; only the identically-zero ones contribute a 1-cell
    upstairs instead.
    """
    spec = painted.spec
    config = ext.base
    both = frozenset({ext.rho, ext.beta})
    out = set()
    for cell in painted.complex.cells_of_dim(0):
        u = cell.vertices[0]
        g = _g_at(config, spec, cell.marking, u)
        if g > 0:
            d, gain = g, frozenset({ext.rho})
        elif g == 0:
            d, gain = ZERO, both
        else:
            d, gain = g / 2, frozenset({ext.beta})
        out.add((u + (d,), frozenset(cell.marking) | gain))
    for cell in painted.complex.cells_of_dim(1):
        if painted.kappa[cell.marking] != PURPLE:
            continue
        a = min(cell.marking)
        pt = config.points[a]
        v0 = cell.vertices[0]
        if cell.rays:
            direction = cell.rays[0]
        else:
            direction = tuple(x - y for x, y in zip(cell.vertices[1], v0))
        slope = vdot(direction, pt) - vdot(direction, spec.alpha)
        if slope == 0:
            continue  # identically zero along the cell
        t = -_g_at(config, spec, cell.marking, v0) / slope
        star = tuple(x + t * y for x, y in zip(v0, direction))
        out.add((star + (ZERO,), frozenset(cell.marking) | both))
    return out


class MainTheoremReport:
    """Outcome of the painted-complex / extended-subdivision comparison."""

    def __init__(
        self,
        painted_poset,
        subdivision_poset,
        constructive_map,
        lattice_match,
        ranks,
        polytope_dimension,
        polytope_vertex_count,
        vertex_checks,
    ):
        self.painted_poset = painted_poset
        self.subdivision_poset = subdivision_poset
        self.constructive_map = tuple(constructive_map)
        self.lattice_match = tuple(lattice_match)
        self.ranks = tuple(ranks)
        self.polytope_dimension = polytope_dimension
        self.polytope_vertex_count = polytope_vertex_count
        self.vertex_checks = vertex_checks

    def __repr__(self):
        return (
            f"MainTheoremReport({len(self.constructive_map)} complexes, "
            f"polytope dim {self.polytope_dimension}, "
            f"{self.polytope_vertex_count} vertices)"
        )


def verify_main_theorem(config: PointConfiguration, alpha) -> MainTheoremReport:
    """Check that painted complexes match coherent subdivisions upstairs.

    The check is threefold: the two posets admit a rank-preserving order
    isomorphism; the explicit lifting embedding realizes one (bijective and
    order-preserving both ways); and for every painted complex the 0-cells
    of the extended dual complex are exactly the predicted ones, position
    and marking alike.  Any failure raises VerificationError naming the
    offending element.
    """
    alpha = vector(alpha)
    ppos = enumerate_painted_complexes(config, alpha)
    ext = extend(config, alpha)
    spos = enumerate_coherent_subdivisions(ext.extended)
    if len(ppos) != len(spos):
        raise VerificationError(
            f"{len(ppos)} painted complexes vs {len(spos)} extended subdivisions"
        )
    n = len(config.points)
    d = config.dimension
    pranks = [
        (n + 1) - painting_cone(pc, alpha).dim() for pc in ppos.elements
    ]
    sranks = [subdivision_rank(ext.extended, s) for s in spos.elements]
    match = lattice_isomorphic(
        poset_to_lattice(ppos, pranks), poset_to_lattice(spos, sranks)
    )
    if match is None:
        raise VerificationError("posets admit no rank-preserving isomorphism")

    skey = {s.key: j for j, s in enumerate(spos.elements)}
    cmap = []
    for i, pc in enumerate(ppos.elements):
        xi = embed_lifting(pc.spec)
        sbar = induce_subdivision(ext.extended, xi)
        j = skey.get(sbar.key)
        if j is None:
            raise VerificationError(
                f"embedded lifting of painted complex {i} induces an "
                f"unenumerated subdivision"
            )
        if sranks[j] != pranks[i]:
            raise VerificationError(f"rank mismatch at painted complex {i}")
        cmap.append(j)
    if len(set(cmap)) != len(cmap):
        raise VerificationError("embedding map is not injective")
    for i1 in range(len(ppos)):
        for i2 in range(len(ppos)):
            if ppos.le(i1, i2) != spos.le(cmap[i1], cmap[i2]):
                raise VerificationError(
                    f"order mismatch between painted complexes {i1} and {i2}"
                )

    checks = 0
    for i, pc in enumerate(ppos.elements):
        xi = embed_lifting(pc.spec)
        pext, _ = dual_complex(ext.extended, xi)
        actual = {
            (cell.vertices[0], cell.marking) for cell in pext.cells_of_dim(0)
        }
        expected = _expected_extended_vertices(ext, pc)
        if actual != expected:
            raise VerificationError(
                f"0-cell mismatch at painted complex {i}: "
                f"unexpected {sorted(actual - expected)}, "
                f"missing {sorted(expected - actual)}"
            )
        checks += len(actual)

    verts = secondary_polytope_vertices(ext.extended, spos)
    if len(verts) != pranks.count(0):
        raise VerificationError(
            f"{len(verts)} polytope vertices vs {pranks.count(0)} painted chambers"
        )
    return MainTheoremReport(
        ppos,
        spos,
        cmap,
        match,
        pranks,
        max(pranks) if pranks else 0,
        pranks.count(0),
        checks,
    )
