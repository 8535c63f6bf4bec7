"""Three-coloring of dual complexes by an affine comparison level.

Fix a distinguished point alpha inside the configuration's span and a level c.
On each cell of the dual complex the min-plus function is affine, so the sign
of g = f(u) - u(alpha) - c over a cell is decided exactly by its values at
the cell's vertices and its slopes along the cell's rays.  A cell is red when
g stays positive on the relative interior, blue when negative, purple when g
vanishes somewhere inside.  Zeros attained only on a proper face do not count:
an edge with one purple and one red endpoint is red.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import InconsistencyError, InputError, NoCertificateError, ResourceCapError
from .geometry import (
    AffineFunctional,
    Vec,
    affine_combination,
    as_fraction,
    lp_feasible_strict,
    vadd,
    vdot,
    vector,
)
from .lattice import Poset
from .point_config import PointConfiguration, SignVector, sign_vector
from .regular_subdivision import (
    Lifting,
    SecondaryCone,
    _extreme_rays,
    _spanning_marks,
    enumerate_regular_triangulations,
    secondary_cone,
)
from .tropical_dual import TropicalComplex, dual_complex

ZERO = Fraction(0)
ONE = Fraction(1)

RED = "red"
PURPLE = "purple"
BLUE = "blue"
COLORS = (RED, PURPLE, BLUE)


@dataclass(frozen=True)
class PaintSpec:
    """A lifting together with the comparison level and distinguished point."""

    eta: Lifting
    c: Fraction
    alpha: Vec

    @staticmethod
    def of(config: PointConfiguration, eta, c, alpha) -> "PaintSpec":
        if not isinstance(eta, Lifting):
            eta = Lifting.of(config, eta)
        alpha = vector(alpha)
        if len(alpha) != config.dimension:
            raise InputError("alpha dimension mismatch")
        return PaintSpec(eta, as_fraction(c), alpha)


class ColorFunction:
    """Total map from cell markings to red/purple/blue."""

    def __init__(self, colors: dict):
        bad = {v for v in colors.values() if v not in COLORS}
        if bad:
            raise InputError(f"unknown colors {sorted(bad)}")
        self.colors = dict(colors)

    def __getitem__(self, marking) -> str:
        return self.colors[marking]

    def __contains__(self, marking):
        return marking in self.colors

    def items(self):
        return self.colors.items()

    def key(self) -> tuple:
        return tuple(
            (tuple(sorted(m)), col)
            for m, col in sorted(self.colors.items(), key=lambda kv: sorted(kv[0]))
        )

    def __eq__(self, other):
        return isinstance(other, ColorFunction) and self.colors == other.colors

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        counts = {col: 0 for col in COLORS}
        for col in self.colors.values():
            counts[col] += 1
        return f"ColorFunction({counts})"


class PaintedComplex:
    """A dual complex with a realizable coloring and the witness that realizes it."""

    __slots__ = ("complex", "kappa", "spec")

    def __init__(self, complex: TropicalComplex, kappa: ColorFunction, spec: PaintSpec):
        self.complex = complex
        self.kappa = kappa
        self.spec = spec

    @property
    def subdivision(self):
        return self.complex.subdivision

    def key(self) -> tuple:
        return (self.subdivision.key, self.kappa.key())

    def __repr__(self):
        return f"PaintedComplex({len(self.complex.cells)} cells)"


def _color_from_flags(has_pos: bool, has_neg: bool, all_zero: bool) -> str:
    if all_zero or (has_pos and has_neg):
        return PURPLE
    if has_pos:
        return RED
    if has_neg:
        return BLUE
    raise InconsistencyError("sign flags admit no color")


def paint(p: TropicalComplex, spec: PaintSpec) -> PaintedComplex:
    """Color every cell of p by the exact sign behavior of g on it.

    g restricted to a cell is affine with linear part a - alpha for any mark a
    of the cell, so vertex values plus ray slopes determine the color.
    """
    config = p.config
    if len(spec.alpha) != config.dimension:
        raise InputError("alpha dimension mismatch")
    if len(spec.eta) != len(config.points):
        raise InputError("lifting length mismatch")
    check, _ = dual_complex(config, spec.eta)
    if check.subdivision.key != p.subdivision.key:
        raise InputError("lifting does not induce the given complex")
    colors = {}
    for marks, cell in p.cells.items():
        a0 = min(marks)
        pt = config.points[a0]
        vals = [
            vdot(v, pt) + spec.eta[a0] - vdot(v, spec.alpha) - spec.c
            for v in cell.vertices
        ]
        slopes = [vdot(r, pt) - vdot(r, spec.alpha) for r in cell.rays]
        has_pos = any(x > 0 for x in vals) or any(x > 0 for x in slopes)
        has_neg = any(x < 0 for x in vals) or any(x < 0 for x in slopes)
        all_zero = all(x == 0 for x in vals) and all(x == 0 for x in slopes)
        colors[marks] = _color_from_flags(has_pos, has_neg, all_zero)
    kappa = ColorFunction(colors)
    for marks, cell in p.cells.items():
        cell.color = kappa[marks]
    return PaintedComplex(p, kappa, spec)


def colors_from_vertices(
    p: TropicalComplex, vertex_colors: dict, sign: SignVector
) -> ColorFunction:
    """Extend a coloring of the 0-cells to the whole complex.

    The 0-cell colors encode the sign of g at each vertex, and the sign
    vector gives the slope sign along every ray, so the same flag rule used
    by paint() applies without knowing g itself.
    """
    zero_cells = [c for c in p.cells.values() if c.dimension == 0]
    for c in zero_cells:
        if c.marking not in vertex_colors:
            raise InconsistencyError(f"no color for 0-cell {sorted(c.marking)}")
        if vertex_colors[c.marking] not in COLORS:
            raise InconsistencyError(f"bad color {vertex_colors[c.marking]!r}")
    slope_sign = {f.normal: s for f, s in zip(p.config.facets, sign.signs)}
    colors = {}
    for marks, cell in p.cells.items():
        vcols = [
            vertex_colors[c.marking] for c in zero_cells if marks <= c.marking
        ]
        ray_signs = [slope_sign[r] for r in cell.rays]
        has_pos = RED in vcols or any(s > 0 for s in ray_signs)
        has_neg = BLUE in vcols or any(s < 0 for s in ray_signs)
        all_zero = all(col == PURPLE for col in vcols) and all(
            s == 0 for s in ray_signs
        )
        colors[marks] = _color_from_flags(has_pos, has_neg, all_zero)
    return ColorFunction(colors)


@dataclass(frozen=True)
class PaintingConstraint:
    """The affine functional in (lifting, level) space attached to a 0-cell.

    coefficients express alpha as an affine combination of the basis points
    chosen inside the 0-cell's marking; the functional evaluates the would-be
    g-value at that 0-cell, so its sign is the cell's color.
    """

    marking: frozenset[int]
    basis: tuple[int, ...]
    coefficients: tuple[Fraction, ...]
    functional: AffineFunctional


def painting_constraint(
    config: PointConfiguration, marking, alpha
) -> PaintingConstraint:
    alpha = vector(alpha)
    basis = tuple(_spanning_marks(config, marking))
    coeffs = affine_combination([config.points[i] for i in basis], alpha)
    if coeffs is None:
        raise InputError("marking does not span the distinguished point")
    if sum(coeffs, ZERO) != 1:
        raise InconsistencyError("coefficients are not affine")
    combo = [ZERO] * config.dimension
    for i, b in zip(basis, coeffs):
        combo = vadd(tuple(combo), tuple(b * x for x in config.points[i]))
    if tuple(combo) != alpha:
        raise InconsistencyError("coefficients miss the distinguished point")
    n = len(config.points)
    linear = [ZERO] * (n + 1)
    for i, b in zip(basis, coeffs):
        linear[i] += b
    linear[n] = -ONE
    return PaintingConstraint(
        frozenset(marking), basis, tuple(coeffs), AffineFunctional(tuple(linear), ZERO)
    )


def _extend_functional(fn: AffineFunctional) -> AffineFunctional:
    return AffineFunctional(fn.linear + (ZERO,), fn.constant)


def painting_cone(painted: PaintedComplex, alpha) -> SecondaryCone:
    """Liftings-with-level reproducing the painted complex exactly.

    H-representation in (lifting, level) space: the secondary cone of the
    underlying subdivision, plus one sign constraint per 0-cell whose
    orientation follows its color (positive g-value means red).
    """
    config = painted.complex.config
    s = painted.subdivision
    base = secondary_cone(config, s)
    eqs = [_extend_functional(f) for f in base.equalities]
    sts = [_extend_functional(f) for f in base.stricts]
    for cell in painted.complex.cells_of_dim(0):
        fn = painting_constraint(config, cell.marking, alpha).functional
        col = painted.kappa[cell.marking]
        if col == RED:
            sts.append(fn)
        elif col == BLUE:
            sts.append(fn.scaled(-1))
        else:
            eqs.append(fn)
    n = len(config.points)
    sample = lp_feasible_strict(sts, [], eqs, n + 1)
    if sample is None:
        raise NoCertificateError("painting admits no realizing lifting and level")
    return SecondaryCone(tuple(eqs), tuple(sts), n + 1, sample)


def _paint_at(config, alpha, point) -> PaintedComplex:
    """Paint the complex induced by a point of (lifting, level) space."""
    eta = Lifting(tuple(point[:-1]))
    spec = PaintSpec(eta, point[-1], vector(alpha))
    p, _ = dual_complex(config, eta)
    return paint(p, spec)


def enumerate_painted_complexes(
    config: PointConfiguration, alpha, max_count: int = 4096
) -> Poset:
    """Poset of all painted complexes of (config, alpha) under the fan order.

    Chambers of the painting fan sit over triangulation cones: one per
    realizable all-strict color pattern of the 0-cell functionals.  Every
    other painted complex lives on a proper face of some chamber, found, as
    with subdivisions, by intersecting ray incidences.  The partial order
    puts a complex below another when the other's cone lies in the closure of
    its own (painted chambers at the bottom, the coarsest paintings on top).
    """
    alpha = vector(alpha)
    if len(alpha) != config.dimension:
        raise InputError("alpha dimension mismatch")
    n = len(config.points)
    tris = enumerate_regular_triangulations(config)
    found: dict[tuple, tuple[PaintedComplex, SecondaryCone]] = {}

    def record(point) -> None:
        painted = _paint_at(config, alpha, point)
        key = painted.key()
        if key not in found:
            if len(found) >= max_count:
                raise ResourceCapError(f"more than {max_count} painted complexes")
            found[key] = (painted, painting_cone(painted, alpha))

    for key in sorted(tris, key=sorted):
        t, cone = tris[key]
        eqs_base = tuple(_extend_functional(f) for f in cone.equalities)
        sts_base = [_extend_functional(f) for f in cone.stricts]
        constraints = [
            painting_constraint(config, mc.marks, alpha).functional
            for mc in t.maximal
        ]
        for pattern in product((1, -1), repeat=len(constraints)):
            sts = sts_base + [
                fn if s > 0 else fn.scaled(-1)
                for fn, s in zip(constraints, pattern)
            ]
            sample = lp_feasible_strict(sts, [], list(eqs_base), n + 1)
            if sample is None:
                continue
            chamber = SecondaryCone(eqs_base, tuple(sts), n + 1, sample)
            rays = _extreme_rays(chamber)
            inc = [
                sum(1 << j for j, r in enumerate(rays) if fn(r) == 0)
                for fn in chamber.stricts
            ]
            full = (1 << len(rays)) - 1
            seen = {full}
            queue = [full]
            while queue:
                mask = queue.pop()
                for im in inc:
                    child = mask & im
                    if child not in seen:
                        seen.add(child)
                        queue.append(child)
            zero = (ZERO,) * (n + 1)
            for mask in sorted(seen):
                point = zero
                for j, r in enumerate(rays):
                    if mask >> j & 1:
                        point = vadd(point, r)
                record(point)

    keys = sorted(found)
    elements = tuple(found[k][0] for k in keys)
    cones = [found[k][1] for k in keys]
    le = []
    for i in range(len(elements)):
        for j in range(len(elements)):
            if i != j and cones[i].contains_closed(cones[j].interior_point):
                le.append((i, j))
    return Poset(elements, le)
