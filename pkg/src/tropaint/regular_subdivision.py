"""Coherent subdivisions induced by liftings.

A lifting assigns a rational height to each configuration point; lifting point
a to height -eta(a) and projecting the compact upper-hull facets back down
yields the induced subdivision.  Marks record which points touch the hull on
each cell, so points interior to a cell may be marked or unmarked and the two
outcomes are different subdivisions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from itertools import combinations

from .errors import InconsistencyError, InputError, NoCertificateError, ResourceCapError
from .geometry import (
    AffineFunctional,
    Vec,
    _echelon,
    affine_combination,
    affine_rank,
    as_fraction,
    face_member_sets,
    hull_volume,
    is_zero_vector,
    lp_feasible_strict,
    lp_maximize,
    matrix_rank,
    nullspace_basis,
    polytope_hrep,
    polytope_vertex_indices,
    primitive_vector,
    upper_hull_facets,
    vadd,
    vector,
    vscale,
    vsub,
)
from .lattice import Poset
from .point_config import PointConfiguration

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Lifting:
    """One rational height per configuration point, in point order."""

    values: tuple[Fraction, ...]

    @staticmethod
    def of(config: PointConfiguration, values) -> "Lifting":
        vals = tuple(as_fraction(v) for v in values)
        if len(vals) != len(config.points):
            raise InputError(
                f"lifting has {len(vals)} values for {len(config.points)} points"
            )
        return Lifting(vals)

    @staticmethod
    def from_label_map(config: PointConfiguration, mapping) -> "Lifting":
        missing = [lb for lb in config.labels if lb not in mapping]
        if missing:
            raise InputError(f"lifting misses labels {missing}")
        return Lifting(tuple(as_fraction(mapping[lb]) for lb in config.labels))

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def __len__(self):
        return len(self.values)


@lru_cache(maxsize=None)
def _face_sets(points: tuple[Vec, ...]) -> frozenset[frozenset[int]]:
    # Hull face enumeration is the enumeration hot spot and the same cell
    # shows up in many subdivisions, so cache per point tuple.
    return frozenset(face_member_sets(points))


@lru_cache(maxsize=None)
def _hull_vertex_points(points: tuple[Vec, ...]) -> tuple[Vec, ...]:
    vidx = polytope_vertex_indices(points)
    return tuple(sorted(points[j] for j in sorted(vidx)))


class MarkedCell:
    """A subdivision cell: marks, their points, and (if maximal) the support.

    The cell polytope is the convex hull of the marked points; its vertex set
    is only computed on first use.  support, when present, is the affine
    functional cut out by the corresponding upper-hull facet:
    support(a) >= -eta(a) for every configuration point, with equality exactly
    on the marks.
    """

    __slots__ = ("marks", "points", "support", "_vertices", "_dim")

    def __init__(self, points, marks, support=None):
        self.points = tuple(points)  # marked points, in mark order
        self.marks = frozenset(marks)
        self.support = support
        self._vertices = None
        self._dim = None

    @property
    def vertices(self) -> tuple[Vec, ...]:
        if self._vertices is None:
            self._vertices = _hull_vertex_points(self.points)
        return self._vertices

    def dim(self) -> int:
        if self._dim is None:
            self._dim = affine_rank(self.points)
        return self._dim

    def __eq__(self, other):
        return (
            isinstance(other, MarkedCell)
            and self.marks == other.marks
            and self.points == other.points
        )

    def __hash__(self):
        return hash((self.marks, self.points))

    def __repr__(self):
        return f"MarkedCell({sorted(self.marks)})"


def _make_cell(config: PointConfiguration, marks, support=None) -> MarkedCell:
    order = sorted(marks)
    return MarkedCell((config.points[i] for i in order), marks, support)


class Subdivision:
    """Cells of a polyhedral subdivision, closed under faces.

    Identity is the set of maximal marked cells; two liftings in the same open
    secondary cone produce equal Subdivision values.  The face closure is
    computed lazily, on first access of .cells.
    """

    def __init__(self, config: PointConfiguration, maximal: tuple[MarkedCell, ...]):
        self.config = config
        self.maximal = tuple(sorted(maximal, key=lambda c: sorted(c.marks)))
        self.key = frozenset(c.marks for c in self.maximal)
        self._cells = None

    @property
    def cells(self) -> dict[frozenset[int], MarkedCell]:
        if self._cells is None:
            cells: dict[frozenset[int], MarkedCell] = {c.marks: c for c in self.maximal}
            for mc in self.maximal:
                order = sorted(mc.marks)
                for mem in _face_sets(mc.points):
                    marks = frozenset(order[j] for j in mem)
                    if marks not in cells:
                        cells[marks] = _make_cell(self.config, marks)
            self._cells = cells
        return self._cells

    def __eq__(self, other):
        return (
            isinstance(other, Subdivision)
            and self.config == other.config
            and self.key == other.key
        )

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Subdivision({len(self.maximal)} maximal cells)"

    def cells_of_dim(self, k: int) -> list[MarkedCell]:
        return sorted(
            (c for c in self.cells.values() if c.dim() == k),
            key=lambda c: sorted(c.marks),
        )

    def face_pairs(self) -> list[tuple[frozenset[int], frozenset[int]]]:
        """(face marks, cell marks) pairs; the face relation is mark inclusion."""
        keys = sorted(self.cells, key=sorted)
        return [(a, b) for a in keys for b in keys if a != b and a <= b]


def induce_subdivision(config: PointConfiguration, eta: Lifting) -> Subdivision:
    """Project the compact upper-hull facets of the lifted points."""
    if len(eta) != len(config.points):
        raise InputError("lifting length mismatch")
    lifted = [(p, -eta[i]) for i, p in enumerate(config.points)]
    maximal = tuple(
        _make_cell(config, mem, support=fn) for fn, mem in upper_hull_facets(lifted)
    )
    return Subdivision(config, maximal)


def is_triangulation(s: Subdivision) -> bool:
    # Faces of a marked simplex are again marked simplices, so checking the
    # maximal cells settles the whole face closure.
    return all(c.dim() == len(c.marks) - 1 for c in s.maximal)


def refines(s1: Subdivision, s2: Subdivision) -> bool:
    """True iff every maximal cell of s1 sits inside a maximal cell of s2 with
    its marks contained in that cell's marks.

    Mark containment already forces geometric containment (hulls are monotone
    in the marks), and maximal-cell containment propagates to all faces.
    """
    if s1.config != s2.config:
        raise InputError("subdivisions of different configurations")
    return all(
        any(c1.marks <= c2.marks for c2 in s2.maximal) for c1 in s1.maximal
    )


def _lp_min(objective, ineqs: list[AffineFunctional], dim: int):
    """Exact minimum of objective . x over {fn >= 0 for fn in ineqs}.

    Returns None when the region is empty; raises on an unbounded minimum
    (callers only use this over compact regions).
    """
    ub_rows = [[-c for c in fn.linear] for fn in ineqs]
    ub_consts = [-fn.constant for fn in ineqs]
    status, _, value = lp_maximize(
        [-c for c in objective], ub_rows, ub_consts, [], []
    )
    if status == "infeasible":
        return None
    if status == "unbounded":
        raise InputError("unbounded region in a compactness-only check")
    return -value


def validate_subdivision(s: Subdivision) -> None:
    """Exact check of the defining conditions; raises InconsistencyError.

    Checks: marks' hulls match stored polytopes, faces of cells are cells,
    maximal-cell volumes add up to the full polytope volume, and every
    pairwise intersection of maximal cells is a face of each.
    """
    config = s.config
    for marks, cell in s.cells.items():
        rebuilt = _make_cell(config, marks)
        if rebuilt.vertices != cell.vertices:
            raise InconsistencyError(f"cell {sorted(marks)} polytope mismatch")
    for mc in s.maximal:
        order = sorted(mc.marks)
        pts = [config.points[i] for i in order]
        for mem in face_member_sets(pts):
            marks = frozenset(order[j] for j in mem)
            if marks not in s.cells:
                raise InconsistencyError(f"missing face {sorted(marks)}")
    total = sum(
        (hull_volume([config.points[i] for i in sorted(mc.marks)]) for mc in s.maximal),
        ZERO,
    )
    if total != config.hull_volume():
        raise InconsistencyError("maximal cells do not tile the polytope")
    hreps = {}
    faces_of = {}
    for mc in s.maximal:
        order = sorted(mc.marks)
        pts = [config.points[i] for i in order]
        _, ineqs = polytope_hrep(pts)
        hreps[mc.marks] = ineqs
        faces_of[mc.marks] = {
            frozenset(order[j] for j in mem) for mem in face_member_sets(pts)
        }
    maximal = list(s.maximal)
    for i, ca in enumerate(maximal):
        for cb in maximal[i + 1 :]:
            joint = hreps[ca.marks] + hreps[cb.marks]
            dim = config.dimension
            if _lp_min([ZERO] * dim, joint, dim) is None:
                if ca.marks & cb.marks:
                    raise InconsistencyError("shared marks but empty intersection")
                continue
            common = ca.marks & cb.marks
            if common not in faces_of[ca.marks] or common not in faces_of[cb.marks]:
                raise InconsistencyError(
                    f"{sorted(ca.marks)} meets {sorted(cb.marks)} off a face"
                )
            eqs, ineqs = polytope_hrep([config.points[k] for k in sorted(common)])
            for fn in eqs:
                lo = _lp_min(fn.linear, joint, dim)
                hi = -_lp_min([-c for c in fn.linear], joint, dim)
                if lo != fn.constant or hi != fn.constant:
                    raise InconsistencyError("intersection leaves the common face")
            for fn in ineqs:
                lo = _lp_min(fn.linear, joint, dim)
                if lo < fn.constant:
                    raise InconsistencyError("intersection leaves the common face")


@dataclass(frozen=True)
class SecondaryCone:
    """Liftings inducing one subdivision: {strict > 0, equalities = 0} in lifting space.

    The closure (weak inequalities) is the union of the cones of all
    coarsenings.  interior_point is a certified strictly feasible lifting.
    """

    equalities: tuple[AffineFunctional, ...]
    stricts: tuple[AffineFunctional, ...]
    ambient_dim: int
    interior_point: Vec

    def dim(self) -> int:
        if not self.equalities:
            return self.ambient_dim
        return self.ambient_dim - matrix_rank([f.linear for f in self.equalities])

    def contains_open(self, eta) -> bool:
        v = _eta_vec(eta)
        return all(f(v) == 0 for f in self.equalities) and all(
            f(v) > 0 for f in self.stricts
        )

    def contains_closed(self, eta) -> bool:
        v = _eta_vec(eta)
        return all(f(v) == 0 for f in self.equalities) and all(
            f(v) >= 0 for f in self.stricts
        )


def _eta_vec(eta) -> Vec:
    return eta.values if isinstance(eta, Lifting) else vector(eta)


def _spanning_marks(config: PointConfiguration, marks) -> list[int]:
    """Lexicographically first affinely independent spanning subset of the marks."""
    chosen_idx: list[int] = []
    chosen_pts: list[Vec] = []
    target = affine_rank([config.points[i] for i in sorted(marks)]) + 1
    for i in sorted(marks):
        p = config.points[i]
        if not chosen_pts or affine_rank(chosen_pts + [p]) == len(chosen_pts):
            chosen_idx.append(i)
            chosen_pts.append(p)
        if len(chosen_idx) == target:
            break
    return chosen_idx


def cone_constraint(config: PointConfiguration, basis_idx, a: int) -> AffineFunctional:
    """The lifting-space functional comparing point a against the affine span
    of a basis of marks: eta(a) - sum_j coeff_j eta(basis_j).

    Vanishes exactly when the lifted point a lands on the affine hull of the
    lifted basis; positive when a is lifted strictly below it.
    """
    basis_pts = [config.points[j] for j in basis_idx]
    coeffs = affine_combination(basis_pts, config.points[a])
    if coeffs is None:
        raise InputError("basis does not span the configuration point")
    coef = [ZERO] * len(config.points)
    coef[a] = ONE
    for j, cj in zip(basis_idx, coeffs):
        coef[j] -= cj
    return AffineFunctional(tuple(coef), ZERO)


def secondary_cone(config: PointConfiguration, s: Subdivision) -> SecondaryCone:
    """H-representation of the liftings inducing s; raises when there are none."""
    n = len(config.points)
    eqs: dict[tuple, AffineFunctional] = {}
    sts: dict[tuple, AffineFunctional] = {}
    for cell in s.maximal:
        basis_idx = _spanning_marks(config, cell.marks)
        in_basis = set(basis_idx)
        for a in range(n):
            if a in in_basis:
                continue
            fn = cone_constraint(config, basis_idx, a).primitive()
            key = (fn.linear, fn.constant)
            if a in cell.marks:
                eqs[key] = fn
            else:
                sts[key] = fn
    if any(k in eqs for k in sts):
        # a functional required both zero and positive: nothing induces s
        raise NoCertificateError("subdivision is not induced by any lifting")
    equalities = tuple(eqs[k] for k in sorted(eqs))
    stricts = tuple(fn for _, fn in sorted(sts.items()))
    sample = lp_feasible_strict(stricts, [], equalities, n)
    if sample is None:
        raise NoCertificateError("subdivision is not induced by any lifting")
    return SecondaryCone(equalities, stricts, n, sample)


# ---------------------------------------------------------------------------
# Enumeration


def _placing_lifting(config: PointConfiguration):
    """A lifting inducing some triangulation: geometric heights, doubled until
    all lifted point subsets are generic enough."""
    n = len(config.points)
    base = 2
    for _ in range(64):
        eta = Lifting(tuple(Fraction(base) ** i for i in range(n)))
        s = induce_subdivision(config, eta)
        if is_triangulation(s):
            return s
        base *= 2
    raise ResourceCapError("found no triangulation-inducing lifting")


def _mod_reduce(echelon_rows, pivots, v):
    """Reduce v modulo the row space of a reduced echelon basis."""
    w = list(v)
    for row, c in zip(echelon_rows, pivots):
        if w[c] != 0:
            f = w[c]
            w = [x - f * y for x, y in zip(w, row)]
    return tuple(w)


@lru_cache(maxsize=None)
def _extreme_rays(cone: SecondaryCone) -> tuple[Vec, ...]:
    """Extreme rays of the cone modulo its lineality space.

    Canonical primitive representatives (zero on the lineality pivot
    coordinates), sorted.  Brute force over strict subsets: a ray is a face
    one dimension above the lineality, so it is cut out by some strict subset
    of complementary rank.  Desk-scale cones keep the subset count small.
    """
    n = cone.ambient_dim
    eq_rows = [list(f.linear) for f in cone.equalities]
    all_rows = eq_rows + [list(f.linear) for f in cone.stricts]
    lin = nullspace_basis(all_rows if all_rows else [[ZERO] * n])
    lrows, lpiv = _echelon([list(v) for v in lin])
    e = matrix_rank(eq_rows) if eq_rows else 0
    s0 = n - len(lin) - 1 - e
    if s0 < 0:
        return ()
    rays = set()
    for sub in combinations(range(len(cone.stricts)), s0):
        rows = eq_rows + [list(cone.stricts[i].linear) for i in sub]
        if matrix_rank(rows if rows else [[ZERO] * n]) != n - len(lin) - 1:
            continue
        cand = None
        for v in nullspace_basis(rows if rows else [[ZERO] * n]):
            w = _mod_reduce(lrows, lpiv, v)
            if not is_zero_vector(w):
                cand = w
                break
        if cand is None:
            continue
        vals = [fn(cand) for fn in cone.stricts]
        if all(x >= 0 for x in vals):
            rays.add(primitive_vector(cand))
        elif all(x <= 0 for x in vals):
            rays.add(primitive_vector(tuple(-x for x in cand)))
    return tuple(sorted(rays))


def _cone_walls(cone: SecondaryCone):
    """(wall functional, relative-interior wall sample) per facet of the cone.

    A strict cuts a facet exactly when the rays it kills span one dimension
    below all rays together; the sum of those rays samples the facet's
    relative interior (the lineality part stays at zero).
    """
    rays = _extreme_rays(cone)
    total = matrix_rank(rays) if rays else 0
    zero = (ZERO,) * cone.ambient_dim
    out = []
    seen = set()
    for fn in cone.stricts:
        tight = tuple(r for r in rays if fn(r) == 0)
        if tight in seen:
            continue
        if (matrix_rank(tight) if tight else 0) == total - 1:
            seen.add(tight)
            sample = zero
            for r in tight:
                sample = vadd(sample, r)
            out.append((fn, sample))
    return out


def _cross_wall(config, t: Subdivision, cone: SecondaryCone, wall_sample: Vec):
    """The triangulation on the far side of the wall through wall_sample."""
    direction = vsub(wall_sample, cone.interior_point)
    step = ONE
    for _ in range(128):
        eta = Lifting(vadd(wall_sample, vscale(step, direction)))
        s = induce_subdivision(config, eta)
        if is_triangulation(s) and s.key != t.key:
            c2 = secondary_cone(config, s)
            if c2.contains_closed(wall_sample):
                return s, c2
        step /= 2
    raise ResourceCapError("wall crossing did not converge")


def enumerate_regular_triangulations(config: PointConfiguration, max_count=4096):
    """All coherent triangulations, found by crossing secondary-cone walls
    outward from a seed triangulation.  Returns {key: (Subdivision, cone)}."""
    seed = _placing_lifting(config)
    found: dict[frozenset, tuple[Subdivision, SecondaryCone]] = {
        seed.key: (seed, secondary_cone(config, seed))
    }
    frontier = [seed.key]
    while frontier:
        key = frontier.pop()
        t, cone = found[key]
        for _, wall_sample in _cone_walls(cone):
            s2, c2 = _cross_wall(config, t, cone, wall_sample)
            if s2.key not in found:
                if len(found) >= max_count:
                    raise ResourceCapError(f"more than {max_count} triangulations")
                found[s2.key] = (s2, c2)
                frontier.append(s2.key)
    return found


def enumerate_coherent_subdivisions(config: PointConfiguration, max_count=4096):
    """Poset of all coherent subdivisions under refinement (finer below coarser).

    Triangulations come from wall crossing.  Every other coherent subdivision
    then shows up on a proper face of some triangulation cone, and faces are
    pure combinatorics once the extreme rays are known: each face is the set
    of rays surviving some collection of tight stricts, and the sum of those
    rays samples its relative interior.
    """
    tris = enumerate_regular_triangulations(config, max_count)
    subs: dict[frozenset, Subdivision] = {k: t for k, (t, _) in tris.items()}
    for key in sorted(tris, key=sorted):
        _, cone = tris[key]
        rays = _extreme_rays(cone)
        inc = [
            sum(1 << j for j, r in enumerate(rays) if fn(r) == 0)
            for fn in cone.stricts
        ]
        full = (1 << len(rays)) - 1
        seen_masks = {full}
        queue = [full]
        while queue:
            mask = queue.pop()
            for im in inc:
                child = mask & im
                if child not in seen_masks:
                    seen_masks.add(child)
                    queue.append(child)
        zero = (ZERO,) * cone.ambient_dim
        for mask in sorted(seen_masks - {full}):
            sample = zero
            for j, r in enumerate(rays):
                if mask >> j & 1:
                    sample = vadd(sample, r)
            s = induce_subdivision(config, Lifting(sample))
            if s.key not in subs:
                if len(subs) >= max_count:
                    raise ResourceCapError(f"more than {max_count} subdivisions")
                subs[s.key] = s
    keys = sorted(subs, key=sorted)
    elements = tuple(subs[k] for k in keys)
    le = []
    for i, s1 in enumerate(elements):
        for j, s2 in enumerate(elements):
            if i != j and refines(s1, s2):
                le.append((i, j))
    return Poset(elements, le)
