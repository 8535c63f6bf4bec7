"""Exact rational linear algebra, convex hulls, and LP feasibility.

Every quantity is a fractions.Fraction; nothing here ever touches a float.
Vectors are plain tuples of Fractions, which keeps them hashable and cheap.
Scale target is "desk scale": tens of points, ambient dimension at most six.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import DegenerateInputError, InputError

Vec = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(x) -> Fraction:
    """Coerce int / str ("p/q") / Fraction to Fraction. Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"bad rational literal {x!r}: {e}") from None
    raise InputError(f"expected exact rational, got {type(x).__name__}")


def vector(xs) -> Vec:
    return tuple(as_fraction(x) for x in xs)


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vscale(s, v: Vec) -> Vec:
    s = as_fraction(s)
    return tuple(s * a for a in v)


def vdot(u: Vec, v: Vec) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), ZERO)


def is_zero_vector(v: Vec) -> bool:
    return all(a == 0 for a in v)


def primitive_vector(v: Vec) -> Vec:
    """Scale a nonzero rational vector to coprime integers, keeping direction."""
    if is_zero_vector(v):
        raise DegenerateInputError("zero vector has no primitive form")
    mult = lcm(*(a.denominator for a in v))
    ints = [int(a * mult) for a in v]
    g = 0
    for a in ints:
        g = gcd(g, abs(a))
    return tuple(Fraction(a, g) for a in ints)


# ---------------------------------------------------------------------------
# Exact Gaussian elimination


def _echelon(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Row-reduce in place; returns (rows, pivot column indices)."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def matrix_rank(rows) -> int:
    work = [list(map(as_fraction, row)) for row in rows]
    return len(_echelon(work)[1])


def solve_square(a_rows, b) -> Vec | None:
    """Solve A x = b for square A; None when A is singular."""
    n = len(a_rows)
    work = [list(map(as_fraction, row)) + [as_fraction(bi)] for row, bi in zip(a_rows, b, strict=True)]
    work, pivots = _echelon(work)
    if pivots and pivots[-1] == n:
        return None  # inconsistent
    if len(pivots) < n:
        return None
    sol = [ZERO] * n
    for r, c in enumerate(pivots):
        sol[c] = work[r][n]
    return tuple(sol)


def nullspace_vector(rows) -> Vec | None:
    """One nonzero kernel vector of the row matrix, or None when trivial."""
    basis = nullspace_basis(rows)
    return basis[0] if basis else None


def nullspace_basis(rows) -> list[Vec]:
    """A basis of the kernel of the row matrix (empty rows: empty basis)."""
    if not rows:
        return []
    ncols = len(rows[0])
    work = [list(map(as_fraction, row)) for row in rows]
    work, pivots = _echelon(work)
    out = []
    for f in range(ncols):
        if f in pivots:
            continue
        sol = [ZERO] * ncols
        sol[f] = ONE
        for r, c in enumerate(pivots):
            sol[c] = -work[r][f]
        out.append(tuple(sol))
    return out


def affine_rank(points) -> int:
    """Dimension of the affine hull of a nonempty point list."""
    pts = [vector(p) for p in points]
    if not pts:
        raise InputError("affine_rank of an empty point list")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise InputError("points of mixed dimension")
    return matrix_rank([vsub(p, pts[0]) for p in pts[1:]])


# ---------------------------------------------------------------------------
# Affine functionals


@dataclass(frozen=True)
class AffineFunctional:
    """x -> linear . x - constant."""

    linear: Vec
    constant: Fraction

    def __call__(self, x) -> Fraction:
        return vdot(self.linear, vector(x)) - self.constant

    def scaled(self, s) -> "AffineFunctional":
        s = as_fraction(s)
        return AffineFunctional(vscale(s, self.linear), s * self.constant)

    def primitive(self) -> "AffineFunctional":
        """Canonical integer form; orientation is preserved."""
        full = self.linear + (self.constant,)
        if is_zero_vector(full):
            return self
        prim = primitive_vector(full)
        return AffineFunctional(prim[:-1], prim[-1])


def affine_combination(basis: list[Vec], target: Vec) -> tuple[Fraction, ...] | None:
    """Coefficients b with sum(b) = 1 and sum(b_i basis_i) = target.

    basis must be affinely independent; None when the (square) system has no
    unique solution, so callers should pass exactly rank+1 spanning points.
    """
    k = len(basis)
    rows = [[ONE] * k] + [[basis[j][i] for j in range(k)] for i in range(len(target))]
    rhs = [ONE] + list(target)
    if len(rows) != k:
        # Overdetermined: solve on an independent square subsystem, verify rest.
        sq_rows, sq_rhs, used = [], [], []
        for row, b in zip(rows, rhs):
            if matrix_rank(sq_rows + [row]) > len(sq_rows):
                sq_rows.append(row)
                sq_rhs.append(b)
                used.append(True)
            else:
                used.append(False)
            if len(sq_rows) == k:
                break
        if len(sq_rows) < k:
            return None
        sol = solve_square(sq_rows, sq_rhs)
        if sol is None:
            return None
        for row, b in zip(rows, rhs):
            if sum(r * s for r, s in zip(row, sol)) != b:
                return None
        return sol
    return solve_square(rows, rhs)


def interpolate_affine(points: list[Vec], values: list[Fraction]) -> AffineFunctional | None:
    """The affine functional taking the given values, if one exists.

    Points must affinely span their ambient space for uniqueness; extra points
    are used as consistency checks.
    """
    d = len(points[0])
    rows = [list(p) + [ONE] for p in points]
    sq_rows, sq_rhs = [], []
    for row, v in zip(rows, values, strict=True):
        if len(sq_rows) < d + 1 and matrix_rank(sq_rows + [row]) > len(sq_rows):
            sq_rows.append(row)
            sq_rhs.append(as_fraction(v))
    if len(sq_rows) < d + 1:
        return None
    sol = solve_square(sq_rows, sq_rhs)
    if sol is None:
        return None
    fn = AffineFunctional(tuple(sol[:d]), -sol[d])
    for p, v in zip(points, values, strict=True):
        if fn(p) != v:
            return None
    return fn


# ---------------------------------------------------------------------------
# Convex hulls (beneath-beyond with exact predicates)


@dataclass(frozen=True)
class HullFacet:
    """Supporting halfspace normal . x <= offset; members = all input points on it."""

    normal: Vec  # outward, primitive integer
    offset: Fraction
    members: frozenset[int]


def _hyperplane(points: list[Vec]) -> tuple[Vec, Fraction] | None:
    """Normal and offset of the hyperplane through d affinely independent points."""
    base = points[0]
    if len(points) == 1:
        # 0-dimensional facet of a 1-dimensional hull
        if len(base) != 1:
            return None
        return (ONE,), base[0]
    normal = nullspace_vector([vsub(p, base) for p in points[1:]])
    if normal is None or is_zero_vector(normal):
        return None
    return normal, vdot(normal, base)


def _initial_simplex(pts: list[Vec], d: int) -> list[int]:
    chosen = [0]
    for i in range(1, len(pts)):
        if affine_rank([pts[j] for j in chosen] + [pts[i]]) > len(chosen) - 1:
            chosen.append(i)
        if len(chosen) == d + 1:
            return chosen
    raise DegenerateInputError(
        f"points span only {len(chosen) - 1} dimensions, need {d} for a full hull"
    )


def _simplicial_hull(pts: list[Vec], d: int) -> tuple[list[tuple[Vec, Fraction, tuple[int, ...]]], Vec]:
    """Beneath-beyond insertion; returns simplicial facets and an interior point.

    Facets are (outward normal, offset, vertex index tuple); several simplicial
    facets may share a supporting hyperplane when the input is degenerate.
    """
    seed = _initial_simplex(pts, d)
    ref = vscale(Fraction(1, d + 1), [sum(pts[i][k] for i in seed) for k in range(d)])

    facets: list[tuple[Vec, Fraction, tuple[int, ...]]] = []

    def oriented(vert_ids: tuple[int, ...]) -> tuple[Vec, Fraction, tuple[int, ...]]:
        plane = _hyperplane([pts[i] for i in vert_ids])
        if plane is None:
            raise DegenerateInputError("degenerate facet candidate")
        normal, offset = plane
        side = vdot(normal, ref) - offset
        if side == 0:
            raise DegenerateInputError("interior reference point lies on a facet plane")
        if side > 0:
            normal, offset = vscale(-1, normal), -offset
        return normal, offset, vert_ids

    for drop in range(d + 1):
        facets.append(oriented(tuple(seed[j] for j in range(d + 1) if j != drop)))

    in_seed = set(seed)
    for i in range(len(pts)):
        if i in in_seed:
            continue
        p = pts[i]
        visible = [f for f in facets if vdot(f[0], p) > f[1]]
        if not visible:
            continue
        ridge_count: dict[frozenset[int], int] = {}
        for _, _, verts in visible:
            for drop in range(d):
                r = frozenset(verts[:drop] + verts[drop + 1 :])
                ridge_count[r] = ridge_count.get(r, 0) + 1
        horizon = [r for r, cnt in ridge_count.items() if cnt == 1]
        visible_set = {f[2] for f in visible}
        facets = [f for f in facets if f[2] not in visible_set]
        for r in sorted(horizon, key=sorted):
            facets.append(oriented(tuple(sorted(r)) + (i,)))
    return facets, ref


def convex_hull_facets(points) -> list[HullFacet]:
    """Facets of the convex hull of a full-dimensional point list.

    Output facets are merged (non-simplicial), with primitive outward normals
    and member sets listing every input point on the facet.  Sorted by member
    set for determinism.
    """
    pts = [vector(p) for p in points]
    if not pts:
        raise InputError("convex hull of an empty point list")
    d = len(pts[0])
    simplicial, _ = _simplicial_hull(pts, d)
    seen: dict[tuple[Vec, Fraction], None] = {}
    for normal, offset, _ in simplicial:
        fn = AffineFunctional(normal, offset).primitive()
        seen[(fn.linear, fn.constant)] = None
    out = []
    for normal, offset in seen:
        members = frozenset(i for i, p in enumerate(pts) if vdot(normal, p) == offset)
        out.append(HullFacet(normal, offset, members))
    out.sort(key=lambda f: sorted(f.members))
    return out


def hull_volume(points) -> Fraction:
    """Normalized volume (unit simplex = 1) of the convex hull."""
    pts = [vector(p) for p in points]
    d = len(pts[0])
    if affine_rank(pts) < d:
        raise DegenerateInputError("volume of a lower-dimensional hull")
    simplicial, ref = _simplicial_hull(pts, d)
    total = ZERO
    for _, _, verts in simplicial:
        total += abs(_det([vsub(pts[i], ref) for i in verts]))
    return total


def hull_vertex_indices(points) -> frozenset[int]:
    """Indices of points that are vertices of the hull (not merely on a face)."""
    facets = convex_hull_facets(points)
    n = len(list(points))
    d = len(vector(list(points)[0]))
    out = set()
    for i in range(n):
        normals = [f.normal for f in facets if i in f.members]
        if len(normals) >= d and matrix_rank(normals) == d:
            out.add(i)
    return frozenset(out)


def point_in_hull(facets: list[HullFacet], x) -> bool:
    xv = vector(x)
    return all(vdot(f.normal, xv) <= f.offset for f in facets)


def _affine_frame(pts: list[Vec]):
    """Shared machinery for span coordinates: (coords, base, row_ids, rows).

    coords are exact coordinates of each point in a greedy affine frame; rows
    is the invertible r x r matrix of frame components at the selected
    coordinate positions row_ids, so that coords(x) solves
    rows . c = (x - base) restricted to row_ids.
    """
    base = pts[0]
    diffs = [vsub(p, base) for p in pts]
    frame: list[Vec] = []
    for dv in diffs:
        if matrix_rank(frame + [dv]) > len(frame):
            frame.append(dv)
    r = len(frame)
    if r == 0:
        return [() for _ in pts], base, [], []
    rows: list[list[Fraction]] = []
    row_ids: list[int] = []
    for i in range(len(base)):
        cand = [frame[j][i] for j in range(r)]
        if matrix_rank(rows + [cand]) > len(rows):
            rows.append(cand)
            row_ids.append(i)
        if len(rows) == r:
            break
    coords = [solve_square(rows, [dv[i] for i in row_ids]) for dv in diffs]
    return coords, base, row_ids, rows


def affine_coordinates(points) -> list[Vec]:
    """Coordinates of each point in an affine frame of the points' span.

    The first point maps to the origin; frame vectors are picked greedily from
    the input differences, so collinear or coplanar inputs get exact
    coordinates of the right lower dimension.  Rank-0 input maps every point
    to the empty tuple.
    """
    pts = [vector(p) for p in points]
    return _affine_frame(pts)[0]


def polytope_hrep(points) -> tuple[list[AffineFunctional], list[AffineFunctional]]:
    """Ambient H-representation of conv(points), span may be lower-dimensional.

    Returns (equalities, inequalities): x lies in the hull iff every equality
    functional vanishes at x and every inequality functional is >= 0 at x.
    """
    pts = [vector(p) for p in points]
    base = pts[0]
    equalities = []
    for n in nullspace_basis([vsub(p, base) for p in pts[1:]] or [[ZERO] * len(base)]):
        equalities.append(AffineFunctional(n, vdot(n, base)))
    if len(pts) == 1:
        # single point: the nullspace above was of a zero row, giving all axes
        return equalities, []
    coords, _, row_ids, rows = _affine_frame(pts)
    r = len(coords[0])
    if r == 0:
        return equalities, []
    inequalities = []
    rows_t = [[rows[i][j] for i in range(r)] for j in range(r)]
    for facet in convex_hull_facets(coords):
        # facet: w . c <= offset in coordinate space; pull back via
        # c(x) = rows^-1 (x - base) restricted to row_ids
        y = solve_square(rows_t, facet.normal)
        linear = [ZERO] * len(base)
        for i, idx in enumerate(row_ids):
            linear[idx] = -y[i]
        constant = -(facet.offset + vdot(y, tuple(base[i] for i in row_ids)))
        inequalities.append(AffineFunctional(tuple(linear), constant))
    return equalities, inequalities


def polytope_vertex_indices(points) -> frozenset[int]:
    """Vertices of conv(points); the span may be lower-dimensional."""
    pts = [vector(p) for p in points]
    coords = affine_coordinates(pts)
    if len(coords[0]) == 0:
        return frozenset({0})
    return hull_vertex_indices(coords)


def face_member_sets(points) -> set[frozenset[int]]:
    """Index sets of points on each nonempty face of conv(points), the hull included."""
    pts = [vector(p) for p in points]
    out: set[frozenset[int]] = set()

    def recurse(idx: tuple[int, ...]):
        key = frozenset(idx)
        if key in out:
            return
        out.add(key)
        sub = [pts[i] for i in idx]
        coords = affine_coordinates(sub)
        if len(coords[0]) == 0:
            return
        for facet in convex_hull_facets(coords):
            recurse(tuple(idx[j] for j in sorted(facet.members)))

    recurse(tuple(range(len(pts))))
    return out


def _det(rows: list[Vec]) -> Fraction:
    n = len(rows)
    work = [list(r) for r in rows]
    det = ONE
    for c in range(n):
        pivot = next((i for i in range(c, n) if work[i][c] != 0), None)
        if pivot is None:
            return ZERO
        if pivot != c:
            work[c], work[pivot] = work[pivot], work[c]
            det = -det
        det *= work[c][c]
        inv = ONE / work[c][c]
        for i in range(c + 1, n):
            if work[i][c] != 0:
                f = work[i][c] * inv
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    return det


def simplex_normalized_volume(points) -> Fraction:
    """Normalized volume of a d-simplex given by d+1 points (unit simplex = 1)."""
    pts = [vector(p) for p in points]
    d = len(pts[0])
    if len(pts) != d + 1:
        raise InputError(f"a {d}-simplex needs {d + 1} points, got {len(pts)}")
    vol = abs(_det([vsub(p, pts[0]) for p in pts[1:]]))
    if vol == 0:
        raise DegenerateInputError("affinely dependent simplex points")
    return vol


# ---------------------------------------------------------------------------
# Upper hulls of lifted point sets


def upper_hull_facets(lifted) -> list[tuple[AffineFunctional, frozenset[int]]]:
    """Compact upper-hull facets of lifted points (point, height).

    Returns (functional, members) pairs where functional(a) >= height(a) for
    every lifted point, with equality exactly on members, and each member set
    spans the base space.  Facets with vertical supporting hyperplanes are
    discarded.  The base points must affinely span their space.
    """
    base = [vector(p) for (p, _) in lifted]
    heights = [as_fraction(h) for (_, h) in lifted]
    if not base:
        raise InputError("upper hull of an empty point list")
    d = len(base[0])
    if affine_rank(base) < d:
        raise DegenerateInputError("base points do not span; upper hull undefined")
    pts = [b + (h,) for b, h in zip(base, heights)]
    if affine_rank(pts) == d:
        # All lifted points on one non-vertical hyperplane: a single facet.
        fn = interpolate_affine(base, heights)
        if fn is None:
            raise DegenerateInputError("degenerate lifted configuration")
        return [(fn, frozenset(range(len(pts))))]
    out = []
    for facet in convex_hull_facets(pts):
        w_h = facet.normal[-1]
        if w_h <= 0:
            continue
        linear = tuple(-w / w_h for w in facet.normal[:-1])
        fn = AffineFunctional(linear, -facet.offset / w_h)
        out.append((fn, facet.members))
    out.sort(key=lambda pair: sorted(pair[1]))
    return out


# ---------------------------------------------------------------------------
# Exact LP (two-phase primal simplex, Bland's rule)


def _simplex_core(tableau, basis, n_rows, n_cols):
    """Maximize the objective encoded in the last tableau row; Bland's rule."""
    while True:
        obj = tableau[n_rows]
        enter = next((j for j in range(n_cols) if obj[j] > 0), None)
        if enter is None:
            return "optimal"
        ratios = []
        for i in range(n_rows):
            if tableau[i][enter] > 0:
                ratios.append((tableau[i][n_cols] / tableau[i][enter], basis[i], i))
        if not ratios:
            return "unbounded"
        _, _, leave = min(ratios, key=lambda t: (t[0], t[1]))
        piv = tableau[leave][enter]
        tableau[leave] = [x / piv for x in tableau[leave]]
        for i in range(n_rows + 1):
            if i != leave and tableau[i][enter] != 0:
                f = tableau[i][enter]
                tableau[i] = [x - f * y for x, y in zip(tableau[i], tableau[leave])]
        basis[leave] = enter


def lp_maximize(objective, ub_rows, ub_consts, eq_rows, eq_consts):
    """max objective . x  s.t.  ub_rows x <= ub_consts, eq_rows x = eq_consts, x free.

    Returns (status, x, value); status in {"optimal", "unbounded", "infeasible"}.
    Fully deterministic: Bland's rule with fixed variable order.
    """
    n = len(objective)
    rows = [list(map(as_fraction, r)) for r in ub_rows] + [list(map(as_fraction, r)) for r in eq_rows]
    rhs = [as_fraction(b) for b in ub_consts] + [as_fraction(b) for b in eq_consts]
    n_ub = len(ub_rows)
    m = len(rows)
    # columns: x+ (n), x- (n), slacks (n_ub), artificials (m)
    n_struct = 2 * n + n_ub
    n_cols = n_struct + m
    tableau = []
    basis = []
    for i in range(m):
        row = [ZERO] * (n_cols + 1)
        sign = ONE if rhs[i] >= 0 else -ONE
        for j in range(n):
            row[j] = sign * rows[i][j]
            row[n + j] = -sign * rows[i][j]
        if i < n_ub:
            row[2 * n + i] = sign
        row[n_struct + i] = ONE
        row[n_cols] = sign * rhs[i]
        tableau.append(row)
        basis.append(n_struct + i)
    # Phase 1: maximize -sum(artificials).
    obj_row = [ZERO] * (n_cols + 1)
    for i in range(m):
        obj_row = [o + t for o, t in zip(obj_row, tableau[i])]
    for j in range(n_struct, n_cols):
        obj_row[j] = ZERO
    tableau.append(obj_row)
    _simplex_core(tableau, basis, m, n_cols)
    if tableau[m][n_cols] != 0:
        return "infeasible", None, None
    # Pivot lingering artificials out of the basis where possible.
    for i in range(m):
        if basis[i] >= n_struct:
            enter = next((j for j in range(n_struct) if tableau[i][j] != 0), None)
            if enter is not None:
                piv = tableau[i][enter]
                tableau[i] = [x / piv for x in tableau[i]]
                for k in range(m + 1):
                    if k != i and tableau[k][enter] != 0:
                        f = tableau[k][enter]
                        tableau[k] = [x - f * y for x, y in zip(tableau[k], tableau[i])]
                basis[i] = enter
    # Rows still carrying an artificial basis variable are redundant; drop them
    # together with every artificial column so phase 2 cannot re-enter one.
    keep = [i for i in range(m) if basis[i] < n_struct]
    tableau = [tableau[i][:n_struct] + [tableau[i][n_cols]] for i in keep]
    basis = [basis[i] for i in keep]
    m = len(keep)
    n_cols = n_struct
    # Phase 2 objective.
    cvec = [as_fraction(c) for c in objective]
    obj_row = [ZERO] * (n_cols + 1)
    for j in range(n):
        obj_row[j] = cvec[j]
        obj_row[n + j] = -cvec[j]
    for i in range(m):
        if obj_row[basis[i]] != 0:
            f = obj_row[basis[i]]
            obj_row = [o - f * t for o, t in zip(obj_row, tableau[i])]
    tableau.append(obj_row)
    status = _simplex_core(tableau, basis, m, n_cols)
    xs = [ZERO] * n_cols
    for i in range(m):
        xs[basis[i]] = tableau[i][n_cols]
    x = tuple(xs[j] - xs[n + j] for j in range(n))
    if status == "unbounded":
        return "unbounded", x, None
    value = sum((c * xi for c, xi in zip(cvec, x)), ZERO)
    return "optimal", x, value


def lp_feasible_strict(strict, weak, equalities, dim) -> Vec | None:
    """A rational point with fn(x) > 0 (strict), fn(x) >= 0 (weak), fn(x) = 0 (eqs).

    Functionals are AffineFunctionals on R^dim.  Returns None when no such
    point exists.  Implemented by maximizing a shared slack below the strict
    constraints, capped at 1 so the LP stays bounded.
    """
    strict = list(strict)
    weak = list(weak)
    equalities = list(equalities)
    # Variables (x, t): maximize t.
    ub_rows, ub_consts = [], []
    for fn in strict:
        ub_rows.append([-c for c in fn.linear] + [ONE])  # t - fn.linear.x <= -constant
        ub_consts.append(-fn.constant)
    for fn in weak:
        ub_rows.append([-c for c in fn.linear] + [ZERO])
        ub_consts.append(-fn.constant)
    ub_rows.append([ZERO] * dim + [ONE])
    ub_consts.append(ONE)
    eq_rows = [list(fn.linear) + [ZERO] for fn in equalities]
    eq_consts = [fn.constant for fn in equalities]
    objective = [ZERO] * dim + [ONE]
    status, x, value = lp_maximize(objective, ub_rows, ub_consts, eq_rows, eq_consts)
    if status != "optimal" or value <= 0:
        return None
    return x[:dim]
