"""Polygon duals as rooted planar trees, painted trees, and multiplihedra.

For a convex polygon configuration the 0- and 1-dimensional dual cells form a
rooted planar tree: the root is the ray dual to the edge from the last vertex
back to the first, and leaves are the remaining rays in counterclockwise
boundary order.  With the distinguished point just outside the root edge,
painting colors the root side red and the leaf tips blue, so each painted
complex turns into a classical painted tree.  Edge-length prescription makes
every painted tree realizable, and the painted-tree contraction lattice is
checked against the secondary polytope of the extended configuration.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from itertools import product

from .errors import (
    InconsistencyError,
    InputError,
    ResourceCapError,
    VerificationError,
)
from .geometry import Vec, as_fraction, vdot, vector
from .lattice import FaceLattice, Poset, graded_lattice, lattice_isomorphic
from .painting import BLUE, PURPLE, RED, PaintedComplex, PaintSpec, paint
from .painting_polytope import extend
from .point_config import PointConfiguration, build_configuration, sign_vector
from .regular_subdivision import (
    Lifting,
    Subdivision,
    _make_cell,
    enumerate_coherent_subdivisions,
    secondary_cone,
)
from .secondary_polytope import face_lattice_from_poset
from .tropical_dual import TropicalComplex, TropicalPolynomial, dual_complex, evaluate

ZERO = Fraction(0)
ONE = Fraction(1)

PAINTED = "painted"
UNPAINTED = "unpainted"
SPLIT = "split"  # a paint change inside the edge, i.e. a bivalent node


def ngon_configuration(m: int) -> PointConfiguration:
    """m+1 rational points in convex position, labeled counterclockwise.

    Points sit on a parabola, so every point is a vertex and all coordinates
    stay small integers.
    """
    if m < 2:
        raise InputError("need at least a triangle")
    return build_configuration([(k, k * k) for k in range(m + 1)])


def _diagonal_pairs(config: PointConfiguration):
    n = len(config.points)
    boundary = {frozenset(f.members) for f in config.facets}
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            if frozenset({i, j}) not in boundary:
                out.append((i, j))
    return out


def _on_some_diagonal(config, beta: Vec) -> bool:
    for i, j in _diagonal_pairs(config):
        a, b = config.points[i], config.points[j]
        det = (b[0] - a[0]) * (beta[1] - a[1]) - (b[1] - a[1]) * (beta[0] - a[0])
        if det == 0:
            return True
    return False


def admissible_alpha(config: PointConfiguration) -> Vec:
    """A distinguished point just outside the root edge, off every diagonal.

    Searched by halving the outward offset from the root-edge midpoint; each
    diagonal line meets the search ray at most once, so the search ends.
    """
    n = len(config.points)
    root = frozenset({0, n - 1})
    root_facet = None
    for f in config.facets:
        if frozenset(f.members) == root:
            root_facet = f
            break
    if root_facet is None:
        raise InputError("no boundary edge joins the first and last points")
    a, b = config.points[0], config.points[n - 1]
    mid = tuple((x + y) / 2 for x, y in zip(a, b))
    outward = tuple(-x for x in root_facet.normal)
    eps = Fraction(1, 2)
    for _ in range(64):
        alpha = tuple(m + eps * o for m, o in zip(mid, outward))
        signs = sign_vector(config, alpha).signs
        pattern_ok = all(
            (s == 1) == (frozenset(f.members) == root)
            for f, s in zip(config.facets, signs)
        )
        if pattern_ok and not _on_some_diagonal(config, alpha):
            return alpha
        eps = eps / 2
    raise InconsistencyError("no admissible point found")  # unreachable


class RootedPlanarTree:
    """The 0/1-skeleton of a polygon dual complex as a rooted planar tree.

    children[i] lists node i's outgoing items in planar order; an item is
    ("edge", chord marking, child node index) or ("leaf", ray marking).
    """

    def __init__(self, markings, positions, children, root, root_marking, leaves):
        self.markings = tuple(markings)
        self.positions = tuple(positions)
        self.children = tuple(tuple(c) for c in children)
        self.root = root
        self.root_marking = root_marking
        self.leaves = tuple(leaves)

    def shape(self):
        def walk(i):
            out = []
            for item in self.children[i]:
                if item[0] == "leaf":
                    out.append(())
                else:
                    out.append(walk(item[2]))
            return tuple(out)

        return walk(self.root)

    def compact_edges(self):
        """(parent, child, chord marking, depth of parent) per tree edge."""
        out = []

        def walk(i, depth):
            for item in self.children[i]:
                if item[0] == "edge":
                    out.append((i, item[2], item[1], depth))
                    walk(item[2], depth + 1)

        walk(self.root, 0)
        return out


def _ccw_from(reference: Vec, items):
    """Sort (direction, payload) counterclockwise starting after reference."""

    def half(v):
        c = reference[0] * v[1] - reference[1] * v[0]
        if c > 0:
            return 0
        if c < 0:
            return 2
        d = reference[0] * v[0] + reference[1] * v[1]
        if d < 0:
            return 1
        raise InconsistencyError("repeated direction at a tree node")

    def cmp(x, y):
        hx, hy = half(x[0]), half(y[0])
        if hx != hy:
            return -1 if hx < hy else 1
        c = x[0][0] * y[0][1] - x[0][1] * y[0][0]
        if c > 0:
            return -1
        if c < 0:
            return 1
        raise InconsistencyError("repeated direction at a tree node")

    return sorted(items, key=cmp_to_key(cmp))


def tree_of_complex(p: TropicalComplex) -> RootedPlanarTree:
    """Read the dual complex of a polygon subdivision as a rooted planar tree."""
    config = p.config
    if config.dimension != 2:
        raise InputError("tree structure requires a planar configuration")
    n = len(config.points)
    boundary = {frozenset(f.members) for f in config.facets}
    expected = {frozenset({i, i + 1}) for i in range(n - 1)} | {frozenset({0, n - 1})}
    if boundary != expected:
        raise InputError("points must form a counterclockwise convex polygon")
    root_marking = frozenset({0, n - 1})

    zero_cells = sorted(p.cells_of_dim(0), key=lambda c: sorted(c.marking))
    index = {c.marking: i for i, c in enumerate(zero_cells)}
    positions = [c.vertices[0] for c in zero_cells]
    markings = [c.marking for c in zero_cells]

    touching: list[list] = [[] for _ in zero_cells]
    for cell in p.cells_of_dim(1):
        owners = [i for i, m in enumerate(markings) if cell.marking < m]
        if cell.rays:
            assert len(owners) == 1
            i = owners[0]
            touching[i].append(("ray", cell.rays[0], cell.marking))
        else:
            assert len(owners) == 2
            i, j = owners
            di = tuple(x - y for x, y in zip(positions[j], positions[i]))
            touching[i].append(("edge", di, cell.marking, j))
            touching[j].append(("edge", tuple(-x for x in di), cell.marking, i))

    root = None
    for i, items in enumerate(touching):
        for item in items:
            if item[0] == "ray" and item[2] == root_marking:
                root = i
    if root is None:
        raise InconsistencyError("no ray dual to the root edge")

    children: list[list] = [[] for _ in zero_cells]
    leaves = []

    def build(i, incoming: Vec, from_node):
        ordered = []
        for item in touching[i]:
            if item[0] == "ray" and item[2] == root_marking:
                continue
            if item[0] == "edge" and item[3] == from_node:
                continue
            ordered.append((item[1], item))
        for _, item in _ccw_from(incoming, ordered):
            if item[0] == "ray":
                children[i].append(("leaf", item[2]))
                leaves.append(item[2])
            else:
                children[i].append(("edge", item[2], item[3]))
                build(item[3], tuple(-x for x in item[1]), i)

    root_dir = None
    for item in touching[root]:
        if item[0] == "ray" and item[2] == root_marking:
            root_dir = item[1]
    build(root, root_dir, None)
    tree = RootedPlanarTree(markings, positions, children, root, root_marking, leaves)
    want = [frozenset({i, i + 1}) for i in range(n - 1)]
    if list(tree.leaves) != want:
        raise InconsistencyError("leaf order does not follow the boundary")
    return tree


class PaintedTree:
    """A rooted planar tree with a paint state per edge, canonically encoded.

    The encoding is nested pairs (state, children): children is None for a
    leaf half-edge and a tuple for an internal edge over a node; the whole
    tree is the entry of the root half-edge.  A split edge carries the
    bivalent node where painting stops inside the edge.
    """

    __slots__ = ("encoding", "leaf_count")

    def __init__(self, encoding):
        self.encoding = encoding
        self.leaf_count = _validate_painted(encoding, True)

    def shape(self):
        def walk(entry):
            if entry[1] is None:
                return ()
            return tuple(walk(c) for c in entry[1])

        return walk(self.encoding)

    def key(self):
        return self.encoding

    def __eq__(self, other):
        return isinstance(other, PaintedTree) and self.encoding == other.encoding

    def __hash__(self):
        return hash(self.encoding)

    def __repr__(self):
        return f"PaintedTree({_tree_label(self.encoding)})"


def _tree_label(entry) -> str:
    head = {PAINTED: "P", UNPAINTED: "U", SPLIT: "S"}[entry[0]]
    if entry[1] is None:
        return head
    return head + "(" + ",".join(_tree_label(c) for c in entry[1]) + ")"


def _validate_painted(entry, upper_painted: bool) -> int:
    """Check the node rules and return the leaf count of the subtree.

    Painting always stops exactly once on the way down: an edge is fully
    painted, fully unpainted, or split.  Below a node the children must agree
    on whether their tops are painted, so the stop happens at a node for all
    branches at once or separately inside edges.
    """
    state, children = entry
    if upper_painted and state == UNPAINTED:
        raise InputError("painted region is not connected to the root")
    if not upper_painted and state != UNPAINTED:
        raise InputError("paint appears below an unpainted edge")
    if children is None:
        if state == PAINTED:
            raise InputError("leaves must be unpainted")
        return 1
    if len(children) < 2:
        raise InputError("internal nodes need at least two children")
    lower = state == PAINTED
    uppers = {c[0] != UNPAINTED for c in children}
    if len(uppers) > 1:
        raise InputError("children disagree on painting at a node")
    if not lower and uppers == {True}:
        raise InputError("paint appears below an unpainted edge")
    return sum(_validate_painted(c, c[0] != UNPAINTED) for c in children)


def painted_tree_of(pc: PaintedComplex) -> PaintedTree:
    """Convert a painted polygon complex to its painted tree.

    Red edges are painted, blue edges are unpainted, purple edges split.
    The sign pattern of an admissible distinguished point guarantees the
    root side is painted and every leaf tip is not.
    """
    tree = tree_of_complex(pc.complex)
    kappa = pc.kappa
    to_state = {RED: PAINTED, BLUE: UNPAINTED, PURPLE: SPLIT}

    def encode(i):
        out = []
        for item in tree.children[i]:
            if item[0] == "leaf":
                col = kappa[item[1]]
                assert col != RED, "red leaf ray contradicts the sign pattern"
                out.append((to_state[col], None))
            else:
                out.append((to_state[kappa[item[1]]], encode(item[2])))
        return tuple(out)

    root_col = kappa[tree.root_marking]
    assert root_col != BLUE, "blue root ray contradicts the sign pattern"
    return PaintedTree((to_state[root_col], encode(tree.root)))


class EdgeLengthTarget:
    """Positive length per compact edge, keyed by chord marking, with the
    hop count of each edge's parent node from the root vertex."""

    def __init__(self, lengths, depths=None):
        self.lengths = {frozenset(k): as_fraction(v) for k, v in lengths.items()}
        if any(v <= 0 for v in self.lengths.values()):
            raise InputError("edge length targets must be positive")
        self.depths = {frozenset(k): int(v) for k, v in (depths or {}).items()}


def _edge_offset(p: TropicalComplex, beta: Vec):
    """Per compact edge: the two adjacent maximal-cell supports and the edge's
    current offset value at beta (the root-to-leaf difference, unsigned)."""
    out = {}
    supports = {mc.marks: mc.support for mc in p.subdivision.maximal}
    for cell in p.cells_of_dim(1):
        if cell.rays:
            continue
        pair = [s for m, s in supports.items() if cell.marking < m]
        assert len(pair) == 2
        k, l = pair
        value = (l.constant - vdot(l.linear, beta)) - (
            k.constant - vdot(k.linear, beta)
        )
        out[cell.marking] = (k, l, abs(value))
    return out


def realize_edge_lengths(
    p: TropicalComplex, beta, target: EdgeLengthTarget
) -> Lifting:
    """A lifting with the same combinatorial type whose compact edges all
    achieve the prescribed offsets at beta, exactly.

    First shrink the seed lifting so every offset falls below its target,
    then per edge add the one-sided correction supported on the far side of
    the edge's chord: it scales that edge's offset and leaves every other
    edge's difference of supports untouched, so the order of edges does not
    matter.
    """
    config = p.config
    beta = vector(beta)
    if len(beta) != config.dimension:
        raise InputError("beta dimension mismatch")
    if _on_some_diagonal(config, beta):
        raise InputError("beta lies on the affine hull of a diagonal")
    values = _edge_offset(p, beta)
    missing = [m for m in values if frozenset(m) not in target.lengths]
    if missing:
        raise InputError(f"no target for edges {sorted(sorted(m) for m in missing)}")
    key = p.subdivision.key
    eta = list(p.eta.values)
    if values:
        lam = min(
            target.lengths[m] / v for m, (_, _, v) in values.items() if v > 0
        ) / 2
        for m, (_, _, v) in values.items():
            assert v > 0, "zero edge offset despite the diagonal check"
        eta = [lam * x for x in eta]
        # leaf-to-root where depths are known; each step fixes one edge and
        # keeps every other support difference, so any order lands exactly
        order = sorted(
            values, key=lambda m: (-target.depths.get(m, 0), sorted(m))
        )
        for marking in order:
            cur, _ = dual_complex(config, eta)
            k, l, v = _edge_offset(cur, beta)[marking]
            t = target.lengths[marking] / v - 1
            assert t > 0
            eta = [
                e + max(ZERO, t * (l(a) - k(a)))
                for e, a in zip(eta, config.points)
            ]
    result = Lifting(tuple(eta))
    final, _ = dual_complex(config, result)
    assert final.subdivision.key == key, "correction left the secondary cone"
    for m, (_, _, v) in _edge_offset(final, beta).items():
        assert v == target.lengths[m], "edge target missed"
    assert secondary_cone(config, p.subdivision).contains_open(result.values)
    return result


def _subdivision_of_shape(config: PointConfiguration, shape) -> Subdivision:
    """The polygon subdivision whose dual tree has the given shape: each node
    becomes the cell spanning its children's leaf blocks."""

    def leaf_count(s):
        return 1 if s == () else sum(leaf_count(c) for c in s)

    cells = []

    def walk(s, lo, hi):
        cuts = [lo]
        for child in s:
            cuts.append(cuts[-1] + leaf_count(child))
        assert cuts[-1] == hi
        cells.append(frozenset(cuts))
        for child, a, b in zip(s, cuts, cuts[1:]):
            if child != ():
                walk(child, a, b)

    m = len(config.points) - 1
    if leaf_count(shape) != m or shape == ():
        raise InputError("shape does not fit the polygon")
    walk(shape, 0, m)
    return Subdivision(config, [_make_cell(config, c) for c in cells])


def realize_painted_tree(t: PaintedTree, m: int) -> PaintSpec:
    """A lifting and level whose painted complex has the given painted tree.

    The underlying subdivision comes from the tree shape.  When the paint
    stops on the root ray or at the root vertex any realization works with a
    level above or at the root vertex's value.  Otherwise compact edge
    offsets are prescribed so that red paths from the root stay short of 1,
    the path into each split-at-node point telescopes to exactly 1, and blue
    edges overshoot; the level one below the root value then paints every
    cell as the tree demands.
    """
    if not isinstance(t, PaintedTree):
        t = PaintedTree(t)
    if t.leaf_count != m:
        raise InputError(f"tree has {t.leaf_count} leaves, not {m}")
    config = ngon_configuration(m)
    alpha = admissible_alpha(config)
    s = _subdivision_of_shape(config, t.shape())
    seed = secondary_cone(config, s).interior_point
    p, _ = dual_complex(config, seed)
    tree = tree_of_complex(p)
    assert tree.shape() == t.shape()

    def root_value(complex_):
        f = TropicalPolynomial(complex_.config, complex_.eta)
        for cell in complex_.cells_of_dim(0):
            if tree.root_marking < cell.marking:
                u = cell.vertices[0]
                return evaluate(f, u)[0] - vdot(u, alpha)
        raise InconsistencyError("no root vertex")

    state, children = t.encoding
    if state == SPLIT:
        return PaintSpec(Lifting(seed), root_value(p) + 1, alpha)
    if all(c[0] == UNPAINTED for c in children):
        return PaintSpec(Lifting(seed), root_value(p), alpha)

    lengths = {}
    depths = {}

    def assign(node, entries, depth):
        for item, entry in zip(tree.children[node], entries):
            if item[0] == "leaf":
                continue
            st, sub = entry
            if st == PAINTED:
                value = (
                    Fraction(1, m)
                    if any(c[0] != UNPAINTED for c in sub)
                    else ONE - Fraction(depth, m)
                )
            else:
                value = Fraction(2)
            lengths[item[1]] = value
            depths[item[1]] = depth
            assign(item[2], sub, depth + 1)

    assign(tree.root, children, 0)
    eta = realize_edge_lengths(p, alpha, EdgeLengthTarget(lengths, depths))
    realized, _ = dual_complex(config, eta)
    return PaintSpec(eta, root_value(realized) - 1, alpha)


def _tree_shapes(m: int):
    if m == 1:
        return [()]
    out = []
    for k in range(2, m + 1):
        for comp in _compositions(m, k):
            for combo in product(*[_tree_shapes(c) for c in comp]):
                out.append(tuple(combo))
    return out


def _compositions(total, parts):
    if parts == 1:
        return [(total,)]
    out = []
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


def _painted_variants(shape, upper_painted: bool):
    if shape == ():
        return [((SPLIT if upper_painted else UNPAINTED), None)]
    states = (PAINTED, SPLIT) if upper_painted else (UNPAINTED,)
    out = []
    for st in states:
        lower = st == PAINTED
        upper_choices = (True, False) if lower else (False,)
        for cu in upper_choices:
            for combo in product(*[_painted_variants(c, cu) for c in shape]):
                out.append((st, tuple(combo)))
    return out


def _tree_rank(entry) -> int:
    state, children = entry
    if children is None:
        return 0
    r = len(children) - 2
    if state == PAINTED and all(c[0] == UNPAINTED for c in children):
        r += 1  # the paint stops at this node: one degree of freedom more
    return r + sum(_tree_rank(c) for c in children)


def _single_moves(entry):
    """All painted trees one contraction above this one.

    Moves: contract a fully painted edge under an all-painted node or a
    fully unpainted edge; slide a split down into the node below it; sweep
    the paint boundary up into a node whose children all carry it just
    below, in their edges or at their top nodes, contracting the painted
    edges whose nodes the sweep absorbs.
    """
    state, children = entry
    out = []
    if children is None:
        return out
    if state == SPLIT:
        out.append((PAINTED, children))
    if state == PAINTED:
        parts = []
        for cs, cc in children:
            if cs == SPLIT:
                parts.append(((UNPAINTED, cc),))
            elif cs == PAINTED and cc is not None and all(
                g[0] == UNPAINTED for g in cc
            ):
                parts.append(cc)
            else:
                parts = None
                break
        if parts is not None:
            out.append((PAINTED, tuple(x for p in parts for x in p)))
    for i, child in enumerate(children):
        cs, cc = child
        if cc is not None:
            if cs == PAINTED and all(g[0] != UNPAINTED for g in cc):
                out.append((state, children[:i] + cc + children[i + 1 :]))
            if cs == UNPAINTED:
                out.append((state, children[:i] + cc + children[i + 1 :]))
        for moved in _single_moves(child):
            out.append((state, children[:i] + (moved,) + children[i + 1 :]))
    return out


def multiplihedron_lattice(m: int) -> FaceLattice:
    """Painted trees with m leaves under contraction, as a graded lattice."""
    if m < 2:
        raise InputError("need at least two leaves")
    if m > 5:
        raise ResourceCapError("painted tree enumeration capped at five leaves")
    trees = []
    for shape in _tree_shapes(m):
        trees.extend(_painted_variants(shape, True))
    index = {t: i for i, t in enumerate(trees)}
    assert len(index) == len(trees)
    le = []
    for t in trees:
        for moved in set(_single_moves(t)):
            le.append((index[t], index[moved]))
    poset = Poset(tuple(PaintedTree(t) for t in trees), le)
    ranks = [_tree_rank(t) for t in trees]
    payload = [_tree_label(t) for t in trees]
    return graded_lattice(ranks, poset.covers(), payload)


class MultiplihedronReport:
    def __init__(self, m, face_count, vertex_count, lattice_match):
        self.m = m
        self.face_count = face_count
        self.vertex_count = vertex_count
        self.lattice_match = tuple(lattice_match)

    def __repr__(self):
        return (
            f"MultiplihedronReport(m={self.m}, {self.face_count} faces, "
            f"{self.vertex_count} vertices)"
        )


def verify_multiplihedron_theorem(m: int) -> MultiplihedronReport:
    """Check that the extended polygon's secondary polytope is the
    m-th multiplihedron, as graded lattices."""
    if m > 4:
        raise ResourceCapError("theorem verification capped at four leaves")
    config = ngon_configuration(m)
    alpha = admissible_alpha(config)
    ext = extend(config, alpha)
    spos = enumerate_coherent_subdivisions(ext.extended)
    slat = face_lattice_from_poset(ext.extended, spos)
    mlat = multiplihedron_lattice(m)
    if len(slat) != len(mlat):
        raise VerificationError(
            f"{len(slat)} subdivisions of the extended polygon vs "
            f"{len(mlat)} painted trees"
        )
    match = lattice_isomorphic(slat, mlat)
    if match is None:
        raise VerificationError("face lattices are not isomorphic")
    vs = slat.rank_counts().get(0, 0)
    vm = mlat.rank_counts().get(0, 0)
    if vs != vm:
        raise VerificationError(f"vertex counts differ: {vs} vs {vm}")
    return MultiplihedronReport(m, len(slat), vs, match)
