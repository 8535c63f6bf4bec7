"""Cell coloring, vertex-color reconstruction, and painting cones."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropaint.errors import InconsistencyError, InputError, NoCertificateError
from tropaint.geometry import vdot
from tropaint.painting import (
    BLUE,
    PURPLE,
    RED,
    ColorFunction,
    PaintedComplex,
    PaintSpec,
    colors_from_vertices,
    enumerate_painted_complexes,
    paint,
    painting_cone,
    painting_constraint,
)
from tropaint.point_config import build_configuration, sign_vector
from tropaint.tropical_dual import dual_complex

QUAD = build_configuration([(0, 0), (1, 0), (0, 1), (-1, 0), (-1, -1)])
BIPYRAMID = build_configuration(
    [(1, 0, 0), (0, 1, 0), (-1, -1, 0), (0, 0, 1), (0, 0, -1)]
)
SEGMENT = build_configuration([(0,), (1,)])
ALPHA = (F(1, 3), F(1, 3))
ALPHA3 = (F(1, 2), F(1, 3), F(1, 2))
STAR = [-1, 0, 0, 0, 0]

CRANK = {RED: 2, PURPLE: 1, BLUE: 0}


def star_painted(c):
    p, _ = dual_complex(QUAD, STAR)
    return paint(p, PaintSpec.of(QUAD, STAR, c, ALPHA))


def vertex_pattern(painted):
    out = {}
    for cell in painted.complex.cells_of_dim(0):
        out[tuple(sorted(cell.marking))] = painted.kappa[cell.marking]
    return out


def test_star_vertex_colors_at_minus_one():
    painted = star_painted(F(-1))
    assert vertex_pattern(painted) == {
        (0, 1, 2): RED,
        (0, 2, 3): PURPLE,
        (0, 3, 4): BLUE,
        (0, 1, 4): BLUE,
    }


def test_star_full_coloring_at_minus_one():
    # derived cell by cell from vertex values and ray slopes; the interior
    # point 0 lies in every maximal cell, so its dual is the compact 2-cell
    painted = star_painted(F(-1))
    got = {tuple(sorted(m)): col for m, col in painted.kappa.items()}
    assert got == {
        (0,): PURPLE,
        (1,): PURPLE,
        (2,): PURPLE,
        (3,): BLUE,
        (4,): BLUE,
        (0, 1): PURPLE,
        (0, 2): RED,
        (0, 3): BLUE,
        (0, 4): BLUE,
        (1, 2): PURPLE,
        (1, 4): BLUE,
        (2, 3): BLUE,
        (3, 4): BLUE,
        (0, 1, 2): RED,
        (0, 1, 4): BLUE,
        (0, 2, 3): PURPLE,
        (0, 3, 4): BLUE,
    }


def test_constraint_coefficients_and_thresholds():
    eta = [F(-1), F(0), F(0), F(0), F(0)]
    expected = {
        (0, 1, 2): F(-1, 3),
        (0, 2, 3): F(-1),
        (0, 3, 4): F(-4, 3),
        (0, 1, 4): F(-4, 3),
    }
    for marks, want in expected.items():
        pc = painting_constraint(QUAD, frozenset(marks), ALPHA)
        assert sum(pc.coefficients) == 1
        t = sum(b * eta[i] for i, b in zip(pc.basis, pc.coefficients))
        assert t == want
        # the functional computes the sign quantity directly
        point = tuple(eta) + (t,)
        assert pc.functional(point) == 0


def test_level_sweep_patterns():
    levels = [F(-2), F(-4, 3), F(-7, 6), F(-1), F(-2, 3), F(-1, 3), F(0)]
    expected = [
        (RED, RED, RED, RED),
        (RED, RED, PURPLE, PURPLE),
        (RED, RED, BLUE, BLUE),
        (RED, PURPLE, BLUE, BLUE),
        (RED, BLUE, BLUE, BLUE),
        (PURPLE, BLUE, BLUE, BLUE),
        (BLUE, BLUE, BLUE, BLUE),
    ]
    order = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 1, 4)]
    seen = set()
    prev = None
    for c, want in zip(levels, expected):
        painted = star_painted(c)
        pat = vertex_pattern(painted)
        assert tuple(pat[m] for m in order) == want
        seen.add(painted.key())
        # raising the level only ever moves a cell toward blue
        cur = {m: col for m, col in painted.kappa.items()}
        if prev is not None:
            for m, col in cur.items():
                assert CRANK[col] <= CRANK[prev[m]]
        prev = cur
    assert len(seen) == 7


def test_paint_rejects_foreign_lifting():
    p, _ = dual_complex(QUAD, STAR)
    spec = PaintSpec.of(QUAD, [-1, 1, 0, 2, 0], F(0), ALPHA)
    with pytest.raises(InputError):
        paint(p, spec)


def test_reconstruction_requires_total_vertex_colors():
    painted = star_painted(F(-1))
    p = painted.complex
    sv = sign_vector(QUAD, ALPHA)
    colors = {c.marking: painted.kappa[c.marking] for c in p.cells_of_dim(0)}
    missing = dict(colors)
    missing.pop(frozenset({0, 1, 2}))
    with pytest.raises(InconsistencyError):
        colors_from_vertices(p, missing, sv)
    bad = dict(colors)
    bad[frozenset({0, 1, 2})] = "green"
    with pytest.raises(InconsistencyError):
        colors_from_vertices(p, bad, sv)


def test_ray_sign_with_explicit_bound():
    # along a ray dual to a boundary facet, the sign of g beyond the exact
    # crossing parameter equals the facet's sign vector entry
    for c in (F(-2), F(-1), F(1, 2)):
        painted = star_painted(c)
        spec = painted.spec
        sv = sign_vector(QUAD, ALPHA)
        by_normal = {f.normal: (f, s) for f, s in zip(QUAD.facets, sv.signs)}
        for cell in painted.complex.cells.values():
            if cell.dimension != 1 or not cell.rays:
                continue
            u0 = cell.vertices[0]
            r = cell.rays[0]
            facet, s = by_normal[r]
            a = min(cell.marking)
            pt = QUAD.points[a]

            def g(u):
                return vdot(u, pt) + spec.eta[a] - vdot(u, spec.alpha) - spec.c

            denom = vdot(r, spec.alpha) - facet.threshold
            if denom == 0:
                assert s == 0
                assert g(u0) == g(tuple(x + y for x, y in zip(u0, r)))
                continue
            bound = g(u0) / denom
            assert g(tuple(x + bound * y for x, y in zip(u0, r))) == 0
            t = (bound if bound > 0 else F(0)) + 1
            far = g(tuple(x + t * y for x, y in zip(u0, r)))
            assert (far > 0) == (s > 0) and (far < 0) == (s < 0)


def test_painting_cone_contains_witness():
    painted = star_painted(F(-1))
    cone = painting_cone(painted, ALPHA)
    point = tuple(painted.spec.eta.values) + (painted.spec.c,)
    assert cone.contains_open(point)
    assert cone.ambient_dim == 6
    assert cone.dim() == 5  # one purple vertex pins one equality
    other = star_painted(F(0))
    assert not cone.contains_open(tuple(other.spec.eta.values) + (other.spec.c,))


def test_painting_cone_infeasible_coloring():
    painted = star_painted(F(-1))
    all_purple = ColorFunction({m: PURPLE for m in painted.complex.cells})
    fake = PaintedComplex(painted.complex, all_purple, painted.spec)
    # four purple vertices force an affine lifting, which cannot induce
    # the star triangulation
    with pytest.raises(NoCertificateError):
        painting_cone(fake, ALPHA)


def test_segment_poset():
    poset = enumerate_painted_complexes(SEGMENT, (F(1, 2),))
    assert len(poset) == 3
    kappas = [
        {tuple(sorted(m)): col for m, col in pc.kappa.items()}
        for pc in poset.elements
    ]
    all_blue = {(0, 1): BLUE, (0,): BLUE, (1,): BLUE}
    wall = {(0, 1): PURPLE, (0,): BLUE, (1,): BLUE}
    red_side = {(0, 1): RED, (0,): PURPLE, (1,): PURPLE}
    assert all_blue in kappas and wall in kappas and red_side in kappas
    top = poset.maximal()
    assert len(top) == 1 and kappas[top[0]] == wall
    assert sorted(kappas[i][(0, 1)] for i in poset.minimal()) == [BLUE, RED]
    assert len(poset.covers()) == 2


def test_quad_poset_counts():
    poset = enumerate_painted_complexes(QUAD, ALPHA)
    assert len(poset) == 45
    dims = {}
    for pc in poset.elements:
        d = painting_cone(pc, ALPHA).dim()
        dims[d] = dims.get(d, 0) + 1
    # pointed dimensions 3,2,1,0 over a 3-dimensional lineality
    assert dims == {6: 14, 5: 21, 4: 9, 3: 1}
    v, e, f = dims[6], dims[5], dims[4]
    assert v - e + f == 2
    assert len(poset.minimal()) == 14
    top = poset.maximal()
    assert len(top) == 1
    # the top painting sits over the lineality: affine lifting, level at the
    # value of alpha, so the lone vertex is purple and all else falls away blue
    top_pc = poset.elements[top[0]]
    assert len(top_pc.subdivision.maximal) == 1
    for cell in top_pc.complex.cells.values():
        want = PURPLE if cell.dimension == 0 else BLUE
        assert top_pc.kappa[cell.marking] == want


def test_bipyramid_poset_is_heptagon():
    poset = enumerate_painted_complexes(BIPYRAMID, ALPHA3)
    assert len(poset) == 15
    dims = {}
    for pc in poset.elements:
        d = painting_cone(pc, ALPHA3).dim()
        dims[d] = dims.get(d, 0) + 1
    assert dims == {6: 7, 5: 7, 4: 1}
    assert len(poset.covers()) == 21
    assert len(poset.minimal()) == 7 and len(poset.maximal()) == 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=5, max_size=5), st.integers(-8, 8))
def test_reconstruction_matches_direct_paint(eta, c):
    for config, alpha in ((QUAD, ALPHA), (BIPYRAMID, ALPHA3)):
        p, _ = dual_complex(config, eta)
        painted = paint(p, PaintSpec.of(config, eta, c, alpha))
        sv = sign_vector(config, alpha)
        vc = {cell.marking: painted.kappa[cell.marking] for cell in p.cells_of_dim(0)}
        assert colors_from_vertices(p, vc, sv) == painted.kappa


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.integers(-4, 4), min_size=5, max_size=5),
    st.integers(-6, 6),
)
def test_sampled_paintings_are_enumerated(eta, c):
    poset = _quad_poset()
    keys = {pc.key() for pc in poset.elements}
    p, _ = dual_complex(QUAD, eta)
    painted = paint(p, PaintSpec.of(QUAD, eta, c, ALPHA))
    assert painted.key() in keys


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=5, max_size=5), st.integers(-7, 7))
def test_cone_membership_matches_key(eta, c):
    p, _ = dual_complex(QUAD, eta)
    painted = paint(p, PaintSpec.of(QUAD, eta, c, ALPHA))
    cone = painting_cone(painted, ALPHA)
    point = tuple(F(v) for v in eta) + (F(c),)
    assert cone.contains_open(point)
    # repainting at the cone's own certificate reproduces the painting
    sample = cone.interior_point
    p2, _ = dual_complex(QUAD, list(sample[:-1]))
    painted2 = paint(p2, PaintSpec.of(QUAD, list(sample[:-1]), sample[-1], ALPHA))
    assert painted2.key() == painted.key()


_POSET_CACHE = {}


def _quad_poset():
    if "quad" not in _POSET_CACHE:
        _POSET_CACHE["quad"] = enumerate_painted_complexes(QUAD, ALPHA)
    return _POSET_CACHE["quad"]
