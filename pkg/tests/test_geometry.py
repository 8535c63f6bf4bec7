from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tropaint.errors import DegenerateInputError, InputError
from tropaint.geometry import (
    AffineFunctional,
    affine_rank,
    as_fraction,
    convex_hull_facets,
    hull_vertex_indices,
    hull_volume,
    lp_feasible_strict,
    lp_maximize,
    matrix_rank,
    point_in_hull,
    primitive_vector,
    simplex_normalized_volume,
    upper_hull_facets,
    vector,
)

from oracles import fourier_motzkin_feasible, upper_hull_oracle

F = Fraction


def test_as_fraction_accepts_int_str_fraction():
    assert as_fraction(3) == F(3)
    assert as_fraction("2/4") == F(1, 2)
    assert as_fraction(F(5, 7)) == F(5, 7)
    with pytest.raises(InputError):
        as_fraction(0.5)
    with pytest.raises(InputError):
        as_fraction("not a number")


def test_primitive_vector():
    assert primitive_vector(vector([F(1, 2), F(3, 4)])) == vector([2, 3])
    assert primitive_vector(vector([-4, 6])) == vector([-2, 3])
    with pytest.raises(DegenerateInputError):
        primitive_vector(vector([0, 0]))


def test_matrix_rank():
    assert matrix_rank([[1, 0], [0, 1]]) == 2
    assert matrix_rank([[1, 2], [2, 4]]) == 1
    assert matrix_rank([]) == 0


def test_affine_rank_examples():
    assert affine_rank([(1, 0, 0), (0, 1, 0), (-1, -1, 0)]) == 2
    assert affine_rank([(0, 0)]) == 0
    assert affine_rank([(0, 0), (1, 1), (2, 2)]) == 1
    with pytest.raises(InputError):
        affine_rank([])


@given(
    st.lists(st.tuples(st.integers(-9, 9), st.integers(-9, 9)), min_size=1, max_size=6),
    st.tuples(st.integers(-9, 9), st.integers(-9, 9)),
)
@settings(deadline=None, max_examples=60)
def test_affine_rank_translation_invariant(pts, shift):
    shifted = [(x + shift[0], y + shift[1]) for x, y in pts]
    assert affine_rank(pts) == affine_rank(shifted)


def test_simplex_volume_examples():
    assert simplex_normalized_volume([(0, 0), (1, 0), (-1, -1)]) == 1
    assert simplex_normalized_volume([(0, 0), (1, 0), (0, 1)]) == 1
    assert simplex_normalized_volume([(0, 0, 0), (2, 0, 0), (0, 3, 0), (0, 0, 1)]) == 6
    with pytest.raises(DegenerateInputError):
        simplex_normalized_volume([(0, 0), (1, 1), (2, 2)])
    with pytest.raises(InputError):
        simplex_normalized_volume([(0, 0), (1, 0)])


@given(st.permutations(range(4)))
@settings(deadline=None, max_examples=24)
def test_simplex_volume_permutation_invariant(perm):
    pts = [(0, 0, 0), (1, 0, 0), (1, 2, 0), (0, 1, 5)]
    reordered = [pts[i] for i in perm]
    assert simplex_normalized_volume(reordered) == simplex_normalized_volume(pts)


def test_hull_square():
    facets = convex_hull_facets([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert len(facets) == 4
    member_sets = {f.members for f in facets}
    assert frozenset({0, 1}) in member_sets
    assert frozenset({2, 3}) in member_sets


def test_hull_with_collinear_boundary_point():
    # midpoint of the bottom edge lies on a facet but is not a vertex
    pts = [(0, 0), (2, 0), (2, 2), (0, 2), (1, 0), (1, 1)]
    facets = convex_hull_facets(pts)
    assert len(facets) == 4
    bottom = next(f for f in facets if 4 in f.members)
    assert bottom.members == frozenset({0, 1, 4})
    assert hull_vertex_indices(pts) == frozenset({0, 1, 2, 3})


def test_hull_cube_merges_coplanar_facets():
    cube = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
    facets = convex_hull_facets(cube)
    assert len(facets) == 6
    assert all(len(f.members) == 4 for f in facets)
    assert hull_volume(cube) == 6  # normalized volume = euclidean * 3!


def test_hull_bipyramid():
    pts = [(1, 0, 0), (0, 1, 0), (-1, -1, 0), (0, 0, 1), (0, 0, -1)]
    facets = convex_hull_facets(pts)
    assert len(facets) == 6
    assert hull_vertex_indices(pts) == frozenset(range(5))


def test_hull_rejects_flat_input():
    with pytest.raises(DegenerateInputError):
        convex_hull_facets([(0, 0), (1, 1), (2, 2)])


def test_point_in_hull():
    facets = convex_hull_facets([(0, 0), (4, 0), (0, 4)])
    assert point_in_hull(facets, (1, 1))
    assert point_in_hull(facets, (0, 0))
    assert not point_in_hull(facets, (3, 3))


QUAD = [(0, 0), (1, 0), (0, 1), (-1, 0), (-1, -1)]


def test_upper_hull_quadrilateral_crease():
    # heights -eta for eta = (-1, 1, 0, 2, 0)
    heights = [1, -1, 0, -2, 0]
    facets = upper_hull_facets(list(zip(QUAD, heights)))
    members = {m for _, m in facets}
    assert members == {
        frozenset({0, 1, 2}),
        frozenset({0, 2, 4}),
        frozenset({2, 3, 4}),
        frozenset({0, 1, 4}),
    }
    for fn, mem in facets:
        for i, (p, h) in enumerate(zip(QUAD, heights)):
            if i in mem:
                assert fn(p) == h
            else:
                assert fn(p) > h


def test_upper_hull_square_diagonal_split():
    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    facets = upper_hull_facets(list(zip(square, [0, 0, 0, -1])))
    assert {m for _, m in facets} == {frozenset({0, 1, 2}), frozenset({0, 2, 3})}


def test_upper_hull_flat_lift_single_facet():
    tri = [(0, 0), (1, 0), (0, 1)]
    facets = upper_hull_facets(list(zip(tri, [0, 0, 0])))
    assert len(facets) == 1
    fn, members = facets[0]
    assert members == frozenset({0, 1, 2})
    assert fn.linear == vector([0, 0]) and fn.constant == 0


@given(
    st.lists(st.integers(-4, 4), min_size=5, max_size=5),
)
@settings(deadline=None, max_examples=120)
def test_upper_hull_matches_exhaustive_oracle(heights):
    lifted = list(zip(QUAD, heights))
    got = upper_hull_facets(lifted)
    expected = upper_hull_oracle(lifted)
    assert [(fn.linear, fn.constant, m) for fn, m in got] == [
        (fn.linear, fn.constant, m) for fn, m in expected
    ]


@given(
    st.lists(
        st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-5, 5)),
        min_size=4,
        max_size=8,
    )
)
@settings(deadline=None, max_examples=80)
def test_upper_hull_oracle_agreement_random_configs(rows):
    pts = [(x, y) for x, y, _ in rows]
    if affine_rank(pts) < 2:
        return
    seen = set()
    lifted = []
    for x, y, h in rows:
        if (x, y) not in seen:
            seen.add((x, y))
            lifted.append(((x, y), h))
    got = upper_hull_facets(lifted)
    expected = upper_hull_oracle(lifted)
    assert [(fn.linear, fn.constant, m) for fn, m in got] == [
        (fn.linear, fn.constant, m) for fn, m in expected
    ]


def _fn(linear, constant=0):
    return AffineFunctional(vector(linear), as_fraction(constant))


def test_lp_feasible_strict_basics():
    # 0 < x < 1
    x = lp_feasible_strict([_fn([1]), _fn([-1], -1)], [], [], 1)
    assert x is not None and 0 < x[0] < 1
    # x > 0 and -x > 0 has no solution
    assert lp_feasible_strict([_fn([1]), _fn([-1])], [], [], 1) is None
    # equality x = 0 with weak x >= 0 is feasible at 0
    x = lp_feasible_strict([], [_fn([1])], [_fn([1])], 1)
    assert x == (0,)
    # strict x > 0 with equality x = 0 infeasible
    assert lp_feasible_strict([_fn([1])], [], [_fn([1])], 1) is None


def test_lp_unbounded_direction_is_fine():
    # x > 5 alone: feasible, certificate returned
    x = lp_feasible_strict([_fn([1], 5)], [], [], 1)
    assert x is not None and x[0] > 5


def test_lp_maximize_simple():
    status, x, value = lp_maximize([1], [[1]], [7], [], [])
    assert status == "optimal" and value == 7
    status, _, _ = lp_maximize([1], [], [], [], [])
    assert status == "unbounded"
    status, _, _ = lp_maximize([1], [[1], [-1]], [-1, -1], [], [])
    assert status == "infeasible"


@given(
    st.integers(1, 3),
    st.lists(
        st.tuples(
            st.lists(st.integers(-3, 3), min_size=3, max_size=3),
            st.integers(-4, 4),
            st.sampled_from([">", ">=", "="]),
        ),
        min_size=1,
        max_size=6,
    ),
)
@settings(deadline=None, max_examples=150)
def test_lp_agrees_with_fourier_motzkin(dim, rows):
    strict, weak, eqs = [], [], []
    for lin, c, kind in rows:
        fn = _fn(lin[:dim], c)
        (strict if kind == ">" else weak if kind == ">=" else eqs).append(fn)
    got = lp_feasible_strict(strict, weak, eqs, dim)
    expected = fourier_motzkin_feasible(strict, weak, eqs, dim)
    assert (got is not None) == expected
    if got is not None:
        assert all(fn(got) > 0 for fn in strict)
        assert all(fn(got) >= 0 for fn in weak)
        assert all(fn(got) == 0 for fn in eqs)


def test_one_dimensional_hull():
    pts = [(0,), (5,), (2,), (3,)]
    facets = convex_hull_facets(pts)
    assert len(facets) == 2
    member_sets = {f.members for f in facets}
    assert member_sets == {frozenset({0}), frozenset({1})}
    assert hull_volume(pts) == 5
    assert hull_vertex_indices(pts) == frozenset({0, 1})


def test_upper_hull_one_dimensional_base():
    lifted = [((0,), 0), ((1,), 1), ((2,), 0)]
    facets = upper_hull_facets(lifted)
    assert {m for _, m in facets} == {frozenset({0, 1}), frozenset({1, 2})}


def test_affine_coordinates_lower_dimensional():
    from tropaint.geometry import affine_coordinates

    pts = [(0, 0, 1), (1, 1, 1), (2, 2, 1), (1, 0, 1)]
    coords = affine_coordinates(pts)
    assert len(coords[0]) == 2
    assert coords[0] == (0, 0)
    # pairwise affine relations preserved: (2,2,1) = 2*(1,1,1) - (0,0,1)
    assert coords[2] == tuple(2 * a - b for a, b in zip(coords[1], coords[0]))


def test_polytope_vertex_indices_segment_in_plane():
    from tropaint.geometry import polytope_vertex_indices

    assert polytope_vertex_indices([(0, 0), (2, 2), (1, 1)]) == frozenset({0, 1})
    assert polytope_vertex_indices([(3, 4)]) == frozenset({0})


def test_face_member_sets_square_with_edge_midpoint():
    from tropaint.geometry import face_member_sets

    pts = [(0, 0), (2, 0), (2, 2), (0, 2), (1, 0)]
    faces = face_member_sets(pts)
    assert frozenset(range(5)) in faces              # the square itself
    assert frozenset({0, 1, 4}) in faces             # bottom edge with midpoint
    assert frozenset({0}) in faces and frozenset({4}) not in faces
    dims = {}
    # 4 vertices, 4 edges, 1 two-face
    assert len(faces) == 9


def test_face_member_sets_triangle():
    from tropaint.geometry import face_member_sets

    faces = face_member_sets([(0, 0), (1, 0), (0, 1)])
    assert len(faces) == 7  # 3 vertices + 3 edges + 1 triangle
