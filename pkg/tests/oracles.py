"""Independent reference implementations used only by the test suite.

These deliberately avoid the library's algorithms: the upper-hull oracle
enumerates candidate hyperplanes exhaustively, the LP oracle is
Fourier-Motzkin elimination, polygon subdivisions are enumerated as
non-crossing diagonal sets, and tree counts come from direct recursion.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from tropaint.geometry import (
    AffineFunctional,
    affine_rank,
    interpolate_affine,
    vector,
)


def upper_hull_oracle(lifted):
    """All upper-hull facets by brute force over point subsets.

    For every (d+1)-subset whose projections are affinely independent, fit the
    affine interpolant and keep it when it dominates every lifted point; a
    kept functional is a facet when its equality set spans the base space.
    """
    base = [vector(p) for (p, _) in lifted]
    heights = [Fraction(h) for (_, h) in lifted]
    d = len(base[0])
    found = {}
    for subset in combinations(range(len(base)), d + 1):
        pts = [base[i] for i in subset]
        if affine_rank(pts) < d:
            continue
        fn = interpolate_affine(pts, [heights[i] for i in subset])
        if fn is None:
            continue
        if any(fn(p) < h for p, h in zip(base, heights)):
            continue
        members = frozenset(i for i, (p, h) in enumerate(zip(base, heights)) if fn(p) == h)
        found[members] = fn
    return sorted(
        ((fn, members) for members, fn in found.items()),
        key=lambda pair: sorted(pair[1]),
    )


def fourier_motzkin_feasible(strict, weak, equalities, dim) -> bool:
    """Exact feasibility of {fn > 0} + {fn >= 0} + {fn = 0} over the rationals."""
    rows = []
    for fn in strict:
        rows.append((list(fn.linear), fn.constant, ">"))
    for fn in weak:
        rows.append((list(fn.linear), fn.constant, ">="))
    for fn in equalities:
        rows.append((list(fn.linear), fn.constant, "="))

    def substitute(rows, j, coeffs, const, denom):
        # x_j = (const - sum_k coeffs[k] x_k) / denom, with k != j
        out = []
        for lin, c, kind in rows:
            a = lin[j]
            new_lin = [
                lin[k] + a * (-coeffs[k]) / denom if k != j else Fraction(0)
                for k in range(len(lin))
            ]
            new_c = c - a * const / denom
            out.append((new_lin, new_c, kind))
        return out

    # Equality substitution first.
    while True:
        eq = next((r for r in rows if r[2] == "=" and any(a != 0 for a in r[0])), None)
        if eq is None:
            break
        lin, c, _ = eq
        j = next(k for k, a in enumerate(lin) if a != 0)
        rows = [r for r in rows if r is not eq]
        rows = substitute(rows, j, lin, c, lin[j])
    for lin, c, kind in list(rows):
        if kind == "=":
            if c != 0:
                return False
            rows.remove((lin, c, kind))

    for j in range(dim):
        pos = [r for r in rows if r[0][j] > 0]
        neg = [r for r in rows if r[0][j] < 0]
        zero = [r for r in rows if r[0][j] == 0]
        new_rows = list(zero)
        for plin, pc, pkind in pos:
            for nlin, nc, nkind in neg:
                a, b = plin[j], -nlin[j]
                lin = [b * x + a * y for x, y in zip(plin, nlin)]
                c = b * pc + a * nc
                kind = ">" if (pkind == ">" or nkind == ">") else ">="
                new_rows.append((lin, c, kind))
        rows = new_rows
    for lin, c, kind in rows:
        value = -c
        if kind == ">" and not value > 0:
            return False
        if kind == ">=" and not value >= 0:
            return False
    return True


def polygon_subdivisions(n: int):
    """All subdivisions of a convex n-gon as frozensets of non-crossing diagonals.

    Vertices are 0..n-1 in cyclic order; a diagonal is a frozenset {i, j} of
    non-adjacent vertices.  Includes the empty set (the trivial subdivision).
    """
    diagonals = [
        frozenset((i, j))
        for i, j in combinations(range(n), 2)
        if (j - i) % n not in (1, n - 1)
    ]

    def crosses(d1, d2):
        a, b = sorted(d1)
        c, d = sorted(d2)
        if d1 & d2:
            return False
        return (a < c < b) != (a < d < b)

    out = []
    for k in range(len(diagonals) + 1):
        for subset in combinations(diagonals, k):
            if all(not crosses(x, y) for x, y in combinations(subset, 2)):
                out.append(frozenset(subset))
    return out


def dual_vertex_oracle(points, eta, marks):
    """Slope g with g(a) + eta(a) constant across the marks, by direct
    Gauss-Jordan elimination on g . (a_j - a_0) = eta(a_0) - eta(a_j).

    Unique for marks spanning the ambient space (maximal cells), which is the
    only way the tests use it.
    """
    order = sorted(marks)
    a0 = vector(points[order[0]])
    d = len(a0)
    aug = []
    for j in order[1:]:
        aj = vector(points[j])
        row = [x - y for x, y in zip(aj, a0)]
        aug.append(row + [Fraction(eta[order[0]]) - Fraction(eta[j])])
    piv_cols = []
    r = 0
    for c in range(d):
        p = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        aug[r] = [x / aug[r][c] for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    g = [Fraction(0)] * d
    for rr, c in enumerate(piv_cols):
        g[c] = aug[rr][d]
    return tuple(g)


def painted_binary_tree_count(m: int) -> int:
    """Number of planar binary trees with m leaves whose nodes carry a
    monotone painted/unpainted flag (painted region rootward-closed)."""

    # Labelings per shape: 1 (root unpainted, everything below forced
    # unpainted) + product over children (root painted, children free).
    def shapes(leaves):
        if leaves == 1:
            yield "leaf"
            return
        for left in range(1, leaves):
            for ls in shapes(left):
                for rs in shapes(leaves - left):
                    yield (ls, rs)

    def labelings(shape) -> int:
        if shape == "leaf":
            return 1
        return 1 + labelings(shape[0]) * labelings(shape[1])

    return sum(labelings(s) for s in shapes(m))
