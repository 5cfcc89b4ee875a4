"""Homology of the Fermat curve, checked against an independent geometric oracle.

The curve x^n + y^n = 1 carries a CW structure with 2n vertices
Q_j = (0, zeta^j) and P_i = (zeta^i, 0) and the n^2 arcs
e_{i,j}: t -> (zeta^i t, zeta^j (1 - t^n)^(1/n)) joining Q_j to P_i.  Any two
loops built from these arcs meet only at vertices (or along whole shared
edges), so their intersection number is pure corner combinatorics: at each
vertex the incident arc ends are cyclically ordered by the holomorphic local
coordinate (x near Q_j, y near P_i), edge e_{i,j} occupying angular slot i at
Q_j and slot j at P_i.  Pushing the second loop slightly to its own left
turns every crossing into an interleaving test between two vertex chords,
with sign +1 exactly when the four slot positions run counterclockwise as
(in_1, in_2, out_1, out_2).

The base loop is the edge word e_{0,0} e_{0,1}^(-1) e_{1,1} e_{1,0}^(-1) and
its (a, b) translate shifts both edge indices.  The oracle below computes the
resulting pairing table from nothing but this surface model, and the face
count of the same model recovers the genus through the Euler characteristic.
The production table in `homology.base_pairing` must agree with both.
"""

from fractions import Fraction

import pytest

from fermatvol import homology
from fermatvol.homology import (
    GroupRingClass,
    base_pairing,
    basis_indices,
    genus,
    intersection,
    intersection_matrix,
    loop_class,
    rational_rank,
    reduce,
    reduce_coefficients,
    relations,
    smith_invariants,
)

_EPS = 0.25  # slot displacement of the pushed-off copy; any value in (0, 1/2) works


def _loop_turns(n, a, b):
    """The four (vertex, in_slot, out_slot) turns of the (a, b) base-loop translate."""
    a1, b1 = (a + 1) % n, (b + 1) % n
    return [
        (("P", a), b, b1),    # arrive on e_{a,b}, leave backwards along e_{a,b+1}
        (("Q", b1), a, a1),   # arrive on e_{a,b+1}, leave on e_{a+1,b+1}
        (("P", a1), b1, b),   # arrive on e_{a+1,b+1}, leave backwards along e_{a+1,b}
        (("Q", b), a1, a),    # arrive on e_{a+1,b}, leave on e_{a,b}
    ]


def _corner_crossing(n, g1, g2):
    """Signed crossing count of two base-loop translates in the surface model."""
    total = 0
    for v1, in1, out1 in _loop_turns(n, *g1):
        for v2, in2, out2 in _loop_turns(n, *g2):
            if v1 != v2:
                continue
            # second loop displaced to its left: entering end nudged clockwise,
            # leaving end counterclockwise
            pa1, pb1 = float(in1), float(out1)
            pa2, pb2 = (in2 - _EPS) % n, (out2 + _EPS) % n
            x = (pa2 - pa1) % n
            y = (pb1 - pa1) % n
            w = (pb2 - pa1) % n
            assert 0 not in (x, y, w) and y not in (x, w), "displacement left a tie"
            inside_x, inside_w = x < y, w < y
            if inside_x != inside_w:
                total += 1 if inside_x else -1
    return total


def _face_count(n):
    """Faces of the CW model, traced with the rotation system at each vertex."""
    def step(dart):
        (kind, v), slot = dart
        # cross to the other end of the edge, then rotate one slot ccw
        other = (("P", slot), v) if kind == "Q" else (("Q", slot), v)
        (kind2, v2), slot2 = other
        return ((kind2, v2), (slot2 + 1) % n)

    darts = [(("Q", j), i) for j in range(n) for i in range(n)]
    darts += [(("P", i), j) for i in range(n) for j in range(n)]
    seen = set()
    faces = 0
    for d0 in darts:
        if d0 in seen:
            continue
        faces += 1
        d = d0
        while d not in seen:
            seen.add(d)
            d = step(d)
    return faces


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_base_pairing_equals_corner_crossing_oracle(n):
    for a in range(n):
        for b in range(n):
            assert base_pairing(n, a, b) == _corner_crossing(n, (0, 0), (a, b)), (a, b)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_surface_model_has_the_right_genus(n):
    vertices, edges = 2 * n, n * n
    chi = vertices - edges + _face_count(n)
    assert chi == 2 - 2 * genus(n)


def test_genus_values():
    assert [genus(n) for n in (3, 4, 5, 6)] == [1, 3, 6, 10]


@pytest.mark.parametrize("n", [4, 5, 6])
def test_base_pairing_antisymmetry_and_support(n):
    nonzero = {}
    for a in range(n):
        for b in range(n):
            assert base_pairing(n, a, b) == -base_pairing(n, -a % n, -b % n)
            if base_pairing(n, a, b):
                nonzero[(a, b)] = base_pairing(n, a, b)
    assert nonzero == {
        (1, 0): 1, (0, 1): 1, (n - 1, n - 1): 1,
        (1, 1): -1, (n - 1, 0): -1, (0, n - 1): -1,
    }


def test_oracle_translation_invariance(rng):
    for n in (4, 6):
        for _ in range(20):
            a, b, c, d = (rng.randrange(n) for _ in range(4))
            assert _corner_crossing(n, (a, b), (c, d)) == base_pairing(
                n, (c - a) % n, (d - b) % n
            )


def test_intersection_pairing_matches_table_and_translates(rng):
    for n in (4, 6):
        for a in range(n):
            for b in range(n):
                got = intersection(loop_class(n, 0, 0), loop_class(n, a, b))
                assert got == base_pairing(n, a, b)
        for _ in range(10):
            x = loop_class(n, rng.randrange(n), rng.randrange(n))
            y = loop_class(n, rng.randrange(n), rng.randrange(n))
            s, t = rng.randrange(n), rng.randrange(n)
            assert intersection(x, y) == -intersection(y, x)
            assert intersection(x.translate(s, t), y.translate(s, t)) == intersection(x, y)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_relations_annihilate_every_loop(n):
    rels = relations(n)
    for rel in rels:
        for i in range(n):
            for j in range(n):
                assert intersection(rel, loop_class(n, i, j)) == 0


@pytest.mark.parametrize("n", [4, 5, 6])
def test_relation_span_rank(n):
    rels = relations(n)
    assert rational_rank([r.coeffs for r in rels]) == 3 * n - 2
    # and the quotient has the full homology rank
    assert n * n - (3 * n - 2) == 2 * genus(n)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_intersection_matrix_is_unimodular(n):
    mat = intersection_matrix(n)
    dim = 2 * genus(n)
    assert len(mat) == dim and all(len(row) == dim for row in mat)
    for r in range(dim):
        for c in range(dim):
            assert mat[r][c] == -mat[c][r]
    divisors = smith_invariants(mat)
    assert divisors == [1] * dim


def test_intersection_matrix_entries_match_pairing():
    n = 6
    idx = basis_indices(n)
    mat = intersection_matrix(n)
    for r, (i, j) in enumerate(idx):
        for c, (k, l) in enumerate(idx):
            assert mat[r][c] == intersection(loop_class(n, i, j), loop_class(n, k, l))


def test_smith_invariants_known_matrices():
    assert smith_invariants([[2, 0], [0, 3]]) == [1, 6]
    assert smith_invariants([[0, 2], [-2, 0]]) == [2, 2]
    assert smith_invariants([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == [1, 1, 1]


def test_reduce_is_a_projection(rng):
    for n in (4, 6):
        # basis loops are fixed
        for (i, j) in basis_indices(n):
            h = reduce(loop_class(n, i, j))
            lifted = h.lift()
            assert reduce(lifted).coeffs == h.coeffs
        # relations die
        for rel in relations(n):
            assert not any(reduce(rel).coeffs)
        # reduction commutes with the quotient: x and x + relation agree
        for _ in range(10):
            x = loop_class(n, rng.randrange(n), rng.randrange(n))
            rel = relations(n)[rng.randrange(len(relations(n)))]
            shifted = x + rel.scale(Fraction(rng.randint(-3, 3)))
            assert reduce(shifted).coeffs == reduce(x).coeffs


def test_reduce_coefficients_matches_class_reduction(rng):
    n = 6
    for _ in range(5):
        coeffs = [Fraction(rng.randint(-4, 4)) for _ in range(n * n)]
        via_class = reduce(GroupRingClass(n, tuple(coeffs)))
        assert tuple(reduce_coefficients(n, coeffs)) == via_class.coeffs


def test_reduction_preserves_intersection_numbers(rng):
    n = 6
    for _ in range(10):
        x = loop_class(n, rng.randrange(n), rng.randrange(n))
        y = loop_class(n, rng.randrange(n), rng.randrange(n))
        assert intersection(reduce(x).lift(), reduce(y).lift()) == intersection(x, y)
