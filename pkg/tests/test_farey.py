"""The parity-aware Farey recursion, rotation, matrices and membership."""

from fractions import Fraction

import pytest

from flattice.farey import (BASE_QUAD, Frac, child_pair, child_quad, expand,
                            find_word, flip23, fractions_with_det_at_most,
                            gallery_quadruples, gamma_membership,
                            hyperbola_point, iter_tree, lattice_det,
                            matrix_data, matrix_of, rotate, rotate_quadruple)


def test_reduced_fraction_validation():
    with pytest.raises(ValueError):
        Frac(2, 4)
    with pytest.raises(ValueError):
        Frac(3, 2)
    assert Frac(2, 5).is_odd
    assert Frac(1, 3).is_even


def test_child_pair_examples():
    assert child_pair(Frac(0, 1), Frac(1, 1)) == (Frac(1, 2), Frac(1, 3))
    assert child_pair(Frac(1, 2), Frac(1, 3)) == (Frac(2, 5), Frac(3, 7))
    assert child_pair(Frac(1, 2), Frac(1, 1)) == (Frac(2, 3), Frac(3, 5))


def test_child_pair_parity_check():
    with pytest.raises(ValueError):
        child_pair(Frac(1, 3), Frac(1, 2))


def test_expand_examples():
    assert expand(()) == BASE_QUAD
    q3 = expand((3,))
    assert (q3.p1, q3.q1, q3.p2, q3.q2) == (Frac(1, 4), Frac(1, 5), Frac(0, 1), Frac(1, 3))
    q2 = expand((2,))
    assert (q2.p1, q2.q1, q2.p2, q2.q2) == (Frac(2, 3), Frac(3, 5), Frac(1, 2), Frac(1, 1))


def test_rotate_examples_and_involution():
    assert rotate(Frac(0, 1)) == Frac(1, 1)
    assert rotate(Frac(1, 1)) == Frac(0, 1)
    assert rotate(Frac(1, 2)) == Frac(1, 3)
    assert rotate(Frac(1, 3)) == Frac(1, 2)
    for _, quad in iter_tree(3):
        for f in (quad.p1, quad.q1):
            assert rotate(rotate(f)) == f
            assert rotate(f).is_even == f.is_odd


def test_rotate_quadruple_flips_types_2_and_3():
    assert rotate_quadruple(expand(())) == expand(())
    assert rotate_quadruple(expand((2,))) == expand((3,))
    for word in [(1,), (2,), (3,), (1, 2), (3, 1), (2, 2)]:
        assert rotate_quadruple(expand(word)) == expand(flip23(word))


def test_rotation_preserves_depth():
    for depth in (1, 2):
        level = {(q.p1, q.q1, q.p2, q.q2)
                 for w, q in iter_tree(depth) if len(w) == depth}
        rotated = {(q.p1, q.q1, q.p2, q.q2)
                   for q in (rotate_quadruple(expand(w))
                             for w, _ in iter_tree(depth) if len(w) == depth)}
        assert level == rotated


def test_uniqueness_of_parents_depth_5():
    seen = {}
    for word, quad in iter_tree(5):
        for child in (quad.p1, quad.q1):
            parents = (quad.p2, quad.q2)
            if child in seen:
                assert seen[child] == parents
            else:
                seen[child] = parents


def test_matrix_data_examples():
    md = matrix_data(Frac(1, 2))
    assert md.t == 7
    assert md.m == ((Fraction(-1, 7), Fraction(2, 7)),
                    (Fraction(2, 7), Fraction(-4, 7)))
    md25 = matrix_data(Frac(2, 5))
    assert md25.v1 == (10, 4) and md25.v1_doubled
    assert md25.v2 == (-3, 7)
    assert md25.a2 == (2, -5)
    assert md25.lattice_det() == 82 == 2 * md25.t


def test_matrix_kernel_and_affine_identities():
    for _, quad in iter_tree(3):
        for f in (quad.p1, quad.q1):
            md = matrix_data(f)
            for v, expect in ((md.v1, (Fraction(0), Fraction(0))),
                              (md.v2, (Fraction(md.a2[0]), Fraction(md.a2[1])))):
                got = (md.m[0][0] * v[0] + md.m[0][1] * v[1],
                       md.m[1][0] * v[0] + md.m[1][1] * v[1])
                assert got == expect


def test_hyperbola_points():
    assert hyperbola_point(Frac(0, 1)) == (Fraction(1), Fraction(-1))
    assert hyperbola_point(Frac(1, 1)) == (Fraction(0), Fraction(-1))
    t, c = hyperbola_point(Frac(1, 2))
    assert (t, c) == (Fraction(3, 7), Fraction(-5, 7))
    assert t * t + (1 - t) ** 2 == c * c


def test_hyperbola_points_distinct_depth_6():
    points = set()
    fractions = set()
    for _, quad in iter_tree(6):
        fractions.update((quad.p1, quad.q1))
    for f in fractions:
        t, c = hyperbola_point(f)
        assert t * t + (1 - t) ** 2 == c * c
        points.add((t, c))
    assert len(points) == len(fractions)


def test_gamma_membership_examples():
    zero = ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(0)))
    assert gamma_membership(zero) == "boundary"
    half = Fraction(1, 2)
    m011 = ((-half, half), (half, -half))
    assert gamma_membership(m011) == "boundary"
    ident = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    assert gamma_membership(ident) == "outside"
    inside = ((Fraction(-3), Fraction(0)), (Fraction(0), Fraction(-3)))
    assert gamma_membership(inside) == "inside"


def test_gamma_membership_on_tree_matrices():
    for _, quad in iter_tree(3):
        for f in (quad.p1, quad.q1):
            assert gamma_membership(matrix_of(f)) == "boundary"


def test_find_word():
    assert find_word(Frac(2, 5)) == ((1,), "odd")
    assert find_word(Frac(3, 7)) == ((1,), "even")
    assert find_word(Frac(1, 5)) == ((3,), "even")
    assert find_word(Frac(5, 16)) == ((3, 2, 2, 2, 2), "odd")


GALLERY_ROWS = [
    # (odd child, even child, odd parent, even parent), in det order
    ("1/2", "1/3", "0/1", "1/1"), ("2/3", "3/5", "1/2", "1/1"),
    ("1/4", "1/5", "0/1", "1/3"), ("3/4", "5/7", "2/3", "1/1"),
    ("2/5", "3/7", "1/2", "1/3"), ("1/6", "1/7", "0/1", "1/5"),
    ("4/5", "7/9", "3/4", "1/1"), ("5/6", "9/11", "4/5", "1/1"),
    ("2/7", "3/11", "1/4", "1/3"), ("1/8", "1/9", "0/1", "1/7"),
    ("4/7", "5/9", "1/2", "3/5"), ("6/7", "11/13", "5/6", "1/1"),
    ("3/8", "5/13", "2/5", "1/3"), ("2/9", "3/13", "1/4", "1/5"),
    ("5/8", "7/11", "2/3", "3/5"), ("1/10", "1/11", "0/1", "1/9"),
    ("7/8", "13/15", "6/7", "1/1"), ("4/9", "5/11", "1/2", "3/7"),
    ("3/10", "5/17", "2/7", "1/3"), ("2/11", "3/17", "1/6", "1/5"),
    ("1/12", "1/13", "0/1", "1/11"), ("7/10", "9/13", "2/3", "5/7"),
    ("4/11", "7/19", "3/8", "1/3"), ("6/11", "7/13", "1/2", "5/9"),
    ("2/13", "3/19", "1/6", "1/7"), ("1/14", "1/15", "0/1", "1/13"),
    ("8/11", "11/15", "3/4", "5/7"), ("5/12", "7/17", "2/5", "3/7"),
    ("4/13", "7/23", "3/10", "1/3"), ("7/12", "11/19", "4/7", "3/5"),
    ("3/14", "5/23", "2/9", "1/5"), ("2/15", "3/23", "1/8", "1/7"),
    ("6/13", "7/15", "1/2", "5/11"), ("5/14", "9/25", "4/11", "1/3"),
    ("8/13", "13/21", "5/8", "3/5"), ("4/15", "5/19", "1/4", "3/11"),
    ("10/13", "13/17", "3/4", "7/9"), ("3/16", "5/27", "2/11", "1/5"),
    ("2/17", "3/25", "1/8", "1/9"), ("9/14", "11/17", "2/3", "7/11"),
    ("11/14", "15/19", "4/5", "7/9"), ("5/16", "9/29", "4/13", "1/3"),
]


def test_gallery_enumeration():
    quads = gallery_quadruples(14, 1000)
    assert (quads[0].p1, quads[0].q1, quads[0].p2, quads[0].q2) == (
        Frac(1, 2), Frac(1, 3), Frac(0, 1), Frac(1, 1))
    dets = [lattice_det(q.p1) for q in quads]
    assert dets == sorted(dets)
    assert dets[0] == 14
    # Every published gallery row appears with its exact quadruple pairing.
    rows = {(str(q.p1), str(q.q1), str(q.p2), str(q.q2)) for q in quads}
    for row in GALLERY_ROWS:
        assert row in rows, row
    assert len(GALLERY_ROWS) == 42
    assert ("2/5", "3/7", "1/2", "1/3") in rows
    assert ("5/16", "9/29", "4/13", "1/3") in rows


def test_det_enumeration_matches_direct_scan():
    found = {(f.n, f.d) for f, _, _ in fractions_with_det_at_most(400)}
    import math
    direct = set()
    for d in range(2, 21):
        for n in range(1, d):
            if math.gcd(n, d) == 1 and lattice_det(Frac(n, d)) <= 400:
                direct.add((n, d))
    assert found == direct
