"""Zero-one boundary strings, their odometer data, and the closed forms."""

import pytest

from flattice.strings import (AP2, AQ2, ONE_ODOMETER, StringError, VP1, VP2,
                              VQ1, VQ2, ZERO_ODOMETER, build_string,
                              explicit_vertical, g_map, matrix_of_odometer,
                              odometer_union, stack, stacked_odometers,
                              string_odometers)
from flattice.words import binary_quadruple, flip, is_almost_palindrome, reverse
from flattice.geometry import fit_affine, sub


def all_recursion_words(depth):
    level = [()]
    for _ in range(depth):
        level = [w + (c,) for w in level for c in (1, 2, 3)]
        yield from level


def test_lattice_constants():
    assert (VP1, VP2, VQ1, VQ2) == ((2, 0), (-1, 1), (1, 1), (0, 2))
    assert (AP2, AQ2) == ((0, -1), (1, -1))


def test_build_string_start_conventions():
    with pytest.raises(StringError):
        build_string("pq", "horizontal")
    with pytest.raises(StringError):
        build_string("qp", "vertical")
    with pytest.raises(StringError):
        build_string("qp", "horizontal", is_reversed=True)


def test_horizontal_offsets():
    s = build_string("qp", "horizontal")
    assert s.tiles[1].corner == (2, 0)          # step into a zero tile
    s = build_string("qq", "horizontal")
    assert s.tiles[1].corner == VQ1
    s = build_string("pq", "horizontal", is_reversed=True)
    assert s.tiles[1].corner == (2, 1)
    s = build_string("pp", "horizontal", is_reversed=True)
    assert s.tiles[1].corner == VP1


def test_vertical_offsets():
    s = build_string("pq", "vertical")
    assert s.tiles[1].corner == VQ2
    s = build_string("pp", "vertical")
    assert s.tiles[1].corner == VP2
    s = build_string("qp", "vertical", is_reversed=True)
    assert s.tiles[1].corner == (0, 1)
    s = build_string("qq", "vertical", is_reversed=True)
    assert s.tiles[1].corner == VQ2


def test_stack_initial_offsets():
    st = stack("qp", "horizontal")
    assert sub(st.plus.tiles[0].corner, st.minus.tiles[0].corner) == (-1, 2)
    st = stack("pq", "vertical")
    assert sub(st.plus.tiles[0].corner, st.minus.tiles[0].corner) == (-1, -1)


def test_stack_gap_doubling():
    st = stack("qqqp", "horizontal")
    doubled = [t.doubled for t in st.plus.tiles]
    assert doubled == [False, True, True, False]
    st_v = stack("pqqp"[::-1] + "", "vertical") if False else stack("pqqq", "vertical")
    assert not any(t.doubled for t in st_v.plus.tiles + st_v.minus.tiles)


def test_string_odometer_seeds():
    s = build_string("q", "horizontal")
    od = string_odometers(s)[0]
    assert od.values() == {(0, 0): 0, (1, 0): 0, (0, 1): -1, (1, 1): 0}


def test_reversed_translated_zero_odometer():
    # the zero odometer translated by the negated affine term
    s = build_string("p", "horizontal", is_reversed=True)
    od = string_odometers(s, seed_slope=(0, 1), seed_constant=-1)[0]
    assert od.values() == {(0, 0): -1, (1, 0): -1, (0, 1): 0, (1, 1): 0,
                           (0, 2): 0, (1, 2): 0}


CASES = [
    ("pkq", lambda k: "p" * k + "q"),
    ("pqk", lambda k: "p" + "q" * k),
    ("pqkpqk1", lambda k: "p" + "q" * k + "p" + "q" * (k + 1)),
]


def _index_ranges(case, k):
    if case == "pkq":
        return range(1, k + 2), range(2, k + 2)
    if case == "pqk":
        return range(2, k + 2), range(1, k + 2)
    return range(2, 2 * k + 4), range(1, 2 * k + 4)


@pytest.mark.parametrize("case,wordfn", CASES)
def test_explicit_vertical_matches_string_odometers(case, wordfn):
    """Criterion: the placed string odometers equal the closed forms."""
    for k in range(1, 7):
        word = wordfn(k)
        plus = string_odometers(build_string(word, "vertical"))
        minus = string_odometers(build_string(reverse(word), "vertical",
                                              is_reversed=True))
        plus_rng, minus_rng = _index_ranges(case, k)
        for j in plus_rng:
            assert matrix_of_odometer(plus[j - 1]) == \
                explicit_vertical(case, k, j, "plus"), (case, k, j, "plus")
        for j in minus_rng:
            assert matrix_of_odometer(minus[j - 1]) == \
                explicit_vertical(case, k, j, "minus"), (case, k, j, "minus")


def test_explicit_vertical_examples():
    assert explicit_vertical("pkq", 3, 1, "plus") == [[-1, -1], [0, 0], [0, 0]]
    assert explicit_vertical("pqk", 3, 1, "minus") == [[-1, 0], [0, 0]]
    with pytest.raises(ValueError):
        explicit_vertical("pkq", 3, 9, "plus")
    with pytest.raises(ValueError):
        explicit_vertical("nope", 3, 1, "plus")


def _child_words(depth):
    out = set()
    for w in all_recursion_words(depth):
        p, q = binary_quadruple(w)[:2]
        out.add(p)
        out.add(q)
    return out


def test_stacked_strings_have_single_valued_extensions():
    words = {w for w in _child_words(3) if len(w) <= 8}
    for w in words:
        assert is_almost_palindrome(w)
        st = stack(w, "horizontal")
        plus, minus = stacked_odometers(st)
        odometer_union(plus + minus)  # raises on any clash
        wv = flip(w)
        st_v = stack(wv, "vertical")
        plus, minus = stacked_odometers(st_v)
        odometer_union(plus + minus)


def test_stacked_overlap_catalog_is_finite_and_connected():
    words = {w for w in _child_words(3) if len(w) <= 8}
    horizontal_offsets = set()
    for w in words:
        st = stack(w, "horizontal")
        for tp, tm in zip(st.plus.tiles, st.minus.tiles):
            horizontal_offsets.add((tp.letter, tm.letter,
                                    sub(tp.corner, tm.corner)))
        pts = st.points()
        assert _connected(pts)
    assert len(horizontal_offsets) <= 10


def _connected(pts):
    pts = set(pts)
    seen = {next(iter(pts))}
    stack_ = list(seen)
    while stack_:
        x, y = stack_.pop()
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb in pts and nb not in seen:
                seen.add(nb)
                stack_.append(nb)
    return seen == pts


def test_g_map_examples():
    w1, w2 = g_map("qp", "ppq")
    assert w1 == ((1, 0), (1, 0), (1, 0))
    # vertical side: i times the flipped horizontal walk
    assert all(c in ((0, 1), (-1, 0)) for c in w2)


def test_g_map_pairwise():
    assert g_map("qp", "pq")[0] == ((1, 0), (1, 0), (1, 0))
    assert g_map("pq", "pq")[0][:2] == ((1, 0), (0, 1))


def test_g_map_words_monotone():
    for w in _child_words(3):
        w1, w2 = g_map(w, flip(reverse(w)))
        assert all(c in ((1, 0), (0, 1)) for c in w1)
        assert w1[0] == (1, 0) and w1[-1] == (1, 0)
