"""Binary word recursion and almost-palindrome structure."""

import pytest

from flattice.words import (WordError, almost_palindrome_parts,
                            binary_quadruple, is_almost_palindrome, reverse)


def all_words(depth):
    level = [()]
    for _ in range(depth):
        level = [w + (c,) for w in level for c in (1, 2, 3)]
        yield from level


def test_seed_and_degenerate_examples():
    assert binary_quadruple(()) == ("qqp", "qp", "p", "q")
    assert binary_quadruple((3,)) == ("qpqpp", "qpp", "p", "qp")
    assert binary_quadruple((2,)) == ("qqqqp", "qqqp", "qqp", "q")


def test_degenerate_families():
    for k in range(1, 6):
        quad = binary_quadruple((3,) * k)
        assert quad == ("q" + "p" * k + "q" + "p" * (k + 1),
                        "q" + "p" * (k + 1), "p", "q" + "p" * k)
        quad2 = binary_quadruple((2,) * k)
        assert quad2 == ("q" * (2 * k + 2) + "p", "q" * (2 * k + 1) + "p",
                         "q" * (2 * k) + "p", "q")


def test_almost_palindrome_parts():
    assert almost_palindrome_parts("qp") == ("q", "", "p")
    assert almost_palindrome_parts("qqp") == ("q", "q", "p")
    assert almost_palindrome_parts("qpqpp") == ("q", "pqp", "p")
    with pytest.raises(WordError):
        almost_palindrome_parts("q")
    with pytest.raises(WordError):
        almost_palindrome_parts("qpqq")


def test_children_are_almost_palindromes_depth_6():
    for w in all_words(6):
        quad = binary_quadruple(w)
        assert is_almost_palindrome(quad[0]), (w, quad[0])
        assert is_almost_palindrome(quad[1]), (w, quad[1])


def test_words_start_q_end_p():
    for w in all_words(5):
        for part in binary_quadruple(w)[:2]:
            assert part[0] == "q" and part[-1] == "p"


def test_prefix_reversal_relations():
    # The stated relations hold verbatim when the word has an even number
    # of 1-letters; odd counts mirror the concatenation order, so the same
    # relations hold for the reversed words.
    for w in all_words(6):
        p_t, q_t = binary_quadruple(w)[:2]
        if sum(1 for c in w if c == 1) % 2 == 1:
            p_t, q_t = reverse(p_t), reverse(q_t)
        n = min(len(p_t), len(q_t))
        assert p_t[1:n] == reverse(q_t)[1:n]
        m = min(len(p_t), 2 * len(q_t))
        assert p_t[1:m] == reverse(q_t + q_t)[1:m]
