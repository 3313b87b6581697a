"""Binary words over {p, q} paired to the Farey recursion.

Each reduced fraction in the tree carries a binary word; children are built
by concatenation, in an order set by the parity of the number of 1-letters
in the recursion word.  All generated words are almost palindromes: a
palindrome core framed by one letter on each side.
"""

from __future__ import annotations

from flattice.farey import Word, word_w1

SEED = ("qqp", "qp", "p", "q")


class WordError(ValueError):
    pass


def _child(p: str, q: str, ones_even: bool) -> tuple[str, str]:
    if ones_even:
        return q + q + p, q + p
    return p + q + q, p + q


def binary_quadruple(word: Word) -> tuple[str, str, str, str]:
    """Binary word quadruple (odd child, even child, odd parent, even parent)."""
    quad = SEED
    for i, letter in enumerate(word):
        p_new, q_new, p_cur, q_cur = quad
        ones_even = word_w1(word[: i + 1]) % 2 == 0
        if letter == 1:
            pair = _child(p_new, q_new, ones_even)
            parents = (p_new, q_new)
        elif letter == 2:
            pair = _child(p_new, q_cur, ones_even)
            parents = (p_new, q_cur)
        elif letter == 3:
            pair = _child(p_cur, q_new, ones_even)
            parents = (p_cur, q_new)
        else:
            raise WordError(f"recursion letters must be 1, 2 or 3, got {letter}")
        quad = (pair[0], pair[1], parents[0], parents[1])
    return quad


def horizontal_word(word: Word, role: str) -> str:
    """w_h of the odd or even child of the quadruple at ``word``."""
    quad = binary_quadruple(word)
    return quad[0] if role == "odd" else quad[1]


def flip(w: str) -> str:
    """Swap the letters p and q."""
    return w.translate(str.maketrans("pq", "qp"))


def reverse(w: str) -> str:
    return w[::-1]


def is_palindrome(w: str) -> bool:
    return w == w[::-1]


def almost_palindrome_parts(w: str) -> tuple[str, str, str]:
    """Split ``w = first + core + last`` with a palindrome core."""
    if len(w) < 2:
        raise WordError(f"word too short for an almost palindrome: {w!r}")
    first, core, last = w[0], w[1:-1], w[-1]
    if not is_palindrome(core):
        raise WordError(f"core of {w!r} is not a palindrome")
    return first, core, last


def is_almost_palindrome(w: str) -> bool:
    return len(w) >= 2 and is_palindrome(w[1:-1])
