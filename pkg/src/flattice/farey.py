"""Parity-aware Farey recursion on the hyperbola and its matrix data.

Reduced fractions 0 <= n/d <= 1 are *even* when n + d is even, else *odd*.
An odd p and even q produce a child pair C(p, q); quadruples
(p1, q1, p2, q2) with (p1, q1) = C(p2, q2) form a ternary tree rooted at
(1/2, 1/3, 0/1, 1/1), indexed by recursion words over {1, 2, 3}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from flattice.geometry import Point, det2

Word = tuple[int, ...]


@dataclass(frozen=True)
class Frac:
    """A reduced fraction n/d with 0 <= n/d <= 1."""

    n: int
    d: int

    def __post_init__(self) -> None:
        if self.d < 1 or self.n < 0 or self.n > self.d:
            raise ValueError(f"fraction {self.n}/{self.d} out of [0, 1]")
        if math.gcd(self.n, self.d) != 1:
            raise ValueError(f"fraction {self.n}/{self.d} is not reduced")

    @property
    def is_even(self) -> bool:
        return (self.n + self.d) % 2 == 0

    @property
    def is_odd(self) -> bool:
        return not self.is_even

    def as_fraction(self) -> Fraction:
        return Fraction(self.n, self.d)

    def __str__(self) -> str:
        return f"{self.n}/{self.d}"

    @classmethod
    def parse(cls, text: str) -> "Frac":
        n, _, d = text.partition("/")
        return cls(int(n), int(d))


@dataclass(frozen=True)
class Quad:
    """A Farey quadruple: child pair (p1, q1), parent pair (p2, q2)."""

    p1: Frac
    q1: Frac
    p2: Frac
    q2: Frac

    def __post_init__(self) -> None:
        if not (self.p1.is_odd and self.p2.is_odd and self.q1.is_even and self.q2.is_even):
            raise ValueError(f"quadruple {self} violates parity layout")

    def __str__(self) -> str:
        return f"({self.p1}, {self.q1}, {self.p2}, {self.q2})"


BASE_QUAD = Quad(Frac(1, 2), Frac(1, 3), Frac(0, 1), Frac(1, 1))


def child_pair(p: Frac, q: Frac) -> tuple[Frac, Frac]:
    """The odd-even child pair of an odd p and even q."""
    if not p.is_odd:
        raise ValueError(f"{p} must be odd")
    if not q.is_even:
        raise ValueError(f"{q} must be even")
    child_odd = Frac(q.n + p.n, q.d + p.d)
    child_even = Frac(2 * p.n + q.n, 2 * p.d + q.d)
    assert child_odd.is_odd and child_even.is_even
    return child_odd, child_even


def child_quad(q: Quad, kind: int) -> Quad:
    """Type 1, 2 or 3 child quadruple."""
    if kind == 1:
        parents = (q.p1, q.q1)
    elif kind == 2:
        parents = (q.p1, q.q2)
    elif kind == 3:
        parents = (q.p2, q.q1)
    else:
        raise ValueError(f"child type must be 1, 2 or 3, got {kind}")
    c_odd, c_even = child_pair(*parents)
    return Quad(c_odd, c_even, parents[0], parents[1])


def expand(word: Word) -> Quad:
    """Quadruple reached from the base by applying the word's child types."""
    q = BASE_QUAD
    for letter in word:
        q = child_quad(q, letter)
    return q


def rotate(f: Frac) -> Frac:
    """The involution R: odd n/d -> (d-n)/(d+n), even -> halves thereof."""
    if f.is_odd:
        return Frac(f.d - f.n, f.d + f.n)
    return Frac((f.d - f.n) // 2, (f.n + f.d) // 2)


def flip23(word: Word) -> Word:
    """Rotation on recursion words: swap letters 2 and 3."""
    return tuple({2: 3, 3: 2}.get(c, c) for c in word)


def rotate_quadruple(q: Quad) -> Quad:
    """R on quadruples: componentwise rotation with pair swaps."""
    return Quad(rotate(q.q1), rotate(q.p1), rotate(q.q2), rotate(q.p2))


def iter_tree(max_depth: int, start: Quad = BASE_QUAD) -> Iterator[tuple[Word, Quad]]:
    """Breadth-first (word, quadruple) pairs up to and including max_depth."""
    level: list[tuple[Word, Quad]] = [((), start)]
    for _ in range(max_depth + 1):
        for word, quad in level:
            yield word, quad
        level = [(w + (c,), child_quad(q, c)) for w, q in level for c in (1, 2, 3)]


def word_w1(word: Word) -> int:
    """Number of 1-letters (orientation selector for decompositions)."""
    return sum(1 for c in word if c == 1)


def t_value(f: Frac) -> int:
    """T(n, d) = d^2 + 2dn - n^2, positive on [0, 1]."""
    t = f.d * f.d + 2 * f.d * f.n - f.n * f.n
    if t <= 0:
        raise ValueError(f"T({f}) = {t} must be positive")
    return t


@dataclass(frozen=True)
class MatrixData:
    """Quadratic growth matrix and lattice data of a reduced fraction."""

    fraction: Frac
    m: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]
    t: int
    v1: Point           # kernel generator, doubled when the fraction is odd
    v1_raw: Point       # undoubled kernel generator (d, n)
    v1_doubled: bool
    v2: Point
    a1: Point
    a2: Point

    def lattice_det(self) -> int:
        return abs(det2(self.v1, self.v2))


def matrix_data(f: Frac) -> MatrixData:
    """M(n,d), T(n,d), lattice vectors and affine terms, exact."""
    t = t_value(f)
    n, d = f.n, f.d
    m = ((Fraction(-n * n, t), Fraction(d * n, t)),
         (Fraction(d * n, t), Fraction(-d * d, t)))
    v1_raw = (d, n)
    doubled = f.is_odd
    v1 = (2 * d, 2 * n) if doubled else v1_raw
    v2 = (n - d, n + d)
    a2 = (n, -d)
    return MatrixData(f, m, t, v1, v1_raw, doubled, v2, (0, 0), a2)


def lattice_det(f: Frac) -> int:
    """det L'(n/d): 2T when n/d is odd, T when even."""
    return matrix_data(f).lattice_det()


def hyperbola_point(f: Frac) -> tuple[Fraction, Fraction]:
    """Exact (t, c) with t^2 + (1-t)^2 = c^2 labeling the fraction."""
    t = t_value(f)
    return Fraction(f.d * f.d - f.n * f.n, t), Fraction(-(f.d * f.d + f.n * f.n), t)


Matrix2 = tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]


def gamma_membership(a: Matrix2, search_radius: int | None = None) -> str:
    """Classify a symmetric matrix against the cone surface of Gamma_F.

    A symmetric matrix is integer superharmonic iff some integer apex
    ``(s - t, s + t)`` dominates it: the difference matrix must be positive
    semidefinite.  In apex coordinates that reads ``c <= 0`` and
    ``c^2 >= (x - apex)^2`` for the nearest apex; equality means boundary.
    """
    if a[0][1] != a[1][0]:
        raise ValueError("matrix must be symmetric")
    ca = a[0][0] - a[1][1]
    cb = 2 * a[0][1]
    cc = a[0][0] + a[1][1]
    if cc > 0:
        return "outside"
    if search_radius is None:
        search_radius = math.ceil(abs(ca) + abs(cb)) + 2
    best: Fraction | None = None
    for s in range(-search_radius, search_radius + 1):
        for t in range(-search_radius, search_radius + 1):
            apex = (s - t, s + t)
            d2 = (ca - apex[0]) ** 2 + (cb - apex[1]) ** 2
            if best is None or d2 < best:
                best = Fraction(d2)
    assert best is not None
    c2 = cc * cc
    if c2 > best:
        return "inside"
    if c2 == best:
        return "boundary"
    return "outside"


def matrix_of(f: Frac) -> Matrix2:
    return matrix_data(f).m


def find_word(f: Frac) -> tuple[Word, str]:
    """Locate a fraction in the tree: its word and role ('odd' or 'even').

    Every reduced fraction strictly between 0 and 1 appears exactly once as
    a child in the recursion tree.
    """
    if f.d == 1:
        raise ValueError("endpoints 0/1 and 1/1 are not children in the tree")
    target_d = f.d
    level: list[tuple[Word, Quad]] = [((), BASE_QUAD)]
    while level:
        nxt: list[tuple[Word, Quad]] = []
        for word, quad in level:
            if quad.p1 == f:
                return word, "odd"
            if quad.q1 == f:
                return word, "even"
            for c in (1, 2, 3):
                child = child_quad(quad, c)
                # Denominators strictly increase down the tree.
                if min(child.p1.d, child.q1.d) <= target_d:
                    nxt.append((word + (c,), child))
        level = nxt
    raise ValueError(f"{f} not found in the recursion tree")


def fractions_with_det_at_most(bound: int) -> list[tuple[Frac, Word, str]]:
    """All tree fractions (0 < n/d < 1) with det L' <= bound, sorted.

    Sorted by (det, numerator, denominator).  Completeness comes from a
    direct scan over denominators (det >= d^2 for every reduced fraction).
    """
    out = []
    dmax = math.isqrt(bound)
    for d in range(2, dmax + 1):
        for n in range(1, d):
            if math.gcd(n, d) != 1:
                continue
            f = Frac(n, d)
            det = lattice_det(f)
            if det <= bound:
                word, role = find_word(f)
                out.append((f, word, role))
    out.sort(key=lambda t: (lattice_det(t[0]), t[0].n, t[0].d))
    return out


def gallery_quadruples(min_det: int, max_det: int) -> list[Quad]:
    """Quadruples of odd children with min_det <= det L'(p1) <= max_det."""
    rows = []
    for f, word, role in fractions_with_det_at_most(max_det):
        if role != "odd":
            continue
        det = lattice_det(f)
        if det < min_det:
            continue
        rows.append((det, f.n, expand(word)))
    rows.sort(key=lambda r: (r[0], r[1]))
    return [q for _, _, q in rows]
