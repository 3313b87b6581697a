"""The F-lattice and its generalizations F^(k): edges, Laplacian, burning test.

The F^(k) lattice is Z^2 with directed edges ``(x +- e1, x)`` when
``x1 + x2 = 0 (mod k)`` and ``(x +- e2, x)`` otherwise.  ``k = 2`` is the
F-lattice proper.  A function g is integer superharmonic when its Laplacian
``sum over in-edges (y,x) of g(y) - g(x)`` is nonpositive everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from flattice.geometry import Point

Values = Mapping[Point, int] | Callable[[Point], int]


def in_neighbors(x: Point, k: int = 2) -> tuple[Point, Point]:
    """Tails of the two edges into ``x`` on the F^(k) lattice."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    x1, x2 = x
    if (x1 + x2) % k == 0:
        return ((x1 + 1, x2), (x1 - 1, x2))
    return ((x1, x2 + 1), (x1, x2 - 1))


def out_neighbors(x: Point, k: int = 2) -> tuple[Point, ...]:
    """Heads of the edges out of ``x`` (where a toppling at x sends chips)."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    x1, x2 = x
    outs = []
    for y in ((x1 + 1, x2), (x1 - 1, x2), (x1, x2 + 1), (x1, x2 - 1)):
        if x in in_neighbors(y, k):
            outs.append(y)
    return tuple(outs)


def _value(f: Values, p: Point) -> int:
    if callable(f):
        return f(p)
    return f[p]


def laplacian_at(f: Values, x: Point, k: int = 2) -> int:
    """Directed Laplacian: sum of ``f(y) - f(x)`` over the two in-neighbors."""
    fx = _value(f, x)
    return sum(_value(f, y) - fx for y in in_neighbors(x, k))


@dataclass
class LocalPattern:
    """Dense integer values on a finite window anchored at ``origin``."""

    origin: Point
    width: int
    height: int
    values: list[list[int]]  # rows indexed by y offset, then x offset

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("window dimensions must be positive")
        if len(self.values) != self.height or any(len(r) != self.width for r in self.values):
            raise ValueError("values shape does not match width/height")

    def __contains__(self, p: Point) -> bool:
        dx, dy = p[0] - self.origin[0], p[1] - self.origin[1]
        return 0 <= dx < self.width and 0 <= dy < self.height

    def __getitem__(self, p: Point) -> int:
        if p not in self:
            raise KeyError(p)
        return self.values[p[1] - self.origin[1]][p[0] - self.origin[0]]

    def __setitem__(self, p: Point, v: int) -> None:
        if p not in self:
            raise KeyError(p)
        self.values[p[1] - self.origin[1]][p[0] - self.origin[0]] = v

    def points(self) -> Iterable[Point]:
        ox, oy = self.origin
        for dy in range(self.height):
            for dx in range(self.width):
                yield (ox + dx, oy + dy)

    def items(self) -> Iterable[tuple[Point, int]]:
        for p in self.points():
            yield p, self[p]

    @classmethod
    def from_dict(cls, d: Mapping[Point, int], fill: int = 0) -> "LocalPattern":
        xs = [p[0] for p in d]
        ys = [p[1] for p in d]
        ox, oy = min(xs), min(ys)
        w, h = max(xs) - ox + 1, max(ys) - oy + 1
        vals = [[fill] * w for _ in range(h)]
        for (x, y), v in d.items():
            vals[y - oy][x - ox] = v
        return cls((ox, oy), w, h, vals)


def burning_test(s: LocalPattern | Mapping[Point, int], k: int = 2) -> bool:
    """Allowed/forbidden test by iterated deletion on a finite window.

    Repeatedly delete any vertex whose value is at least its in-degree among
    the remaining window vertices (everything outside the window counts as
    already deleted).  Returns True iff the window empties, i.e. no nonempty
    induced subgraph of the window is forbidden.  The result is independent
    of deletion order.
    """
    if isinstance(s, LocalPattern):
        values = dict(s.items())
    else:
        values = dict(s)
    remaining = set(values)
    indeg = {p: sum(q in remaining for q in in_neighbors(p, k)) for p in remaining}
    queue = [p for p in remaining if values[p] >= indeg[p]]
    while queue:
        p = queue.pop()
        if p not in remaining:
            continue
        remaining.discard(p)
        for y in out_neighbors(p, k):
            if y in remaining:
                indeg[y] -= 1
                if values[y] >= indeg[y]:
                    queue.append(y)
    return not remaining


def turan_q(k: int, n: int) -> int:
    """Edge count of the k-partite Turan graph of order n (exact)."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    s = n % k
    num = (k - 1) * (n * n - s * s)
    if num % (2 * k) != 0:
        raise ArithmeticError("turan_q: non-integral intermediate")
    return num // (2 * k) + s * (s - 1) // 2


def _turan_q_signed(k: int, n: int) -> int:
    # Same formula for negative arguments (s = n mod k taken in [0, k)).
    s = n % k
    num = (k - 1) * (n * n - s * s)
    assert num % (2 * k) == 0
    return num // (2 * k) + s * (s - 1) // 2


def fk_base_functions(k: int) -> tuple[Callable[[Point], int], ...]:
    """The three quadratic-growth base functions r1, r2, r3 for F^(k)."""

    def r1(p: Point) -> int:
        return p[1] * (p[1] + 1) // 2

    def r2(p: Point) -> int:
        return _turan_q_signed(k, p[0] + p[1])

    def r3(p: Point) -> int:
        return (p[0] * (p[0] + 1) + p[1] * (p[1] + 1)) // 2

    return r1, r2, r3


def fk_identity_check(k: int, window: tuple[int, int, int, int]) -> bool:
    """Check the three F^(k) Laplacian identities at every interior point.

    ``window`` is ``(x_min, y_min, x_max, y_max)`` inclusive; interior
    points are those whose in-neighbors stay inside.
    """
    r1, r2, r3 = fk_base_functions(k)
    x0, y0, x1, y1 = window
    ok = True
    for y in range(y0 + 1, y1):
        for x in range(x0 + 1, x1):
            p = (x, y)
            want = 1 if (x + y) % k != 0 else 0
            if laplacian_at(r1, p, k) != want:
                ok = False
            if laplacian_at(r2, p, k) != want:
                ok = False
            if laplacian_at(r3, p, k) != 1:
                ok = False
    return ok
