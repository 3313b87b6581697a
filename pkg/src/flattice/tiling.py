"""Tiles, boundary words and the two tiling criteria.

A tile is a finite point set whose cells (unit squares with all four
corners in the set) form a simply connected region with a simple closed
boundary.  Boundary words walk that curve counterclockwise with letters
1, i, -1, -i represented as unit direction tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from flattice.geometry import Point, add, det2, neg, sub

RIGHT: Point = (1, 0)
UP: Point = (0, 1)
LEFT: Point = (-1, 0)
DOWN: Point = (0, -1)

LETTER_NAMES = {RIGHT: "1", UP: "i", LEFT: "-1", DOWN: "-i"}


class TileError(ValueError):
    pass


def cells_of(points: frozenset[Point] | set[Point]) -> set[Point]:
    """Lower-left corners of unit cells fully contained in the point set."""
    return {p for p in points
            if add(p, RIGHT) in points and add(p, UP) in points
            and add(p, (1, 1)) in points}


def boundary_word(points: Iterable[Point]) -> tuple[Point, ...]:
    """Counterclockwise boundary walk of the tile's cell region.

    The walk starts at the lower-left boundary vertex (lowest row, then
    leftmost) heading right.  Raises :class:`TileError` when the cell
    region is empty, has holes, or pinches to a point.
    """
    pts = frozenset(points)
    cells = cells_of(pts)
    if not cells:
        raise TileError("tile contains no full cell")
    # Directed boundary edges, counterclockwise around each cell; shared
    # edges cancel in opposite directions.
    edges: set[tuple[Point, Point]] = set()
    for c in cells:
        x, y = c
        square = [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)]
        for a, b in zip(square, square[1:] + square[:1]):
            if (b, a) in edges:
                edges.remove((b, a))
            else:
                edges.add((a, b))
    succ: dict[Point, Point] = {}
    for a, b in edges:
        if a in succ:
            raise TileError("boundary is not a simple closed curve")
        succ[a] = b
    start = min(succ, key=lambda p: (p[1], p[0]))
    walk: list[Point] = []
    cur = start
    while True:
        nxt = succ[cur]
        walk.append(sub(nxt, cur))
        cur = nxt
        if cur == start:
            break
    if len(walk) != len(edges):
        raise TileError("tile region is not simply connected")
    if sum(w[0] for w in walk) != 0 or sum(w[1] for w in walk) != 0:
        raise TileError("boundary word does not close")
    return tuple(walk)


def word_sum(w: Sequence[Point]) -> Point:
    return (sum(c[0] for c in w), sum(c[1] for c in w))


def hat(w: Sequence[Point]) -> tuple[Point, ...]:
    """Group inverse of a path word: reverse and negate."""
    return tuple(neg(c) for c in reversed(w))


def negate(w: Sequence[Point]) -> tuple[Point, ...]:
    return tuple(neg(c) for c in w)


def check_pseudo_square(w: Sequence[Point]) -> tuple[tuple[Point, ...], tuple[Point, ...]] | None:
    """Factor ``w = w1 * w2 * hat(w1) * hat(w2)`` if possible.

    Returns the first factorization found, scanning the split point from
    the walk's start, or None.
    """
    n = len(w)
    if n % 2 != 0:
        return None
    half = n // 2
    first, second = tuple(w[:half]), tuple(w[half:])
    for a in range(1, half):
        w1, w2 = first[:a], first[a:]
        if second == hat(w1) + hat(w2):
            return w1, w2
    return None


def check_almost_pseudo_square(
        w1: Sequence[Point], w2: Sequence[Point]) -> dict[str, str] | None:
    """Classify the two factors per the almost pseudo-square criterion.

    The condition applies to ``w1`` and ``-i * w2``: the word must use only
    the letters 1 and i, start and end with 1, and be (a) a palindrome,
    (b) ``1 1 i + palindrome + 1`` with every i followed by a 1, or
    (c) ``1 + palindrome + 1 1 1`` with every i followed by three 1s.
    Acceptance means the tile generates a regular almost tiling by
    ``(sum(w1) + i, sum(w2) - 1)``.
    """
    out: dict[str, str] = {}
    for name, u in (("w1", tuple(w1)), ("w2", tuple(_neg_i_mul(c) for c in w2))):
        case = _almost_square_case(u)
        if case is None:
            return None
        out[name] = case
    return out


def _neg_i_mul(c: Point) -> Point:
    # multiply by -i: (x, y) -> (y, -x)
    return (c[1], -c[0])


def _almost_square_case(u: tuple[Point, ...]) -> str | None:
    if not u or any(c not in (RIGHT, UP) for c in u):
        return None
    if u[0] != RIGHT or u[-1] != RIGHT:
        return None
    if u == tuple(reversed(u)):
        return "a"
    if (len(u) >= 4 and u[:3] == (RIGHT, RIGHT, UP)
            and u[3:-1] == tuple(reversed(u[3:-1]))
            and _i_followed_by_ones(u, 1)):
        return "b"
    if (len(u) >= 4 and u[-3:] == (RIGHT, RIGHT, RIGHT)
            and u[1:-3] == tuple(reversed(u[1:-3]))
            and _i_followed_by_ones(u, 3)):
        return "c"
    return None


def _i_followed_by_ones(u: tuple[Point, ...], count: int) -> bool:
    for idx, c in enumerate(u):
        if c == UP:
            tail = u[idx + 1: idx + 1 + count]
            if len(tail) < count or any(t != RIGHT for t in tail):
                return False
    return True


@dataclass
class TilingReport:
    uncovered_points: list[Point] = field(default_factory=list)
    overlapping_cell_pairs: list[tuple[Point, tuple[Point, ...]]] = field(default_factory=list)
    edge_adjacencies: list[tuple[Point, Point]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.uncovered_points and not self.overlapping_cell_pairs


def _translate_offsets(pts: frozenset[Point], v1: Point, v2: Point,
                       window: tuple[int, int, int, int]) -> list[Point]:
    """Lattice offsets whose translate could intersect the padded window."""
    minx, miny, maxx, maxy = _bbox(pts)
    x0, y0, x1, y1 = window
    box = [(x0 - maxx - 2, y0 - maxy - 2), (x1 - minx + 2, y0 - maxy - 2),
           (x0 - maxx - 2, y1 - miny + 2), (x1 - minx + 2, y1 - miny + 2)]
    d = det2(v1, v2)
    if d == 0:
        raise ValueError("lattice vectors are collinear")
    k1s = [Fraction(det2(c, v2), d) for c in box]
    k2s = [Fraction(det2(v1, c), d) for c in box]
    offs = []
    for k1 in range(int(min(k1s)) - 1, int(max(k1s)) + 2):
        for k2 in range(int(min(k2s)) - 1, int(max(k2s)) + 2):
            offs.append((k1 * v1[0] + k2 * v2[0], k1 * v1[1] + k2 * v2[1]))
    return offs


def place_tiling(points: Iterable[Point], v1: Point, v2: Point,
                 window: tuple[int, int, int, int],
                 adjacency: bool = False) -> TilingReport:
    """Translate a tile over the lattice of (v1, v2) and audit a window.

    Reports window points that are not a corner of any placed cell and
    cells claimed by more than one translate.  With ``adjacency=True`` it
    also lists pairs of translates sharing a grid edge.  Translate ranges
    are padded so boundary effects cannot hide gaps inside the window.
    """
    import numpy as np

    pts = frozenset(points)
    base_cells = sorted(cells_of(pts))
    if not base_cells:
        raise TileError("tile contains no full cell")
    x0, y0, x1, y1 = window
    offs = _translate_offsets(pts, v1, v2, window)
    minx, miny, maxx, maxy = _bbox(pts)
    gx0, gy0 = x0 + minx - maxx - 3, y0 + miny - maxy - 3
    gx1, gy1 = x1 + maxx - minx + 3, y1 + maxy - miny + 3
    w, h = gx1 - gx0 + 1, gy1 - gy0 + 1
    count = np.zeros((h, w), dtype=np.int32)
    cell_x = np.array([c[0] for c in base_cells])
    cell_y = np.array([c[1] for c in base_cells])
    used_offs = []
    for off in offs:
        xs = cell_x + off[0] - gx0
        ys = cell_y + off[1] - gy0
        keep = (xs >= 0) & (xs < w) & (ys >= 0) & (ys < h)
        if not keep.any():
            continue
        used_offs.append(off)
        np.add.at(count, (ys[keep], xs[keep]), 1)

    report = TilingReport()
    covered = count > 0
    corners = np.zeros((h + 1, w + 1), dtype=bool)
    for dy in (0, 1):
        for dx in (0, 1):
            corners[dy:h + dy, dx:w + dx] |= covered
    for y in range(y0, y1 + 1):
        for x in range(x0, x1 + 1):
            if not corners[y - gy0, x - gx0]:
                report.uncovered_points.append((x, y))

    over_ys, over_xs = np.nonzero(count > 1)
    if len(over_ys):
        overlap_cells = {(int(x) + gx0, int(y) + gy0) for x, y in zip(over_xs, over_ys)}
        owners: dict[Point, list[Point]] = {c: [] for c in overlap_cells}
        cellset = frozenset(base_cells)
        for off in used_offs:
            for c in overlap_cells:
                if sub(c, off) in cellset:
                    owners[c].append(off)
        for c in sorted(overlap_cells):
            report.overlapping_cell_pairs.append((c, tuple(owners[c])))

    if adjacency:
        placed = {off: frozenset(add(p, off) for p in pts) for off in used_offs}
        offsets = sorted(placed)
        for i, a in enumerate(offsets):
            for b in offsets[i + 1:]:
                if _share_edge(placed[a], placed[b]):
                    report.edge_adjacencies.append((a, b))
    return report


def _bbox(pts: frozenset[Point]) -> tuple[int, int, int, int]:
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return min(xs), min(ys), max(xs), max(ys)


def _share_edge(a: frozenset[Point], b: frozenset[Point]) -> bool:
    common = a & b
    for p in common:
        if add(p, RIGHT) in common or add(p, UP) in common:
            return True
    return False
