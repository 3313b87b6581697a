"""Zero-one boundary strings: placed degenerate tiles carrying odometer data.

The two degenerate tiles are the zero-tile (letter ``p``, 2x3 points) and the
one-tile (letter ``q``, 2x2 points).  Strings place them along a direction
with fixed corner offsets; stacked strings pair a string with the reversed
string of the reversed word.  In horizontal stacked strings a one-tile that
follows a one-tile is enlarged by two extra points to close the only gap
that would otherwise be too wide.

Corner offsets are determined by the tile being stepped *into*; affine slope
steps between consecutive odometers are determined by the tile stepped
*out of*.  Both conventions were fixed against the explicit odometer
formulas for the degenerate word families, which this module also provides
as an independent oracle (:func:`explicit_vertical`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

from flattice.geometry import Point, add, imul, sub
from flattice.words import reverse, flip

Orientation = Literal["horizontal", "vertical"]

# Degenerate tiles, corner at the origin.
ZERO_TILE = frozenset({(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)})
ONE_TILE = frozenset({(0, 0), (1, 0), (0, 1), (1, 1)})
ONE_TILE_DOUBLED = ONE_TILE | {(-1, 1), (1, -1)}

# Lattice vectors of the endpoint fractions 0/1 (p) and 1/1 (q); the kernel
# generator of 0/1 is doubled.
VP1: Point = (2, 0)
VP2: Point = (-1, 1)
VQ1: Point = (1, 1)
VQ2: Point = (0, 2)

# Affine terms a_2 = M v_2 for the two endpoint fractions.
AP2: Point = (0, -1)
AQ2: Point = (1, -1)

# Canonical odometer value tables.
ZERO_ODOMETER = {(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): 0, (0, 2): -1, (1, 2): -1}
ONE_ODOMETER = {(0, 0): 0, (1, 0): 0, (0, 1): -1, (1, 1): 0}
ONE_ODOMETER_DOUBLED = {**ONE_ODOMETER, (-1, 1): -2, (1, -1): 0}

# Same tables translated by the negated affine term (used along reversed
# strings and handy in tests).
ZERO_ODOMETER_HAT = {(0, 0): -1, (1, 0): -1, (0, 1): 0, (1, 1): 0, (0, 2): 0, (1, 2): 0}
ONE_ODOMETER_HAT = {(0, 0): 0, (1, 0): -1, (0, 1): 0, (1, 1): 0}


class StringError(ValueError):
    pass


class CompatibilityError(RuntimeError):
    """Odometer data cannot be glued consistently (indicates a bug)."""


@dataclass(frozen=True)
class PlacedTile:
    letter: str          # 'p' or 'q'
    corner: Point
    doubled: bool = False

    def points(self) -> frozenset[Point]:
        base = self.base_points()
        cx, cy = self.corner
        return frozenset((x + cx, y + cy) for x, y in base)

    def base_points(self) -> frozenset[Point]:
        if self.letter == "p":
            return ZERO_TILE
        return ONE_TILE_DOUBLED if self.doubled else ONE_TILE


@dataclass(frozen=True)
class BoundaryString:
    word: str
    orientation: Orientation
    is_reversed: bool
    tiles: tuple[PlacedTile, ...]

    def points(self) -> frozenset[Point]:
        out: set[Point] = set()
        for t in self.tiles:
            out |= t.points()
        return frozenset(out)


@dataclass(frozen=True)
class StackedString:
    word: str
    orientation: Orientation
    plus: BoundaryString
    minus: BoundaryString

    def points(self) -> frozenset[Point]:
        return self.plus.points() | self.minus.points()


# Corner offset of the tile stepped into, keyed by (orientation, reversed,
# previous letter, current letter).
_OFFSETS = {
    ("horizontal", False): {
        ("p", "p"): VP1, ("q", "p"): VP1,
        ("p", "q"): VQ1, ("q", "q"): VQ1,
    },
    ("horizontal", True): {
        ("p", "q"): add(VQ1, (1, 0)),
        ("p", "p"): VP1,
        ("q", "p"): sub(VP1, (1, 0)),
        ("q", "q"): VQ1,
    },
    ("vertical", False): {
        ("p", "p"): VP2, ("q", "p"): VP2,
        ("p", "q"): VQ2, ("q", "q"): VQ2,
    },
    ("vertical", True): {
        ("p", "q"): add(VP2, (0, 1)),
        ("p", "p"): VP2,
        ("q", "p"): sub(VQ2, (0, 1)),
        ("q", "q"): VQ2,
    },
}

_START_LETTER = {
    ("horizontal", False): "q",
    ("horizontal", True): "p",
    ("vertical", False): "p",
    ("vertical", True): "q",
}


def build_string(word: str, orientation: Orientation, is_reversed: bool = False,
                 start_corner: Point = (0, 0)) -> BoundaryString:
    """Place the tiles of a zero-one boundary string (no gap doubling)."""
    if not word or any(c not in "pq" for c in word):
        raise StringError(f"invalid binary word {word!r}")
    want = _START_LETTER[(orientation, is_reversed)]
    if word[0] != want:
        raise StringError(
            f"{'reversed ' if is_reversed else ''}{orientation} strings start "
            f"with {want!r}, got {word!r}")
    offsets = _OFFSETS[(orientation, is_reversed)]
    tiles = [PlacedTile(word[0], start_corner)]
    for prev, cur in zip(word, word[1:]):
        corner = add(tiles[-1].corner, offsets[(prev, cur)])
        tiles.append(PlacedTile(cur, corner))
    return BoundaryString(word, orientation, is_reversed, tuple(tiles))


def _apply_gap_doubling(s: BoundaryString) -> BoundaryString:
    tiles = list(s.tiles)
    for i in range(1, len(tiles)):
        if tiles[i - 1].letter == "q" and tiles[i].letter == "q":
            tiles[i] = PlacedTile("q", tiles[i].corner, doubled=True)
    return BoundaryString(s.word, s.orientation, s.is_reversed, tuple(tiles))


# c(first plus tile) - c(first minus tile) for stacked strings.
STACK_OFFSET = {
    "horizontal": add(VP2, (0, 1)),   # (-1, 2)
    "vertical": (-VQ1[0], -VQ1[1]),   # (-1, -1)
}


def stack(word: str, orientation: Orientation) -> StackedString:
    """Stacked boundary string: the word's string plus its reversal."""
    from flattice.words import is_almost_palindrome

    if not is_almost_palindrome(word):
        raise StringError(f"{word!r} is not an almost palindrome")
    plus = build_string(word, orientation, False, (0, 0))
    minus_start = sub((0, 0), STACK_OFFSET[orientation])
    minus = build_string(reverse(word), orientation, True, minus_start)
    if orientation == "horizontal":
        plus = _apply_gap_doubling(plus)
        minus = _apply_gap_doubling(minus)
    return StackedString(word, orientation, plus, minus)


@dataclass(frozen=True)
class StringOdometer:
    """Odometer on one placed tile: canonical table plus an affine part."""

    tile: PlacedTile
    affine: Point      # linear coefficients, applied in absolute coordinates
    constant: int

    def values(self) -> dict[Point, int]:
        table = _canonical_table(self.tile)
        cx, cy = self.tile.corner
        a1, a2 = self.affine
        return {(x + cx, y + cy): v + a1 * (x + cx) + a2 * (y + cy) + self.constant
                for (x, y), v in table.items()}

    def value_at(self, p: Point) -> int:
        table = _canonical_table(self.tile)
        rel = sub(p, self.tile.corner)
        return table[rel] + self.affine[0] * p[0] + self.affine[1] * p[1] + self.constant

    def slope(self) -> tuple:
        """Average discrete gradient over the tile's full cells, exact."""
        from fractions import Fraction

        vals = self.values()
        pts = set(vals)
        cells = [p for p in pts if all(add(p, d) in pts for d in ((1, 0), (0, 1), (1, 1)))]
        sx = sy = Fraction(0)
        for c in cells:
            x, y = c
            sx += Fraction(vals[(x + 1, y)] - vals[(x, y)]
                           + vals[(x + 1, y + 1)] - vals[(x, y + 1)], 2)
            sy += Fraction(vals[(x, y + 1)] - vals[(x, y)]
                           + vals[(x + 1, y + 1)] - vals[(x + 1, y)], 2)
        n = len(cells)
        return (sx / n, sy / n)


def _canonical_table(tile: PlacedTile) -> dict[Point, int]:
    if tile.letter == "p":
        return ZERO_ODOMETER
    return ONE_ODOMETER_DOUBLED if tile.doubled else ONE_ODOMETER


def _affine_of(letter: str, orientation: Orientation) -> Point:
    if orientation == "horizontal":
        return (0, 0)
    return AP2 if letter == "p" else AQ2


def _slope_step(prev: str, cur: str, orientation: Orientation,
                is_reversed: bool) -> Point:
    step = _affine_of(prev, orientation)
    if is_reversed:
        perp = "vertical" if orientation == "horizontal" else "horizontal"
        step = add(step, sub(_affine_of(prev, perp), _affine_of(cur, perp)))
    return step


def string_odometers(s: BoundaryString, seed_slope: Point = (0, 0),
                     seed_constant: int = 0) -> list[StringOdometer]:
    """Odometer sequence respecting a boundary string, from a seed.

    Consecutive overlapping tiles must agree exactly on shared points.
    Across the two kinds of unit gaps the values are equal (horizontal) or
    drop by one (vertical one-one pairs).
    """
    out = [StringOdometer(s.tiles[0], seed_slope, seed_constant)]
    for prev_tile, cur_tile in zip(s.tiles, s.tiles[1:]):
        prev_od = out[-1]
        affine = add(prev_od.affine,
                     _slope_step(prev_tile.letter, cur_tile.letter,
                                 s.orientation, s.is_reversed))
        constant = _solve_constant(prev_od, cur_tile, affine, s.orientation)
        out.append(StringOdometer(cur_tile, affine, constant))
    return out


def _solve_constant(prev_od: StringOdometer, cur: PlacedTile, affine: Point,
                    orientation: Orientation) -> int:
    prev_pts = prev_od.tile.points()
    cur_pts = cur.points()
    shared = prev_pts & cur_pts
    table = _canonical_table(cur)

    def raw(p: Point) -> int:
        rel = sub(p, cur.corner)
        return table[rel] + affine[0] * p[0] + affine[1] * p[1]

    candidates: set[int] = set()
    if shared:
        for p in shared:
            candidates.add(prev_od.value_at(p) - raw(p))
    else:
        pairs = [(a, b) for a in prev_pts for b in cur_pts
                 if abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1]
        if not pairs:
            raise CompatibilityError("consecutive tiles neither overlap nor abut")
        if orientation == "vertical":
            # One-one gap: the values continue with a uniform drop equal to
            # the steeper of the previous tile's column steps.  This is the
            # affine covariant form of the fixed unit drop the gluing shows
            # in canonical coordinates.
            tops = sorted({a for a, _ in pairs})
            drop = min(prev_od.value_at(a) - prev_od.value_at((a[0], a[1] - 1))
                       for a in tops)
            for a, b in pairs:
                candidates.add(prev_od.value_at(a) + drop - raw(b))
        else:
            for a, b in pairs:
                candidates.add(prev_od.value_at(a) - raw(b))
    if len(candidates) != 1:
        raise CompatibilityError(
            f"inconsistent gluing constants {sorted(candidates)} between "
            f"{prev_od.tile} and {cur}")
    return candidates.pop()


def stacked_odometers(s: StackedString, seed_slope: Point = (0, 0),
                      seed_constant: int = 0,
                      ) -> tuple[list[StringOdometer], list[StringOdometer]]:
    """Common extension over a stacked string: plus and minus sequences.

    The plus string is seeded as given; the minus string's affine part is
    solved so that the two sequences agree on every shared point.  Adding
    an affine function to a string's seed shifts the whole sequence by it,
    so the relative part can be fitted from the shared points; when those
    are collinear the perpendicular slope offsets of the two endpoint
    fractions break the tie.
    """
    from flattice.geometry import AffineFitError, fit_affine

    plus = string_odometers(s.plus, seed_slope, seed_constant)
    plus_values = odometer_union(plus)
    trial = string_odometers(s.minus, (0, 0), 0)
    samples: dict[Point, int] = {}
    for od in trial:
        for p, v in od.values().items():
            if p in plus_values:
                samples[p] = plus_values[p] - v
    if not samples:
        raise CompatibilityError("stacked strings share no points")
    try:
        affine = fit_affine(samples)
    except AffineFitError as e:
        raise CompatibilityError(f"no consistent stacked extension: {e}") from e
    if affine is not None:
        solutions = [affine]
    else:
        solutions = []
        for delta in ((0, 0), AP2, (-AP2[0], -AP2[1]), AQ2, (-AQ2[0], -AQ2[1])):
            a = add(seed_slope, delta)
            consts = {d - a[0] * p[0] - a[1] * p[1] for p, d in samples.items()}
            if len(consts) == 1:
                solutions.append((a[0], a[1], consts.pop()))
    if not solutions:
        raise CompatibilityError("stacked affine cannot be determined")
    a1, a2, b = solutions[0]
    minus = [StringOdometer(od.tile, add(od.affine, (a1, a2)), od.constant + b)
             for od in trial]
    odometer_union(plus + minus)  # validate every shared point
    return plus, minus


def odometer_union(odometers: Iterable[StringOdometer]) -> dict[Point, int]:
    out: dict[Point, int] = {}
    for od in odometers:
        for p, v in od.values().items():
            if p in out and out[p] != v:
                raise CompatibilityError(f"conflicting values at {p}")
            out[p] = v
    return out


def _t(j: int) -> int:
    return -(j * (j + 1)) // 2


def _qq(j: int) -> int:
    return -(j * j // 4)


def explicit_vertical(case: str, k: int, j: int, side: str) -> list[list[int]]:
    """Closed-form odometer matrix for the degenerate vertical strings.

    Rows are listed top-down; a 3-row matrix is a zero-tile, a 2-row matrix
    a one-tile.  Cases: ``pkq`` is the word p^k q, ``pqk`` is p q^k, and
    ``pqkpqk1`` is p q^k p q^{k+1}.  The valid index ranges follow the
    equations the matrices come from; out-of-range indices raise.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if side not in ("plus", "minus"):
        raise ValueError(f"side must be 'plus' or 'minus', got {side!r}")
    if case == "pkq":
        if side == "plus":
            if 1 <= j <= k:
                return [[_t(j)] * 2, [_t(j - 1)] * 2, [_t(j - 2)] * 2]
            if j == k + 1:
                return [[_t(k + 1), _t(k + 1) + 1], [_t(k)] * 2]
        else:
            if 2 <= j <= k + 1:
                return [[_t(j + 1) + 2, _t(j + 1) + 3],
                        [_t(j) + 1, _t(j) + 2],
                        [_t(j - 1), _t(j - 1) + 1]]
    elif case == "pqk":
        if side == "plus":
            if 2 <= j <= k + 1:
                jp = 2 * (j - 1)
                return [[_qq(jp + 2) + 1, _qq(jp + 1)],
                        [_qq(jp + 1) + 1, _qq(jp)]]
        else:
            if 1 <= j <= k:
                return [[_qq(2 * j), _qq(2 * j - 1)],
                        [_qq(2 * j - 1), _qq(2 * j - 2)]]
            if j == k + 1:
                return [[_qq(2 * k + 2), _qq(2 * k + 1) - 1],
                        [_qq(2 * k + 1), _qq(2 * k)],
                        [_qq(2 * k), _qq(2 * k - 1)]]
    elif case == "pqkpqk1":
        if side == "plus":
            if 2 <= j <= k + 1:
                return explicit_vertical("pqk", k, j, "plus")
            if j == k + 2:
                m = 2 * (k + 1)
                return [[_qq(m + 3) + 3, _qq(m + 2) + 1],
                        [_qq(m + 2) + 3, _qq(m + 1) + 1],
                        [_qq(m + 1) + 2, _qq(m) + 1]]
            if k + 3 <= j <= 2 * k + 3:
                jpp = 2 * (j - 2)
                return [[_qq(jpp + 4) + 3, _qq(jpp + 3) + 1],
                        [_qq(jpp + 3) + 3, _qq(jpp + 2) + 1]]
        else:
            if 1 <= j <= k + 1:
                return [[_qq(2 * j), _qq(2 * j - 1)],
                        [_qq(2 * j - 1), _qq(2 * j - 2)]]
            if j == k + 2:
                return explicit_vertical("pqk", k + 1, k + 2, "minus")
            if k + 3 <= j <= 2 * k + 2:
                m = 2 * (j - 1)
                return [[_qq(m + 2) + 1, _qq(m + 1)],
                        [_qq(m + 1) + 1, _qq(m)]]
            if j == 2 * k + 3:
                w = 2 * (k + 1)
                return [[_qq(2 * w + 2) + 1, _qq(2 * w + 1) - 1],
                        [_qq(2 * w + 1) + 1, _qq(2 * w)],
                        [_qq(2 * w) + 1, _qq(2 * w - 1)]]
    else:
        raise ValueError(f"unknown case {case!r}")
    raise ValueError(f"index {j} out of range for case {case!r}, k={k}, {side}")


def matrix_of_odometer(od: StringOdometer) -> list[list[int]]:
    """Odometer values as a top-down matrix over the tile's bounding box."""
    vals = od.values()
    if od.tile.doubled:
        raise ValueError("doubled tiles have no rectangular matrix form")
    xs = sorted({p[0] for p in vals})
    ys = sorted({p[1] for p in vals}, reverse=True)
    return [[vals[(x, y)] for x in xs] for y in ys]


RIGHT: Point = (1, 0)
UP: Point = (0, 1)


def g_map(w_h: str, w_v: str) -> tuple[tuple[Point, ...], tuple[Point, ...]]:
    """Boundary-word pair of the pseudo-square with the given side words."""
    return _g_horizontal(w_h), tuple(imul(c) for c in _g_horizontal(flip(w_v)))


def _g_horizontal(w: str) -> tuple[Point, ...]:
    out: list[Point] = []
    prev_doubled = False
    for prev, cur in zip(w, w[1:]):
        if prev_doubled:
            out.extend([UP, RIGHT])
        elif prev == "p" and cur == "q":
            out.extend([RIGHT, UP])
        else:
            out.extend([RIGHT, RIGHT])
        prev_doubled = prev == "q" and cur == "q"
    out.append(RIGHT)
    return tuple(out)
