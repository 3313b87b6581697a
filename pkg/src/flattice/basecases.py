"""Closed-form base-case tiles and odometers.

The recursion bottoms out on the fraction families 1/d and their rotations:
*staircases* (d odd) and *doubled staircases* (d even), each with a standard
and an alternate version.  All eight families have explicit formulas; the
degenerate endpoints 0/1 and 1/1 use the two zero-one tiles.

Tiles and values are produced in the formula's own coordinates; callers
normalize.  ``anchor`` is the declared lower-left reference point used by
placement tables (for standard tiles the lower-left vertex, for alternates
the start of the boundary string named in the construction).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from flattice.farey import Frac
from flattice.geometry import (AffineFitError, Point, add, fit_affine, imul,
                               neg)
from flattice.strings import (ONE_ODOMETER, ONE_TILE, ZERO_ODOMETER,
                              ZERO_TILE, build_string, odometer_union,
                              string_odometers)


@dataclass(frozen=True)
class RawOdometer:
    fraction: Frac
    variant: str
    values: dict[Point, int]
    anchor: Point
    odd_frame: bool = False  # published coordinates sit on swapped parity

    @property
    def tile(self) -> frozenset[Point]:
        return frozenset(self.values)


def _grid(x0: int, x1: int, y0: int, y1: int, pred: Callable[[int, int], bool]) -> set[Point]:
    return {(x, y) for x in range(x0, x1 + 1) for y in range(y0, y1 + 1) if pred(x, y)}


def staircase_fraction(d: int, rotated: bool) -> Frac:
    if d < 3 or d % 2 == 0:
        raise ValueError(f"staircase denominator must be odd and >= 3, got {d}")
    return Frac((d - 1) // 2, (d + 1) // 2) if rotated else Frac(1, d)


def doubled_staircase_fraction(d: int, rotated: bool) -> Frac:
    if d < 4 or d % 2 == 1:
        raise ValueError(f"doubled staircase denominator must be even and >= 4, got {d}")
    return Frac(d - 1, d + 1) if rotated else Frac(1, d)


def staircase_standard(d: int) -> RawOdometer:
    """Standard tile odometer for 1/d, d >= 3 odd."""
    f = staircase_fraction(d, rotated=False)
    special = {(0, 0), (2, d + 1)}
    tile = _grid(2 - d, d, 0, d + 1, lambda x, y: 1 <= x + y <= d + 2) | special

    def g(x: int, y: int) -> int:
        return (-y * (y + 1) // 2 + y + min(x - 1, 0)
                + (1 if (x, y) in special else 0))

    return RawOdometer(f, "standard", {p: g(*p) for p in tile}, (0, 0))


def staircase_rotated_standard(d: int) -> RawOdometer:
    """Standard tile odometer for the rotation of 1/d, d >= 3 odd."""
    f = staircase_fraction(d, rotated=True)
    special = {(0, d + 1), (d + 1, d - 1)}
    tile = _grid(0, d + 1, 1, 2 * d - 1, lambda x, y: -1 <= y - x <= d) | special

    def g(x: int, y: int) -> int:
        return (-((y - x) ** 2 // 4) + min(d - y, 0)
                + (1 if (x, y) in special else 0))

    return RawOdometer(f, "standard", {p: g(*p) for p in tile}, (0, 1), True)


def staircase_alternate(d: int) -> RawOdometer:
    """Alternate tile odometer for 1/d, d >= 3 odd.

    Synthesized from the rotated family: a parity-flipping quarter turn
    composed with the harmonic correction that restores the quadratic
    growth of 1/d.  The anchor is located as the start of the tile's
    horizontal boundary word.
    """
    f = staircase_fraction(d, rotated=False)
    w_h = "q" + "p" * ((d - 1) // 2)
    return _rotated_alternate(staircase_rotated_alternate(d), f, w_h)


def staircase_rotated_alternate(d: int) -> RawOdometer:
    """Alternate tile odometer for the rotation of 1/d, d >= 3 odd."""
    f = staircase_fraction(d, rotated=True)
    a = {(x, 2 * d) for x in (-1, 0)} | {(x, d - 2) for x in (d, d + 1)}
    b = {(x, x + d - 1) for x in range(1, d)}
    c = {(-1, y) for y in range(d + 1, 2 * d + 1)} | {(d + 1, y) for y in range(d - 2, 2 * d - 2)}
    dd = _grid(0, d, 1, 3 * d - 3, lambda x, y: -1 <= y - x <= 2 * d - 1)
    tile = a | b | c | dd
    bump = a | b

    def g(x: int, y: int) -> int:
        return (-((y - x) ** 2 // 4) + min(d - y - 1, 0) + min((2 * d - 1) - y, 0)
                + max((y - x) - d + 1, 0) + (1 if (x, y) in bump else 0))

    return RawOdometer(f, "alternate", {p: g(*p) for p in tile}, (0, 1), True)


def doubled_staircase_standard(d: int) -> RawOdometer:
    """Standard tile odometer for 1/d, d >= 4 even."""
    f = doubled_staircase_fraction(d, rotated=False)
    a = {(0, 0), (d + 2, d + 2)}
    b = {(d + 2 - y, y) for y in range(2, d + 1)}
    c = _grid(2 - d, 2 * d, 0, d + 2, lambda x, y: 1 <= x + y <= 2 * d + 3)
    drop = {(x, 0) for x in range(d, 2 * d + 4)} | {(x, d + 2) for x in range(2 - d - 2, 3)}
    tile = (a | b | c) - drop
    bump = a | b

    def g(x: int, y: int) -> int:
        return (-y * (y + 1) // 2 + y + min(0, x - 1) + min(0, d + 1 - x)
                + max(x + y - d - 2, 0) + (1 if (x, y) in bump else 0))

    return RawOdometer(f, "standard", {p: g(*p) for p in tile}, (0, 0))


def doubled_staircase_rotated_standard(d: int) -> RawOdometer:
    """Standard tile odometer for the rotation of 1/d, d >= 4 even."""
    f = doubled_staircase_fraction(d, rotated=True)
    a = {(-1, 2 * d + 1), (d + 1, d - 1)}
    b = {(x, x + d) for x in range(1, d)}
    c = _grid(-1, d + 1, 1, 3 * d - 1, lambda x, y: -1 <= y - x <= 2 * d + 1)
    drop = ({(-1, y) for y in range(-2, d + 2)}
            | {(d + 1, y) for y in range(2 * d - 1, 3 * d + 2)})
    tile = (a | b | c) - drop
    bump = a | b

    def g(x: int, y: int) -> int:
        return (-((y - x) ** 2 // 4) + min(0, d - y) + min(0, 2 * d - y)
                + max((y - x) - d, 0) + (1 if (x, y) in bump else 0))

    return RawOdometer(f, "standard", {p: g(*p) for p in tile}, (0, 1), True)


def doubled_staircase_alternate(d: int) -> RawOdometer:
    """Alternate tile odometer for 1/d, d >= 4 even."""
    f = doubled_staircase_fraction(d, rotated=False)
    a = {(-1, -1), (d, d + 2)}
    b = {(d - y, y) for y in range(2, d)}
    c = _grid(1 - d, 2 * d - 2, -1, d + 2, lambda x, y: -1 <= x + y <= 2 * d + 1)
    drop = ({(x, y) for x in range(d, 2 * d + 2) for y in (-1, 0)}
            | {(x, y) for x in range(1 - d - 2, 0) for y in (d + 1, d + 2)})
    tile = (a | b | c) - drop
    bump = a | b

    def g(x: int, y: int) -> int:
        return (-y * (y + 1) // 2 + min(0, x) + min(0, d - x - 1)
                + max(y + x - d, 0) + (1 if (x, y) in bump else 0))

    return RawOdometer(f, "alternate", {p: g(*p) for p in tile}, (-1, -1))


def doubled_staircase_rotated_alternate(d: int) -> RawOdometer:
    """Alternate tile odometer for the rotation of 1/d, d >= 4 even.

    Synthesized by rotation like :func:`staircase_alternate`.
    """
    f = doubled_staircase_fraction(d, rotated=True)
    w_h = "q" * (d - 1) + "p"
    return _rotated_alternate(doubled_staircase_alternate(d), f, w_h)


def _h1(q: Point) -> int:
    """Integer harmonic quadratic y(y+1)/2 - floor((x+y)^2/4)."""
    x, y = q
    return y * (y + 1) // 2 - (x + y) ** 2 // 4


def _rotated_alternate(src: RawOdometer, target: Frac, w_h: str) -> RawOdometer:
    """Quarter-turn image of an alternate base case, growth-corrected.

    A quarter turn alone swaps the edge axes; composing with a shift of
    the right parity restores them, so the result is a correctly framed
    odometer for the rotated fraction.
    """
    t = (0, 0) if src.odd_frame else (1, 0)
    for rot in (imul, lambda p: neg(imul(p))):
        vals = {}
        for p, v in src.values.items():
            q = add(rot(p), t)
            vals[q] = v - _h1(q)
        anchor = _locate_horizontal_anchor(vals, w_h)
        if anchor is not None:
            return RawOdometer(target, "alternate", vals, anchor)
    raise ValueError(f"no rotation of {src.fraction} respects {w_h!r}")


def _locate_horizontal_anchor(vals: dict[Point, int], w_h: str) -> Point | None:
    """Start of the bottom boundary string the values respect, if any."""
    pts = set(vals)
    for a in sorted(pts, key=lambda p: (p[1], p[0])):
        s = build_string(w_h, "horizontal", False, a)
        if not s.points() <= pts:
            continue
        union = odometer_union(string_odometers(s))
        samples = {p: vals[p] - u for p, u in union.items()}
        try:
            if fit_affine(samples) is not None:
                return a
        except AffineFitError:
            continue
    return None


def endpoint(f: Frac, variant: str) -> RawOdometer:
    """Degenerate tiles for the endpoints 0/1 and 1/1 (both variants)."""
    if f == Frac(0, 1):
        return RawOdometer(f, variant, dict(ZERO_ODOMETER), (0, 0))
    if f == Frac(1, 1):
        return RawOdometer(f, variant, dict(ONE_ODOMETER), (0, 0))
    raise ValueError(f"{f} is not an endpoint")


_ = (ZERO_TILE, ONE_TILE)  # re-exported shapes used by callers


def base_case(family: str, d: int, rotated: bool, variant: str) -> RawOdometer:
    """Dispatch to the eight explicit families by name."""
    table = {
        ("staircase", False, "standard"): staircase_standard,
        ("staircase", True, "standard"): staircase_rotated_standard,
        ("staircase", False, "alternate"): staircase_alternate,
        ("staircase", True, "alternate"): staircase_rotated_alternate,
        ("doubledStaircase", False, "standard"): doubled_staircase_standard,
        ("doubledStaircase", True, "standard"): doubled_staircase_rotated_standard,
        ("doubledStaircase", False, "alternate"): doubled_staircase_alternate,
        ("doubledStaircase", True, "alternate"): doubled_staircase_rotated_alternate,
    }
    try:
        fn = table[(family, rotated, variant)]
    except KeyError:
        raise ValueError(f"unknown base case {(family, rotated, variant)}") from None
    return fn(d)


def base_case_for(f: Frac, variant: str) -> RawOdometer | None:
    """The base-case odometer for a fraction, or None if it is recursive."""
    if f.d == 1:
        return endpoint(f, variant)
    if f.d - f.n == 1:
        return base_case("staircase", f.n + f.d, True, variant)
    if f.n == 1:
        if f.d % 2 == 1:
            return base_case("staircase", f.d, False, variant)
        return base_case("doubledStaircase", f.d, False, variant)
    if f.d - f.n == 2 and f.n % 2 == 1:
        return base_case("doubledStaircase", f.n + 1, True, variant)
    return None
