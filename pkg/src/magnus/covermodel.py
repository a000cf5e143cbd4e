"""Combinatorial model of the universal abelian cover and Z-valued intersections.

The cover is the thickened Cayley graph of Z^{2g}: a 4g-gon sits at every
lattice point and each side X+ of polygon p is joined by a ribbon to side X-
of polygon p + e_X.  Going counter-clockwise, the sides of every polygon are
attached in the order A1+, B1-, A1-, B1+, ..., Ag+, Bg-, Ag-, Bg+.

Arcs are recorded as chords: pairs of positions on a polygon's boundary
circle.  Positions are integers on a circle of length ``8000*g``:

* corner ``c`` (between sides c-1 and c) is centred at ``2000*c``;
* side ``s`` spans ``(2000*s + 500, 2000*s + 1500)`` and lane ``t`` in (0, 1000)
  sits at ``2000*s + 500 + t``;
* a ribbon glues lane ``t`` on one end to lane ``1000 - t`` on the other.

The marked basepoint lifts sit on corner 0 of each polygon, the pushed points
``BASE_PUSH`` units away in the positive boundary direction.  Two chords
cross exactly when their endpoints interleave; no geometry beyond the cyclic
order is needed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

from .freegroup import FreeWord
from .groupring import GroupRingElem, pack

SIDE_SPAN = 2000
LANE_SPAN = 1000
BASE_PUSH = 250
EDGE_LANE = 100
LANES_FIRST = 300
LANES_SECOND = 600

CCW = 1
CW = -1
# Surface orientation used for intersection signs.  With clockwise polygons
# the symplectic form on H has (a_i, b_i) = +1 and the boundary word
# [A1,B1]...[Ag,Bg] runs against the induced boundary orientation.
DEFAULT_ORIENTATION = CW


class WindowOverflow(RuntimeError):
    """An arc leaves the lattice window; rebuild with a larger radius."""


class WindowTooSmall(RuntimeError):
    """Nonzero intersections on the window shell; the support is not certified."""


class SharedEndpoint(ValueError):
    """Two arcs share an endpoint, so their intersection number is undefined."""


# -- polygon combinatorics ----------------------------------------------------


def side_count(genus: int) -> int:
    return 4 * genus


def side_of(genus: int, gen: int, sign: int) -> int:
    """Side index of half-edge (generator 0..2g-1, +1 tail / -1 head)."""
    if gen < genus:
        return 4 * gen + (0 if sign > 0 else 2)
    m = gen - genus
    return 4 * m + (3 if sign > 0 else 1)


def label_of(genus: int, side: int) -> tuple[int, int]:
    m, r = divmod(side, 4)
    return [(m, 1), (genus + m, -1), (m, -1), (genus + m, 1)][r]


def side_label(genus: int, side: int) -> str:
    gen, sign = label_of(genus, side)
    name = f"A{gen + 1}" if gen < genus else f"B{gen - genus + 1}"
    return name + ("+" if sign > 0 else "-")


def lane_pos(side: int, lane: int) -> int:
    if not 0 < lane < LANE_SPAN:
        raise ValueError(f"lane {lane} outside (0, {LANE_SPAN})")
    return SIDE_SPAN * side + 500 + lane


def circle_length(genus: int) -> int:
    return SIDE_SPAN * side_count(genus)


def shift(p: tuple[int, ...], gen: int, sign: int) -> tuple[int, ...]:
    q = list(p)
    q[gen] += sign
    return tuple(q)


def neighbor(genus: int, p: tuple[int, ...], side: int) -> tuple[tuple[int, ...], int]:
    """Polygon and side at the far end of the ribbon on ``side`` of polygon p."""
    gen, sign = label_of(genus, side)
    return shift(p, gen, sign), side_of(genus, gen, -sign)


@dataclass(frozen=True)
class CoverWindow:
    """Polygons at the lattice points of [-R, R]^{2g} and the ribbons among them."""

    genus: int
    radius: int

    def __post_init__(self):
        if self.genus < 1 or self.radius < 1:
            raise ValueError("need genus >= 1 and radius >= 1")

    def contains(self, p: Sequence[int]) -> bool:
        return all(-self.radius <= x <= self.radius for x in p)

    def polygons(self) -> Iterator[tuple[int, ...]]:
        r = range(-self.radius, self.radius + 1)
        yield from product(r, repeat=2 * self.genus)

    @property
    def polygon_count(self) -> int:
        return (2 * self.radius + 1) ** (2 * self.genus)

    @property
    def sides_per_polygon(self) -> int:
        return side_count(self.genus)

    def side_order(self) -> list[str]:
        return [side_label(self.genus, s) for s in range(side_count(self.genus))]

    def ribbons(self) -> Iterator[tuple[tuple[int, ...], int, tuple[int, ...], int]]:
        """Interior ribbons as (p, side X+, q, side X-) with q = p + e_X."""
        for p in self.polygons():
            for gen in range(2 * self.genus):
                s = side_of(self.genus, gen, 1)
                q, t = neighbor(self.genus, p, s)
                if self.contains(q):
                    yield p, s, q, t

    def to_json(self) -> str:
        return json.dumps(
            {
                "genus": self.genus,
                "radius": self.radius,
                "side_order": self.side_order(),
                "ribbons": [
                    [list(p), side_label(self.genus, s), list(q), side_label(self.genus, t)]
                    for p, s, q, t in self.ribbons()
                ],
            }
        )


def build_window(genus: int, radius: int) -> CoverWindow:
    return CoverWindow(genus, radius)


# -- arcs ---------------------------------------------------------------------


@dataclass(frozen=True)
class Chord:
    polygon: tuple[int, ...]
    start: int
    end: int


@dataclass
class EmbeddedArc:
    genus: int
    chords: list[Chord] = field(default_factory=list)
    start_point: tuple[tuple[int, ...], int] | None = None
    end_point: tuple[tuple[int, ...], int] | None = None

    def translate(self, h: Sequence[int]) -> EmbeddedArc:
        def mv(p):
            return tuple(a + b for a, b in zip(p, h))

        return EmbeddedArc(
            self.genus,
            [Chord(mv(c.polygon), c.start, c.end) for c in self.chords],
            (mv(self.start_point[0]), self.start_point[1]) if self.start_point else None,
            (mv(self.end_point[0]), self.end_point[1]) if self.end_point else None,
        )

    def polygons(self) -> set[tuple[int, ...]]:
        return {c.polygon for c in self.chords}

    def check_consistent(self) -> None:
        """Consecutive chords must be joined by a ribbon with matching lanes."""
        g = self.genus
        for a, b in zip(self.chords, self.chords[1:]):
            side, off = divmod(a.end, SIDE_SPAN)
            lane = off - 500
            if not 0 < lane < LANE_SPAN:
                raise ValueError("chord ends off a side but the arc continues")
            q, t = neighbor(g, a.polygon, side)
            if b.polygon != q or b.start != lane_pos(t, LANE_SPAN - lane):
                raise ValueError("chords are not joined by a ribbon")


class _PathBuilder:
    def __init__(self, genus: int, polygon: tuple[int, ...], start_pos: int):
        self.genus = genus
        self.polygon = polygon
        self.pos = start_pos
        self.arc = EmbeddedArc(genus, [], (polygon, start_pos))

    def cross(self, side: int, lane: int) -> int:
        """Leave the current polygon through ``side`` on ``lane``; return the arrival side."""
        self.arc.chords.append(Chord(self.polygon, self.pos, lane_pos(side, lane)))
        q, t = neighbor(self.genus, self.polygon, side)
        self.polygon, self.pos = q, lane_pos(t, LANE_SPAN - lane)
        return t

    def finish(self, end_pos: int) -> EmbeddedArc:
        self.arc.chords.append(Chord(self.polygon, self.pos, end_pos))
        self.arc.end_point = (self.polygon, end_pos)
        return self.arc


def _walk_letters(b: _PathBuilder, letters: Sequence[int], lane_base: int) -> None:
    g = b.genus
    for k, x in enumerate(letters):
        gen, sign = abs(x) - 1, (1 if x > 0 else -1)
        b.cross(side_of(g, gen, sign), lane_base + (k % 250))


def _boundary_lap(b: _PathBuilder, forward: bool) -> None:
    """Walk once around the boundary component through the current corner 0.

    ``forward`` follows the counter-clockwise boundary walk (polygon on the
    left when polygons are drawn counter-clockwise), pushed just inside the
    surface: each chord cuts off one corner.
    """
    n = side_count(b.genus)
    start = b.polygon
    side = 0 if forward else n - 1
    for _ in range(n):
        if forward:
            arrived = b.cross(side, EDGE_LANE)
            side = (arrived + 1) % n
        else:
            arrived = b.cross(side, LANE_SPAN - EDGE_LANE)
            side = (arrived - 1) % n
    if b.polygon != start or side != (0 if forward else n - 1):
        raise AssertionError("boundary lap did not close; check the side order")


def positive_push(orientation: int) -> int:
    """Position offset of the pushed basepoint from the basepoint on corner 0."""
    return BASE_PUSH * orientation


def embed_word(
    w: FreeWord,
    h: Sequence[int] | None = None,
    push: str | None = None,
    orientation: int = DEFAULT_ORIENTATION,
    lane_base: int | None = None,
) -> EmbeddedArc:
    """Embed the lift of the based loop w starting at the basepoint of polygon h.

    ``push`` is None (endpoints on basepoint lifts), ``"+"`` or ``"-"``
    (endpoints slid to the pushed points along the positive / negative
    boundary arc).
    """
    g = w.genus
    h = tuple(h) if h is not None else (0,) * (2 * g)
    if push is None:
        lane_base = LANES_FIRST if lane_base is None else lane_base
        b = _PathBuilder(g, h, 0)
        _walk_letters(b, w.letters, lane_base)
        return b.finish(0)
    lane_base = LANES_SECOND if lane_base is None else lane_base
    star = positive_push(orientation) % circle_length(g)
    b = _PathBuilder(g, h, star)
    if push == "+":
        _walk_letters(b, w.letters, lane_base)
        return b.finish(star)
    if push != "-":
        raise ValueError(f"push must be None, '+' or '-', got {push!r}")
    # the negative push runs the long way round the boundary at both ends
    positive_is_ccw = orientation == CCW
    _boundary_lap(b, forward=positive_is_ccw)
    _walk_letters(b, w.letters, lane_base)
    _boundary_lap(b, forward=not positive_is_ccw)
    return b.finish(star)


def embed_basis_arc(
    i: int,
    h: Sequence[int],
    genus: int,
    push: str | None = None,
    orientation: int = DEFAULT_ORIENTATION,
    direction: int = 1,
) -> EmbeddedArc:
    """Arc from the basepoint of polygon h along the ribbon of generator i (0-based).

    ``direction=-1`` runs against the generator and represents -z_i^{-1} s_i.
    """
    return embed_word(FreeWord(genus, (direction * (i + 1),)), h, push, orientation)


# -- intersections --------------------------------------------------------------


def _between(a: int, b: int, q: int, length: int) -> bool:
    """q strictly inside the counter-clockwise arc from a to b."""
    return 0 < (q - a) % length < (b - a) % length


def chord_sign(x: Chord, y: Chord, length: int) -> int:
    """Counter-clockwise crossing sign of two chords in the same polygon."""
    p1, p2, q1, q2 = x.start, x.end, y.start, y.end
    if len({p1, p2, q1, q2}) < 4:
        if {p1, p2} & {q1, q2}:
            raise SharedEndpoint("chords share an endpoint")
    if _between(p1, p2, q1, length) and _between(p2, p1, q2, length):
        return 1
    if _between(p1, p2, q2, length) and _between(p2, p1, q1, length):
        return -1
    return 0


def _by_polygon(arc: EmbeddedArc) -> dict[tuple[int, ...], list[Chord]]:
    out: dict[tuple[int, ...], list[Chord]] = {}
    for c in arc.chords:
        out.setdefault(c.polygon, []).append(c)
    return out


def intersection_number(
    x: EmbeddedArc, y: EmbeddedArc, orientation: int = DEFAULT_ORIENTATION
) -> int:
    """Signed count of transverse crossings of x with y."""
    if x.genus != y.genus:
        raise ValueError("genus mismatch")
    ends_x = {x.start_point, x.end_point} - {None}
    ends_y = {y.start_point, y.end_point} - {None}
    if ends_x & ends_y:
        raise SharedEndpoint("arcs share an endpoint mark")
    length = circle_length(x.genus)
    xs = _by_polygon(x)
    total = 0
    for cy in y.chords:
        for cx in xs.get(cy.polygon, ()):
            total += chord_sign(cx, cy, length)
    return orientation * total


def pairing_sum(
    x: EmbeddedArc,
    y: EmbeddedArc,
    window: CoverWindow,
    orientation: int = DEFAULT_ORIENTATION,
) -> GroupRingElem:
    """Sum over window translates h of (x, h.y) h, with a shell certificate."""
    g = window.genus
    if not all(window.contains(p) for p in x.polygons()):
        raise WindowOverflow(f"arc leaves the radius-{window.radius} window")
    xpolys = x.polygons()
    ypolys = y.polygons()
    # only translates that bring some chord of y onto a polygon of x matter
    candidates = {
        tuple(a - b for a, b in zip(px, py)) for px in xpolys for py in ypolys
    }
    acc: dict[int, int] = {}
    for h in candidates:
        n = intersection_number(x, y.translate(h), orientation)
        if not n:
            continue
        if not window.contains(h) or max(map(abs, h)) == window.radius:
            raise WindowTooSmall(
                f"translate {h} contributes {n} at or beyond the radius-{window.radius} shell"
            )
        k = pack(h)
        acc[k] = acc.get(k, 0) + n
    return GroupRingElem(g, acc)


def pairing_oracle(
    i: int,
    j: int,
    sigma: str,
    radius: int,
    genus: int,
    orientation: int = DEFAULT_ORIENTATION,
) -> GroupRingElem:
    """<s_i, s_j>_sigma from intersection counts on the cover (0-based indices)."""
    if radius < 2:
        raise ValueError("the oracle needs radius >= 2")
    window = build_window(genus, radius)
    origin = (0,) * (2 * genus)
    x = embed_basis_arc(i, origin, genus, None, orientation)
    y = embed_basis_arc(j, origin, genus, sigma, orientation)
    return pairing_sum(x, y, window, orientation)


def word_pairing_oracle(
    u: FreeWord,
    v: FreeWord,
    sigma: str,
    radius: int,
    orientation: int = DEFAULT_ORIENTATION,
) -> GroupRingElem:
    """<lift(u), lift(v)>_sigma from intersection counts of the embedded lifts."""
    window = build_window(u.genus, radius)
    x = embed_word(u, None, None, orientation)
    y = embed_word(v, None, sigma, orientation)
    return pairing_sum(x, y, window, orientation)
