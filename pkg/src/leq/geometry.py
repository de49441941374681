"""Lattice quadrilaterals: validation, side lengths, signed areas, shape tests.

A quadrilateral is stored as four lattice points ``O, A, B, C`` taken in
counterclockwise order.  Side lengths are ``a = |OA|``, ``b = |AB|``,
``c = |BC|``, ``d = |CO|`` and the diagonals are ``OB`` and ``AC``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .numkernel import isqrt

Point = tuple[int, int]


class QuadError(ValueError):
    """Raised for vertex lists that do not form a simple lattice quadrilateral."""


def cross(u: tuple, v: tuple) -> int:
    return u[0] * v[1] - u[1] * v[0]


def sub(u: tuple, v: tuple) -> tuple:
    return (u[0] - v[0], u[1] - v[1])


def norm2(u: tuple) -> int:
    return u[0] * u[0] + u[1] * u[1]


@dataclass(frozen=True)
class LatticeQuad:
    o: Point
    a: Point
    b: Point
    c: Point

    def __post_init__(self) -> None:
        for pt in self.vertices:
            if len(pt) != 2 or not all(isinstance(x, int) for x in pt):
                raise QuadError(f"vertex {pt!r} is not a lattice point")
        ar = signed_areas(self)
        if 0 in (ar.two_ko, ar.two_ka, ar.two_kb, ar.two_kc):
            raise QuadError("three vertices are collinear")
        simple = ar.two_ka * ar.two_kc > 0 or ar.two_ko * ar.two_kb > 0
        if not simple:
            raise QuadError("sides cross: the quadrilateral is not simple")
        if ar.two_k < 0:
            raise QuadError("vertices are in clockwise order")

    @classmethod
    def from_points(cls, points) -> "LatticeQuad":
        pts = [tuple(int(x) for x in p) for p in points]
        if len(pts) != 4:
            raise QuadError("need exactly four vertices")
        return cls(*pts)

    @classmethod
    def from_flat(cls, coords) -> "LatticeQuad":
        coords = list(coords)
        if len(coords) != 8:
            raise QuadError("need eight coordinates")
        return cls.from_points(zip(coords[0::2], coords[1::2]))

    @property
    def vertices(self) -> tuple[Point, Point, Point, Point]:
        return (self.o, self.a, self.b, self.c)

    def relative(self) -> tuple[Point, Point, Point]:
        """A, B, C as vectors from O."""
        return sub(self.a, self.o), sub(self.b, self.o), sub(self.c, self.o)

    def translated(self, dx: int, dy: int) -> "LatticeQuad":
        return LatticeQuad(*((x + dx, y + dy) for x, y in self.vertices))

    def at_origin(self) -> "LatticeQuad":
        return self.translated(-self.o[0], -self.o[1])

    def rotated_labels(self, k: int) -> "LatticeQuad":
        """Same polygon, labels shifted so the old vertex ``k`` becomes O."""
        v = self.vertices
        return LatticeQuad(*(v[(k + i) % 4] for i in range(4)))

    def mirrored(self) -> "LatticeQuad":
        """Reflection in the line y = x, relabelled O, C, B, A to stay counterclockwise."""
        o, a, b, c = ((y, x) for x, y in self.vertices)
        return LatticeQuad(o, c, b, a)

    def transformed(self, m: tuple[int, int, int, int]) -> "LatticeQuad":
        """Image under the integer matrix ``(m00, m01, m10, m11)``, kept counterclockwise."""
        m00, m01, m10, m11 = m
        pts = [(m00 * x + m01 * y, m10 * x + m11 * y) for x, y in self.vertices]
        if m00 * m11 - m01 * m10 < 0:
            pts = [pts[0], pts[3], pts[2], pts[1]]
        return LatticeQuad(*pts)


# the eight symmetries of the square lattice fixing the origin
POINT_GROUP: tuple[tuple[int, int, int, int], ...] = (
    (1, 0, 0, 1), (0, -1, 1, 0), (-1, 0, 0, -1), (0, 1, -1, 0),
    (1, 0, 0, -1), (-1, 0, 0, 1), (0, 1, 1, 0), (0, -1, -1, 0),
)


@dataclass(frozen=True)
class SideLengths:
    a: int
    b: int
    c: int
    d: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def perimeter(self) -> int:
        return self.a + self.b + self.c + self.d


@dataclass(frozen=True)
class SignedAreas:
    """Doubled signed areas of the four vertex triangles.

    ``two_ko`` is triangle OAC (the one without B), ``two_ka`` is OAB,
    ``two_kb`` is ABC and ``two_kc`` is OBC.
    """

    two_ko: int
    two_ka: int
    two_kb: int
    two_kc: int

    @property
    def two_k(self) -> int:
        return self.two_ka + self.two_kc


def signed_areas(quad: LatticeQuad) -> SignedAreas:
    a, b, c = quad.relative()
    return SignedAreas(
        two_ko=cross(a, c),
        two_ka=cross(a, b),
        two_kb=cross(sub(b, a), sub(c, a)),
        two_kc=cross(b, c),
    )


def squared_sides(quad: LatticeQuad) -> tuple[int, int, int, int]:
    o, a, b, c = quad.vertices
    return norm2(sub(a, o)), norm2(sub(b, a)), norm2(sub(c, b)), norm2(sub(o, c))


def side_lengths(quad: LatticeQuad) -> SideLengths:
    """Integer side lengths; raises :class:`QuadError` if any side is irrational."""
    roots = [isqrt(s) for s in squared_sides(quad)]
    if None in roots:
        raise QuadError("side lengths are not all integers")
    return SideLengths(*roots)


def has_integer_sides(quad: LatticeQuad) -> bool:
    return all(isqrt(s) is not None for s in squared_sides(quad))


def diagonals_squared(quad: LatticeQuad) -> tuple[int, int]:
    """``(|OB|^2, |AC|^2)``."""
    return norm2(sub(quad.b, quad.o)), norm2(sub(quad.c, quad.a))


def reflex_vertex(quad: LatticeQuad) -> str | None:
    """Label of the reflex vertex of a concave quadrilateral, ``None`` if convex."""
    ar = signed_areas(quad)
    for label, twice in (("O", ar.two_ko), ("A", ar.two_ka), ("B", ar.two_kb), ("C", ar.two_kc)):
        if twice < 0:
            return label
    return None


def is_parallelogram(quad: LatticeQuad) -> bool:
    o, a, b, c = quad.vertices
    return sub(a, o) == sub(b, c)


def has_parallel_sides(quad: LatticeQuad) -> bool:
    o, a, b, c = quad.vertices
    return cross(sub(a, o), sub(c, b)) == 0 or cross(sub(b, a), sub(o, c)) == 0


def circumcircle_position(quad: LatticeQuad) -> int:
    """Where B sits relative to the circle through O, A, C: +1 inside, 0 on, -1 outside."""
    a, b, c = quad.relative()
    ar = signed_areas(quad)
    det = norm2(a) * ar.two_kc + norm2(c) * ar.two_ka - norm2(b) * ar.two_ko
    sign = (det > 0) - (det < 0)
    return sign if ar.two_ko > 0 else -sign


def b_in_circumcircle(quad: LatticeQuad) -> bool:
    """True when B lies strictly inside the circumcircle of O, A, C."""
    return circumcircle_position(quad) > 0


def is_cyclic(quad: LatticeQuad) -> bool:
    return circumcircle_position(quad) == 0


# ---------------------------------------------------------------------------
# Classification

class ShapeClass(enum.Enum):
    CONVEX_TANGENTIAL = "convex-tangential"
    CONCAVE_TANGENTIAL = "concave-tangential"
    CONVEX_EXTANGENTIAL = "convex-extangential"
    CONCAVE_EXTANGENTIAL = "concave-extangential"
    BOTH = "kite"
    NEITHER = "neither"


@dataclass(frozen=True)
class Classification:
    sides: SideLengths
    areas: SignedAreas
    p2: int
    q2: int
    shape: ShapeClass
    tangential: bool
    extangential: bool
    kite: bool
    rhombus: bool
    parallelogram: bool
    convex: bool
    reflex: str | None
    equable: bool
    cyclic: bool

    @property
    def needs_relabel(self) -> bool:
        """A concave quad whose reflex vertex is not B should be normalized first."""
        return self.reflex not in (None, "B")


def _is_kite(s: SideLengths) -> bool:
    return (s.a == s.b and s.c == s.d) or (s.a == s.d and s.b == s.c)


def classify(quad: LatticeQuad) -> Classification:
    """Shape flags for a quadrilateral with integer sides."""
    s = side_lengths(quad)
    ar = signed_areas(quad)
    p2, q2 = diagonals_squared(quad)
    tangential = s.a + s.c == s.b + s.d
    extangential = abs(s.a - s.c) == abs(s.b - s.d) and not has_parallel_sides(quad)
    kite = _is_kite(s)
    rhombus = s.a == s.b == s.c == s.d
    reflex = reflex_vertex(quad)
    convex = reflex is None
    if tangential and extangential:
        shape = ShapeClass.BOTH
    elif tangential:
        shape = ShapeClass.CONVEX_TANGENTIAL if convex else ShapeClass.CONCAVE_TANGENTIAL
    elif extangential:
        shape = ShapeClass.CONVEX_EXTANGENTIAL if convex else ShapeClass.CONCAVE_EXTANGENTIAL
    else:
        shape = ShapeClass.NEITHER
    return Classification(
        sides=s,
        areas=ar,
        p2=p2,
        q2=q2,
        shape=shape,
        tangential=tangential,
        extangential=extangential,
        kite=kite,
        rhombus=rhombus,
        parallelogram=is_parallelogram(quad),
        convex=convex,
        reflex=reflex,
        equable=ar.two_k == 2 * s.perimeter,
        cyclic=is_cyclic(quad),
    )


# ---------------------------------------------------------------------------
# Normalization

def labelings(quad: LatticeQuad) -> Iterator[LatticeQuad]:
    """The eight labelings of a quad: four rotations of it and of its mirror image."""
    for base in (quad, quad.mirrored()):
        for k in range(4):
            yield base.rotated_labels(k).at_origin()


def equable_tangential_ratios(quad: LatticeQuad) -> tuple[Fraction, Fraction] | None:
    """``(sigma, tau)`` of a non-kite equable tangential quad from its areas."""
    s = side_lengths(quad)
    if s.a == s.b or s.a == s.d:
        return None
    ar = signed_areas(quad)
    sigma = Fraction(ar.two_ko - 2 * (s.a + s.c), 2 * (s.a - s.b))
    tau = Fraction(ar.two_ka - 2 * (s.a + s.c), 2 * (s.a - s.d))
    return sigma, tau


def _admissible(quad: LatticeQuad, cls: Classification) -> bool:
    s = side_lengths(quad)
    if cls.reflex is not None and reflex_vertex(quad) != "B":
        return False
    if cls.rhombus:
        p2, q2 = diagonals_squared(quad)
        return p2 >= q2
    if cls.extangential:
        # excircle outside B; for kites this puts the symmetry axis on OB
        return s.a + s.b == s.c + s.d and s.a > s.c and s.a >= s.d
    if cls.tangential and cls.equable and not cls.kite:
        sigma, tau = equable_tangential_ratios(quad)
        if cls.convex and sigma > tau:
            return False
        if tau == 2:
            return s.a % 2 == 0 and s.c % 2 == 0 and (
                not cls.convex or s.b <= s.d
            )
        if cls.convex:
            return s.b == min(s.as_tuple())
    return True


def _coords(quad: LatticeQuad) -> tuple[int, ...]:
    return tuple(x for pt in quad.vertices for x in pt)


def normalize(quad: LatticeQuad) -> LatticeQuad:
    """Relabel (and if needed reflect) a quad into its standard labeling.

    The result has O at the origin, a reflex vertex (if any) at B, an
    excircle outside B with ``a > c`` and ``a >= d`` for extangential quads,
    the longest diagonal on OB for rhombi, and the usual ratio and parity
    choices for equable tangential quads.  Ties are broken by the largest
    side tuple, then the largest coordinates.
    """
    cls = classify(quad)
    candidates = [q for q in labelings(quad) if _admissible(q, cls)]
    if not candidates:
        candidates = list(labelings(quad))
    best_sides = max(side_lengths(q).as_tuple() for q in candidates)
    return max(
        (q for q in candidates if side_lengths(q).as_tuple() == best_sides), key=_coords
    )


def canonical_form(quad: LatticeQuad) -> LatticeQuad:
    """Representative shared by every lattice-congruent copy of ``quad``."""
    return max((normalize(quad.transformed(g)) for g in POINT_GROUP), key=_coords)


def canonical_key(quad: LatticeQuad) -> tuple[int, ...]:
    return _coords(canonical_form(quad))


def is_normalized(quad: LatticeQuad) -> bool:
    return normalize(quad) == quad
