"""Explicit infinite families of lattice equable quadrilaterals."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count as _count

from .constructors import Case, DioSolution, construct_tangential, realize_sides
from .geometry import LatticeQuad, QuadError, SideLengths, classify, side_lengths
from .numkernel import pell_solutions

FAMILIES = (
    "K1", "K2", "K3", "K4",
    "NestedTangential", "Extan918", "Extan4550",
    "Tau3c1", "Tau3c2", "Sigma9",
)


@dataclass(frozen=True)
class FamilyMember:
    family: str
    index: int
    sides: SideLengths
    quad: LatticeQuad | None
    # values the family formulas predict, kept for cross-checking
    claims: dict = field(default_factory=dict, compare=False)


# ---------------------------------------------------------------------------
# Kites with the symmetry axis along OB

_KITE_DIRS = {"K1": (2, 1), "K2": (2, 1), "K3": (1, 1), "K4": (1, 1)}
_KITE_LAMBDA = {
    "K1": Fraction(1, 5), "K2": Fraction(4, 5), "K3": Fraction(1, 2), "K4": Fraction(8, 9)
}


def _kite_params(family: str, count: int) -> list[tuple[int, int]]:
    """Positive (n, i) pairs in order of n."""
    if family == "K1":
        return pell_solutions(5, 4, count)
    if family == "K2":
        return pell_solutions(5, 1, count)
    if family == "K3":
        return pell_solutions(2, 1, count)
    # 2n^2 - i^2 = 1 is i^2 - 2n^2 = -1 with the roles swapped
    return [(n, i) for i, n in pell_solutions(2, -1, count)]


def _kite_data(family: str, n: int, i: int):
    """Midpoint of AC, vertex B and incenter, each as a multiple of the axis."""
    if family == "K1":
        return Fraction(n + 5 * i, 2), n, Fraction(n + i, 2)
    if family == "K2":
        return 2 * n + 5 * i, 4 * n, 2 * (n + 2 * i)
    if family == "K3":
        return 2 * (n + 2 * i), 4 * n, 2 * (n + i)
    return Fraction(3 * (4 * n + 3 * i), 2), 12 * n, 2 * (3 * n + 2 * i)


def kite_from_axis(axis: tuple[int, int], m_scale: Fraction, b_scale: int) -> LatticeQuad:
    """Rebuild a kite from the midpoint of AC and the vertex B on its axis.

    A sits at ``M + k*normal`` with ``normal`` the primitive lattice normal of
    the axis.  For a kite with axis OB the area is ``|k| * |cross(B, normal)|``
    which is linear in k, so the half-integer steps are scanned until the
    quad is a lattice equable one.
    """
    ux, uy = axis
    normal = (uy, -ux)
    mx, my = m_scale * ux, m_scale * uy
    b = (b_scale * ux, b_scale * uy)
    for step in _count(1):
        k = Fraction(step, 2)
        ax, ay = mx + k * normal[0], my + k * normal[1]
        if ax.denominator != 1 or ay.denominator != 1:
            continue
        a = (int(ax), int(ay))
        c = (int(2 * mx - ax), int(2 * my - ay))
        try:
            quad = LatticeQuad((0, 0), a, b, c)
            if classify(quad).equable:
                return quad
        except QuadError:
            pass
        if step > 400:
            raise ValueError("no equable kite found along the axis normal")


def _kites(family: str, count: int, start: int) -> list[FamilyMember]:
    out = []
    axis = _KITE_DIRS[family]
    params = _kite_params(family, start + count - 1)[start - 1 :]
    for j, (n, i) in enumerate(params, start):
        m_scale, b_scale, i_scale = _kite_data(family, n, i)
        quad = kite_from_axis(axis, m_scale, b_scale)
        claims = {
            "n": n,
            "i": i,
            "incenter": (i_scale * axis[0], i_scale * axis[1]),
            "lambda": _KITE_LAMBDA[family],
        }
        out.append(FamilyMember(family, j, side_lengths(quad), quad, claims))
    return out


# ---------------------------------------------------------------------------
# Vertex families

def _nested(count: int, start: int) -> list[FamilyMember]:
    uv = pell_solutions(3, 1, start + count)
    out = []
    for j in range(start, start + count):
        (u0, v0), (u1, v1) = uv[j - 1], uv[j]
        a_i = (2 * u0 + 4, 6 * v0)
        a_next = (2 * u1 + 4, 6 * v1)
        quad = LatticeQuad((0, 0), a_i, (8, 0), a_next)
        claims = {"incenter": (a_i[0] + 2 * v0, a_i[1] + 2 * u0), "lambda": Fraction(1, 3)}
        out.append(FamilyMember("NestedTangential", j, side_lengths(quad), quad, claims))
    return out


def _extan918(count: int, start: int) -> list[FamilyMember]:
    uv = pell_solutions(2, -1, start + count - 1)
    out = []
    for j in range(start, start + count):
        u, v = uv[j - 1]
        s, t = 9 * u - 8 * v, 11 * u - 12 * v
        a = (3 * (s - 7) // 2, 3 * (s + 7) // 2)
        b = (6 * (3 * u - 3 * v - 2), 6 * (3 * u - 3 * v + 2))
        c = (3 * (t - 7) // 2, 3 * (t + 7) // 2)
        quad = LatticeQuad((0, 0), a, b, c)
        claims = {
            "sides": (3 * (9 * v - 4 * u), 3 * (3 * v - 2 * u), 3 * v, 3 * (11 * v - 6 * u)),
            "Sigma_T": (9, 18),
        }
        out.append(FamilyMember("Extan918", j, side_lengths(quad), quad, claims))
    return out


def _rho(z: tuple[int, int], power: int) -> tuple[int, int]:
    return (z[1], z[0]) if power % 2 else z


def _gsq(z: tuple[int, int]) -> tuple[int, int]:
    return (z[0] * z[0] - z[1] * z[1], 2 * z[0] * z[1])


def _extan4550(count: int, start: int) -> list[FamilyMember]:
    def rec1(z):
        return (78 * z[0] + 25 * z[1], 25 * z[0] + 8 * z[1])

    def rec2(z):
        return (68 * z[0] + 35 * z[1], 35 * z[0] + 18 * z[1])

    za, zb, zd = (5, 2), (0, 1), (1, 0)
    uv = pell_solutions(74, -1, start + count - 1)
    out = []
    for j in range(1, start + count):
        if j >= start:
            a = _rho(_gsq(za), j + 1)
            sb = _rho(_gsq(zb), j + 1)
            b = (a[0] + sb[0], a[1] + sb[1])
            dd = _rho(_gsq(zd), j)
            c = (5 * dd[0], 5 * dd[1])
            quad = LatticeQuad((0, 0), a, b, c)
            u, v = uv[j - 1]
            x, y = u // 43, v // 5
            claims = {
                "sides": tuple(
                    -x * p + y * q
                    for p, q in zip((516, 3354, 0, 3870), (545, 3355, 25, 3875))
                ),
                "Sigma_T": (45, 50),
            }
            out.append(FamilyMember("Extan4550", j, side_lengths(quad), quad, claims))
        za, zb, zd = rec1(za), rec1(zb), rec2(zd)
    return out


# ---------------------------------------------------------------------------
# Side-tuple families built from the generating equation

def _side_family(family: str, count: int, start: int | None) -> list[FamilyMember]:
    if family == "Tau3c1":
        first, step = (-1 if start is None else start), -1
        if first > -1:
            raise ValueError("Tau3c1 needs x <= -1")
    elif family == "Tau3c2":
        first, step = (-3 if start is None else start), -1
        if first > -3:
            raise ValueError("Tau3c2 needs x <= -3")
    else:
        first, step = (1 if start is None else start), 1
        if first < 1:
            raise ValueError("Sigma9 needs x >= 1")
    out = []
    for k in range(count):
        x = first + step * k
        if family == "Tau3c1":
            case, sol = Case.I, DioSolution(3, 6 * x - 1, 18 * x * x - 6 * x + 19, 1)
        elif family == "Tau3c2":
            case, sol = Case.I, DioSolution(3, 6 * x - 2, 9 * x * x - 6 * x + 11, 2)
        else:
            case, sol = Case.II, DioSolution(9, 12 * x + 2, 18 * x * x + 6 * x + 43, 1)
        built = construct_tangential(case, sol)
        s = built.sides
        realized = [
            q
            for q in realize_sides(*s.as_tuple(), constraint="tangential")
            if classify(q).equable
        ]
        quad = realized[0] if realized else built.quad
        claims = {"solution": sol, "sigma_tau": (built.sigma, built.tau), "constructed": built.quad}
        out.append(FamilyMember(family, x, s, quad, claims))
    return out


def generate_family(family: str, count: int, start: int | None = None) -> list[FamilyMember]:
    """The first ``count`` members of a named family.

    Indices start at 1 for the Pell-driven families; the side-tuple families
    are indexed by their parameter x (Tau3c1: x <= -1, Tau3c2: x <= -3,
    Sigma9: x >= 1), counting away from zero.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if count < 1:
        raise ValueError("count must be positive")
    if family in ("Tau3c1", "Tau3c2", "Sigma9"):
        return _side_family(family, count, start)
    start = 1 if start is None else start
    if start < 1:
        raise ValueError("index must be at least 1")
    if family in _KITE_DIRS:
        return _kites(family, count, start)
    if family == "NestedTangential":
        return _nested(count, start)
    if family == "Extan918":
        return _extan918(count, start)
    return _extan4550(count, start)
