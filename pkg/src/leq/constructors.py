"""Lattice vertices from solutions of the tangential generating equation.

A tangential LEQ with ratio pair ``(t/(t-1), t)`` for t in {2, 3, 5, 9}
corresponds to integers ``(u, v, c)`` with

    (2x)^2 + u^2 = v^2 - (v - (x-1)c/2)^2,    u + v = 0 (mod x),

and the quadruple ``(-2x, v - (x-1)c/2, u, v)`` factors over the Gaussian
integers.  Squaring the resulting Gaussian numbers gives the vertices.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .geometry import (
    POINT_GROUP,
    LatticeQuad,
    QuadError,
    SideLengths,
    norm2,
    side_lengths,
)
from .numkernel import pythagorean_quadruple_decompose, signed_variants, two_square_reps

ALLOWED_X = (2, 3, 5, 9)


class Case(enum.Enum):
    I = "I"
    II = "II"


class ConstructionError(ValueError):
    pass


class ConditionError(ConstructionError):
    """The solution violates one of the side conditions (i)-(iii)."""


class InvariantViolation(ConstructionError):
    """Something that cannot happen for valid input did happen."""


@dataclass(frozen=True)
class DioSolution:
    x: int
    u: int
    v: int
    c: int

    def __post_init__(self) -> None:
        x, u, v, c = self.x, self.u, self.v, self.c
        if x not in ALLOWED_X:
            raise ValueError(f"x must be one of {ALLOWED_X}")
        if v <= 0 or c <= 0:
            raise ValueError("v and c must be positive")
        if (u + v) % x:
            raise ValueError("u + v must be divisible by x")
        if x == 2 and c % 2:
            raise ValueError("c must be even when x = 2")
        if x == 3 and c % 3 == 0:
            raise ValueError("c must not be divisible by 3 when x = 3")
        if 4 * (2 * x) ** 2 + 4 * u * u != 4 * v * v - (2 * v - (x - 1) * c) ** 2:
            raise ValueError("(u, v, c) does not solve the generating equation")

    @property
    def shift(self) -> int:
        """``v - (x-1)c/2``, an integer whenever the side conditions hold."""
        return self.v - (self.x - 1) * self.c // 2


def declared_sides(case: Case, sol: DioSolution) -> SideLengths:
    a = sol.v - sol.u
    if case is Case.I:
        b = (sol.v + sol.u) // sol.x
        return SideLengths(a, b, sol.c, a + sol.c - b)
    d = (sol.v + sol.u) // sol.x
    return SideLengths(a, a + sol.c - d, sol.c, d)


def ratio_pair(case: Case, x: int) -> tuple[Fraction, Fraction]:
    """``(sigma, tau)`` produced by a case and parameter."""
    big, small = Fraction(x), Fraction(x, x - 1)
    return (small, big) if case is Case.I else (big, small)


def condition_failures(case: Case, sol: DioSolution) -> list[str]:
    """Names of the violated side conditions; empty when all hold."""
    s = declared_sides(case, sol)
    t = ratio_pair(case, sol.x)[1]
    fails = []
    if min(s.as_tuple()) <= 0:
        fails.append("positive")
        return fails
    if abs(s.c - s.b) * t >= s.a + s.c:
        fails.append("i")
    if (s.a + s.d) * t <= s.a + s.c:
        fails.append("ii")
    if (s.b + s.c) * t == s.a + s.c:
        fails.append("iii")
    return fails


def is_exceptional(sol: DioSolution) -> bool:
    g = gcd(gcd(sol.u, sol.v), sol.c)
    if sol.x == 5:
        return g % 5 == 0
    if sol.x == 9:
        return gcd(18, g) in (3, 6)
    return False


# small Gaussian integer helpers on (re, im) pairs
def _g_mul(z, w):
    return (z[0] * w[0] - z[1] * w[1], z[0] * w[1] + z[1] * w[0])


def _g_sq(z):
    return _g_mul(z, z)


def _g_lin(k, z, j, w):
    return (k * z[0] + j * w[0], k * z[1] + j * w[1])


def _g_scale(k, z):
    return (k * z[0], k * z[1])


def _g_div(z, k):
    if z[0] % k or z[1] % k:
        raise InvariantViolation(f"{z} is not divisible by {k}")
    return (z[0] // k, z[1] // k)


@dataclass(frozen=True)
class Construction:
    quad: LatticeQuad
    sides: SideLengths
    sigma: Fraction
    tau: Fraction
    case: Case
    exceptional: bool
    decomposition: tuple[int, int, int, int]


def construct_tangential(case: Case | str, sol: DioSolution) -> Construction:
    """Build the lattice quad attached to a generating-equation solution.

    Case I gives ``(sigma, tau) = (x/(x-1), x)``, case II the reverse.  The
    exceptional sub-cases (x = 5 with 5 | u, v, c, and x = 9 with
    gcd(18, u, v, c) in {3, 6}) are picked automatically.
    """
    case = Case(case)
    fails = condition_failures(case, sol)
    if fails:
        raise ConditionError(f"conditions {fails} fail for {sol}")
    x, u, v = sol.x, sol.u, sol.v
    exceptional = is_exceptional(sol)
    sign = -1 if case is Case.I else 1
    if not exceptional:
        zz, w_val, uu, vv = sign * 2 * x, sol.shift, u, v
    elif x == 5:
        zz, w_val, uu, vv = sign * 2, (v - 2 * sol.c) // 5, u // 5, v // 5
    else:
        zz, w_val, uu, vv = sign * 6, (v - 4 * sol.c) // 3, u // 3, v // 3
    dec = pythagorean_quadruple_decompose(zz, w_val, uu, vv)
    if dec is None:
        raise InvariantViolation(f"no Gaussian factorization for {sol}")
    p, q, m, n = dec
    z, w = (p, q), (m, n)
    z2 = _g_sq(z)
    if case is Case.I:
        if not exceptional:
            a_pt = z2
            b_pt = _g_lin(1, z2, -1, _g_div(_g_sq(w), x))
            c_pt = _g_div(_g_sq(_g_lin(x, z, -1, w)), x * (x - 1))
        elif x == 5:
            a_pt = _g_scale(5, z2)
            b_pt = _g_lin(5, z2, -1, _g_sq(w))
            c_pt = _g_div(_g_sq(_g_lin(5, z, -1, w)), 4)
        else:
            a_pt = _g_scale(3, z2)
            b_pt = _g_lin(3, z2, -1, _g_div(_g_sq(w), 3))
            c_pt = _g_div(_g_sq(_g_lin(9, z, -1, w)), 24)
    else:
        y = w
        if not exceptional:
            a_pt = z2
            b_pt = _g_lin(1, z2, -1, _g_div(_g_sq(_g_lin(x, z, -1, y)), x * (x - 1)))
            c_pt = _g_div(_g_sq(y), x)
        elif x == 5:
            a_pt = _g_scale(5, z2)
            b_pt = _g_lin(5, z2, -1, _g_div(_g_sq(_g_lin(5, z, -1, y)), 4))
            c_pt = _g_sq(y)
        else:
            a_pt = _g_scale(3, z2)
            b_pt = _g_lin(3, z2, -1, _g_div(_g_sq(_g_lin(9, z, -1, y)), 24))
            c_pt = _g_div(_g_sq(y), 3)
    try:
        quad = LatticeQuad((0, 0), a_pt, b_pt, c_pt)
    except QuadError as exc:
        raise InvariantViolation(f"construction for {sol} is not simple: {exc}") from exc
    sides = declared_sides(case, sol)
    if side_lengths(quad) != sides:
        raise InvariantViolation(f"constructed sides {side_lengths(quad)} != {sides}")
    sigma, tau = ratio_pair(case, x)
    return Construction(quad, sides, sigma, tau, case, exceptional, dec)


# ---------------------------------------------------------------------------
# Realizing prescribed side lengths

DEFAULT_REALIZE_BUDGET = 5 * 10**7


class BudgetExceeded(ValueError):
    pass


def lattice_vectors(length: int) -> list[tuple[int, int]]:
    """Every lattice vector of the given integer length."""
    return [pt for r in two_square_reps(length * length) for pt in signed_variants(*r)]


def labelled_key(quad: LatticeQuad) -> tuple[int, ...]:
    """Representative of a quad with O at the origin under lattice symmetries
    that keep the side sequence (a, b, c, d) in place."""
    s = side_lengths(quad)
    palindromic = (s.a, s.b) == (s.d, s.c)
    keys = []
    for g in POINT_GROUP:
        det = g[0] * g[3] - g[1] * g[2]
        if det < 0 and not palindromic:
            continue
        keys.append(tuple(v for pt in quad.transformed(g).vertices for v in pt))
    return max(keys)


def realize_sides(
    a: int,
    b: int,
    c: int,
    d: int,
    constraint: str = "any",
    budget: int = DEFAULT_REALIZE_BUDGET,
    force: bool = False,
) -> list[LatticeQuad]:
    """All simple counterclockwise lattice quads with O at the origin and
    ``|OA| = a, |AB| = b, |BC| = c, |CO| = d``, one per symmetry class.

    ``constraint`` may require the sides to be tangential (a + c = b + d) or
    extangential (a + b = c + d or a + d = b + c); unmet constraints give an
    empty list.
    """
    if min(a, b, c, d) <= 0:
        raise ValueError("side lengths must be positive")
    if constraint == "tangential" and a + c != b + d:
        return []
    if constraint == "extangential" and a + b != c + d and a + d != b + c:
        return []
    if constraint not in ("any", "tangential", "extangential"):
        raise ValueError(f"unknown constraint {constraint!r}")
    vec_a = [v for v in lattice_vectors(a) if v[0] > 0 and v[1] >= 0]
    vec_b, vec_c = lattice_vectors(b), lattice_vectors(c)
    work = len(vec_a) * len(vec_b) * len(vec_c)
    if work > budget and not force:
        raise BudgetExceeded(f"search needs about {work} steps (budget {budget})")
    d2 = d * d
    found: dict[tuple[int, ...], LatticeQuad] = {}
    for pa in vec_a:
        for vb in vec_b:
            pb = (pa[0] + vb[0], pa[1] + vb[1])
            for vc in vec_c:
                pc = (pb[0] + vc[0], pb[1] + vc[1])
                if norm2(pc) != d2:
                    continue
                try:
                    quad = LatticeQuad((0, 0), pa, pb, pc)
                except QuadError:
                    continue
                key = labelled_key(quad)
                if key not in found:
                    found[key] = LatticeQuad.from_flat(key)
    return [found[k] for k in sorted(found, reverse=True)]
