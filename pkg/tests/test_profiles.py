from fractions import Fraction
from functools import lru_cache

import pytest
import sympy

from leq.enumeration import SearchBounds, brute_force_search
from leq.geometry import LatticeQuad
from leq.profiles import (
    ProfileError,
    check_identities,
    extangential_profile,
    is_lattice_equable,
    newton_line_coordinate,
    sigma_tau,
    tangential_identities,
    tangential_profile,
)


@lru_cache(maxsize=None)
def catalog():
    return tuple(brute_force_search(SearchBounds(60)))


def distances_to_sides(quad, center):
    p = sympy.Point(sympy.Rational(center[0]), sympy.Rational(center[1]))
    pts = [sympy.Point(*v) for v in quad.vertices]
    return [sympy.Line(pts[i], pts[(i + 1) % 4]).distance(p) for i in range(4)]


def as_rational_point(pt):
    return tuple(Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in pt)


def test_noninteger_incenters():
    first = LatticeQuad((0, 0), (40, 9), (36, 12), (35, 12))
    second = LatticeQuad((0, 0), (16, 63), (12, 60), (11, 60))
    for quad in (first, second):
        assert is_lattice_equable(quad)
    assert tangential_profile(first).incenter == (Fraction(106, 3), 10)
    assert tangential_profile(second).incenter == (Fraction(38, 3), 58)
    assert tangential_profile(first).lam == tangential_profile(second).lam == Fraction(8, 9)


def test_concave_tangential_incenter():
    q = LatticeQuad((0, 0), (16, 0), (12, 3), (12, 5))
    prof = tangential_profile(q)
    assert prof.sides.as_tuple() == (16, 5, 2, 13)
    assert prof.incenter == (10, 2)
    assert (prof.sigma, prof.tau) == (2, 2)


def test_nested_family_member():
    q = LatticeQuad((0, 0), (8, 6), (8, 0), (18, 24))
    prof = tangential_profile(q)
    assert prof.incenter == (10, 10)
    assert prof.lam == Fraction(1, 3)


def test_concave_extangential_profile():
    q = LatticeQuad((0, 0), (12, 5), (10, 5), (6, 8))
    prof = extangential_profile(q)
    assert (prof.Sigma, prof.T) == (18, 50)
    assert prof.exradius == Fraction(15, 4)
    assert prof.excenter == (Fraction(45, 4), Fraction(35, 4))
    assert prof.lam == Fraction(25, 16)
    assert all(check_identities(prof).values())


def test_convex_extangential_profile():
    q = LatticeQuad((0, 0), (21, 20), (20, 20), (0, 5))
    prof = extangential_profile(q)
    assert prof.sides.as_tuple() == (29, 1, 25, 5)
    assert (prof.Sigma, prof.T) == (45, 50)
    assert prof.excenter == (15, 35)
    assert prof.lam == 10


def test_rejects_wrong_kind():
    square = LatticeQuad((0, 0), (4, 0), (4, 4), (0, 4))
    with pytest.raises(ProfileError):
        extangential_profile(square)
    with pytest.raises(ProfileError):
        tangential_profile(LatticeQuad((0, 0), (3, 0), (3, 4), (0, 4)))


def test_sigma_tau_side_formula():
    # square: both ratio invariants are 2
    from leq.geometry import SideLengths

    assert sigma_tau(SideLengths(4, 4, 4, 4), 0) == (2, 2)


def test_incenter_is_two_from_every_side():
    for e in catalog():
        if e.tangential is None:
            continue
        dists = distances_to_sides(e.quad, e.tangential.incenter)
        assert dists == [2, 2, 2, 2], e.sides


def test_excenter_is_exradius_from_every_side_line():
    for e in catalog():
        if e.extangential is None:
            continue
        prof = e.extangential
        dists = distances_to_sides(e.quad, prof.excenter)
        r = sympy.Rational(prof.exradius.numerator, prof.exradius.denominator)
        assert dists == [r] * 4, e.sides


def test_newton_line_coordinate_matches_sympy():
    for e in catalog():
        prof = e.tangential or e.extangential
        if prof.lam is None:
            continue
        q = prof.quad
        m_a = sympy.Point(q.a).midpoint(sympy.Point(q.c))
        m_o = sympy.Point(q.o).midpoint(sympy.Point(q.b))
        center = sympy.Point(*[sympy.Rational(v.numerator, v.denominator) for v in
                               (prof.incenter if e.tangential else prof.excenter)])
        lam = sympy.Symbol("lam")
        sol = sympy.solve(lam * m_a.x + (1 - lam) * m_o.x - center.x, lam) or sympy.solve(
            lam * m_a.y + (1 - lam) * m_o.y - center.y, lam
        )
        assert Fraction(str(sol[0])) == prof.lam
        center_pt = prof.incenter if e.tangential else prof.excenter
        assert newton_line_coordinate(prof.quad, center_pt) == prof.lam


def test_identities_hold_on_catalog():
    for e in catalog():
        if e.tangential is not None:
            bad = [k for k, v in tangential_identities(e.tangential).items()
                   if not v and k != "incenter_integral"]
            assert not bad, (e.sides, bad)
        if e.extangential is not None:
            bad = [k for k, v in check_identities(e.extangential).items() if not v]
            assert not bad, (e.sides, bad)
