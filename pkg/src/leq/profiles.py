"""Incircle and excircle data of equable quadrilaterals.

For a tangential equable quad the inradius is 2 and the incenter lies on
the Newton line through the diagonal midpoints ``M_A = (A + C)/2`` and
``M_O = (O + B)/2``.  Writing the incenter as ``lam*M_A + (1 - lam)*M_O``
gives ``lam = 1/sigma`` where ``sigma`` and ``tau`` are the two ratio
invariants below.  The extangential side is analogous with the excircle
radius ``2(a + b)/(a - c)`` and the pair ``(Sigma, T)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import (
    LatticeQuad,
    QuadError,
    SideLengths,
    b_in_circumcircle,
    classify,
    diagonals_squared,
    is_cyclic,
    reflex_vertex,
    side_lengths,
    signed_areas,
)
from .numkernel import isqrt

FracPoint = tuple[Fraction, Fraction]

_LABEL_INDEX = {"O": 0, "A": 1, "B": 2, "C": 3}


class ProfileError(ValueError):
    pass


def _midpoints(quad: LatticeQuad) -> tuple[FracPoint, FracPoint]:
    o, a, b, c = quad.vertices
    m_a = (Fraction(a[0] + c[0], 2), Fraction(a[1] + c[1], 2))
    m_o = (Fraction(o[0] + b[0], 2), Fraction(o[1] + b[1], 2))
    return m_a, m_o


def newton_line_coordinate(quad: LatticeQuad, center: FracPoint) -> Fraction | None:
    """``lam`` with ``center = lam*M_A + (1 - lam)*M_O``.

    Returns ``None`` for parallelograms, where the two midpoints coincide.
    Raises :class:`ProfileError` if ``center`` is off the Newton line.
    """
    m_a, m_o = _midpoints(quad)
    dx, dy = m_a[0] - m_o[0], m_a[1] - m_o[1]
    if dx == 0 and dy == 0:
        return None
    ex, ey = center[0] - m_o[0], center[1] - m_o[1]
    if dx * ey != dy * ex:
        raise ProfileError("center is not on the Newton line")
    return ex / dx if dx != 0 else ey / dy


def _reflex_at_b(quad: LatticeQuad) -> LatticeQuad:
    label = reflex_vertex(quad)
    if label in (None, "B"):
        return quad
    return quad.rotated_labels((_LABEL_INDEX[label] - 2) % 4)


def _center(quad: LatticeQuad, scale: Fraction) -> FracPoint:
    """``O + scale*(a*C + d*A)/K_O`` with vectors taken from O."""
    s = side_lengths(quad)
    a_vec, _, c_vec = quad.relative()
    k_o = Fraction(signed_areas(quad).two_ko, 2)
    f = scale / k_o
    return (
        quad.o[0] + f * (s.a * c_vec[0] + s.d * a_vec[0]),
        quad.o[1] + f * (s.a * c_vec[1] + s.d * a_vec[1]),
    )


# ---------------------------------------------------------------------------
# Tangential

@dataclass(frozen=True)
class TangentialProfile:
    quad: LatticeQuad
    sides: SideLengths
    sigma: Fraction
    tau: Fraction
    delta: int
    incenter: FracPoint
    lam: Fraction | None
    kite: bool
    rhombus_pairs: tuple[tuple[Fraction, Fraction], ...] = ()


def sigma_tau(s: SideLengths, delta: int) -> tuple[Fraction, Fraction]:
    """The ratio pair from side lengths and the circumcircle sign ``delta``."""
    a, b, c, d = s.as_tuple()
    radicand = a * b * c * d - 4 * (a + c) ** 2
    root = isqrt(radicand)
    if root is None:
        raise ProfileError(f"abcd - 4(a+c)^2 = {radicand} is not a square")
    sigma = Fraction(a * d + b * c + 2 * delta * root, 16 + (a - b) ** 2)
    tau = Fraction(a * b + c * d - 2 * delta * root, 16 + (a - d) ** 2)
    return sigma, tau


def tangential_profile(quad: LatticeQuad) -> TangentialProfile:
    """Ratio invariants, incenter and Newton-line coordinate of a tangential LEQ.

    A concave input whose reflex vertex is not B is relabelled (a rotation of
    labels only, so coordinates are kept).
    """
    cls = classify(quad)
    if not (cls.tangential and cls.equable):
        raise ProfileError("not an equable tangential quadrilateral")
    quad = _reflex_at_b(quad)
    s = side_lengths(quad)
    ar = signed_areas(quad)
    # delta is immaterial on cyclic quads, where the square-root term vanishes
    delta = 0 if is_cyclic(quad) else (1 if b_in_circumcircle(quad) else -1)
    kite = cls.kite
    if kite:
        sigma, tau = sigma_tau(s, delta)
    else:
        sigma = Fraction(ar.two_ko - 2 * (s.a + s.c), 2 * (s.a - s.b))
        tau = Fraction(ar.two_ka - 2 * (s.a + s.c), 2 * (s.a - s.d))
        if (sigma, tau) != sigma_tau(s, delta):
            raise ProfileError("area quotients disagree with the side formula")
    incenter = _center(quad, Fraction(1))
    lam = newton_line_coordinate(quad, incenter)
    pairs = ()
    if cls.rhombus:
        pairs = tuple(sorted({sigma_tau(s, 1), sigma_tau(s, -1)}))
    return TangentialProfile(quad, s, sigma, tau, delta, incenter, lam, kite, pairs)


# ---------------------------------------------------------------------------
# Extangential

@dataclass(frozen=True)
class DerivedVariables:
    """Substitution used for the arithmetic of the pair (Sigma, T).

    ``x = a + b``, ``y = a - c``, ``z = c - b`` with the labeling ``a >= d``,
    ``k = 8x^2 / T`` and ``sigma_prime = T - Sigma``.
    """

    x: int
    y: int
    z: int
    k: Fraction
    sigma_prime: Fraction
    h: Fraction


@dataclass(frozen=True)
class ExtangentialProfile:
    quad: LatticeQuad
    sides: SideLengths
    Sigma: Fraction
    T: Fraction
    exradius: Fraction
    excenter: FracPoint
    lam: Fraction | None
    derived: DerivedVariables
    concave: bool
    kite: bool


def _excircle_outside_b(quad: LatticeQuad) -> LatticeQuad:
    for k in range(4):
        q = quad.rotated_labels(k)
        s = side_lengths(q)
        if s.a + s.b == s.c + s.d and s.a > s.c:
            return q
    raise ProfileError("no labeling with a + b = c + d and a > c")


def extangential_profile(quad: LatticeQuad) -> ExtangentialProfile:
    """Excircle data of an extangential LEQ (kites included, flagged).

    Labels are rotated so the excircle lies outside B, i.e. ``a + b = c + d``
    with ``a > c``.
    """
    cls = classify(quad)
    if not (cls.extangential and cls.equable):
        raise ProfileError("not an equable extangential quadrilateral")
    quad = _excircle_outside_b(quad)
    s = side_lengths(quad)
    p2, q2 = diagonals_squared(quad)
    a, b, c, d = s.as_tuple()
    big_sigma = Fraction(q2 - (a - d) ** 2, 2)
    big_t = Fraction((a + b) ** 2 - p2, 2)
    exradius = Fraction(2 * (a + b), a - c)
    excenter = _center(quad, exradius / 2)
    lam = newton_line_coordinate(quad, excenter)
    # reflecting swaps a<->d and b<->c, which flips the sign of c - b
    if a < d:
        a, b, c, d = d, c, b, a
    x, y, z = a + b, a - c, c - b
    derived = DerivedVariables(
        x=x,
        y=y,
        z=z,
        k=Fraction(8 * x * x) / big_t,
        sigma_prime=big_t - big_sigma,
        h=Fraction(x, y),
    )
    return ExtangentialProfile(
        quad=quad,
        sides=s,
        Sigma=big_sigma,
        T=big_t,
        exradius=exradius,
        excenter=excenter,
        lam=lam,
        derived=derived,
        concave=not cls.convex,
        kite=cls.kite,
    )


def check_identities(profile: ExtangentialProfile) -> dict[str, bool]:
    """Evaluate the algebraic relations every extangential LEQ satisfies.

    Returns a mapping from relation name to truth value.  The number-theoretic
    hypotheses on ``(x, y, z, k)`` only make sense for non-kites and are left
    out for kites.
    """
    q = profile.quad
    s = profile.sides
    a, b, c, d = s.as_tuple()
    ar = signed_areas(q)
    k_o, k_a = Fraction(ar.two_ko, 2), Fraction(ar.two_ka, 2)
    k_b, k_c = Fraction(ar.two_kb, 2), Fraction(ar.two_kc, 2)
    p2, q2 = diagonals_squared(q)
    sig, t, r_e = profile.Sigma, profile.T, profile.exradius
    x = a + b
    eight_x2 = 8 * x * x
    out: dict[str, bool] = {}
    out["Sigma_T_integral"] = sig.denominator == 1 and t.denominator == 1
    out["sum_product"] = sig * t == Fraction(eight_x2, (a - c) ** 2) * (t - sig)
    out["weighted_relation"] = 2 * sig * t == x * x * (sig - 8) - (b - c) ** 2 * t
    out["Sigma_area_form"] = sig == 8 * (k_o - x) / (a - c)
    if a != d:
        out["T_area_form"] = t == Fraction(8 * x, (a - c) * (a - d)) * (x - k_a)
        out["p_squared"] = p2 == Fraction(8 * x, (a - c) * (a - d)) * (k_a - k_c) + x * x
    out["q_squared"] = q2 == 8 * (k_o - k_b) / (a - c) + (a - d) ** 2
    out["Sigma_above_8"] = sig > 8
    out["Sigma_below_T"] = sig < t
    out["Sigma_divides"] = sig.denominator == 1 and eight_x2 % sig.numerator == 0
    out["T_divides"] = t.denominator == 1 and eight_x2 % t.numerator == 0
    out["Sigma_Sigma_prime_not_8T"] = sig * (t - sig) != 8 * t
    out["concavity_test"] = (sig > 8 * Fraction(x, a - c)) == profile.concave
    out["not_self_intersecting"] = (c - b) * t < (a - b) * sig
    out["lambda_ratio"] = profile.lam == t / (t - sig)
    out["lambda_Sigma"] = profile.lam is not None and profile.lam * sig == 2 * r_e * r_e
    out["lambda_area_form"] = profile.lam == (r_e / 2) * x / (k_o - x)
    # excenter from the OAB triangle instead of OAC
    a_vec, b_vec, _ = q.relative()
    f = (r_e / 2) / k_a
    alt = (
        q.a[0] + f * (a * (b_vec[0] - a_vec[0]) + b * a_vec[0]),
        q.a[1] + f * (a * (b_vec[1] - a_vec[1]) + b * a_vec[1]),
    )
    out["excenter_two_ways"] = alt == profile.excenter
    if not profile.kite:
        dv = profile.derived
        k = dv.k
        out["nt_positive"] = dv.y > 0 and dv.z > 0 and k.denominator == 1 and k > 0
        out["nt_k_above_16"] = k > 16
        out["nt_k_above_yz"] = k > dv.y * dv.z
        out["nt_Sigma"] = k != 16 and sig == 8 * (dv.z**2 + k) / (k - 16)
        out["nt_Sigma_prime"] = dv.sigma_prime == dv.y**2 * sig / k
        out["nt_x"] = dv.x**2 == k * (sig + dv.sigma_prime) / 8
    return out


def tangential_identities(profile: TangentialProfile) -> dict[str, bool]:
    """Relations between sides, areas and (sigma, tau) for a tangential LEQ."""
    q = profile.quad
    a, b, c, d = profile.sides.as_tuple()
    ar = signed_areas(q)
    k_o, k_a = Fraction(ar.two_ko, 2), Fraction(ar.two_ka, 2)
    k_b, k_c = Fraction(ar.two_kb, 2), Fraction(ar.two_kc, 2)
    sig, tau = profile.sigma, profile.tau
    p2, q2 = diagonals_squared(q)
    out = {
        "sum_equals_product": sig + tau == sig * tau,
        "seven_values": {sig, tau} in ({9, Fraction(9, 8)}, {5, Fraction(5, 4)}, {3, Fraction(3, 2)}, {2}),
        "area_pair": (k_a - (a + b)) * (k_o - (a + d)) == b * d - a * c,
        "lambda_on_segment": profile.lam is None or 0 <= profile.lam <= 1,
        "incenter_integral": all(v.denominator == 1 for v in profile.incenter),
    }
    if profile.lam is not None:
        out["lambda_inverse_sigma"] = profile.lam == 1 / sig
    if not profile.kite:
        out["K_O_form"] = k_o == a + c + (a - b) * sig
        out["K_A_form"] = k_a == a + c + (b - c) * tau
        out["p_squared"] = p2 == 8 * (k_a - k_c) / (a - d) + (a - b) ** 2
        out["q_squared"] = q2 == 8 * (k_o - k_b) / (a - b) + (a - d) ** 2
    # incenter from the OAB triangle as a cross-check
    a_vec, b_vec, _ = q.relative()
    alt = tuple(
        q.a[i] + (a * (b_vec[i] - a_vec[i]) - b * a_vec[i]) / k_a for i in range(2)
    )
    out["incenter_two_ways"] = alt == profile.incenter
    return out


def is_lattice_equable(quad: LatticeQuad) -> bool:
    try:
        return classify(quad).equable
    except QuadError:
        return False
