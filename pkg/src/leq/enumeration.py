"""Catalogs of lattice equable quadrilaterals.

Two independent routes are provided: a bounded exhaustive lattice search,
and enumeration of the generating equation followed by construction.  The
convex tangential classification runs the second route over the finite
ranges that the ratio pairs force.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .constructors import (
    ALLOWED_X,
    Case,
    ConstructionError,
    DioSolution,
    condition_failures,
    construct_tangential,
    declared_sides,
    lattice_vectors,
)
from .geometry import (
    Classification,
    LatticeQuad,
    QuadError,
    SideLengths,
    canonical_form,
    classify,
)
from .numkernel import isqrt
from .profiles import (
    ExtangentialProfile,
    TangentialProfile,
    check_identities,
    extangential_profile,
    tangential_identities,
    tangential_profile,
)

DEFAULT_PERIMETER_CAP = 100


class SearchLimitError(ValueError):
    pass


class ClassificationFailure(RuntimeError):
    """The convex classification did not produce exactly six quads."""


@dataclass(frozen=True)
class SearchBounds:
    perimeter_max: int
    shape: str | None = None  # "tangential", "extangential", "any" or None for either
    convexity: str | None = None  # "convex", "concave" or None
    kites: bool = True

    def __post_init__(self) -> None:
        if self.perimeter_max < 12:
            raise ValueError("perimeter_max must be at least 12")
        if self.shape not in (None, "tangential", "extangential", "any"):
            raise ValueError(f"unknown shape filter {self.shape!r}")
        if self.convexity not in (None, "convex", "concave"):
            raise ValueError(f"unknown convexity filter {self.convexity!r}")

    def accepts(self, cls: Classification) -> bool:
        if self.shape == "tangential" and not cls.tangential:
            return False
        if self.shape == "extangential" and not cls.extangential:
            return False
        if self.shape is None and not (cls.tangential or cls.extangential):
            return False
        if self.convexity == "convex" and not cls.convex:
            return False
        if self.convexity == "concave" and cls.convex:
            return False
        return self.kites or not cls.kite


@dataclass(frozen=True)
class CatalogEntry:
    quad: LatticeQuad
    sides: SideLengths
    classification: Classification
    tangential: TangentialProfile | None
    extangential: ExtangentialProfile | None
    provenance: str

    @property
    def perimeter(self) -> int:
        return self.sides.perimeter


def make_entry(quad: LatticeQuad, provenance: str) -> CatalogEntry:
    """Canonicalize a quad and attach its profiles."""
    quad = canonical_form(quad)
    cls = classify(quad)
    tan = tangential_profile(quad) if cls.tangential and cls.equable else None
    ext = extangential_profile(quad) if cls.extangential and cls.equable else None
    return CatalogEntry(quad, cls.sides, cls, tan, ext, provenance)


def _entry_order(e: CatalogEntry):
    return (e.perimeter, e.sides.as_tuple(), tuple(v for p in e.quad.vertices for v in p))


# ---------------------------------------------------------------------------
# Exhaustive lattice search

def _vector_table(max_len: int) -> np.ndarray:
    rows = [(x, y, n) for n in range(1, max_len + 1) for x, y in lattice_vectors(n)]
    return np.array(rows, dtype=np.int64).reshape(-1, 3)


def _scan_first_vertices(args) -> list[tuple[int, ...]]:
    """Raw hits ``(Ax, Ay, Bx, By, Cx, Cy)`` for a slice of first vertices."""
    firsts, table, perimeter_max = args
    vx, vy, vl = table[:, 0], table[:, 1], table[:, 2]
    hits = []
    for ax, ay, a in firsts:
        # B = A + w with cross(A, B) > 0 and room left for two more sides
        keep = (ax * vy - ay * vx > 0) & (a + vl <= perimeter_max - 2)
        bx, by, b = ax + vx[keep], ay + vy[keep], vl[keep]
        two_ka = ax * by - ay * bx
        # outer product over the third side vector
        cx = bx[:, None] + vx[None, :]
        cy = by[:, None] + vy[None, :]
        two_kc = bx[:, None] * vy[None, :] - by[:, None] * vx[None, :]
        two_area = two_ka[:, None] + two_kc
        # equability fixes d linearly: 2*area = 2*(a + b + c + d)
        d2 = two_area - 2 * (a + b[:, None] + vl[None, :])
        ok = (
            (two_kc > 0)
            & (ax * cy - ay * cx > 0)
            & (d2 >= 2)
            & (d2 % 2 == 0)
            & (a + b[:, None] + vl[None, :] + d2 // 2 <= perimeter_max)
        )
        ok &= cx * cx + cy * cy == (d2 // 2) ** 2
        for i, j in zip(*np.nonzero(ok)):
            hits.append((ax, ay, int(bx[i]), int(by[i]), int(cx[i, j]), int(cy[i, j])))
    return hits


def brute_force_search(
    bounds: SearchBounds, cap: int = DEFAULT_PERIMETER_CAP, workers: int = 1
) -> list[CatalogEntry]:
    """Every LEQ with perimeter at most ``bounds.perimeter_max`` passing the
    filters, one canonical entry per lattice-congruence class.

    O is fixed at the origin and the labeling is chosen with the reflex
    vertex (if any) at B, so the triangles OAB, OBC and OAC are all
    positively oriented.  Rotations are removed by keeping A in the first
    quadrant; the remaining duplicates collapse under the canonical form.
    """
    pmax = bounds.perimeter_max
    if pmax > cap:
        raise SearchLimitError(f"perimeter_max {pmax} exceeds the cap {cap}")
    table = _vector_table((pmax - 1) // 2)
    firsts = [
        (int(x), int(y), int(n)) for x, y, n in table if x > 0 and y >= 0
    ]
    if workers > 1:
        chunks = [firsts[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            raw = [h for part in pool.map(_scan_first_vertices, [(c, table, pmax) for c in chunks]) for h in part]
    else:
        raw = _scan_first_vertices((firsts, table, pmax))
    seen: dict[tuple[int, ...], CatalogEntry] = {}
    for ax, ay, bx, by, cx, cy in sorted(set(raw)):
        try:
            quad = LatticeQuad((0, 0), (ax, ay), (bx, by), (cx, cy))
        except QuadError:
            continue
        cls = classify(quad)
        if not bounds.accepts(cls):
            continue
        canon = canonical_form(quad)
        key = tuple(v for p in canon.vertices for v in p)
        if key not in seen:
            seen[key] = make_entry(canon, "BruteForce")
    return sorted(seen.values(), key=_entry_order)


# ---------------------------------------------------------------------------
# Generating-equation route

@dataclass(frozen=True)
class GenSolution:
    solution: DioSolution
    cases: tuple[Case, ...]

    def sides(self, case: Case) -> SideLengths:
        return declared_sides(case, self.solution)


def _viable_cases(sol: DioSolution) -> tuple[Case, ...]:
    cases = [Case.I]
    if sol.x != 2:
        cases.append(Case.II)
    return tuple(c for c in cases if not condition_failures(c, sol))


def enumerate_gen_solutions(x: int, c_max: int, v_max: int) -> list[GenSolution]:
    """All ``(u, v, c)`` with ``0 < c <= c_max``, ``0 < v <= v_max`` solving the
    generating equation for ``x`` whose sides pass conditions (i)-(iii) in at
    least one case."""
    if x not in ALLOWED_X:
        raise ValueError(f"x must be one of {ALLOWED_X}")
    out = []
    for c in range(1, c_max + 1):
        if (x == 2 and c % 2) or (x == 3 and c % 3 == 0):
            continue
        shift2 = (x - 1) * c  # twice the shift
        for v in range(1, v_max + 1):
            four_u2 = 4 * v * v - (2 * v - shift2) ** 2 - 16 * x * x
            if four_u2 < 0 or four_u2 % 4:
                continue
            root = isqrt(four_u2 // 4)
            if root is None:
                continue
            for u in sorted({root, -root}):
                if (u + v) % x:
                    continue
                sol = DioSolution(x, u, v, c)
                cases = _viable_cases(sol)
                if cases:
                    out.append(GenSolution(sol, cases))
    return out


# bounds that the ratio pairs force on convex tangential LEQs, written as
# (scale on v, offset multiple of c, limit): scale*c*v - offset*c^2 <= limit
_CONVEX_BOUNDS = {2: (2, 1, 32), 3: (1, 1, 18), 5: (1, 2, 25), 9: (1, 4, 41)}


def convex_candidate_pairs(tau: int) -> list[tuple[int, int]]:
    """``(c, v)`` pairs left by the finite bound for the given tau."""
    scale, offset, limit = _CONVEX_BOUNDS[tau]
    pairs = []
    c = 1
    while c <= limit:
        if tau == 2 and c % 2:
            c += 1
            continue
        v = offset * c // scale + 1
        while c * (scale * v - offset * c) <= limit:
            if scale * v > offset * c:
                pairs.append((c, v))
            v += 1
        c += 1
    return pairs


def _convex_normal_form(s: SideLengths, tau: int) -> bool:
    if tau == 2:
        return s.a % 2 == 0 and s.c % 2 == 0 and s.b <= s.d
    return s.b == min(s.as_tuple())


@dataclass
class ConvexClassification:
    entries: list[CatalogEntry]
    candidate_counts: dict[int, int]
    solutions: dict[int, list[DioSolution]] = field(default_factory=dict)


def convex_tangential_report() -> ConvexClassification:
    """Run the finite convex case analysis for tau in {2, 3, 5, 9}."""
    counts: dict[int, int] = {}
    sols: dict[int, list[DioSolution]] = {}
    found: dict[tuple[int, ...], CatalogEntry] = {}
    for tau in ALLOWED_X:
        pairs = convex_candidate_pairs(tau)
        counts[tau] = len(pairs)
        sols[tau] = []
        for c, v in pairs:
            if tau == 3 and c % 3 == 0:
                continue
            four_u2 = 4 * v * v - (2 * v - (tau - 1) * c) ** 2 - 16 * tau * tau
            if four_u2 < 0 or four_u2 % 4 or isqrt(four_u2 // 4) is None:
                continue
            root = isqrt(four_u2 // 4)
            half_range = Fraction((tau - 1) * c, 2)
            for u in sorted({root, -root}):
                if (u + v) % tau or not (-half_range < u <= half_range):
                    continue
                sol = DioSolution(tau, u, v, c)
                s = declared_sides(Case.I, sol)
                if min(s.as_tuple()) <= 0 or condition_failures(Case.I, sol):
                    continue
                if (s.b + s.c) * tau <= s.a + s.c or not _convex_normal_form(s, tau):
                    continue
                try:
                    built = construct_tangential(Case.I, sol)
                except ConstructionError:
                    continue
                if not classify(built.quad).convex:
                    continue
                sols[tau].append(sol)
                entry = make_entry(built.quad, "Diophantine")
                found.setdefault(tuple(v for p in entry.quad.vertices for v in p), entry)
    entries = sorted(found.values(), key=_entry_order)
    return ConvexClassification(entries, counts, sols)


def classify_convex_tangential() -> list[CatalogEntry]:
    """The convex tangential LEQs; anything other than six is a hard failure."""
    report = convex_tangential_report()
    if len(report.entries) != 6:
        raise ClassificationFailure(
            f"expected 6 convex tangential LEQs, found {len(report.entries)}"
        )
    return report.entries


# ---------------------------------------------------------------------------
# Catalog verification

SEVEN_VALUE_PAIRS = (
    {Fraction(9), Fraction(9, 8)},
    {Fraction(5), Fraction(5, 4)},
    {Fraction(3), Fraction(3, 2)},
    {Fraction(2)},
)
INTEGRAL_INCENTER_VALUES = {Fraction(2), Fraction(3), Fraction(5), Fraction(5, 4), Fraction(3, 2)}


def allowed_sigma_t(sigma: Fraction, t: Fraction) -> bool:
    """Membership in the list of possible (Sigma, T) for non-kite extangential LEQs."""
    if (sigma, t) in ((9, 18), (18, 50)):
        return True
    if t - sigma == 5 and sigma % 5 == 0 and isqrt(int(sigma) // 5) is not None:
        return sigma.denominator == 1
    if t - sigma == 1 and sigma.denominator == 1 and isqrt(int(sigma)) is not None:
        return True
    return False


@dataclass(frozen=True)
class Violation:
    sides: tuple[int, int, int, int]
    vertices: tuple
    check: str


@dataclass
class CatalogReport:
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    counts: Counter = field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        return not self.violations

    def failed(self, prefix: str = "") -> list[Violation]:
        return [v for v in self.violations if v.check.startswith(prefix)]


def verify_catalog(entries) -> CatalogReport:
    """Run every identity on every entry and collect violations by name."""
    report = CatalogReport()
    for e in entries:
        report.checked += 1

        def flag(name: str, entry=e) -> None:
            report.violations.append(Violation(entry.sides.as_tuple(), entry.quad.vertices, name))

        if not e.classification.equable:
            flag("equable")
        if e.tangential is not None:
            tp = e.tangential
            report.counts["tangential"] += 1
            for name, ok in tangential_identities(tp).items():
                if name == "incenter_integral":
                    continue
                if not ok:
                    flag(f"tangential:{name}")
            if {tp.sigma, tp.tau} <= INTEGRAL_INCENTER_VALUES:
                report.counts["integral_class"] += 1
                if any(v.denominator != 1 for v in tp.incenter):
                    flag("tangential:incenter_integral")
            elif any(v.denominator != 1 for v in tp.incenter):
                report.counts["nonintegral_incenter"] += 1
        if e.extangential is not None:
            xp = e.extangential
            report.counts["extangential"] += 1
            for name, ok in check_identities(xp).items():
                if not ok:
                    flag(f"extangential:{name}")
            if not xp.kite:
                report.counts["extangential_nonkite"] += 1
                if not allowed_sigma_t(xp.Sigma, xp.T):
                    flag("extangential:allowed_pair")
    return report
