"""One test per acceptance criterion; exact arithmetic, zero tolerance."""
import io
import time
from fractions import Fraction

from leq.cli import run
from leq.constructors import construct_tangential, declared_sides, is_exceptional, ratio_pair
from leq.enumeration import (
    INTEGRAL_INCENTER_VALUES,
    SEVEN_VALUE_PAIRS,
    SearchBounds,
    allowed_sigma_t,
    brute_force_search,
    convex_tangential_report,
    enumerate_gen_solutions,
    verify_catalog,
)
from leq.families import generate_family
from leq.geometry import LatticeQuad, canonical_key, classify, side_lengths
from leq.numkernel import lucas_fibonacci_odd, pell_solutions
from leq.openproblem import (
    AllFactorsGood,
    BadFactor,
    Outcome,
    factor_residues,
    mollin_test,
    mu_sequence,
    screen_M,
    wei_test,
)
from leq.profiles import tangential_profile

CONVEX_SIX = [(4, 4, 4, 4), (8, 5, 2, 5), (5, 3, 4, 6), (5, 5, 5, 5), (15, 3, 3, 15), (37, 1, 5, 41)]

TANFAM = [
    (2, 1, (8, 6), (8, 0), (18, 24), (10, 6, 26, 30)),
    (7, 4, (18, 24), (8, 0), (56, 90), (30, 26, 102, 106)),
    (26, 15, (56, 90), (8, 0), (198, 336), (106, 102, 386, 390)),
    (97, 56, (198, 336), (8, 0), (728, 1254), (390, 386, 1446, 1450)),
]
EXTANFAM = [
    (7, 5, (24, 45), (24, 48), (15, 36), (51, 3, 15, 39)),
    (41, 29, (195, 216), (204, 228), (144, 165), (291, 15, 87, 219)),
    (239, 169, (1188, 1209), (1248, 1272), (891, 912), (1695, 87, 507, 1275)),
    (1393, 985, (6975, 6996), (7332, 7356), (5244, 5265), (9879, 507, 2955, 7431)),
]
EXTANFAM2A = [
    (29, 1, 25, 5),
    (213481, 689, 184925, 29245),
    (1579332409, 5097221, 1368075125, 216354505),
]
EXTANFAM2B = [
    ((21, 20), (20, 20), (0, 5)),
    ((124080, 173719), (124480, 174280), (16995, 23800)),
    ((1285155641, 917968320), (1289303420, 920931020), (176054900, 125753505)),
]
# family: (equation, axis, incenter scale, lambda)
KITES = {
    "K1": (lambda n, i: n * n - 5 * i * i == 4, (2, 1), lambda n, i: Fraction(n + i, 2), Fraction(1, 5)),
    "K2": (lambda n, i: n * n - 5 * i * i == 1, (2, 1), lambda n, i: 2 * (n + 2 * i), Fraction(4, 5)),
    "K3": (lambda n, i: n * n - 2 * i * i == 1, (1, 1), lambda n, i: 2 * (n + i), Fraction(1, 2)),
    "K4": (lambda n, i: 2 * n * n - i * i == 1, (1, 1), lambda n, i: 2 * (3 * n + 2 * i), Fraction(8, 9)),
}
KITE_MIDPOINT = {
    "K1": lambda n, i: Fraction(n + 5 * i, 2),
    "K2": lambda n, i: Fraction(2 * n + 5 * i),
    "K3": lambda n, i: Fraction(2 * (n + 2 * i)),
    "K4": lambda n, i: Fraction(3 * (4 * n + 3 * i), 2),
}
KITE_B = {"K1": lambda n, i: n, "K2": lambda n, i: 4 * n, "K3": lambda n, i: 4 * n, "K4": lambda n, i: 12 * n}
FIRST_SEVEN_RESIDUES = {
    0: [1],
    1: [7, 7, 1],
    2: [7, 7, 7, 7],
    3: [7, 1, 7],
    4: [1, 1, 1],
    5: [1, 7, 7, 1, 7, 7],
    6: [7, 1, 7, 7, 7, 1],
}


def _multiset(tuples):
    return sorted(tuple(sorted(t)) for t in tuples)


def test_criterion_01_convex_tangential_two_routes(criterion):
    t0 = time.perf_counter()
    out = io.StringIO()
    code = run(["verify-corollaries"], out)
    report = convex_tangential_report()
    dio = {canonical_key(e.quad) for e in report.entries}
    dio_sides = [e.sides.as_tuple() for e in report.entries]
    brute = [
        e for e in brute_force_search(SearchBounds(84))
        if e.classification.tangential and e.classification.convex
    ]
    brute_keys = {canonical_key(e.quad) for e in brute}
    elapsed = time.perf_counter() - t0
    ok = (
        code == 0
        and len(dio) == 6
        and _multiset(dio_sides) == _multiset(CONVEX_SIX)
        and brute_keys == dio
        and elapsed < 120
    )
    criterion(1, ok, f"six convex tangential LEQs, diophantine == brute force(84), {elapsed:.2f}s")


def test_criterion_02_concave_extangential_unique(criterion):
    t0 = time.perf_counter()
    found = brute_force_search(SearchBounds(30, "extangential", "concave", kites=False))
    elapsed = time.perf_counter() - t0
    ok = (
        len(found) == 1
        and found[0].sides.as_tuple() == (13, 2, 5, 10)
        and found[0].quad.vertices == ((0, 0), (12, 5), (10, 5), (6, 8))
        and elapsed < 30
    )
    criterion(2, ok, f"{len(found)} concave extangential non-kite up to perimeter 30, {elapsed:.2f}s")


def test_criterion_03_seven_value_law(criterion):
    tangential = [e for e in brute_force_search(SearchBounds(84, "tangential")) if e.tangential]
    bad = [
        e.sides.as_tuple()
        for e in tangential
        if {e.tangential.sigma, e.tangential.tau} not in SEVEN_VALUE_PAIRS
        or e.tangential.sigma + e.tangential.tau != e.tangential.sigma * e.tangential.tau
    ]
    criterion(3, not bad and len(tangential) > 0, f"{len(tangential)} tangential entries, {len(bad)} violations")


def test_criterion_04_golden_tables(criterion):
    t0 = time.perf_counter()
    fails = []
    nested = generate_family("NestedTangential", 4)
    uv = pell_solutions(3, 1, 4)
    for m, (u, v, a_i, b, a_next, sides), got_uv in zip(nested, TANFAM, uv):
        if got_uv != (u, v) or m.quad.vertices != ((0, 0), a_i, b, a_next) or m.sides.as_tuple() != sides:
            fails.append(f"tanfam {u},{v}")
    extan = generate_family("Extan918", 4, start=2)
    uv = pell_solutions(2, -1, 5)[1:]
    for m, (u, v, a, b, c, sides), got_uv in zip(extan, EXTANFAM, uv):
        if got_uv != (u, v) or m.quad.vertices != ((0, 0), a, b, c) or m.sides.as_tuple() != sides:
            fails.append(f"extanfam {u},{v}")
    e4550 = generate_family("Extan4550", 3)
    if [m.sides.as_tuple() for m in e4550] != EXTANFAM2A:
        fails.append("extanfam2a")
    if [m.quad.vertices[1:] for m in e4550] != EXTANFAM2B:
        fails.append("extanfam2b")
    for fam, (equation, axis, inc, lam) in KITES.items():
        for m in generate_family(fam, 3):
            n, i = m.claims["n"], m.claims["i"]
            prof = tangential_profile(m.quad)
            expected = (inc(n, i) * axis[0], inc(n, i) * axis[1])
            half_b = Fraction(KITE_B[fam](n, i), 2)
            table_lam = (Fraction(inc(n, i)) - half_b) / (KITE_MIDPOINT[fam](n, i) - half_b)
            if not equation(n, i) or prof.incenter != expected or table_lam != lam:
                fails.append(f"{fam} n={n}")
    elapsed = time.perf_counter() - t0
    criterion(4, not fails and elapsed < 5, f"tables reproduced, mismatches {fails}, {elapsed:.2f}s")


def test_criterion_05_incenter_integrality(criterion):
    catalog = brute_force_search(SearchBounds(84, "tangential"))
    bad = [
        e.sides.as_tuple()
        for e in catalog
        if e.tangential
        and {e.tangential.sigma, e.tangential.tau} <= INTEGRAL_INCENTER_VALUES
        and any(v.denominator != 1 for v in e.tangential.incenter)
    ]
    first = tangential_profile(LatticeQuad((0, 0), (40, 9), (36, 12), (35, 12))).incenter
    second = tangential_profile(LatticeQuad((0, 0), (16, 63), (12, 60), (11, 60))).incenter
    ok = not bad and first == (Fraction(106, 3), 10) and second == (Fraction(38, 3), 58)
    shown = ", ".join("(" + ", ".join(str(Fraction(v)) for v in pt) + ")" for pt in (first, second))
    criterion(5, ok, f"lattice incenters where required ({len(bad)} violations); counterexamples {shown}")


def test_criterion_06_constructor_roundtrip(criterion):
    t0 = time.perf_counter()
    checked, fails, exceptional = 0, [], set()
    for x in (2, 3, 5, 9):
        for g in enumerate_gen_solutions(x, 20, 200):
            for case in g.cases:
                built = construct_tangential(case, g.solution)
                checked += 1
                prof = tangential_profile(built.quad)
                sides_ok = side_lengths(built.quad) == declared_sides(case, g.solution)
                if not sides_ok or {prof.sigma, prof.tau} != set(ratio_pair(case, x)):
                    fails.append((case.value, g.solution))
                if built.exceptional and is_exceptional(g.solution):
                    exceptional.add((x, built.sides.as_tuple()))
    elapsed = time.perf_counter() - t0
    ok = (
        not fails
        and (5, (125, 5, 10, 130)) in exceptional
        and (9, (255, 3, 15, 267)) in exceptional
        and elapsed < 60
    )
    criterion(
        6,
        ok,
        f"{checked} constructions round-trip, {len(exceptional)} exceptional-branch quads "
        f"incl. (125,5,10,130) and (255,3,15,267), {elapsed:.2f}s",
    )


def test_criterion_07_extangential_identities(criterion):
    catalog = brute_force_search(SearchBounds(84, "extangential"))
    report = verify_catalog(catalog)
    ext = report.failed("extangential")
    nonkite60 = [
        e for e in brute_force_search(SearchBounds(60, "extangential", kites=False)) if e.extangential
    ]
    outside = [(e.extangential.Sigma, e.extangential.T) for e in nonkite60
               if not allowed_sigma_t(e.extangential.Sigma, e.extangential.T)]
    ok = not ext and report.counts["extangential"] > 0 and not outside and nonkite60
    criterion(
        7,
        ok,
        f"{report.counts['extangential']} extangential entries, {len(ext)} identity violations; "
        f"{len(nonkite60)} non-kites at perimeter 60, {len(outside)} with (Sigma, T) outside the allowed set",
    )


def test_criterion_08_giant_example(criterion):
    t0 = time.perf_counter()
    out = io.StringIO()
    code = run(["verify-giant"], out)
    elapsed = time.perf_counter() - t0
    ok = code == 0 and '"Sigma": 68445' in out.getvalue() and '"T": 68450' in out.getvalue() and elapsed < 1
    criterion(8, ok, f"28-digit extangential LEQ verified, {elapsed:.3f}s")


def test_criterion_09_open_problem(criterion):
    t0 = time.perf_counter()
    bound = 10**8
    expected_bad = {1: 23, 2: 79, 3: 47, 5: 71, 6: 223}
    fails = []
    for term in mu_sequence(6):
        verdict = screen_M(term, bound)
        residues = [r for _, r in factor_residues(term.M, bound)]
        if residues != FIRST_SEVEN_RESIDUES[term.i]:
            fails.append(f"residues i={term.i}")
        if term.i in expected_bad:
            if verdict != BadFactor(expected_bad[term.i]):
                fails.append(f"i={term.i} {verdict}")
        elif term.i == 4:
            if verdict != AllFactorsGood((41, 45245801, 63018038201)):
                fails.append(f"i=4 {verdict}")
            elif wei_test(verdict.primes) is not Outcome.NO_SOLUTION_BY_QUARTIC_PRODUCT:
                fails.append("i=4 wei")
        elif verdict != AllFactorsGood((41,)):
            fails.append(f"i=0 {verdict}")
    if mollin_test(41) is not Outcome.NO_SOLUTION_BY_ODD_PERIOD:
        fails.append("mollin 41")
    elapsed = time.perf_counter() - t0
    criterion(9, not fails and elapsed < 60, f"first seven M_i screened, mismatches {fails}, {elapsed:.2f}s")


def test_criterion_10_pell_golden(criterion):
    checks = {
        "D=3,N=1": pell_solutions(3, 1, 4) == [(2, 1), (7, 4), (26, 15), (97, 56)],
        "D=2,N=-1": pell_solutions(2, -1, 5) == [(1, 1), (7, 5), (41, 29), (239, 169), (1393, 985)],
        "D=74,N=-1": pell_solutions(74, -1, 2) == [(43, 5), (318157, 36985)],
        "D=5,N=-4": pell_solutions(5, -4, 5) == lucas_fibonacci_odd(5),
    }
    fails = [k for k, v in checks.items() if not v]
    criterion(10, not fails, f"Pell golden values, mismatches {fails}")
