"""Screening the f = 2 extangential branch, and its side-length formulas.

A lattice equable extangential quad in the f = 2 branch needs integers with
``m^2 + 1 = 2 n^2`` and ``(m^2 - 8) Y^2 = 1 + 8 Z^2``.  Writing ``M = m^2 - 8``
the second equation becomes ``2 M Y^2 = X^2 + 2`` with ``X = 4Z``, and every
prime factor of M must then be 1 mod 8.  Only m divisible by 7 survive, and
those are ``m = 7 mu_i``.  This module runs the usual escalation on each
candidate: look for a factor 7 mod 8, then the quartic-symbol product, then
the parity of the continued-fraction period of ``sqrt(2M)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import isqrt, prod

from . import _data
from .geometry import LatticeQuad, SideLengths, cross, side_lengths, sub
from .numkernel import (
    is_probable_prime,
    iter_trial_divisors,
    quartic_residue_of_two,
    trial_bound_from_env,
)

DEFAULT_CF_STEP_CAP = 10**6


@dataclass(frozen=True)
class MuTerm:
    i: int
    mu: int

    @property
    def m(self) -> int:
        return 7 * self.mu

    @property
    def M(self) -> int:
        return self.m * self.m - 8


def mu_sequence(upto: int) -> list[MuTerm]:
    """Terms ``mu_0 .. mu_upto`` of ``mu_i = 198 mu_{i-1} - mu_{i-2}``."""
    if upto < 0:
        raise ValueError("upto must be non-negative")
    mus = [1, 199]
    while len(mus) <= upto:
        mus.append(198 * mus[-1] - mus[-2])
    return [MuTerm(i, mu) for i, mu in enumerate(mus[: upto + 1])]


def m_chain(count: int) -> list[int]:
    """Odd m with ``m^2 = 2n^2 - 1``: ``m_0 = 1, m_1 = 7, m_i = 6m_{i-1} - m_{i-2}``."""
    ms = [1, 7]
    while len(ms) < count:
        ms.append(6 * ms[-1] - ms[-2])
    return ms[:count]


def pell_partner(m: int) -> int | None:
    """n with ``m^2 + 1 = 2 n^2``, if there is one."""
    n = isqrt((m * m + 1) // 2)
    return n if 2 * n * n == m * m + 1 else None


# ---------------------------------------------------------------------------
# Verdicts


@dataclass(frozen=True)
class BadFactor:
    prime: int

    def __str__(self) -> str:
        return f"BadFactor({self.prime})"


@dataclass(frozen=True)
class AllFactorsGood:
    primes: tuple[int, ...]

    def __str__(self) -> str:
        return f"AllFactorsGood({list(self.primes)})"


@dataclass(frozen=True)
class Unknown:
    cofactor: int
    found: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"Unknown(cofactor with {len(str(self.cofactor))} digits)"


ScreenVerdict = BadFactor | AllFactorsGood | Unknown


class Outcome(enum.Enum):
    NO_SOLUTION_BY_ODD_PERIOD = "NoSolutionByOddPeriod"
    NO_SOLUTION_BY_QUARTIC_PRODUCT = "NoSolutionByQuarticProduct"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self) -> str:
        return self.value


def screen_M(term: MuTerm | int, trial_bound: int | None = None) -> ScreenVerdict:
    """Trial-divide M and stop at the first prime factor that is 7 mod 8.

    A plain integer is accepted in place of a term and screened as is.
    Primes above the bound can only show up as a cofactor that passes the
    probable-prime test.
    """
    n = term.M if isinstance(term, MuTerm) else int(term)
    if trial_bound is None:
        trial_bound = trial_bound_from_env()
    if trial_bound < 2:
        raise ValueError("trial bound must be at least 2")
    if n < 2:
        raise ValueError("nothing to screen")
    rest = n
    found: list[int] = []
    for p, k in iter_trial_divisors(n, trial_bound):
        if p % 8 == 7:
            return BadFactor(p)
        found.extend([p] * k)
        rest //= p**k
    if rest > 1:
        if not is_probable_prime(rest):
            return Unknown(rest, tuple(found))
        if rest % 8 == 7:
            return BadFactor(rest)
        found.append(rest)
    if all(p % 8 == 1 for p in found):
        return AllFactorsGood(tuple(sorted(found)))
    # not reachable for M = m^2 - 8, whose odd primes are all 1 or 7 mod 8
    return Unknown(1, tuple(found))


def factor_residues(n: int, trial_bound: int | None = None) -> list[tuple[int, int]]:
    """Full factorization as ``(prime, prime % 8)`` pairs with multiplicity."""
    if trial_bound is None:
        trial_bound = trial_bound_from_env()
    out, rest = [], n
    for p, k in iter_trial_divisors(n, trial_bound):
        out.extend([(p, p % 8)] * k)
        rest //= p**k
    if rest > 1:
        if not is_probable_prime(rest):
            raise ValueError("cofactor could not be split below the trial bound")
        out.append((rest, rest % 8))
    return out


def mollin_test(M: int, step_cap: int = DEFAULT_CF_STEP_CAP) -> Outcome:
    """Odd period of ``sqrt(2M)`` rules out ``2 M Y^2 = X^2 + 2``.

    The period is walked with the usual integer recurrence; if it has not
    closed after ``step_cap`` steps the answer is inconclusive.
    """
    d = 2 * M
    a0 = isqrt(d)
    if M < 1 or a0 * a0 == d:
        raise ValueError("2M must be a positive non-square")
    m, q, a = 0, 1, a0
    for length in range(1, step_cap + 1):
        m = a * q - m
        q = (d - m * m) // q
        a = (a0 + m) // q
        if a == 2 * a0:
            return Outcome.NO_SOLUTION_BY_ODD_PERIOD if length % 2 else Outcome.INCONCLUSIVE
    return Outcome.INCONCLUSIVE


def wei_test(primes) -> Outcome:
    """Product of ``(2/p)_4`` over distinct primes 1 mod 8; -1 excludes a solution."""
    primes = list(primes)
    if not primes or len(set(primes)) != len(primes):
        raise ValueError("expects a non-empty list of distinct primes")
    sign = prod(quartic_residue_of_two(p) for p in primes)
    return Outcome.NO_SOLUTION_BY_QUARTIC_PRODUCT if sign == -1 else Outcome.INCONCLUSIVE


@dataclass(frozen=True)
class PipelineResult:
    term: MuTerm
    screen: ScreenVerdict
    wei: Outcome | None = None
    mollin: Outcome | None = None

    @property
    def excluded(self) -> bool:
        return self.reason != "Inconclusive"

    @property
    def reason(self) -> str:
        if isinstance(self.screen, BadFactor):
            return str(self.screen)
        for o in (self.wei, self.mollin):
            if o is not None and o is not Outcome.INCONCLUSIVE:
                return str(o)
        return "Inconclusive"


def run_pipeline(
    term: MuTerm, trial_bound: int | None = None, step_cap: int = DEFAULT_CF_STEP_CAP
) -> PipelineResult:
    """Factor screen, then the quartic product, then the period parity."""
    verdict = screen_M(term, trial_bound)
    if not isinstance(verdict, AllFactorsGood):
        return PipelineResult(term, verdict)
    wei = wei_test(verdict.primes) if len(set(verdict.primes)) == len(verdict.primes) else None
    mollin = mollin_test(term.M, step_cap)
    return PipelineResult(term, verdict, wei, mollin)


# ---------------------------------------------------------------------------
# Listed divisor witnesses for 7 <= i <= 155


@dataclass(frozen=True)
class WitnessCheck:
    i: int
    prime: int
    divides: bool
    seven_mod_eight: bool

    @property
    def ok(self) -> bool:
        return self.divides and self.seven_mod_eight


def check_witnesses() -> list[WitnessCheck]:
    """Test each listed prime against the M it is claimed to divide."""
    last = len(_data.WITNESS_INDEX) + 6
    terms = mu_sequence(last)
    out = []
    for k, r in enumerate(_data.WITNESS_INDEX, start=1):
        p = _data.WITNESS_PRIMES[r - 1]
        out.append(WitnessCheck(k + 6, p, terms[k + 6].M % p == 0, p % 8 == 7))
    return out


# ---------------------------------------------------------------------------
# Side lengths in the f = 10 and f = 2 branches

_BRANCH_FACTOR = {"case_b": 10, "case_c": 2}


def case_sides(branch: str, m: int, n: int, Y: int, Z: int) -> SideLengths:
    """Sides ``(a, b, c, d)`` built from a solution of the branch equations.

    With ``h = f/2`` (5 or 1) the equations are ``m^2 + 1 = f n^2`` and
    ``(h m^2 - 8) Y^2 = h + 8 Z^2``; the sides are
    ``(h m n +- 2) Y +- 2 m Z`` in the sign pattern (+,+), (-,-), (-,+), (+,-).
    """
    try:
        f = _BRANCH_FACTOR[branch]
    except KeyError:
        raise ValueError(f"branch must be one of {sorted(_BRANCH_FACTOR)}") from None
    h = f // 2
    if m <= 0 or n <= 0 or Y <= 0 or Z < 0:
        raise ValueError("m, n, Y must be positive and Z non-negative")
    if m * m + 1 != f * n * n:
        raise ValueError(f"m^2 + 1 != {f} n^2")
    if (h * m * m - 8) * Y * Y != h + 8 * Z * Z:
        raise ValueError(f"({h} m^2 - 8) Y^2 != {h} + 8 Z^2")
    base = h * m * n
    a = (base + 2) * Y + 2 * m * Z
    b = (base - 2) * Y - 2 * m * Z
    c = (base - 2) * Y + 2 * m * Z
    d = (base + 2) * Y - 2 * m * Z
    if min(a, b, c, d) <= 0:
        raise ValueError("the formulas gave a non-positive side")
    if branch == "case_b" and m == 3:
        w = 111 * Y + 52 * Z
        if w * w - 74 * c * c != -25:
            raise ArithmeticError("W = 111Y + 52Z fails W^2 - 74c^2 = -25")
    return SideLengths(a, b, c, d)


def perimeter_lower_bound_case_c(m: int) -> int:
    """``floor(2 sqrt(2) m^2)``, below the perimeter of any f = 2 quad."""
    if m <= 0:
        raise ValueError("m must be positive")
    return isqrt(8 * m**4)


# ---------------------------------------------------------------------------
# The explicit 28-digit example


@dataclass
class GiantReport:
    checks: dict[str, bool] = field(default_factory=dict)
    sides: SideLengths | None = None
    Sigma: int | None = None
    T: int | None = None
    perimeter: int | None = None

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(self.checks.values())


def verify_giant_example() -> GiantReport:
    """Re-check the published m = 117 extangential LEQ with exact integers."""
    a_pt, b_pt, c_pt = _data.GIANT_A, _data.GIANT_B, _data.GIANT_C
    a, b, c, d = _data.GIANT_SIDES
    s_a, s_b, s_c, s_d = a_pt, sub(b_pt, a_pt), c_pt, sub(b_pt, c_pt)
    rep = GiantReport()
    quad = LatticeQuad((0, 0), a_pt, b_pt, c_pt)
    measured = side_lengths(quad)
    rep.sides = measured
    rep.perimeter = a + b + c + d
    ck = rep.checks
    ck["sides_match"] = measured.as_tuple() == (a, b, c, d)
    ck["formula_sides"] = (
        case_sides("case_b", _data.GIANT_M, _data.GIANT_N, _data.GIANT_Y, _data.GIANT_Z).as_tuple()
        == (a, b, c, d)
    )
    ck["pitot_extangential"] = a + b == c + d
    # both triangles OAB and OBC must be positively oriented; the second is
    # spanned by S_d then S_c when walking O -> B -> C
    det_ab, det_dc = cross(s_a, s_b), cross(s_d, s_c)
    ck["det_positive"] = det_ab > 0 and det_dc > 0
    ck["equable"] = 2 * rep.perimeter == det_ab + det_dc
    ck["perimeter_28_digits"] = len(str(rep.perimeter)) == 28
    # doubled squared diagonals give the invariants directly
    p2 = b_pt[0] ** 2 + b_pt[1] ** 2
    q2 = (a_pt[0] - c_pt[0]) ** 2 + (a_pt[1] - c_pt[1]) ** 2
    sigma2, t2 = q2 - (a - d) ** 2, (a + b) ** 2 - p2
    if sigma2 % 2 == 0 and t2 % 2 == 0:
        rep.Sigma, rep.T = sigma2 // 2, t2 // 2
    m2 = _data.GIANT_M**2
    ck["Sigma_T"] = (rep.Sigma, rep.T) == (5 * m2, 5 * m2 + 5)
    return rep


__all__ = [
    "AllFactorsGood",
    "BadFactor",
    "DEFAULT_CF_STEP_CAP",
    "GiantReport",
    "MuTerm",
    "Outcome",
    "PipelineResult",
    "ScreenVerdict",
    "Unknown",
    "WitnessCheck",
    "case_sides",
    "check_witnesses",
    "factor_residues",
    "m_chain",
    "mollin_test",
    "mu_sequence",
    "pell_partner",
    "perimeter_lower_bound_case_c",
    "run_pipeline",
    "screen_M",
    "verify_giant_example",
    "wei_test",
]
