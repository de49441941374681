"""Exact integer arithmetic used throughout the package.

Square roots, square-free parts, bounded factorization, sums of two squares,
Pell-type equations and continued fractions of quadratic surds.  Everything
works on Python integers, so there is no overflow at any size.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import isqrt as _isqrt

import numpy as np
from sympy import isprime as _isprime

DEFAULT_TRIAL_BOUND = 10**7
_SEGMENT = 1 << 20


class NoSolutionError(ValueError):
    """Raised when a Diophantine equation is shown to have no solution."""


def isqrt(n: int) -> int | None:
    """Exact square root of ``n``, or ``None`` when ``n`` is not a perfect square."""
    if n < 0:
        return None
    r = _isqrt(n)
    return r if r * r == n else None


def is_probable_prime(n: int) -> bool:
    return n >= 2 and bool(_isprime(n))


def trial_bound_from_env() -> int:
    raw = os.environ.get("LEQ_TRIAL_BOUND")
    return int(raw) if raw else DEFAULT_TRIAL_BOUND


# ---------------------------------------------------------------------------
# Factorization

@dataclass(frozen=True)
class Factorization:
    """Prime factors found below the trial bound plus whatever is left over.

    ``cofactor`` is 1 when the factorization is complete.  When it is larger
    than 1 it is either a certified prime (``cofactor_prime``) or a composite
    that could not be split within the bound.
    """

    n: int
    factors: dict[int, int] = field(default_factory=dict)
    cofactor: int = 1
    cofactor_prime: bool = False

    @property
    def complete(self) -> bool:
        return self.cofactor == 1 or self.cofactor_prime

    def primes(self) -> dict[int, int]:
        if not self.complete:
            raise ValueError(f"factorization of {self.n} is incomplete")
        out = dict(self.factors)
        if self.cofactor > 1:
            out[self.cofactor] = out.get(self.cofactor, 0) + 1
        return out


def _primes_between(lo: int, hi: int) -> np.ndarray:
    """Primes p with lo <= p < hi via a segmented sieve."""
    lo = max(lo, 2)
    if hi <= lo:
        return np.empty(0, dtype=np.int64)
    root = _isqrt(hi - 1) + 1
    base = np.ones(root + 1, dtype=bool)
    base[:2] = False
    for i in range(2, _isqrt(root) + 1):
        if base[i]:
            base[i * i :: i] = False
    small = np.nonzero(base)[0]
    seg = np.ones(hi - lo, dtype=bool)
    for p in small:
        p = int(p)
        start = max(p * p, (lo + p - 1) // p * p)
        seg[start - lo :: p] = False
    return np.nonzero(seg)[0].astype(np.int64) + lo


def _residues(n: int, primes: np.ndarray) -> np.ndarray:
    """``n mod p`` for every p in ``primes`` (each below 2**31)."""
    limbs = []
    while n:
        limbs.append(n & 0xFFFFFFFF)
        n >>= 32
    p = primes.astype(np.uint64)
    r = np.zeros_like(p)
    shift = np.uint64(32)
    for limb in reversed(limbs):
        r = ((r << shift) + np.uint64(limb)) % p
    return r


def iter_trial_divisors(n: int, bound: int):
    """Yield ``(p, k)`` for primes p < bound dividing n, in increasing order.

    The generator stops early once the remaining cofactor is 1 or has no
    prime factor below the bound.  Segments are tested with vectorized
    remainders, which keeps bounds of 10**8 practical.
    """
    if bound > 2**31:
        raise ValueError("trial bound must stay below 2**31")
    lo = 2
    while lo < bound and n > 1:
        if lo * lo > n:
            if n < bound:
                yield n, 1
            return
        hi = min(bound, lo + _SEGMENT)
        primes = _primes_between(lo, hi)
        if primes.size:
            hits = primes[_residues(n, primes) == 0]
            for p in hits.tolist():
                k = 0
                while n % p == 0:
                    n //= p
                    k += 1
                yield p, k
        lo = hi


def factorize(n: int, bound: int | None = None) -> Factorization:
    """Factor ``n`` by trial division below ``bound`` and certify the rest.

    A leftover cofactor that passes a strong probable-prime test is reported
    as prime; otherwise it stays as an unfactored composite.
    """
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    if bound is None:
        bound = trial_bound_from_env()
    factors: dict[int, int] = {}
    rest = n
    for p, k in iter_trial_divisors(n, bound):
        factors[p] = k
        rest //= p**k
    if rest == 1:
        return Factorization(n, factors)
    return Factorization(n, factors, rest, is_probable_prime(rest))


def squarefree_decompose(n: int, bound: int | None = None) -> tuple[int, int]:
    """Return ``(f, g)`` with ``n = f * g**2`` and ``f`` square-free."""
    if n < 1:
        raise ValueError("squarefree_decompose expects a positive integer")
    f, g = 1, 1
    for p, k in factorize(n, bound).primes().items():
        g *= p ** (k // 2)
        if k % 2:
            f *= p
    return f, g


def is_lattice_preserver(k: int, bound: int | None = None) -> bool:
    """True when ``k`` has no prime factor congruent to 1 mod 4.

    Such k divide a Gaussian square only through rational integers and
    powers of 1+i, which is what makes scaled lattice points stay integral.
    """
    if k < 1:
        raise ValueError("expects a positive integer")
    return all(p % 4 != 1 for p in factorize(k, bound).primes())


# ---------------------------------------------------------------------------
# Sums of two squares

def _prime_two_squares(p: int) -> tuple[int, int]:
    """x > y > 0 with x^2 + y^2 = p for a prime p = 1 mod 4 (Cornacchia)."""
    # a quadratic non-residue gives a square root of -1
    q = 2
    while pow(q, (p - 1) // 2, p) != p - 1:
        q += 1
    r = pow(q, (p - 1) // 4, p)
    a, b = p, r
    limit = _isqrt(p)
    while b > limit:
        a, b = b, a % b
    c = isqrt(p - b * b)
    return (b, c) if b > c else (c, b)


def _gauss_mul(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    return x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0]


def _two_squares_brute(n: int) -> list[tuple[int, int]]:
    out = []
    y = 0
    while 2 * y * y <= n:
        x = isqrt(n - y * y)
        if x is not None:
            out.append((x, y))
        y += 1
    return out


def two_square_reps(n: int, bound: int | None = None) -> list[tuple[int, int]]:
    """All ``(x, y)`` with ``x >= y >= 0`` and ``x^2 + y^2 = n``, largest x first.

    Uses Gaussian prime splitting when ``n`` factors within the trial bound
    and falls back to a direct scan otherwise.
    """
    if n < 0:
        return []
    if n == 0:
        return [(0, 0)]
    fac = factorize(n, bound)
    if not fac.complete:
        return sorted(_two_squares_brute(n), reverse=True)
    primes = fac.primes()
    base = (1, 0)
    split: list[tuple[tuple[int, int], int]] = []
    for p, k in primes.items():
        if p % 4 == 3:
            if k % 2:
                return []
            base = _gauss_mul(base, (p ** (k // 2), 0))
        elif p == 2:
            base = _gauss_mul(base, _gauss_pow((1, 1), k))
        else:
            split.append((_prime_two_squares(p), k))
    values = [base]
    for (x, y), k in split:
        pi, pibar = (x, y), (x, -y)
        new = []
        for j in range(k + 1):
            factor = _gauss_mul(_gauss_pow(pi, j), _gauss_pow(pibar, k - j))
            new.extend(_gauss_mul(v, factor) for v in values)
        values = new
    reps = set()
    for x, y in values:
        x, y = abs(x), abs(y)
        reps.add((max(x, y), min(x, y)))
    return sorted(reps, reverse=True)


def _gauss_pow(z: tuple[int, int], k: int) -> tuple[int, int]:
    out = (1, 0)
    for _ in range(k):
        out = _gauss_mul(out, z)
    return out


def signed_variants(x: int, y: int) -> list[tuple[int, int]]:
    """The distinct points among (±x, ±y) and (±y, ±x), positive signs first."""
    out: list[tuple[int, int]] = []
    for a, b in ((x, y), (y, x)):
        for sa in (1, -1):
            for sb in (1, -1):
                pt = (sa * a, sb * b)
                if pt not in out:
                    out.append(pt)
    return out


def pythagorean_quadruple_decompose(
    z: int, w: int, u: int, v: int
) -> tuple[int, int, int, int] | None:
    """Find ``(p, q, m, n)`` with

        v - u = p^2 + q^2,  v + u = m^2 + n^2,  w = p*m + q*n,  z = p*n - q*m

    for a quadruple with ``z^2 + w^2 + u^2 = v^2``.  Candidates are scanned
    over the representations of ``v - u`` and ``v + u`` (each expanded to its
    sign and swap variants, positive signs first) and the first match is
    returned.  ``None`` means no such integers exist.
    """
    if z * z + w * w + u * u != v * v:
        raise ValueError("not a Pythagorean quadruple")
    left = [pt for r in two_square_reps(v - u) for pt in signed_variants(*r)]
    right = [pt for r in two_square_reps(v + u) for pt in signed_variants(*r)]
    for p, q in left:
        for m, n in right:
            if p * m + q * n == w and p * n - q * m == z:
                return p, q, m, n
    return None


# ---------------------------------------------------------------------------
# Continued fractions and Pell-type equations

def cf_sqrt(d: int) -> tuple[int, list[int]]:
    """Continued fraction of sqrt(d) as ``(a0, period)``."""
    a0 = _isqrt(d)
    if a0 * a0 == d:
        raise ValueError(f"{d} is a perfect square")
    period = []
    m, q, a = 0, 1, a0
    while a != 2 * a0:
        m = a * q - m
        q = (d - m * m) // q
        a = (a0 + m) // q
        period.append(a)
    return a0, period


def _convergents(d: int, count: int):
    a0, period = cf_sqrt(d)
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    yield p, q
    i = 0
    for _ in range(count - 1):
        a = period[i % len(period)]
        i += 1
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        yield p, q


def fundamental_unit(d: int) -> tuple[int, int]:
    """Smallest positive solution of x^2 - d*y^2 = 1."""
    _, period = cf_sqrt(d)
    k = len(period)
    n = k if k % 2 == 0 else 2 * k
    *_, last = _convergents(d, n)
    return last


def _class_representatives(d: int, n: int, y_cap: int) -> list[tuple[int, int]]:
    """Fundamental solutions of x^2 - d*y^2 = n, one scan per class.

    For |n| < sqrt(d) every primitive solution shows up among the convergents
    of sqrt(d); non-primitive ones come from n / f^2.  Otherwise the classical
    bound on the smallest y in each class is scanned directly.
    """
    x1, y1 = fundamental_unit(d)
    reps: set[tuple[int, int]] = set()
    if n * n < d:
        _, period = cf_sqrt(d)
        span = 2 * len(period) if len(period) % 2 else len(period)
        f = 1
        while f * f <= abs(n):
            if n % (f * f) == 0:
                target = n // (f * f)
                for p, q in _convergents(d, 2 * span + 1):
                    if p * p - d * q * q == target:
                        reps.add((f * p, f * q))
                        reps.add((-f * p, f * q))
            f += 1
        return sorted(reps)
    if n > 0:
        lo, hi_sq_num, hi_sq_den = 0, y1 * y1 * n, 2 * (x1 + 1)
    else:
        lo, hi_sq_num, hi_sq_den = 0, y1 * y1 * (-n), 2 * (x1 - 1)
    hi = _isqrt(hi_sq_num // hi_sq_den) + 1
    if hi > y_cap:
        raise ValueError(f"search bound {hi} exceeds cap {y_cap}")
    for y in range(lo, hi + 1):
        x = isqrt(n + d * y * y)
        if x is not None:
            reps.add((x, y))
            reps.add((-x, y))
    return sorted(reps)


def pell_solutions(d: int, n: int, count: int, y_cap: int = 10**6) -> list[tuple[int, int]]:
    """The first ``count`` solutions of x^2 - d*y^2 = n with x, y > 0, by x.

    Raises :class:`NoSolutionError` when the equation is insoluble.
    """
    if d <= 0 or isqrt(d) is not None:
        raise ValueError("d must be a positive non-square")
    if n == 0:
        raise ValueError("n must be non-zero")
    x1, y1 = fundamental_unit(d)
    reps = _class_representatives(d, n, y_cap)
    if not reps:
        raise NoSolutionError(f"x^2 - {d}y^2 = {n} has no integer solutions")
    # x + y*sqrt(d) > 0 for the seeds kept; multiplying by the unit then
    # eventually yields every positive solution of that class
    seeds = {(sx, sy) for x, y in reps for sx in (x, -x) for sy in (y, -y)}
    seeds = [s for s in seeds if _positive_surd(*s, d)]
    limit = max(abs(x) for x, _ in seeds) + 1
    while True:
        found = set()
        for x, y in seeds:
            while x <= limit:
                if x > 0 and y > 0:
                    found.add((x, y))
                x, y = x * x1 + d * y * y1, x * y1 + y * x1
        if len(found) >= count:
            return sorted(found)[:count]
        limit *= x1 + 1


def _positive_surd(x: int, y: int, d: int) -> bool:
    """Sign test for x + y*sqrt(d) > 0 in exact arithmetic."""
    if x >= 0 and y >= 0:
        return x > 0 or y > 0
    if x >= 0:
        return x * x > d * y * y
    if y > 0:
        return d * y * y > x * x
    return False


# ---------------------------------------------------------------------------
# Residue symbols

def quartic_residue_of_two(p: int) -> int:
    """The quartic symbol (2/p)_4 for a prime p = 1 mod 8, as +1 or -1."""
    if p % 8 != 1 or not is_probable_prime(p):
        raise ValueError("expects a prime congruent to 1 mod 8")
    r = pow(2, (p - 1) // 4, p)
    if r == 1:
        return 1
    if r == p - 1:
        return -1
    raise ValueError("2 is not a quadratic residue")


def lucas_fibonacci_odd(count: int) -> list[tuple[int, int]]:
    """``(L_{2j-1}, F_{2j-1})`` for j = 1..count."""
    fib = [0, 1]
    luc = [2, 1]
    while len(fib) < 2 * count:
        fib.append(fib[-1] + fib[-2])
        luc.append(luc[-1] + luc[-2])
    return [(luc[2 * j - 1], fib[2 * j - 1]) for j in range(1, count + 1)]


__all__ = [
    "DEFAULT_TRIAL_BOUND",
    "Factorization",
    "NoSolutionError",
    "cf_sqrt",
    "factorize",
    "fundamental_unit",
    "is_lattice_preserver",
    "is_probable_prime",
    "isqrt",
    "iter_trial_divisors",
    "lucas_fibonacci_odd",
    "pell_solutions",
    "pythagorean_quadruple_decompose",
    "quartic_residue_of_two",
    "signed_variants",
    "squarefree_decompose",
    "two_square_reps",
]
