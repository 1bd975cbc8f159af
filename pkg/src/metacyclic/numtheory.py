"""Primality, multiplicative orders and Artin primes in arithmetic progressions.

A prime ``m`` is an *Artin prime* for base ``a`` and progression ``s`` when
``m = 1 (mod s)`` and ``a`` is a primitive root modulo ``m``.  The admissibility
test decides whether there is an elementary obstruction (perfect powers, or the
quadratic field of ``a`` sitting inside the cyclotomic field of ``s``) forcing
that set to be finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import CapacityError, ParameterError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

SIEVE_BLOCK = 1 << 16
DEFAULT_LIMIT = 1 << 31


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every ``0 <= n < 2**64``."""
    if n < 0:
        raise ParameterError(f"is_prime expects n >= 0, got {n}")
    if n >= 1 << 64:
        raise CapacityError(f"is_prime is only deterministic below 2**64, got {n}")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # The first twelve prime bases are a proven witness set below 3.3e24.
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int, bound: int | None = None) -> tuple[dict[int, int], int]:
    """Trial-divide ``n`` by every integer up to ``bound`` (default ``isqrt(n)``).

    Returns ``(factors, cofactor)`` where ``cofactor`` is the unfactored part
    (``1`` when the factorization is complete, a prime when the remaining part
    has no divisor up to its square root).
    """
    if n < 1:
        raise ParameterError(f"factorize expects n >= 1, got {n}")
    factors: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    p, step = 5, 2
    while p * p <= n and (bound is None or p <= bound):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += step
        step = 6 - step
    if n > 1 and (p * p > n):
        factors[n] = factors.get(n, 0) + 1
        n = 1
    return factors, n


def prime_factors(n: int) -> list[int]:
    factors, rest = factorize(n)
    assert rest == 1
    return sorted(factors)


def mult_order(a: int, m: int) -> int:
    """Multiplicative order of ``a`` modulo the prime ``m``."""
    if m < 2 or not is_prime(m):
        raise ParameterError(f"mult_order expects a prime modulus, got {m}")
    a %= m
    if a == 0:
        raise ParameterError(f"{m} divides the base; order undefined")
    order = m - 1
    for p in prime_factors(m - 1):
        while order % p == 0 and pow(a, order // p, m) == 1:
            order //= p
    return order


def is_primitive_root(a: int, m: int) -> bool:
    return a % m != 0 and mult_order(a, m) == m - 1


def iter_primes(start: int = 2, stop: int | None = None, block: int = SIEVE_BLOCK) -> Iterator[int]:
    """Yield primes ``start <= p < stop`` in increasing order (segmented sieve)."""
    lo = max(start, 2)
    base: list[int] = []
    base_limit = 1
    while stop is None or lo < stop:
        hi = lo + block if stop is None else min(lo + block, stop)
        need = math.isqrt(hi - 1)
        if need > base_limit:
            base = _simple_sieve(need)
            base_limit = need
        seg = bytearray([1]) * (hi - lo)
        for p in base:
            first = max(p * p, -(-lo // p) * p)
            if first >= hi:
                continue
            seg[first - lo :: p] = bytes(len(range(first - lo, hi - lo, p)))
        for i, flag in enumerate(seg):
            if flag:
                yield lo + i
        lo = hi


def _simple_sieve(n: int) -> list[int]:
    if n < 2:
        return []
    flags = bytearray([1]) * (n + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, n + 1, p)))
    return [i for i, f in enumerate(flags) if f]


# -- Artin admissibility ---------------------------------------------------


@dataclass(frozen=True)
class ArtinBase:
    """Perfect-power exponent, squarefree part and quadratic discriminant of ``a``.

    ``h`` is 0 for ``a`` in ``{0, 1}`` where no largest exponent exists.
    """

    a: int
    h: int
    d: int
    delta: int


@dataclass(frozen=True)
class AdmissibilityVerdict:
    base: ArtinBase
    s: int
    reasons: list[str] = field(default_factory=list)

    @property
    def admissible(self) -> bool:
        return not self.reasons


def _perfect_power_exponent(n: int) -> int:
    """Largest ``h`` with ``n = b**h`` for a positive integer ``b`` (``n >= 2``)."""
    factors, rest = factorize(n)
    assert rest == 1
    g = 0
    for e in factors.values():
        g = math.gcd(g, e)
    return g


def artin_base(a: int) -> ArtinBase:
    if a == 0:
        return ArtinBase(0, 0, 0, 0)
    if a == 1:
        return ArtinBase(1, 0, 1, 1)
    if a == -1:
        return ArtinBase(-1, 1, -1, -4)
    mag = abs(a)
    h = _perfect_power_exponent(mag)
    if a < 0:
        # a negative base must be an odd power of a negative integer
        while h % 2 == 0:
            h //= 2
    factors, _ = factorize(mag)
    core = 1
    for p, e in factors.items():
        if e % 2:
            core *= p
    d = core if a > 0 else -core
    delta = d if d % 4 == 1 else 4 * d
    return ArtinBase(a, h, d, delta)


def admissibility(a: int, s: int) -> AdmissibilityVerdict:
    """Check that no elementary reason makes the Artin set for ``(a, s)`` finite."""
    if s < 1:
        raise ParameterError(f"progression modulus s must be >= 1, got {s}")
    base = artin_base(a)
    reasons: list[str] = []
    if a == 0:
        reasons.append("a is 0")
    elif a == -1:
        reasons.append("a = -1")
    elif a > 0 and math.isqrt(a) ** 2 == a:
        reasons.append("a perfect square")
    else:
        if math.gcd(s, base.h) > 1:
            reasons.append("gcd(s,h) > 1")
        if s % abs(base.delta) == 0:
            reasons.append("delta divides s")
    return AdmissibilityVerdict(base, s, reasons)


# -- Artin prime stream ----------------------------------------------------


@dataclass(frozen=True)
class ArtinPrimes:
    primes: list[int]
    exhausted: bool  # True when the limit was reached before `count` primes


def is_artin_prime(a: int, s: int, m: int) -> bool:
    return is_prime(m) and m % s == 1 % s and a % m != 0 and mult_order(a, m) == m - 1


def iter_artin_primes(a: int, s: int, limit: int | None = None) -> Iterator[int]:
    for m in iter_primes(2, None if limit is None else limit + 1):
        if (m - 1) % s == 0 and a % m != 0 and mult_order(a, m) == m - 1:
            yield m


def artin_primes(a: int, s: int, count: int, limit: int = DEFAULT_LIMIT) -> ArtinPrimes:
    """First ``count`` primes ``m <= limit`` with ``m = 1 (mod s)`` and ``a`` primitive mod ``m``."""
    if count < 1:
        raise ParameterError(f"count must be >= 1, got {count}")
    verdict = admissibility(a, s)
    if not verdict.admissible:
        raise ParameterError(
            f"(a={a}, s={s}) is not admissible: {', '.join(verdict.reasons)}",
            verdict.reasons,
        )
    out: list[int] = []
    for m in iter_artin_primes(a, s, limit):
        out.append(m)
        if len(out) == count:
            return ArtinPrimes(out, False)
    return ArtinPrimes(out, True)


@dataclass(frozen=True)
class DensityEstimate:
    artin_count: int
    progression_count: int

    @property
    def fraction(self) -> Fraction:
        if self.progression_count == 0:
            return Fraction(0)
        return Fraction(self.artin_count, self.progression_count)


def empirical_density(a: int, s: int, limit: int) -> DensityEstimate:
    """Share of primes ``m <= limit, m = 1 (mod s)`` having ``a`` as a primitive root."""
    hits = total = 0
    for m in iter_primes(2, limit + 1):
        if (m - 1) % s:
            continue
        total += 1
        if a % m and mult_order(a, m) == m - 1:
            hits += 1
    return DensityEstimate(hits, total)


def artin_constant(prime_bound: int = 10**6) -> float:
    """Truncated product of ``1 - 1/(p(p-1))`` over primes ``p <= prime_bound``."""
    acc = 0.0
    for p in iter_primes(2, prime_bound + 1):
        acc += math.log1p(-1.0 / (p * (p - 1)))
    return math.exp(acc)
