"""Arithmetic in F_q, in R_m = F_q[x]/(x^m - 1) and in its CRT split.

Polynomials are stored with ascending coefficients: index ``i`` holds the
coefficient of ``x**i``.  When ``q`` is a primitive root modulo the prime ``m``,

    x^m - 1 = (x - 1) * h(x),   h = 1 + x + ... + x^(m-1) irreducible,

so ``R_m`` splits as ``F_q (+) F_Q`` with ``Q = q**(m-1)``.  The big field is
kept as residues modulo ``h`` throughout.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, ParameterError, PreconditionError
from .numtheory import factorize, is_prime, mult_order

DEFAULT_FACTOR_BOUND = 10**6
DEFAULT_FILTER_BOUND = 1 << 20

Poly = tuple[int, ...]


@dataclass(frozen=True)
class FieldScalar:
    value: int
    q: int

    def __post_init__(self):
        if not 0 <= self.value < self.q:
            raise ParameterError(f"{self.value} is not a reduced residue mod {self.q}")

    def __int__(self) -> int:
        return self.value


# -- plain polynomial arithmetic over F_q ----------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a: Sequence[int], b: Sequence[int], q: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([c % q for c in out])


def poly_divmod(a: Sequence[int], b: Sequence[int], q: int) -> tuple[list[int], list[int]]:
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = _trim([c % q for c in a])
    inv_lead = pow(b[-1], -1, q)
    db = len(b) - 1
    quot = [0] * max(len(rem) - db, 0)
    while len(rem) - 1 >= db and rem:
        shift = len(rem) - 1 - db
        c = rem[-1] * inv_lead % q
        quot[shift] = c
        for j, bj in enumerate(b):
            rem[shift + j] = (rem[shift + j] - c * bj) % q
        _trim(rem)
    return _trim(quot), rem


def poly_mod(a: Sequence[int], b: Sequence[int], q: int) -> list[int]:
    return poly_divmod(a, b, q)[1]


def _pad(a: Sequence[int], n: int) -> Poly:
    if len(a) > n:
        raise ParameterError(f"polynomial of length {len(a)} does not fit in {n} slots")
    return tuple(a) + (0,) * (n - len(a))


# -- the quotient ring R_m --------------------------------------------------


@dataclass(frozen=True)
class RingElement:
    """An element of ``F_q[x]/(x^m - 1)`` given by its ``m`` coefficients."""

    coeffs: Poly
    q: int
    m: int

    def __post_init__(self):
        if len(self.coeffs) != self.m:
            raise ParameterError(f"expected {self.m} coefficients, got {len(self.coeffs)}")
        if any(not 0 <= c < self.q for c in self.coeffs):
            raise ParameterError(f"coefficients must be reduced mod {self.q}: {self.coeffs}")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], q: int, m: int) -> RingElement:
        """Build from any coefficient sequence, folding powers ``>= m`` and reducing mod ``q``."""
        out = [0] * m
        for i, c in enumerate(coeffs):
            out[i % m] += c
        return cls(tuple(c % q for c in out), q, m)

    @classmethod
    def zero(cls, q: int, m: int) -> RingElement:
        return cls((0,) * m, q, m)

    @classmethod
    def one(cls, q: int, m: int) -> RingElement:
        return cls.monomial(0, q, m)

    @classmethod
    def monomial(cls, k: int, q: int, m: int, c: int = 1) -> RingElement:
        coeffs = [0] * m
        coeffs[k % m] = c % q
        return cls(tuple(coeffs), q, m)

    @classmethod
    def all_ones(cls, q: int, m: int) -> RingElement:
        """The element ``e = 1 + x + ... + x^(m-1)``."""
        return cls((1,) * m, q, m)

    def _check(self, other: RingElement) -> None:
        if not isinstance(other, RingElement):
            raise TypeError(f"cannot combine RingElement with {type(other).__name__}")
        if (self.q, self.m) != (other.q, other.m):
            raise ParameterError(
                f"ring mismatch: (q={self.q}, m={self.m}) vs (q={other.q}, m={other.m})"
            )

    def __add__(self, other: RingElement) -> RingElement:
        self._check(other)
        q = self.q
        return RingElement(tuple((a + b) % q for a, b in zip(self.coeffs, other.coeffs)), q, self.m)

    def __sub__(self, other: RingElement) -> RingElement:
        self._check(other)
        q = self.q
        return RingElement(tuple((a - b) % q for a, b in zip(self.coeffs, other.coeffs)), q, self.m)

    def __neg__(self) -> RingElement:
        return RingElement(tuple(-c % self.q for c in self.coeffs), self.q, self.m)

    def __mul__(self, other: RingElement | int) -> RingElement:
        if isinstance(other, int):
            return RingElement(tuple(c * other % self.q for c in self.coeffs), self.q, self.m)
        return ring_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> RingElement:
        if e < 0:
            raise ParameterError("negative powers are not defined in R_m")
        result = RingElement.one(self.q, self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int = 1) -> RingElement:
        """Multiply by ``x**k``."""
        k %= self.m
        if k == 0:
            return self
        return RingElement(self.coeffs[-k:] + self.coeffs[:-k], self.q, self.m)

    def weight(self) -> int:
        return sum(1 for c in self.coeffs if c)

    def evaluate_at_one(self) -> int:
        return sum(self.coeffs) % self.q

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if c == 1 else (f"{c}" if i == 0 else f"{c}*{mono}"))
        body = " + ".join(terms) or "0"
        return f"RingElement({body}; q={self.q}, m={self.m})"


def ring_mul(f: RingElement, g: RingElement) -> RingElement:
    """Cyclic convolution of the coefficient vectors, reduced mod ``q``."""
    f._check(g)
    m, q = f.m, f.q
    out = [0] * m
    for i, a in enumerate(f.coeffs):
        if a:
            for j, b in enumerate(g.coeffs):
                if b:
                    out[(i + j) % m] += a * b
    return RingElement(tuple(c % q for c in out), q, m)


def multiplier(f: RingElement, r: int) -> RingElement:
    """The automorphism ``f(x) -> f(x**r)``; requires ``gcd(r, m) = 1``."""
    m = f.m
    if math.gcd(r, m) != 1:
        raise ParameterError(f"multiplier by r={r} is not invertible modulo m={m}")
    out = [0] * m
    for i, c in enumerate(f.coeffs):
        out[i * r % m] = c
    return RingElement(tuple(out), f.q, m)


def batch_ring_mul(f: np.ndarray, g: np.ndarray, q: int) -> np.ndarray:
    """Row-wise product in R_m of two ``(N, m)`` integer arrays."""
    m = f.shape[-1]
    out = np.zeros(np.broadcast_shapes(f.shape, g.shape), dtype=np.int64)
    for i in range(m):
        out += f[..., i : i + 1] * np.roll(g, i, axis=-1)
    return out % q


def batch_multiplier(f: np.ndarray, r: int) -> np.ndarray:
    m = f.shape[-1]
    out = np.empty_like(f)
    out[..., (np.arange(m) * r) % m] = f
    return out


# -- circulant matrices ------------------------------------------------------


def circulant_block(f: RingElement) -> np.ndarray:
    """The ``m x m`` circulant matrix whose row ``i`` is ``x**i * f``."""
    return np.array([f.shift(i).coeffs for i in range(f.m)], dtype=np.int64)


def circulant_to_element(block: np.ndarray, q: int) -> RingElement:
    """Inverse of :func:`circulant_block`: read the first row."""
    block = np.asarray(block)
    m = block.shape[1]
    element = RingElement.from_coeffs(block[0].tolist(), q, m)
    if block.shape[0] == m and not np.array_equal(circulant_block(element), block % q):
        raise ParameterError("matrix is not circulant")
    return element


# -- the split x^m - 1 = (x - 1) h(x) -----------------------------------------


@dataclass(frozen=True)
class SplitFactors:
    q: int
    m: int
    linear: Poly  # x - 1
    h: Poly  # 1 + x + ... + x^(m-1)
    irreducible: bool
    s: int | None = None
    t: int | None = None  # q**((m-1)/s) when s was supplied

    @property
    def big_q(self) -> int:
        return self.q ** (self.m - 1)


def split(q: int, m: int, s: int | None = None) -> SplitFactors:
    if not is_prime(q):
        raise ParameterError(f"q={q} must be prime")
    if not is_prime(m):
        raise ParameterError(f"m={m} must be prime")
    if m == q:
        raise ParameterError("m must differ from the field characteristic q")
    t = None
    if s is not None:
        if s < 1 or (m - 1) % s:
            raise ParameterError(f"s={s} must divide m-1={m - 1}")
        t = q ** ((m - 1) // s)
    return SplitFactors(
        q=q,
        m=m,
        linear=(q - 1, 1),
        h=(1,) * m,
        irreducible=mult_order(q, m) == m - 1,
        s=s,
        t=t,
    )


def _check_factors(f: RingElement, factors: SplitFactors) -> None:
    if (f.q, f.m) != (factors.q, factors.m):
        raise ParameterError(
            f"element lives in (q={f.q}, m={f.m}) but factors are for (q={factors.q}, m={factors.m})"
        )


@dataclass(frozen=True)
class CrtImage:
    scalar: FieldScalar  # f(1)
    field_part: Poly  # f mod h, length m-1


def crt_decompose(f: RingElement, factors: SplitFactors) -> CrtImage:
    _check_factors(f, factors)
    q, m = factors.q, factors.m
    # x^(m-1) = -(1 + x + ... + x^(m-2)) mod h
    top = f.coeffs[-1]
    field_part = tuple((c - top) % q for c in f.coeffs[:-1])
    return CrtImage(FieldScalar(f.evaluate_at_one(), q), field_part)


def crt_recombine(img: CrtImage, factors: SplitFactors) -> RingElement:
    q, m = factors.q, factors.m
    if img.scalar.q != q or len(img.field_part) != m - 1:
        raise ParameterError("CRT image does not match the split factors")
    # f = alpha + u*h with u constant; h(1) = m, so u = (c - alpha(1)) / m
    alpha = list(img.field_part) + [0]
    u = (img.scalar.value - sum(alpha)) * pow(m, -1, q) % q
    return RingElement(tuple((a + u) % q for a in alpha), q, m)


# -- arithmetic in F_Q = F_q[x]/(h) --------------------------------------------


def field_reduce(a: Sequence[int], factors: SplitFactors) -> Poly:
    return _pad(poly_mod(a, factors.h, factors.q), factors.m - 1)


def field_mul(a: Sequence[int], b: Sequence[int], factors: SplitFactors) -> Poly:
    return field_reduce(poly_mul(_trim(list(a)), _trim(list(b)), factors.q), factors)


def field_pow(a: Sequence[int], e: int, factors: SplitFactors) -> Poly:
    result = field_reduce([1], factors)
    base = tuple(a)
    while e:
        if e & 1:
            result = field_mul(result, base, factors)
        base = field_mul(base, base, factors)
        e >>= 1
    return result


def field_one(factors: SplitFactors) -> Poly:
    return field_reduce([1], factors)


def _require_irreducible(factors: SplitFactors) -> None:
    if not factors.irreducible:
        raise PreconditionError(
            f"h is reducible over F_{factors.q} for m={factors.m}: q is not primitive mod m"
        )


def group_order_factors(factors: SplitFactors, bound: int = DEFAULT_FACTOR_BOUND) -> list[int]:
    """Prime divisors of ``Q - 1``: trial division up to ``bound`` then a primality check."""
    n = factors.big_q - 1
    found, rest = factorize(n, bound)
    primes = sorted(found)
    if rest > 1:
        if rest >= 1 << 64:
            raise CapacityError(
                f"Q-1 has an unfactored part {rest} beyond the deterministic primality range"
            )
        if not is_prime(rest):
            raise CapacityError(f"Q-1 has a composite cofactor {rest} with no factor <= {bound}")
        primes.append(rest)
    return sorted(primes)


def primitive_element(factors: SplitFactors, bound: int = DEFAULT_FACTOR_BOUND) -> Poly:
    """First generator of ``F_Q^*`` in lexicographic coefficient order."""
    _require_irreducible(factors)
    n = factors.big_q - 1
    cofactors = [n // p for p in group_order_factors(factors, bound)]
    one = field_one(factors)
    for cand in itertools.product(range(factors.q), repeat=factors.m - 1):
        if not any(cand):
            continue
        if all(field_pow(cand, e, factors) != one for e in cofactors):
            return tuple(cand)
    raise AssertionError("a finite field always has a primitive element")


def norm_one_size(factors: SplitFactors) -> int:
    t = factors.t
    assert t is not None
    return (t**factors.s - 1) // (t - 1)


def _with_s(factors: SplitFactors, s: int) -> SplitFactors:
    if factors.s == s:
        return factors
    return split(factors.q, factors.m, s)


def norm_one_subgroup(
    factors: SplitFactors,
    s: int,
    method: str = "auto",
    factor_bound: int = DEFAULT_FACTOR_BOUND,
    filter_bound: int = DEFAULT_FILTER_BOUND,
) -> frozenset[Poly]:
    """Residues ``z`` mod ``h`` with ``z**(1 + t + ... + t^(s-1)) = 1``.

    ``method`` is ``"generator"`` (powers of ``g**(t-1)`` for a primitive ``g``),
    ``"filter"`` (test every nonzero residue) or ``"auto"`` (generator, falling
    back to filtering when ``Q - 1`` cannot be factored).
    """
    _require_irreducible(factors)
    factors = _with_s(factors, s)
    t = factors.t
    size = norm_one_size(factors)
    if method == "auto":
        try:
            return norm_one_subgroup(factors, s, "generator", factor_bound, filter_bound)
        except CapacityError:
            method = "filter"
    if method == "generator":
        g = primitive_element(factors, factor_bound)
        step = field_pow(g, t - 1, factors)
        out = set()
        z = field_one(factors)
        for _ in range(size):
            out.add(z)
            z = field_mul(z, step, factors)
        return frozenset(out)
    if method == "filter":
        if factors.big_q > filter_bound:
            raise CapacityError(f"exhaustive filter over Q={factors.big_q} residues exceeds {filter_bound}")
        one = field_one(factors)
        return frozenset(
            cand
            for cand in itertools.product(range(factors.q), repeat=factors.m - 1)
            if any(cand) and field_pow(cand, size, factors) == one
        )
    raise ParameterError(f"unknown method {method!r}")


def field_multiplier(a: Sequence[int], r: int, factors: SplitFactors) -> Poly:
    """The multiplier ``x -> x**r`` acting on a residue mod ``h``."""
    m = factors.m
    out = [0] * m
    for i, c in enumerate(a):
        out[i * r % m] = (out[i * r % m] + c) % factors.q
    return field_reduce(out, factors)
