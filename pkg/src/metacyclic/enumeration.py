"""Counting and listing every admissible a_1.

Two independent routes: a direct filter over all of R_m, and a CRT
parametrization (scalar ``s``-th roots of unity times the norm-one subgroup
of F_Q).  Both return elements sorted lexicographically by coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import (
    DEFAULT_FACTOR_BOUND,
    CrtImage,
    FieldScalar,
    RingElement,
    batch_multiplier,
    batch_ring_mul,
    crt_recombine,
    norm_one_subgroup,
    split,
)
from .core import COUNTING, GroupParams, MetacyclicCode, build_code
from .errors import CapacityError, InternalConsistencyError, PreconditionError
from .linalg import rref

BRUTEFORCE_BOUND = 1 << 22
_CHUNK = 1 << 15


@dataclass(frozen=True)
class OmegaCount:
    value: int
    s_prime: int
    t: int


def _require_counting(params: GroupParams) -> None:
    if params.regime != COUNTING:
        raise PreconditionError("this operation needs parameters validated in the counting regime")


def omega_value(q: int, m: int, s: int) -> OmegaCount:
    """``gcd(s, q-1) * (q^(m-1) - 1) / (q^((m-1)/s) - 1)`` computed exactly."""
    s_prime = math.gcd(s, q - 1)
    t = q ** ((m - 1) // s)
    num = q ** (m - 1) - 1
    quot, rem = divmod(num, t - 1)
    if rem or (m - 1) % s:
        raise InternalConsistencyError(f"q^(m-1)-1 is not divisible by t-1 for (q={q}, m={m}, s={s})")
    return OmegaCount(s_prime * quot, s_prime, t)


def omega(params: GroupParams) -> OmegaCount:
    _require_counting(params)
    return omega_value(params.q, params.m, params.s)


def scalar_solutions(q: int, s: int) -> list[FieldScalar]:
    return [FieldScalar(z, q) for z in range(1, q) if pow(z, s, q) == 1]


def _index_block(start: int, stop: int, q: int, m: int) -> np.ndarray:
    """Coefficient vectors for lexicographic indices ``start..stop-1``."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((idx.size, m), dtype=np.int64)
    for i in range(m - 1, -1, -1):
        out[:, i] = idx % q
        idx //= q
    return out


def enumerate_bruteforce(params: GroupParams, bound: int = BRUTEFORCE_BOUND) -> list[RingElement]:
    """Every ``a_1`` in R_m passing the norm condition, by exhaustive filtering."""
    q, m, s, r = params.q, params.m, params.s, params.r
    total = q**m
    if total > bound:
        raise CapacityError(
            f"brute force needs q^m = {total} > {bound} candidates; use the CRT enumeration instead"
        )
    one = np.zeros(m, dtype=np.int64)
    one[0] = 1
    found: list[RingElement] = []
    for start in range(0, total, _CHUNK):
        block = _index_block(start, min(start + _CHUNK, total), q, m)
        acc = block
        twisted = block
        for _ in range(s - 1):
            twisted = batch_multiplier(twisted, r)
            acc = batch_ring_mul(acc, twisted, q)
        hits = np.nonzero((acc == one).all(axis=1))[0]
        found.extend(RingElement(tuple(int(c) for c in block[i]), q, m) for i in hits)
    return found


def enumerate_crt(
    params: GroupParams,
    factor_bound: int = DEFAULT_FACTOR_BOUND,
    method: str = "auto",
) -> list[RingElement]:
    """Recombine every (scalar root, norm-one residue) pair into R_m."""
    _require_counting(params)
    factors = split(params.q, params.m, params.s)
    scalars = scalar_solutions(params.q, params.s)
    field_parts = norm_one_subgroup(factors, params.s, method=method, factor_bound=factor_bound)
    out = [crt_recombine(CrtImage(c, alpha), factors) for c in scalars for alpha in field_parts]
    out.sort(key=lambda e: e.coeffs)
    return out


def enumerate_codes(params: GroupParams, method: str = "auto") -> list[MetacyclicCode]:
    """All codes of the instance; brute force below ``m = 17`` when feasible, CRT otherwise."""
    if method == "auto":
        feasible = params.q**params.m <= BRUTEFORCE_BOUND
        method = "crt" if params.regime == COUNTING and (params.m >= 17 or not feasible) else "bruteforce"
    if method == "bruteforce":
        elements = enumerate_bruteforce(params)
    elif method == "crt":
        elements = enumerate_crt(params)
    else:
        raise ValueError(f"unknown enumeration method {method!r}")
    return [build_code(params, a1, check=False) for a1 in elements]


def distinct_row_spaces(codes: list[MetacyclicCode]) -> int:
    """Number of distinct codes (as subspaces) among ``codes``."""
    seen = set()
    for code in codes:
        basis, _ = rref(code.generator, code.params.q)
        seen.add(basis.tobytes())
    return len(seen)
