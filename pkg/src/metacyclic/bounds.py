"""Minimum distance, Hamming-ball volumes, q-ary entropy and the existence bound."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import Codeword, GroupParams, MetacyclicCode
from .enumeration import _index_block, _require_counting, omega
from .errors import CapacityError, ParameterError

DISTANCE_GUARD = 1 << 26
_LOW_TABLE = 1 << 14


@dataclass(frozen=True)
class DistanceResult:
    d_min: int
    witness: Codeword
    enumerated: int


def _split_rows(q: int, m: int) -> int:
    low = 1
    while low < m and q ** (low + 1) <= _LOW_TABLE:
        low += 1
    return low


def _gray_digits(k: int, q: int, width: int) -> list[int]:
    """Digits of the ``k``-th word of the modular q-ary Gray code."""
    d = []
    for _ in range(width + 1):
        d.append(k % q)
        k //= q
    return [(d[i] - d[i + 1]) % q for i in range(width)]


def _trailing_digit(k: int, q: int) -> int:
    j = 0
    while k % q == 0:
        k //= q
        j += 1
    return j


def _scan(args) -> tuple[int, int, int, tuple[int, ...]]:
    """Scan high-part Gray indices ``[k0, k1)``; return ``(weight, k, low_index, gray digits)``."""
    gen, q, low, k0, k1 = args
    m = gen.shape[0]
    width = m - low
    table = _index_block(0, q**low, q, low) @ gen[:low] % q
    high = gen[low:]
    digits = _gray_digits(k0, q, width)
    offset = np.asarray(digits, dtype=np.int64) @ high % q if width else np.zeros(gen.shape[1], np.int64)
    best = (gen.shape[1] + 1, -1, -1, ())
    for k in range(k0, k1):
        if k > k0:
            j = _trailing_digit(k, q)
            offset = (offset + high[j]) % q
            digits[j] = (digits[j] + 1) % q
        weights = np.count_nonzero((table + offset) % q, axis=1)
        if k == 0:
            weights[0] = gen.shape[1] + 1  # the zero word
        i = int(np.argmin(weights))
        if weights[i] < best[0]:
            best = (int(weights[i]), k, i, tuple(digits))
    return best


def min_weight(gen: np.ndarray, q: int, workers: int = 1) -> tuple[int, np.ndarray]:
    """Minimum weight of a nonzero ``info @ gen`` over all information words.

    The information word is split into a low part, tabulated once, and a high
    part walked in modular Gray-code order so each step adds one generator row.
    Returns ``(weight, info)`` for the first minimizer in scan order.
    """
    gen = np.asarray(gen, dtype=np.int64) % q
    k = gen.shape[0]
    low = _split_rows(q, k)
    n_high = q ** (k - low)
    if workers <= 1 or n_high < 2 * workers:
        results = [_scan((gen, q, low, 0, n_high))]
    else:
        edges = [n_high * i // workers for i in range(workers + 1)]
        jobs = [(gen, q, low, a, b) for a, b in zip(edges, edges[1:]) if a < b]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan, jobs))
    weight, _, i, digits = min(results, key=lambda b: (b[0], b[1], b[2]))
    info = np.concatenate([_index_block(i, i + 1, q, low)[0], np.asarray(digits, dtype=np.int64)])
    return weight, info


def min_distance(code: MetacyclicCode, guard: int = DISTANCE_GUARD, workers: int = 1) -> DistanceResult:
    """Exact minimum distance by enumerating all ``q^m - 1`` nonzero information words."""
    p = code.params
    total = p.q**p.m
    if total > guard:
        raise CapacityError(f"q^m = {total} information words exceeds the guard {guard}")
    weight, info = min_weight(code.generator, p.q, workers)
    witness = Codeword.from_vector(info @ code.generator % p.q, p)
    return DistanceResult(weight, witness, total - 1)


# -- balls and entropy -----------------------------------------------------------


def ball_volume(n: int, d: int, q: int) -> int:
    """Number of words of F_q^n within Hamming distance ``d`` of a point."""
    if not 0 <= d <= n:
        raise ParameterError(f"radius must lie in [0, {n}], got {d}")
    return sum(math.comb(n, i) * (q - 1) ** i for i in range(d + 1))


def entropy(t: float, q: int) -> float:
    """q-ary entropy on ``[0, (q-1)/q]``."""
    top = (q - 1) / q
    if not 0 <= t <= top + 1e-15:
        raise ParameterError(f"entropy argument must lie in [0, {top}], got {t}")
    if t == 0:
        return 0.0
    lq = math.log(q)
    val = t * math.log(q - 1) / lq - t * math.log(t) / lq
    if t < 1:
        val -= (1 - t) * math.log1p(-t) / lq
    return val


def entropy_inverse(y: float, q: int, tol: float = 1e-12) -> float:
    """The ``t`` in ``[0, (q-1)/q]`` with ``entropy(t, q) = y``, by bisection."""
    if not 0 <= y <= 1:
        raise ParameterError(f"entropy value must lie in [0, 1], got {y}")
    lo, hi = 0.0, (q - 1) / q
    if y == 0:
        return 0.0
    if y == 1:
        return hi
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if entropy(mid, q) < y:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


@dataclass(frozen=True)
class BoundRow:
    d: int
    volume: int
    q_volume: int
    satisfied: bool


@dataclass(frozen=True)
class BoundReport:
    """Exact comparison of the code count against ``q`` times ball volumes.

    ``guaranteed_d`` is the largest ``d < m`` with ``omega > q V_q(n, d)``:
    some code of the instance then has minimum distance ``> guaranteed_d``.
    ``entropic_d`` is the same quantity with ``q^(n H_q(d/n))`` standing in for
    the ball volume.
    """

    params: GroupParams
    omega: int
    n: int
    table: list[BoundRow] = field(repr=False)
    guaranteed_d: int
    entropic_d: int
    delta_star: float
    entropy_target: float  # (s-1)/s^2
    asymptotic_condition: bool  # entropy_target > H_q(guaranteed_d / n)
    capped_at_m: bool


def guaranteed_distance(params: GroupParams) -> BoundReport:
    _require_counting(params)
    q, m, s = params.q, params.m, params.s
    n = params.n
    count = omega(params).value
    table = []
    for d in range(m):
        vol = ball_volume(n, d, q)
        table.append(BoundRow(d, vol, q * vol, count > q * vol))
    guaranteed = max(row.d for row in table if row.satisfied)
    capped = count > q * ball_volume(n, m, q)

    log_count = math.log(count, q)
    top = (q - 1) / q
    entropic = 0
    for d in range(m):
        if d / n > top:
            break
        if log_count > 1 + n * entropy(d / n, q):
            entropic = d
    target = (s - 1) / s**2
    return BoundReport(
        params=params,
        omega=count,
        n=n,
        table=table,
        guaranteed_d=guaranteed,
        entropic_d=entropic,
        delta_star=entropy_inverse(target, q),
        entropy_target=target,
        asymptotic_condition=target > entropy(guaranteed / n, q),
        capped_at_m=capped,
    )
