"""Seeded random search over the admissible a_1 and the covering-multiplicity check.

Randomness: every trial ``i`` of a search with seed ``S`` draws from
``numpy.random.Generator(PCG64(SeedSequence(S, spawn_key=(i,))))``.  Trials
are therefore independent of each other and of how work is split between
processes.  One trial draws, in order, an index into the scalar roots of
unity and an exponent ``k`` selecting ``g^(k(t-1))`` in F_Q.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .algebra import (
    DEFAULT_FACTOR_BOUND,
    CrtImage,
    RingElement,
    crt_recombine,
    field_pow,
    norm_one_size,
    primitive_element,
    split,
)
from .bounds import DISTANCE_GUARD, DistanceResult, min_distance
from .core import GroupParams, MetacyclicCode, build_code, to_descriptor
from .enumeration import _index_block, _require_counting, enumerate_codes, scalar_solutions
from .errors import CapacityError

COVER_BOUND = 1 << 26


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial,))))


def _uniform_below(rng: np.random.Generator, n: int) -> int:
    if n < 1 << 63:
        return int(rng.integers(0, n))
    nbytes = (n.bit_length() + 7) // 8
    mask = (1 << n.bit_length()) - 1
    while True:
        k = int.from_bytes(rng.bytes(nbytes), "little") & mask
        if k < n:
            return k


@dataclass(frozen=True)
class _Sampler:
    factors: object
    scalars: tuple
    step: tuple  # g^(t-1)
    size: int

    def draw(self, rng: np.random.Generator) -> RingElement:
        scalar = self.scalars[_uniform_below(rng, len(self.scalars))]
        k = _uniform_below(rng, self.size)
        alpha = field_pow(self.step, k, self.factors)
        return crt_recombine(CrtImage(scalar, alpha), self.factors)


@lru_cache(maxsize=32)
def _sampler(params: GroupParams, factor_bound: int = DEFAULT_FACTOR_BOUND) -> _Sampler:
    _require_counting(params)
    factors = split(params.q, params.m, params.s)
    g = primitive_element(factors, factor_bound)
    return _Sampler(
        factors,
        tuple(scalar_solutions(params.q, params.s)),
        field_pow(g, factors.t - 1, factors),
        norm_one_size(factors),
    )


def sample_a1(params: GroupParams, rng: np.random.Generator) -> RingElement:
    """Uniform draw from the full set of admissible ``a_1``."""
    return _sampler(params).draw(rng)


@dataclass(frozen=True)
class SearchReport:
    params: GroupParams
    trials: int
    seed: int
    best: MetacyclicCode
    distance: DistanceResult
    target_d: int
    achieved: bool
    distinct_a1_sampled: int

    def to_dict(self) -> dict:
        out = to_descriptor(self.best)
        out["summary"] = {
            "seed": self.seed,
            "trials": self.trials,
            "target_d": self.target_d,
            "d_min": self.distance.d_min,
            "achieved": self.achieved,
            "distinct_a1_sampled": self.distinct_a1_sampled,
            "witness": self.distance.witness.to_vector().tolist(),
        }
        return out


def _distance_job(args) -> int:
    params, coeffs, guard = args
    return min_distance(build_code(params, coeffs), guard).d_min


def expurgated_search(
    params: GroupParams,
    trials: int,
    target_d: int,
    seed: int,
    workers: int = 1,
    guard: int = DISTANCE_GUARD,
) -> SearchReport:
    """Sample ``trials`` codes and keep the one of largest minimum distance.

    Ties go to the lexicographically smallest ``a_1``.  The result depends only
    on ``(params, trials, target_d, seed)``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    sampled = {sample_a1(params, trial_rng(seed, i)).coeffs for i in range(trials)}
    distinct = sorted(sampled)
    jobs = [(params, c, guard) for c in distinct]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            dists = list(pool.map(_distance_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        dists = [_distance_job(j) for j in jobs]
    best_i = max(range(len(distinct)), key=lambda i: (dists[i], [-c for c in distinct[i]]))
    best = build_code(params, distinct[best_i])
    result = min_distance(best, guard)
    return SearchReport(
        params=params,
        trials=trials,
        seed=seed,
        best=best,
        distance=result,
        target_d=target_d,
        achieved=result.d_min >= target_d,
        distinct_a1_sampled=len(distinct),
    )


@dataclass(frozen=True)
class CoverReport:
    """How many distinct codes of an instance contain a single vector."""

    max_multiplicity: int
    histogram: dict[int, int]  # multiplicity -> number of vectors
    witness: tuple[int, ...]  # a vector attaining the maximum
    codes: int
    vectors: int  # distinct vectors examined
    weight_filter: bool
    q: int = field(repr=False, default=0)

    @property
    def within_bound(self) -> bool:
        return self.max_multiplicity <= self.q


def all_codewords(code: MetacyclicCode) -> np.ndarray:
    p = code.params
    info = _index_block(0, p.q**p.m, p.q, p.m)
    return (info @ code.generator % p.q).astype(np.uint8)


def cover_multiplicity(
    params: GroupParams,
    weight_filter: bool = True,
    bound: int = COVER_BOUND,
    codes: list[MetacyclicCode] | None = None,
) -> CoverReport:
    """Maximum number of codes sharing a nonzero codeword of weight ``< m``.

    With ``weight_filter=False`` every nonzero codeword counts, which lets the
    all-ones style vectors through.
    """
    _require_counting(params)
    if codes is None:
        codes = enumerate_codes(params)
    work = len(codes) * params.q**params.m
    if work > bound:
        raise CapacityError(f"covering check needs {work} codewords, above the bound {bound}")
    chunks = []
    for code in codes:
        words = all_codewords(code)[1:]  # row 0 is the zero word
        if weight_filter:
            words = words[np.count_nonzero(words, axis=1) < params.m]
        chunks.append(words)
    stacked = np.concatenate(chunks) if chunks else np.zeros((0, params.n), np.uint8)
    if stacked.shape[0] == 0:
        return CoverReport(0, {}, (), len(codes), 0, weight_filter, params.q)
    uniq, counts = np.unique(stacked, axis=0, return_counts=True)
    top = int(np.argmax(counts))
    hist = dict(sorted(Counter(counts.tolist()).items()))
    return CoverReport(
        max_multiplicity=int(counts[top]),
        histogram=hist,
        witness=tuple(int(c) for c in uniq[top]),
        codes=len(codes),
        vectors=int(uniq.shape[0]),
        weight_filter=weight_filter,
        q=params.q,
    )
