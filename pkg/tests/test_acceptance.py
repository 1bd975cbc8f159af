"""Exit criteria, one test per criterion; each prints a PASS/FAIL line."""

import itertools
import json
import random
import time
from contextlib import contextmanager

import numpy as np
import pytest

from metacyclic.algebra import RingElement, crt_decompose, crt_recombine, field_mul, split
from metacyclic.bounds import ball_volume, entropy, entropy_inverse, guaranteed_distance, min_distance
from metacyclic.cli import main
from metacyclic.core import is_invariant_matrix, proportionality_holds, two_sided_check, validate
from metacyclic.enumeration import enumerate_bruteforce, enumerate_codes, enumerate_crt, omega
from metacyclic.numtheory import admissibility, artin_constant, artin_primes, empirical_density, iter_primes
from metacyclic.search import cover_multiplicity

from conftest import INSTANCES


@contextmanager
def criterion(capsys, number, text):
    ok = False
    start = time.perf_counter()
    try:
        yield
        ok = True
    finally:
        with capsys.disabled():
            status = "PASS" if ok else "FAIL"
            print(f"\n[{status}] criterion {number}: {text} ({time.perf_counter() - start:.1f}s)")


@pytest.fixture(scope="module")
def instance_codes():
    return {inst: enumerate_codes(validate(*inst[:4])) for inst in INSTANCES}


def test_criterion_01_counting(capsys):
    with criterion(capsys, 1, "brute force = CRT = omega on five instances, < 2 min"):
        start = time.perf_counter()
        for q, m, s, r, expected in INSTANCES:
            p = validate(q, m, s, r)
            brute = enumerate_bruteforce(p)
            crt = enumerate_crt(p)
            assert omega(p).value == expected
            assert len(brute) == expected
            assert set(brute) == set(crt) and len(crt) == expected
        assert time.perf_counter() - start < 120


def test_criterion_02_invariance(capsys, instance_codes):
    with criterion(capsys, 2, "every enumerated code is sigma_x/sigma_y invariant and proportional"):
        failures = 0
        for codes in instance_codes.values():
            for code in codes:
                if not (is_invariant_matrix(code.generator, code.params) and proportionality_holds(code)):
                    failures += 1
        assert failures == 0


def test_criterion_03_covering(capsys, instance_codes):
    with criterion(capsys, 3, "cover multiplicity <= q on five instances; unfiltered control exceeds q"):
        for inst, codes in instance_codes.items():
            p = validate(*inst[:4])
            rep = cover_multiplicity(p, codes=codes)
            assert rep.max_multiplicity <= p.q, (inst, rep.max_multiplicity)
        p = validate(2, 5, 2, 4)
        control = cover_multiplicity(p, weight_filter=False)
        assert control.max_multiplicity > p.q


def test_criterion_04_existence_bound(capsys, instance_codes):
    with criterion(capsys, 4, "guaranteed_d = 1 on (2,13,3,3) and some code has d_min >= 2, < 5 min"):
        start = time.perf_counter()
        p = validate(2, 13, 3, 3)
        rep = guaranteed_distance(p)
        assert rep.guaranteed_d == 1
        codes = instance_codes[(2, 13, 3, 3, 273)]
        assert len(codes) == 273
        dists = [min_distance(c).d_min for c in codes]
        assert max(dists) >= 2
        assert time.perf_counter() - start < 300


def test_criterion_05_entropy_and_volumes(capsys):
    with criterion(capsys, 5, "entropy inverse, 100-point grid to 1e-9, exact ball volumes"):
        t = entropy_inverse(0.25, 2)
        assert 0.0405 <= t <= 0.0425
        for y in np.linspace(0, 1, 100):
            assert abs(entropy(entropy_inverse(float(y), 2), 2) - y) <= 1e-9
        assert ball_volume(4, 1, 3) == 9
        assert ball_volume(10, 10, 2) == 1024


def test_criterion_06_artin_stream(capsys):
    with criterion(capsys, 6, "Artin prime streams and admissibility verdicts"):
        assert tuple(artin_primes(2, 2, 6).primes) == (3, 5, 11, 13, 19, 29)
        assert tuple(artin_primes(3, 2, 3).primes) == (5, 7, 17)
        assert admissibility(2, 2).admissible
        v = admissibility(5, 5)
        assert not v.admissible and "delta divides s" in v.reasons
        v = admissibility(8, 3)
        assert not v.admissible and "gcd(s,h) > 1" in v.reasons


def test_criterion_07_density(capsys):
    with criterion(capsys, 7, "share of primes <= 1e5 with 2 primitive within 0.02 of Artin's constant, < 30 s"):
        start = time.perf_counter()
        constant = artin_constant(10**6)
        assert abs(constant - 0.3739558) < 1e-6
        est = empirical_density(2, 2, 10**5)
        assert abs(float(est.fraction) - constant) <= 0.02
        assert time.perf_counter() - start < 30


def test_criterion_08_remark_two_sided(capsys, instance_codes):
    with criterion(capsys, 8, "no enumerated code is two-sided; e^s = (m^(s-1) mod q) e on 50 triples"):
        for codes in instance_codes.values():
            assert not any(two_sided_check(c) for c in codes)
        rnd = random.Random(8)
        primes = list(iter_primes(2, 50))
        for _ in range(50):
            q, m, s = rnd.choice(primes), rnd.choice(primes[1:]), rnd.randrange(2, 8)
            e = RingElement.all_ones(q, m)
            assert e**s == e * pow(m, s - 1, q)


def test_criterion_09_reproducibility(capsys, instance_codes):
    with criterion(capsys, 9, "search --seed 42 byte-identical over runs and 1 vs 4 workers; hits exhaustive max"):
        argv = ["search", "--q", "2", "--m", "11", "--s", "2", "--r", "10", "--trials", "200", "--seed", "42",
                "--format", "json-lines"]
        outs = []
        for extra in ([], [], ["--threads", "4"]):
            assert main(argv + extra) == 0
            outs.append(capsys.readouterr().out)
        assert outs[0] == outs[1] == outs[2]
        report = json.loads(outs[0])
        exhaustive = max(min_distance(c).d_min for c in instance_codes[(2, 11, 2, 10, 33)])
        assert report["summary"]["d_min"] == exhaustive


def test_criterion_10_crt_properties(capsys):
    with criterion(capsys, 10, "CRT roundtrip and morphism: exhaustive q=2 m=5, 1e4 random q=3 m=7"):
        f = split(2, 5)
        elems = [RingElement(c, 2, 5) for c in itertools.product(range(2), repeat=5)]
        for a in elems:
            assert crt_recombine(crt_decompose(a, f), f) == a
        for a, b in itertools.product(elems, repeat=2):
            ia, ib, iab = crt_decompose(a, f), crt_decompose(b, f), crt_decompose(a * b, f)
            assert iab.scalar.value == ia.scalar.value * ib.scalar.value % 2
            assert iab.field_part == field_mul(ia.field_part, ib.field_part, f)
        f = split(3, 7)
        rng = np.random.default_rng(10)
        for a_c, b_c in rng.integers(0, 3, size=(10_000, 2, 7)):
            a = RingElement(tuple(int(c) for c in a_c), 3, 7)
            b = RingElement(tuple(int(c) for c in b_c), 3, 7)
            ia, ib, iab = crt_decompose(a, f), crt_decompose(b, f), crt_decompose(a * b, f)
            assert crt_recombine(ia, f) == a
            assert iab.scalar.value == ia.scalar.value * ib.scalar.value % 3
            assert iab.field_part == field_mul(ia.field_part, ib.field_part, f)
