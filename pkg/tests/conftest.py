import itertools

import numpy as np
import pytest

from metacyclic.algebra import RingElement
from metacyclic.core import validate

# (q, m, s, r, omega) for every counting-regime instance used across the suite
INSTANCES = [
    (2, 5, 2, 4, 5),
    (3, 5, 2, 4, 20),
    (3, 7, 3, 2, 91),
    (2, 11, 2, 10, 33),
    (2, 13, 3, 3, 273),
]
SMALL_INSTANCES = INSTANCES[:3]


def instance_id(inst):
    q, m, s, r, _ = inst
    return f"q{q}-m{m}-s{s}-r{r}"


@pytest.fixture(params=INSTANCES, ids=instance_id)
def instance(request):
    q, m, s, r, om = request.param
    return validate(q, m, s, r), om


@pytest.fixture(params=SMALL_INSTANCES, ids=instance_id)
def small_instance(request):
    q, m, s, r, om = request.param
    return validate(q, m, s, r), om


def poly(coeffs, q, m):
    return RingElement.from_coeffs(coeffs, q, m)


def x_pow(k, q, m):
    return RingElement.monomial(k, q, m)


def all_elements(q, m):
    for c in itertools.product(range(q), repeat=m):
        yield RingElement(c, q, m)


def naive_min_distance(code):
    """Weight of every nonzero encoded word, via ring products only."""
    p = code.params
    best = None
    for f in all_elements(p.q, p.m):
        if f.is_zero():
            continue
        w = code.encode(f).weight()
        best = w if best is None else min(best, w)
    return best


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
