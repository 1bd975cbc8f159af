"""Metacyclic group codes over prime fields: construction, counting, bounds, search."""

from .algebra import CrtImage, FieldScalar, RingElement, SplitFactors, crt_decompose, crt_recombine, multiplier, split
from .bounds import ball_volume, entropy, entropy_inverse, guaranteed_distance, min_distance
from .core import (
    Codeword,
    GroupParams,
    MetacyclicCode,
    build_code,
    chain,
    group_action,
    is_invariant,
    load_descriptor,
    norm_check,
    two_sided_check,
    validate,
)
from .enumeration import enumerate_bruteforce, enumerate_crt, omega
from .errors import CapacityError, MetacyclicError, ParameterError, VerificationError
from .numtheory import admissibility, artin_primes, empirical_density, is_prime, mult_order
from .search import cover_multiplicity, expurgated_search, sample_a1

__version__ = "0.1.0"
