"""Metacyclic group codes T_{a_1,...,a_{s-1}} and the action of G(m, s, r).

A codeword ``f_1 + f_2 y + ... + f_s y^(s-1)`` of the group algebra is stored
as the tuple of blocks ``(f_1, ..., f_s)`` and flattened block-major: block
``j`` coordinate ``i`` sits at index ``j*m + i``.  The code is generated over
R_m by the single row ``(1, a_1, ..., a_{s-1})``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np

from .algebra import RingElement, circulant_block, multiplier
from .errors import InternalConsistencyError, ParameterError, VerificationError
from .linalg import RowSpace, rank
from .numtheory import is_prime, mult_order

CONSTRUCTION = "construction"
COUNTING = "counting"
REGIMES = (CONSTRUCTION, COUNTING)

UNVERIFIED_GROUP = "unverified group isomorphism"


@dataclass(frozen=True)
class GroupParams:
    """Field size ``q``, group G(m, s, r) and the hypothesis level ``regime``.

    The ``construction`` regime only asks ``r^s = 1 (mod m)``; ``counting``
    additionally needs ``q`` primitive mod ``m``, ``s | m - 1`` and
    ``ord_m(r) = s``.  Build instances with :func:`validate`.
    """

    q: int
    m: int
    s: int
    r: int
    regime: str = COUNTING

    @property
    def n(self) -> int:
        return self.m * self.s

    @property
    def rate(self) -> float:
        return 1 / self.s

    @property
    def is_dihedral(self) -> bool:
        return self.s == 2 and self.r == self.m - 1


def check_params(q: int, m: int, s: int, r: int, regime: str = COUNTING) -> list[str]:
    """Names of every violated condition; empty when the parameters are valid."""
    if regime not in REGIMES:
        return [f"unknown regime {regime!r}"]
    bad: list[str] = []
    q_ok = q >= 2 and is_prime(q)
    m_ok = m >= 2 and is_prime(m)
    if not q_ok:
        bad.append("q not prime")
    if not m_ok:
        bad.append("m not prime")
    elif m == 2:
        bad.append("m = 2 is degenerate")
    if s <= 1:
        bad.append("s must be > 1")
    if not 1 <= r < max(m, 2):
        bad.append("r not in [1, m)")
    if bad:
        return bad
    if pow(r, s, m) != 1:
        bad.append("r^s != 1 mod m")
    if regime == COUNTING:
        if q == m:
            bad.append("q = m")
        elif mult_order(q, m) != m - 1:
            bad.append("q not primitive mod m")
        if (m - 1) % s:
            bad.append("s does not divide m-1")
        if mult_order(r, m) != s:
            bad.append("ord(r) != s")
    return bad


def validate(q: int, m: int, s: int, r: int, regime: str = COUNTING) -> GroupParams:
    bad = check_params(q, m, s, r, regime)
    if bad:
        raise ParameterError(
            f"invalid parameters (q={q}, m={m}, s={s}, r={r}, regime={regime}): " + "; ".join(bad),
            bad,
        )
    return GroupParams(q, m, s, r, regime)


def find_multiplier(m: int, s: int) -> int:
    """Smallest ``r`` in ``[2, m)`` with ``ord_m(r) = s``."""
    for r in range(2, m):
        if mult_order(r, m) == s:
            return r
    raise ParameterError(f"no element of order {s} modulo {m}")


def params_from_qms(q: int, m: int, s: int, r: int | None = None, regime: str = COUNTING) -> GroupParams:
    return validate(q, m, s, find_multiplier(m, s) if r is None else r, regime)


# -- the chain a_1, ..., a_{s-1} and the norm condition --------------------------


def _as_element(params: GroupParams, a1: RingElement | Sequence[int]) -> RingElement:
    if isinstance(a1, RingElement):
        if (a1.q, a1.m) != (params.q, params.m):
            raise ParameterError("a_1 lives in a different ring than the parameters")
        return a1
    return RingElement.from_coeffs(a1, params.q, params.m)


def chain(params: GroupParams, a1: RingElement) -> tuple[RingElement, ...]:
    """``a_j = a_1 mu_r(a_1) ... mu_r^(j-1)(a_1)`` for ``j = 1..s-1``."""
    a1 = _as_element(params, a1)
    out = [a1]
    twisted = a1
    for _ in range(params.s - 2):
        twisted = multiplier(twisted, params.r)
        out.append(out[-1] * twisted)
    return tuple(out)


def norm(params: GroupParams, a1: RingElement) -> RingElement:
    """The ``s``-fold product ``a_1 mu_r(a_1) ... mu_r^(s-1)(a_1)``."""
    a1 = _as_element(params, a1)
    acc = a1
    twisted = a1
    for _ in range(params.s - 1):
        twisted = multiplier(twisted, params.r)
        acc = acc * twisted
    return acc


def norm_check(params: GroupParams, a1: RingElement) -> bool:
    return norm(params, a1).is_one()


# -- codewords -----------------------------------------------------------------


@dataclass(frozen=True)
class Codeword:
    blocks: tuple[RingElement, ...]

    @classmethod
    def from_vector(cls, vector: Sequence[int], params: GroupParams) -> Codeword:
        v = [int(c) for c in vector]
        if len(v) != params.n:
            raise ParameterError(f"expected a vector of length {params.n}, got {len(v)}")
        m = params.m
        return cls(tuple(RingElement.from_coeffs(v[j * m : (j + 1) * m], params.q, m) for j in range(params.s)))

    def to_vector(self) -> np.ndarray:
        return np.array([c for b in self.blocks for c in b.coeffs], dtype=np.int64)

    def weight(self) -> int:
        return sum(b.weight() for b in self.blocks)

    def scale(self, c: RingElement) -> Codeword:
        return Codeword(tuple(c * b for b in self.blocks))


def y_action(params: GroupParams, w: Codeword) -> Codeword:
    """Left multiplication by ``y``: ``(f_1..f_s) -> (mu_r f_s, mu_r f_1, ..., mu_r f_{s-1})``."""
    r = params.r
    b = w.blocks
    return Codeword((multiplier(b[-1], r),) + tuple(multiplier(f, r) for f in b[:-1]))


def x_action(params: GroupParams, w: Codeword) -> Codeword:
    return Codeword(tuple(f.shift(1) for f in w.blocks))


# -- permutation action on coordinates -----------------------------------------


Permutation = tuple[int, ...]


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p after q``."""
    return tuple(p[i] for i in q)


def perm_power(p: Permutation, k: int) -> Permutation:
    out = tuple(range(len(p)))
    for _ in range(k):
        out = compose(p, out)
    return out


def apply_permutation(p: Permutation, vector: np.ndarray) -> np.ndarray:
    """Move the entry at coordinate ``i`` to coordinate ``p[i]``."""
    vector = np.asarray(vector)
    out = np.empty_like(vector)
    out[..., list(p)] = vector
    return out


def action_permutations(m: int, s: int, r: int) -> tuple[Permutation, Permutation]:
    """``sigma_x: (j, i) -> (j, i+1)`` and ``sigma_y: (j, i) -> (j+1, r*i)`` on ``j*m + i``."""
    sx = tuple(j * m + (i + 1) % m for j in range(s) for i in range(m))
    sy = tuple(((j + 1) % s) * m + (r * i) % m for j in range(s) for i in range(m))
    return sx, sy


def generated_group(gens: Sequence[Permutation]) -> set[Permutation]:
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = compose(h, g)
                if gh not in seen:
                    seen.add(gh)
                    nxt.append(gh)
        frontier = nxt
    return seen


def orbit(point: int, gens: Sequence[Permutation]) -> set[int]:
    seen = {point}
    stack = [point]
    while stack:
        p = stack.pop()
        for g in gens:
            if g[p] not in seen:
                seen.add(g[p])
                stack.append(g[p])
    return seen


@dataclass(frozen=True)
class GroupAction:
    sigma_x: Permutation
    sigma_y: Permutation
    order: int


def group_action(params: GroupParams, verify_order: bool = True) -> GroupAction:
    m, s, r = params.m, params.s, params.r
    sx, sy = action_permutations(m, s, r)
    n = m * s
    ident = tuple(range(n))
    if perm_power(sx, m) != ident:
        raise InternalConsistencyError("sigma_x^m is not the identity")
    if perm_power(sy, s) != ident:
        raise InternalConsistencyError("sigma_y^s is not the identity (r^s != 1 mod m)")
    if compose(sy, sx) != compose(perm_power(sx, r), sy):
        raise InternalConsistencyError("sigma_y sigma_x != sigma_x^r sigma_y")
    if len(orbit(0, (sx, sy))) != n:
        raise InternalConsistencyError("the group does not act transitively")
    order = n
    if verify_order:
        order = len(generated_group((sx, sy)))
        if order != n:
            raise InternalConsistencyError(f"generated group has order {order}, expected {n}")
    return GroupAction(sx, sy, order)


# -- the code --------------------------------------------------------------------


@dataclass(frozen=True)
class MetacyclicCode:
    params: GroupParams
    a: tuple[RingElement, ...]
    notes: tuple[str, ...] = field(default=(), compare=False)

    @property
    def a1(self) -> RingElement:
        return self.a[0]

    @property
    def generator_tuple(self) -> Codeword:
        return Codeword((RingElement.one(self.params.q, self.params.m),) + self.a)

    @cached_property
    def generator(self) -> np.ndarray:
        """``m x ms`` matrix whose row ``i`` is ``x^i * (1, a_1, ..., a_{s-1})``."""
        return np.hstack([circulant_block(b) for b in self.generator_tuple.blocks])

    @property
    def length(self) -> int:
        return self.params.n

    @property
    def dimension(self) -> int:
        return self.params.m

    def encode(self, info: RingElement) -> Codeword:
        return self.generator_tuple.scale(info)

    def sort_key(self) -> tuple[int, ...]:
        return self.a1.coeffs


def build_code(params: GroupParams, a1: RingElement | Sequence[int], check: bool = True) -> MetacyclicCode:
    """Construct ``T_{a_1,...,a_{s-1}}`` from ``a_1``.

    ``check=False`` skips the norm condition so tests can build codes that are
    not ideals.
    """
    a1 = _as_element(params, a1)
    if check and not norm_check(params, a1):
        raise VerificationError(f"norm condition fails for a_1 = {a1!r}", ["norm condition"])
    notes = ()
    if mult_order(params.r, params.m) != params.s:
        notes = (UNVERIFIED_GROUP,)
    code = MetacyclicCode(params, chain(params, a1), notes)
    if check and rank(code.generator, params.q) != params.m:
        raise InternalConsistencyError("generator matrix does not have full rank")
    return code


def is_invariant_matrix(generator: np.ndarray, params: GroupParams) -> bool:
    """Whether the row space of ``generator`` is stable under sigma_x and sigma_y."""
    sx, sy = action_permutations(params.m, params.s, params.r)
    space = RowSpace(generator, params.q)
    for row in space.basis:
        if apply_permutation(sx, row) not in space or apply_permutation(sy, row) not in space:
            return False
    return True


def proportionality_holds(code: MetacyclicCode) -> bool:
    """``y . (1, a_1, ..., a_{s-1}) = mu_r(a_{s-1}) * (1, a_1, ..., a_{s-1})``."""
    g = code.generator_tuple
    factor = multiplier(code.a[-1], code.params.r)
    return y_action(code.params, g) == g.scale(factor)


def is_invariant(code: MetacyclicCode) -> bool:
    return is_invariant_matrix(code.generator, code.params) and proportionality_holds(code)


@dataclass(frozen=True)
class TwoSidedResult:
    two_sided: bool
    reasons: list[str]

    def __bool__(self) -> bool:
        return self.two_sided


def two_sided_conditions(params: GroupParams, a: Sequence[RingElement]) -> TwoSidedResult:
    """Test the three right-ideal conditions on ``(a_1, ..., a_{s-1})``."""
    s, r = params.s, params.r
    last = a[-1]
    reasons: list[str] = []
    if not (last**s).is_one():
        reasons.append("a_{s-1}^s != 1")
    for j in range(1, s - 1):
        if a[j - 1] != last ** (s - j):
            reasons.append(f"a_{j} != a_{{s-1}}^{s - j}")
    for j in range(1, s):
        if a[j - 1] != a[j - 1].shift(j * r - 1):
            reasons.append(f"a_{j} != a_{j} x^({j}r-1)")
    return TwoSidedResult(not reasons, reasons)


def two_sided_check(code: MetacyclicCode) -> TwoSidedResult:
    return two_sided_conditions(code.params, code.a)


# -- descriptor files --------------------------------------------------------------


def to_descriptor(code: MetacyclicCode) -> dict:
    p = code.params
    return {"q": p.q, "m": p.m, "s": p.s, "r": p.r, "a": [list(e.coeffs) for e in code.a]}


def from_descriptor(data: dict) -> MetacyclicCode:
    """Validate a descriptor (parameters, norm, chain) and rebuild the code.

    The regime is ``counting`` when those hypotheses hold and ``construction``
    otherwise, unless the descriptor pins one with a ``regime`` key.
    """
    try:
        q, m, s, r = (int(data[k]) for k in ("q", "m", "s", "r"))
        raw = [[int(c) for c in row] for row in data["a"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParameterError(f"malformed code descriptor: {exc}") from exc
    regime = data.get("regime")
    if regime is None:
        regime = COUNTING if not check_params(q, m, s, r, COUNTING) else CONSTRUCTION
    params = validate(q, m, s, r, regime)
    if len(raw) != s - 1:
        raise VerificationError(f"expected {s - 1} polynomials a_j, got {len(raw)}", ["chain length"])
    bad = [row for row in raw if len(row) != m or any(not 0 <= c < q for c in row)]
    if bad:
        raise ParameterError(f"each a_j must hold {m} coefficients in [0, {q})")
    a = tuple(RingElement(tuple(row), q, m) for row in raw)
    violations = []
    if not norm_check(params, a[0]):
        violations.append("norm condition")
    if chain(params, a[0]) != a:
        violations.append("chain condition")
    if violations:
        raise VerificationError("descriptor fails: " + ", ".join(violations), violations)
    return build_code(params, a[0])


def dump_descriptor(code: MetacyclicCode, path: str | Path) -> None:
    Path(path).write_text(json.dumps(to_descriptor(code)) + "\n", encoding="utf-8")


def load_descriptor(path: str | Path) -> MetacyclicCode:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParameterError(f"{path}: not valid JSON ({exc})") from exc
    return from_descriptor(data)
