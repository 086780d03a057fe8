"""Goldbach-triple searches, auxiliary primes, and polynomial types.

A Goldbach triple for an even n is a prime triple q1 <= q2 < q3 < n with
q1 + q2 = n; the double variant asks for a second pair q4 + q5 = n nested as
q4 < q1 <= q2 < q5 < q3.  The "excluded primes" of a genus g are the odd
primes contained in every route the symplectic-realization method can take:
every Goldbach triple for 2g+2, intersected with {2g+1} when 2g+1 is prime.

Polynomial types: f has type t-{q_1,...,q_k} at p when it factors over Z_p
into t-Eisenstein blocks of the given prime degrees at distinct residues
alpha_i mod p, times a cofactor that stays separable mod p.  Detection works
on the Newton polygon of f(x + alpha): a block of degree q sits at alpha iff
the polygon starts with the single segment (0, t) -> (q, 0) and the mod-p
reduction of f(x + alpha) is x^q times a unit.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Set, Tuple

from . import fppoly
from .errors import (
    InfeasibleSpec,
    NoRouteAvailable,
    NotCoprime,
    NotSquarefree,
    OddInput,
    PreconditionFailed,
    SearchExhausted,
)
from .padic import int_valuation, is_prime, newton_polygon, poly_derivative

# ---------------------------------------------------------------------------
# primes

_sieve_cache = bytearray([0, 0, 1, 1])


def _grow_sieve(limit: int) -> bytearray:
    global _sieve_cache
    if len(_sieve_cache) > limit:
        return _sieve_cache
    size = max(limit + 1, 2 * len(_sieve_cache))
    sieve = bytearray([1]) * size
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(size - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, size, i)))
    _sieve_cache = sieve
    return sieve


_primes_list: List[int] = []
_primes_limit = 1


def primes_upto(limit: int) -> List[int]:
    global _primes_list, _primes_limit
    if limit > _primes_limit:
        sieve = _grow_sieve(limit)
        top = len(sieve) - 1
        _primes_list = [i for i in range(2, top + 1) if sieve[i]]
        _primes_limit = top
    return _primes_list[: bisect_right(_primes_list, limit)]


def _prev_prime_below(n: int, sieve: bytearray) -> Optional[int]:
    for q in range(n - 1, 1, -1):
        if sieve[q]:
            return q
    return None


# ---------------------------------------------------------------------------
# Goldbach triples

class GoldbachTriple(NamedTuple):
    n: int
    q1: int
    q2: int
    q3: int


class DoubleGoldbach(NamedTuple):
    n: int
    q1: int
    q2: int
    q3: int
    q4: int
    q5: int


def _check_even(n: int):
    if n % 2 != 0 or n < 4:
        raise OddInput(f"n must be even and >= 4, got {n}")


def goldbach_triples(n: int) -> List[GoldbachTriple]:
    """All triples (q1, q2, q3) with q1 <= q2 < q3 < n and q1 + q2 = n,
    ordered by (q1, q3)."""
    _check_even(n)
    sieve = _grow_sieve(n)
    primes = primes_upto(n - 1)
    out = []
    for q1 in primes:
        q2 = n - q1
        if q1 > q2:
            break
        if not sieve[q2]:
            continue
        lo = bisect_right(primes, q2)
        hi = bisect_left(primes, n)
        for q3 in primes[lo:hi]:
            out.append(GoldbachTriple(n, q1, q2, q3))
    return out


def double_goldbach(n: int) -> List[DoubleGoldbach]:
    """All tuples with q4 < q1 <= q2 < q5 < q3 < n and q1+q2 = q4+q5 = n.
    Complete enumeration, meant for moderate n; the large-genus sweep uses
    the existence test instead."""
    _check_even(n)
    sieve = _grow_sieve(n)
    primes = primes_upto(n - 1)
    pairs = [(q, n - q) for q in primes if q <= n - q and sieve[n - q]]
    out = []
    for q1, q2 in pairs:
        for q4, q5 in pairs:
            if not (q4 < q1 and q2 < q5):
                continue
            lo = bisect_right(primes, q5)
            hi = bisect_left(primes, n)
            for q3 in primes[lo:hi]:
                out.append(DoubleGoldbach(n, q1, q2, q3, q4, q5))
    out.sort()
    return out


def double_goldbach_exists(n: int, sieve: Optional[bytearray] = None) -> bool:
    """Fast existence test.  Two Goldbach pairs nest iff their first
    elements differ, and the widest room for q3 comes from the outer pair
    with the largest admissible opener; so it suffices to find the two
    largest pair openers x2 < x1 <= n/2 and a prime in (n - x2, n)."""
    _check_even(n)
    if sieve is None:
        sieve = _grow_sieve(n)
    openers = []
    for q in range(n // 2, 1, -1):
        if sieve[q] and sieve[n - q]:
            openers.append(q)
            if len(openers) == 2:
                break
    if len(openers) < 2:
        return False
    largest = _prev_prime_below(n, sieve)
    return largest is not None and largest > n - openers[1]


def empty_double_goldbach_genera(g_max: int) -> List[int]:
    """All g <= g_max for which 2g+2 admits no double Goldbach tuple."""
    sieve = _grow_sieve(2 * g_max + 2)
    return [
        g for g in range(1, g_max + 1)
        if not double_goldbach_exists(2 * g + 2, sieve)
    ]


def excluded_primes(g: int) -> Set[int]:
    """Odd primes no route avoids for genus g.

    Route A (Goldbach triples for 2g+2): a prime is excluded iff it lies in
    every triple.  Route B (2g+1 prime): only 2g+1 itself is excluded.  With
    both routes available the result is the intersection.
    """
    if g < 1:
        raise PreconditionFailed("genus must be >= 1")
    n = 2 * g + 2
    triples = goldbach_triples(n)
    route_a: Optional[Set[int]] = None
    if triples:
        route_a = {triples[0].q1, triples[0].q2, triples[0].q3}
        for t in triples[1:]:
            route_a &= {t.q1, t.q2, t.q3}
            if not route_a:
                break
    route_b: Optional[Set[int]] = {2 * g + 1} if is_prime(2 * g + 1) else None
    if route_a is None and route_b is None:
        raise NoRouteAvailable(
            f"no Goldbach triple for {n} and 2g+1 = {2 * g + 1} is not prime"
        )
    if route_a is None:
        return route_b
    if route_b is None:
        return route_a
    return route_a & route_b


# ---------------------------------------------------------------------------
# primitive roots and auxiliary primes

def is_primitive_root(a: int, q: int) -> bool:
    """Whether a generates (Z/q)^* for prime q, via the factors of q - 1."""
    if not is_prime(q):
        raise PreconditionFailed(f"q={q} must be prime")
    if math.gcd(a, q) != 1:
        raise NotCoprime(f"gcd({a}, {q}) != 1")
    order = q - 1
    for r in _prime_factors(order):
        if pow(a, order // r, q) == 1:
            return False
    return True


def _prime_factors(n: int) -> List[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class AuxPrimes(NamedTuple):
    p1: int
    p2: int
    p3: int


def find_aux_primes(
    g: int, p: int, triple: GoldbachTriple, cap: int = 100000
) -> AuxPrimes:
    """Smallest primes above max(2g+1, p) with: p2 a primitive root mod q1
    and mod q2; p3 a primitive root mod q3; p2 = p3 = 1 mod 3 when p = 3;
    p1 any further prime distinct from p2 and p3.

    When p = 3 and 3 sits in the triple the congruence conditions contradict
    each other (a primitive root mod 3 is 2 mod 3), so the search reports
    SearchExhausted immediately instead of scanning.
    """
    if p % 2 == 0 or not is_prime(p):
        raise PreconditionFailed("p must be an odd prime")
    # the p = 3 residue contradiction is reported ahead of the membership
    # precondition: it is the named reason triples containing 3 are unusable
    if p == 3 and 3 in (triple.q1, triple.q2):
        raise SearchExhausted(
            "p2 must be a primitive root mod 3 (hence 2 mod 3) and 1 mod 3: "
            "no such prime exists; choose another triple"
        )
    if p == 3 and triple.q3 == 3:
        raise SearchExhausted(
            "p3 must be a primitive root mod 3 and 1 mod 3: impossible"
        )
    if p in (triple.q1, triple.q2, triple.q3):
        raise PreconditionFailed(f"p={p} lies in the triple {triple}")
    bound = max(2 * g + 1, p)

    def search(predicate) -> int:
        candidate = bound + 1
        while candidate <= cap:
            if is_prime(candidate) and predicate(candidate):
                return candidate
            candidate += 1
        raise SearchExhausted(f"no admissible prime below {cap}")

    def mod3_ok(x: int) -> bool:
        return p != 3 or x % 3 == 1

    p2 = search(
        lambda x: mod3_ok(x)
        and is_primitive_root(x, triple.q1)
        and is_primitive_root(x, triple.q2)
    )
    p3 = search(lambda x: mod3_ok(x) and is_primitive_root(x, triple.q3))
    p1 = search(lambda x: x not in (p2, p3))
    return AuxPrimes(p1, p2, p3)


# ---------------------------------------------------------------------------
# polynomial types

@dataclass(frozen=True)
class TypeSpec:
    """Type t-{q_1,...,q_k} at p; block degrees may repeat (multiset)."""

    p: int
    t: int
    blocks: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(sorted(self.blocks)))
        if not is_prime(self.p):
            raise PreconditionFailed(f"p={self.p} must be prime")
        if self.t < 1:
            raise PreconditionFailed("t must be >= 1")
        if any(not is_prime(q) for q in self.blocks):
            raise PreconditionFailed("block degrees must be prime")


@dataclass(frozen=True)
class BlockReport:
    degree: int
    alpha: Optional[int]
    ok: bool
    detail: str


@dataclass(frozen=True)
class TypeReport:
    spec: TypeSpec
    blocks: Tuple[BlockReport, ...]
    cofactor_ok: bool
    cofactor_detail: str

    @property
    def ok(self) -> bool:
        return self.cofactor_ok and all(b.ok for b in self.blocks)


def _shift_coeffs(coeffs: Sequence[int], alpha: int) -> List[int]:
    """Coefficients of f(x + alpha) by Horner in the shifted variable."""
    n = len(coeffs)
    out = [0] * n
    for c in reversed(list(coeffs)):
        shifted = [0] * n
        for i in range(n - 1):
            shifted[i + 1] += out[i]
        for i in range(n):
            shifted[i] += alpha * out[i]
        shifted[0] += c
        out = shifted
    return out


def _block_at(
    coeffs: Sequence[int], p: int, t: int, q: int, alpha: int
) -> Tuple[bool, str]:
    """Whether f(x + alpha) shows a t-Eisenstein block of degree q: the mod-p
    reduction is x^q * unit and the Newton polygon starts with the single
    segment (0, t) -> (q, 0)."""
    shifted = _shift_coeffs(coeffs, alpha)
    reduced = fppoly.reduce_poly(shifted, p)
    if fppoly.degree(reduced) < q or any(reduced[:q]):
        return False, f"f(x+{alpha}) is not x^{q} * unit mod {p}"
    if reduced[q] == 0:
        return False, f"multiplicity of alpha={alpha} in the reduction exceeds {q}"
    vals = [int_valuation(c, p) for c in shifted]
    if vals[0] != t:
        return False, f"v_p(f({alpha})) = {vals[0]} != t = {t}"
    hull = newton_polygon(vals)
    if len(hull) < 2 or hull[0] != (0, t) or hull[1] != (q, 0):
        return False, f"polygon of f(x+{alpha}) does not start (0,{t}) -> ({q},0)"
    return True, f"alpha={alpha}: polygon segment (0,{t}) -> ({q},0)"


def _needs(spec: TypeSpec) -> List[Tuple[int, int]]:
    # (degree, occurrence index) pairs, supporting repeated degrees
    counter: Dict[int, int] = {}
    needs = []
    for q in spec.blocks:
        needs.append((q, counter.get(q, 0)))
        counter[q] = counter.get(q, 0) + 1
    return needs


def _assign_blocks(
    coeffs: Sequence[int], spec: TypeSpec, mults: Dict[int, int]
) -> Dict[Tuple[int, int], int]:
    """Match block degrees to distinct residues by backtracking."""
    needs = _needs(spec)
    candidates = {
        need: [
            a for a, mult in mults.items()
            if mult == need[0]
            and _block_at(coeffs, spec.p, spec.t, need[0], a)[0]
        ]
        for need in needs
    }
    assignment: Dict[Tuple[int, int], int] = {}

    def backtrack(idx: int, used: Set[int]) -> bool:
        if idx == len(needs):
            return True
        need = needs[idx]
        for alpha in candidates[need]:
            if alpha in used:
                continue
            assignment[need] = alpha
            if backtrack(idx + 1, used | {alpha}):
                return True
            del assignment[need]
        return False

    backtrack(0, set())
    return assignment


def _rational_squarefree(coeffs: Sequence[int]) -> bool:
    """gcd(f, f') over Q is constant."""
    def trim(x):
        while x and x[-1] == 0:
            x.pop()
        return x

    a = trim([Fraction(c) for c in coeffs])
    b = trim(poly_derivative(a))
    while b:
        while len(a) >= len(b) and a:
            c = a[-1] / b[-1]
            d = len(a) - len(b)
            for i, bi in enumerate(b):
                a[d + i] -= c * bi
            a = trim(a)
        a, b = b, a
    return len(a) - 1 <= 0


def check_type(
    f: Sequence[int], spec: TypeSpec, precision: Optional[int] = None
) -> TypeReport:
    """Verify a factorization type block by block.

    f must be squarefree over Q with leading coefficient a unit at spec.p
    (it is normalized to a monic polynomial mod p^precision).  For each
    required block degree q the candidate shifts alpha are the roots of the
    mod-p reduction with multiplicity exactly q; blocks occupy distinct
    alphas, and the cofactor must reduce to a separable polynomial that does
    not vanish at any alpha.  The verdict depends only on coefficient
    valuations below precision (default t + 2).
    """
    p, t = spec.p, spec.t
    precision = t + 2 if precision is None else precision
    if precision <= t:
        raise PreconditionFailed("precision must exceed t")
    coeffs = [int(c) for c in f]
    if not coeffs or coeffs[-1] == 0:
        raise PreconditionFailed("leading coefficient must be nonzero")
    if not _rational_squarefree(coeffs):
        raise NotSquarefree("f has a repeated factor over Q")
    if coeffs[-1] % p == 0:
        raise PreconditionFailed("leading coefficient must be a unit at p")
    big = p**precision
    inv_lead = pow(coeffs[-1], -1, big)
    normalized = [c * inv_lead % big for c in coeffs]

    reduced = fppoly.reduce_poly(normalized, p)
    mults = fppoly.roots_with_multiplicity(reduced, p)
    assignment = _assign_blocks(normalized, spec, mults)
    reports: List[BlockReport] = []
    used: Set[int] = set()
    for need in _needs(spec):
        q = need[0]
        alpha = assignment.get(need)
        if alpha is None:
            reports.append(
                BlockReport(q, None, False, f"no residue carries a degree-{q} block")
            )
            continue
        ok, detail = _block_at(normalized, p, t, q, alpha)
        reports.append(BlockReport(q, alpha, ok, detail))
        used.add(alpha)

    cofactor = reduced
    cof_ok = True
    detail_parts = []
    if all(r.ok for r in reports):
        for rep in reports:
            cofactor, rem = fppoly.divmod_poly(
                cofactor, _linear_power((-rep.alpha) % p, rep.degree, p), p
            )
            if rem:
                cof_ok = False
                detail_parts.append(f"(x-{rep.alpha})^{rep.degree} does not divide")
                break
        if cof_ok:
            sep = fppoly.degree(cofactor) <= 0 or fppoly.is_squarefree(cofactor, p)
            vanish = bool(cofactor) and any(
                fppoly.evaluate(cofactor, a, p) == 0 for a in used
            )
            cof_ok = sep and not vanish
            detail_parts.append(
                f"cofactor degree {fppoly.degree(cofactor)}, separable={sep}, "
                f"vanishes at a block residue={vanish}"
            )
    else:
        cof_ok = False
        detail_parts.append("blocks unresolved")
    return TypeReport(
        spec=spec, blocks=tuple(reports), cofactor_ok=cof_ok,
        cofactor_detail="; ".join(detail_parts),
    )


def _linear_power(root_neg: int, e: int, p: int) -> List[int]:
    out = [1]
    for _ in range(e):
        out = fppoly.mul(out, [root_neg, 1], p)
    return out


# ---------------------------------------------------------------------------
# construction

def construct_typed_poly(
    degree: int, specs: Sequence[Tuple[int, object]]
) -> List[int]:
    """Build an integer polynomial satisfying every local spec.

    Each spec is (prime, TypeSpec) for a factorization type, or
    (prime, "semistable") for a squarefree-mod-prime filler.  Local models
    are glued by CRT (types at precision t + 2, fillers at precision 1) and
    the result is re-verified with check_type for every typed spec.
    """
    from .tame import LocalModel, glue_global

    primes_seen = [p for p, _ in specs]
    if len(set(primes_seen)) != len(primes_seen):
        raise InfeasibleSpec("specs must be at distinct primes")
    models = []
    for prime, spec in specs:
        if spec == "semistable":
            local = build_semistable_local(prime, degree)
            models.append(LocalModel(prime, 1, tuple(local)))
            continue
        if not isinstance(spec, TypeSpec) or spec.p != prime:
            raise PreconditionFailed("spec prime mismatch")
        local = build_typed_local(spec, degree)
        models.append(LocalModel(prime, spec.t + 2, tuple(local)))
    glued = glue_global(models, monic=True)
    for prime, spec in specs:
        if isinstance(spec, TypeSpec):
            report = check_type(glued, spec)
            if not report.ok:
                raise InfeasibleSpec(
                    f"constructed polynomial fails its own spec at {prime}"
                )
    return glued


def build_typed_local(spec: TypeSpec, degree: int) -> List[int]:
    """Monic degree-d model of the given type: shifted Eisenstein blocks
    x^q - p^t at alpha = 0, 1, 2, ... and distinct filler roots on the
    remaining degree, avoiding the block residues."""
    p, t = spec.p, spec.t
    total = sum(spec.blocks)
    if total > degree:
        raise InfeasibleSpec(f"blocks sum to {total} > degree {degree}")
    if len(spec.blocks) + (degree - total) > p:
        raise InfeasibleSpec(
            f"not enough residues mod {p} for {len(spec.blocks)} blocks and "
            f"{degree - total} filler roots"
        )
    coeffs = [1]
    alpha = 0
    for q in spec.blocks:
        block = [0] * (q + 1)
        block[q] = 1
        block[0] = -(p**t)
        coeffs = _int_poly_mul(coeffs, _shift_coeffs(block, -alpha))
        alpha += 1
    for root in range(alpha, alpha + degree - total):
        coeffs = _int_poly_mul(coeffs, [-root, 1])
    return [c % p ** (t + 2) for c in coeffs]


def build_semistable_local(prime: int, degree: int) -> List[int]:
    """A monic polynomial of the given degree that is squarefree mod prime
    (a good-reduction filler): distinct roots when they fit, else a
    deterministic scan over sparse candidates."""
    if degree < prime:
        coeffs = [1]
        for root in range(degree):
            coeffs = _int_poly_mul(coeffs, [-root, 1])
        return [c % prime for c in coeffs]
    for a in range(prime):
        for b in range(prime):
            for c in range(prime):
                cand = [0] * (degree + 1)
                cand[degree] = 1
                cand[0] = c
                cand[1] = b
                if degree >= 2:
                    cand[2] = a
                if fppoly.is_squarefree(fppoly.reduce_poly(cand, prime), prime):
                    return cand
    raise InfeasibleSpec(f"no squarefree filler of degree {degree} mod {prime}")


def _int_poly_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out
