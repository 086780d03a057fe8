"""Dense polynomial arithmetic over the prime fields F_p.

Polynomials are lists of ints in [0, p), lowest degree first, with no
trailing zeros ([] is the zero polynomial).  Only the basic ring operations
needed elsewhere are provided: products, division, gcd, modular powers,
derivatives, and squarefreeness.
"""

from __future__ import annotations

from typing import List, Sequence

Poly = List[int]


def trim(a: Sequence[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce_poly(coeffs: Sequence[int], p: int) -> Poly:
    return trim([c % p for c in coeffs])


def degree(a: Sequence[int]) -> int:
    """Degree, with -1 for the zero polynomial."""
    return len(a) - 1


def add(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                 for i in range(n)])


def sub(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                 for i in range(n)])


def mul(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return trim(out)


def scalar_mul(c: int, a: Sequence[int], p: int) -> Poly:
    return trim([c * x % p for x in a])


def divmod_poly(a: Sequence[int], b: Sequence[int], p: int):
    """Quotient and remainder of a by b (b nonzero)."""
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(trim(a))
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        d = len(a) - len(b)
        q[d] = c
        for i, bi in enumerate(b):
            a[d + i] = (a[d + i] - c * bi) % p
        a = trim(a)
    return trim(q), a


def mod(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    return divmod_poly(a, b, p)[1]


def monic(a: Sequence[int], p: int) -> Poly:
    a = trim(a)
    if not a:
        return a
    return scalar_mul(pow(a[-1], -1, p), a, p)


def gcd(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def pow_mod(base: Sequence[int], e: int, modulus: Sequence[int], p: int) -> Poly:
    result = [1]
    base = mod(base, modulus, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), modulus, p)
        base = mod(mul(base, base, p), modulus, p)
        e >>= 1
    return result


def derivative(a: Sequence[int], p: int) -> Poly:
    return trim([i * c % p for i, c in enumerate(a)][1:])


def is_squarefree(a: Sequence[int], p: int) -> bool:
    """No repeated factor over F_p (gcd with the derivative is constant)."""
    a = trim(a)
    if degree(a) <= 0:
        return bool(a)
    d = derivative(a, p)
    if not d:
        return False
    return degree(gcd(a, d, p)) == 0


def evaluate(a: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(list(a)):
        acc = (acc * x + c) % p
    return acc


def roots_with_multiplicity(a: Sequence[int], p: int) -> dict:
    """{root: multiplicity} over F_p, by scan and repeated division."""
    out = {}
    a = trim(a)
    for r in range(p):
        m = 0
        while a and evaluate(a, r, p) == 0:
            a, rem = divmod_poly(a, [(-r) % p, 1], p)
            assert rem == []
            m += 1
        if m:
            out[r] = m
    return out
