"""Exact p-adic arithmetic on rational numbers.

Every quantity in the curve constructions is rational, so p-adic values are
carried exactly as :class:`fractions.Fraction` (always in lowest terms with
positive denominator) and every absolute-value comparison is performed as an
integer valuation comparison.  Nothing in this module ever rounds: the
"working precision" of a context only controls how many p-adic digits of a
root approximation are produced, and all final assertions are re-verified
with exact arithmetic.

Conventions:
  * valuations are plain ints, with ``math.inf`` for the valuation of 0;
  * polynomials are coefficient lists, lowest degree first;
  * scalars serialize as decimal strings ``"num/den"`` (``"num"`` if den=1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence, Union

from .errors import PreconditionFailed, ZeroInput

Rational = Union[int, Fraction]

#: Valuation of zero.
INF = math.inf

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def int_valuation(n: int, p: int) -> Union[int, float]:
    """v_p(n) for an integer n; inf for n = 0."""
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x: Rational, p: int) -> Union[int, float]:
    """p-adic valuation of a rational: v_p(num) - v_p(den); inf for 0."""
    if not is_prime(p):
        raise PreconditionFailed(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        return INF
    return int_valuation(x.numerator, p) - int_valuation(x.denominator, p)


def unit_part(x: Rational, p: int) -> Fraction:
    """x / p^{v_p(x)}, the p-adic unit factor of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ZeroInput("unit part of 0")
    v = valuation(x, p)
    return x / Fraction(p) ** v


def in_one_plus_ball(x: Rational, p: int, n: int) -> bool:
    """Whether x lies in 1 + p^n Z_p, i.e. v_p(x - 1) >= n."""
    return valuation(Fraction(x) - 1, p) >= n


@dataclass(frozen=True)
class PadicContext:
    """Ambient field data: K = Q_p, uniformiser p, e = 1, and a working
    precision N (number of significant p-adic digits for root approximations).
    """

    p: int
    N: int
    e: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise PreconditionFailed(f"p={self.p} is not prime")
        if self.N < 1:
            raise PreconditionFailed("working precision N must be >= 1")
        if self.e != 1:
            raise PreconditionFailed("only the unramified case e = 1 is supported")


# ---------------------------------------------------------------------------
# polynomial helpers (dense coefficient lists over Q, lowest degree first)

def poly_eval(coeffs: Sequence[Rational], x: Rational) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return Fraction(acc)


def poly_derivative(coeffs: Sequence[Rational]) -> list:
    return [Fraction(i * c) for i, c in enumerate(coeffs)][1:]


def fraction_mod(x: Rational, modulus: int) -> int:
    """Reduce a rational with unit denominator to an integer mod `modulus`."""
    x = Fraction(x)
    if math.gcd(x.denominator, modulus) != 1:
        raise PreconditionFailed(
            f"denominator {x.denominator} is not invertible mod {modulus}"
        )
    return x.numerator * pow(x.denominator, -1, modulus) % modulus


def hensel_root(
    coeffs: Sequence[Rational], a0: Rational, ctx: PadicContext
) -> Fraction:
    """Lift an approximate root by Newton iteration.

    Requires v(f(a0)) > 2 v(f'(a0)) with all coefficients and a0 p-integral.
    Returns the integer residue representative r mod p^N with v(f(r)) >= N
    and v(r - a0) > v(f'(a0)).
    """
    p, n_target = ctx.p, ctx.N
    f = [Fraction(c) for c in coeffs]
    a0 = Fraction(a0)
    if valuation(a0, p) < 0 or any(valuation(c, p) < 0 for c in f if c):
        raise PreconditionFailed("coefficients and a0 must be p-integral")
    df = poly_derivative(f)
    t = valuation(poly_eval(df, a0), p)
    v0 = valuation(poly_eval(f, a0), p)
    if not v0 > 2 * t:
        raise PreconditionFailed(
            f"Hensel inequality fails: v(f(a0))={v0} <= 2*v(f'(a0))={2 * t}"
        )
    if n_target <= t:
        raise PreconditionFailed("precision N must exceed v(f'(a0))")
    r = a0
    fr = poly_eval(f, r)
    while valuation(fr, p) < n_target:
        r = r - fr / poly_eval(df, r)
        fr = poly_eval(f, r)
    rep = fraction_mod(r, p**n_target)
    return Fraction(rep)


class MthPower(NamedTuple):
    """Result of an m-th power test; truthy iff the input is an m-th power."""

    ok: bool
    witness: Optional[Fraction]

    def __bool__(self):  # noqa: D105
        return self.ok


def _staged_root(u: Fraction, m: int, p: int, k: int) -> Optional[int]:
    # Search a0 mod p^(2k+1) with a0^m = u, lifting level by level; any such
    # residue satisfies the quantitative Hensel inequality since v(f') = k.
    target = 2 * k + 1
    u0 = fraction_mod(u, p**target)
    roots = [r for r in range(1, p) if pow(r, m, p) == u0 % p]
    level = 1
    while level < target and roots:
        level += 1
        mod = p**level
        roots = [
            r + t * p ** (level - 1)
            for r in roots
            for t in range(p)
            if pow(r + t * p ** (level - 1), m, mod) == u0 % mod
        ]
    return min(roots) if roots else None


def is_mth_power(x: Rational, m: int, ctx: PadicContext) -> MthPower:
    """Exact m-th power test in Q_p, with a p-adic witness when true.

    True iff m | v_p(x) and the unit part of x is an m-th power unit.  The
    witness w satisfies v_p(w^m - x) >= N + v_p(x), checkable exactly.  Fast
    path (p odd): any unit in 1 + p^m Z_p is an m-th power, so such units
    skip the residue search.
    """
    p, n_target = ctx.p, ctx.N
    x = Fraction(x)
    if x == 0:
        raise ZeroInput("m-th power test on 0")
    if m < 1:
        raise PreconditionFailed("m must be a positive integer")
    k = int(int_valuation(m, p))
    if ctx.N < m + 2 * k + 1:
        raise PreconditionFailed(f"need precision N >= {m + 2 * k + 1} for m={m}")
    v = valuation(x, p)
    if v % m != 0:
        return MthPower(False, None)
    u = unit_part(x, p)
    scale = Fraction(p) ** (v // m)

    unit_ctx = PadicContext(p, n_target)
    if p >= 3 and in_one_plus_ball(u, p, m):
        root = hensel_root(_power_poly(m, u), 1, unit_ctx)
        return MthPower(True, scale * root)

    d = math.gcd(m, p - 1)
    if pow(fraction_mod(u, p), (p - 1) // d, p) != 1:
        return MthPower(False, None)
    a0 = _staged_root(u, m, p, k)
    if a0 is None:
        return MthPower(False, None)
    root = hensel_root(_power_poly(m, u), a0, unit_ctx)
    return MthPower(True, scale * root)


def _power_poly(m: int, u: Fraction) -> list:
    f = [Fraction(0)] * (m + 1)
    f[0] = -u
    f[m] = Fraction(1)
    return f


# ---------------------------------------------------------------------------
# Newton polygons

def newton_polygon(valuations: Sequence[Union[int, float]]) -> list:
    """Vertices of the lower Newton polygon of a polynomial.

    Input: the valuation of each coefficient by degree (inf for zero
    coefficients); the leading valuation must be finite.  Output: the hull
    vertex list [(i, v_i), ...] from degree 0 (or the lowest finite point)
    to the top degree, left to right.
    """
    pts = [(i, v) for i, v in enumerate(valuations) if v != INF]
    if not pts or pts[-1][0] != len(valuations) - 1:
        raise PreconditionFailed("leading coefficient must be nonzero")
    hull: list = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above the segment hull[-2]..pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def polygon_slopes(hull: Sequence) -> list:
    """(slope, horizontal length) for each segment of a polygon hull.

    Slopes are exact Fractions; lengths are ints.
    """
    out = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        out.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
    return out


# ---------------------------------------------------------------------------
# serialization

def scalar_str(x: Rational) -> str:
    """Decimal-string form of a rational: "num/den", or "num" when den = 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_scalar(s: Union[str, int]) -> Fraction:
    """Inverse of :func:`scalar_str`."""
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(s.strip())
