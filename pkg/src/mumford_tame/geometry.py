"""Mobius transformations on P^1(Q_p) and p-adic discs.

Points are exact rationals (affine) or the distinguished point at infinity.
A disc carries its center and the valuation of its radius only (the radius
itself is conceptually p^{-radius_valuation}), so every geometric predicate
reduces to integer valuation comparisons:

    z in B(c, rho)      iff  v(z - c) >  rho      (open)
    z in closure(B)     iff  v(z - c) >= rho      (closed)
    z on the boundary   iff  v(z - c) == rho
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import DegeneratePair, NotDisjoint, PoleInsideDisc
from .padic import Rational, valuation


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of P^1(Q_p): an affine rational value, or infinity (value None)."""

    value: Optional[Fraction]

    @classmethod
    def affine(cls, x: Rational) -> "ProjectivePoint":
        return cls(Fraction(x))

    @classmethod
    def infinity(cls) -> "ProjectivePoint":
        return cls(None)

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    def __str__(self):
        return "inf" if self.value is None else str(self.value)


INFINITY = ProjectivePoint.infinity()


def as_point(z: Union[ProjectivePoint, Rational]) -> ProjectivePoint:
    if isinstance(z, ProjectivePoint):
        return z
    return ProjectivePoint.affine(z)


@dataclass(frozen=True)
class MobiusMap:
    """Projective 2x2 matrix [[a, b], [c, d]] modulo nonzero scalars."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.det == 0:
            raise DegeneratePair("Mobius matrix must have nonzero determinant")

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def proportional_to(self, other: "MobiusMap") -> bool:
        """Equality in PGL_2 (matrix proportionality)."""
        return (
            self.a * other.b == self.b * other.a
            and self.a * other.c == self.c * other.a
            and self.a * other.d == self.d * other.a
            and self.b * other.c == self.c * other.b
            and self.b * other.d == self.d * other.b
            and self.c * other.d == self.d * other.c
        )

    def is_identity(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def normalized(self) -> tuple:
        """Integer entries with content 1, first nonzero entry positive."""
        entries = (self.a, self.b, self.c, self.d)
        lcm = 1
        for e in entries:
            lcm = lcm * e.denominator // math.gcd(lcm, e.denominator)
        ints = [int(e * lcm) for e in entries]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        ints = [v // g for v in ints]
        lead = next(v for v in ints if v)
        if lead < 0:
            ints = [-v for v in ints]
        return tuple(ints)


IDENTITY_MAP = MobiusMap(1, 0, 0, 1)


def apply(m: MobiusMap, z: Union[ProjectivePoint, Rational]) -> ProjectivePoint:
    """Evaluate (a z + b)/(c z + d), with the usual conventions at poles and
    infinity (a pole maps to infinity; infinity maps to a/c)."""
    z = as_point(z)
    if z.is_infinity:
        if m.c == 0:
            return INFINITY
        return ProjectivePoint.affine(m.a / m.c)
    den = m.c * z.value + m.d
    if den == 0:
        return INFINITY
    return ProjectivePoint.affine((m.a * z.value + m.b) / den)


def involution_for_pair(a: Rational, b: Rational) -> MobiusMap:
    """The involution [[c, r^2 - c^2], [1, -c]] fixing the two affine points
    a and b, where c = (a+b)/2 and r = (b-a)/2."""
    a, b = Fraction(a), Fraction(b)
    if a == b:
        raise DegeneratePair(f"cannot build an involution fixing {a} twice")
    c = (a + b) / 2
    r = (b - a) / 2
    return MobiusMap(c, r * r - c * c, 1, -c)


@dataclass(frozen=True)
class Disc:
    """A p-adic disc: center, radius valuation, and openness."""

    center: Fraction
    radius_valuation: int
    closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "center", Fraction(self.center))

    @classmethod
    def open_disc(cls, center: Rational, radius_valuation: int) -> "Disc":
        return cls(Fraction(center), radius_valuation, closed=False)

    @classmethod
    def closed_disc(cls, center: Rational, radius_valuation: int) -> "Disc":
        return cls(Fraction(center), radius_valuation, closed=True)

    def closure(self) -> "Disc":
        return Disc(self.center, self.radius_valuation, closed=True)

    def contains(self, z: Union[ProjectivePoint, Rational], p: int) -> bool:
        z = as_point(z)
        if z.is_infinity:
            return False
        v = valuation(z.value - self.center, p)
        if self.closed:
            return v >= self.radius_valuation
        return v > self.radius_valuation

    def on_boundary(self, z: Union[ProjectivePoint, Rational], p: int) -> bool:
        """z in closure(B) minus B, i.e. v(z - center) == radius_valuation."""
        z = as_point(z)
        if z.is_infinity:
            return False
        return valuation(z.value - self.center, p) == self.radius_valuation


def closures_disjoint(b1: Disc, b2: Disc, p: int) -> bool:
    """Two closed ultrametric discs meet iff one contains the other's center."""
    v = valuation(b1.center - b2.center, p)
    return v < min(b1.radius_valuation, b2.radius_valuation)


def image_of_disc(m: MobiusMap, b: Disc, p: int) -> Disc:
    """Image disc under a Mobius map whose pole lies outside closure(b).

    center' = m(center), rho' = rho + v(det m) - 2 v(c*center + d); the
    openness is preserved.  If the pole lies in the closed disc the image is
    a disc complement and PoleInsideDisc is raised.
    """
    den = m.c * b.center + m.d
    if m.c != 0:
        pole = -m.d / m.c
        if valuation(pole - b.center, p) >= b.radius_valuation:
            raise PoleInsideDisc(
                "pole of the map lies in the closed disc; image is a complement"
            )
    new_center = (m.a * b.center + m.b) / den
    new_rho = b.radius_valuation + valuation(m.det, p) - 2 * valuation(den, p)
    return Disc(new_center, int(new_rho), closed=b.closed)


def disc_distance(b1: Disc, b2: Disc, p: int) -> int:
    """Berkovich path distance between two disjoint discs:
    rho_1 + rho_2 - 2 v(center_1 - center_2), an exact integer."""
    if not closures_disjoint(b1, b2, p):
        raise NotDisjoint("disc distance requires disjoint closed discs")
    v = valuation(b1.center - b2.center, p)
    return b1.radius_valuation + b2.radius_valuation - 2 * int(v)


# ---------------------------------------------------------------------------
# serialization

def disc_to_dict(b: Disc) -> dict:
    from .padic import scalar_str

    return {
        "center": scalar_str(b.center),
        "radius_valuation": b.radius_valuation,
        "open": not b.closed,
    }


def mobius_to_dict(m: MobiusMap) -> dict:
    return {"matrix": [str(v) for v in m.normalized()]}
