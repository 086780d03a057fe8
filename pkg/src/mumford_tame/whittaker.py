"""Whittaker groups from point configurations, and their hyperelliptic models.

A configuration is a set of 2g+2 distinct rational points: g finite pairs
(a_i, b_i) plus the reserved pair (1, infinity).  From it we build the
involutions s_i fixing each pair, s_inf fixing (1, inf), the free generators
gamma_i = s_i s_inf, and the 2g fundamental-domain discs.  Good position is
certified by explicit valuation inequalities; word enumeration, the theta
product over the involution group, and the resulting degree-(2g+1) curve
model are all exact rational computations.

Conventions for the theta product theta(z) = prod_w (z - w(0))/(z - w(1)):
the identity factor forces theta(1) = inf and theta(inf) = 1, so the curve
model drops the z = 1 factor (its branch point sits at x = infinity) and
keeps the factor x - 1 coming from z = inf, giving a monic model of degree
exactly 2g+1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from .errors import DuplicatePoints, PoleHit, PreconditionFailed
from .geometry import (
    INFINITY,
    Disc,
    MobiusMap,
    ProjectivePoint,
    apply,
    as_point,
    closures_disjoint,
    disc_distance,
    image_of_disc,
    involution_for_pair,
)
from .padic import Rational, valuation

#: Letter used for s_inf in involution-alphabet words; the s_i are 1..g.
INF_LETTER = 0

S_INF = MobiusMap(1, -2, 0, -1)


@dataclass(frozen=True)
class PointConfiguration:
    """g finite pairs (a_i, b_i) over Q_p, with the implicit pair (1, inf)."""

    p: int
    pairs: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        pairs = tuple(
            (Fraction(a), Fraction(b)) for a, b in self.pairs
        )
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise PreconditionFailed("at least one finite pair required")
        flat = [x for pair in pairs for x in pair]
        seen = set(flat)
        if len(seen) != len(flat) or Fraction(1) in seen:
            raise DuplicatePoints(
                "configuration points must be pairwise distinct and avoid 1, inf"
            )

    @property
    def g(self) -> int:
        return len(self.pairs)

    @property
    def points(self) -> list:
        """All 2g+2 points, the reserved pair last."""
        flat: List[ProjectivePoint] = [
            ProjectivePoint.affine(x) for pair in self.pairs for x in pair
        ]
        return flat + [ProjectivePoint.affine(1), INFINITY]


@dataclass(frozen=True)
class WhittakerData:
    """The full construction package derived from a configuration."""

    config: PointConfiguration
    centers: Tuple[Fraction, ...]
    radii: Tuple[Fraction, ...]
    involutions: Tuple[MobiusMap, ...]
    s_inf: MobiusMap
    generators: Tuple[MobiusMap, ...]
    generator_inverses: Tuple[MobiusMap, ...]
    discs: Tuple[Disc, ...]
    mirror_discs: Tuple[Disc, ...]
    min_distance: Optional[int]

    @property
    def p(self) -> int:
        return self.config.p

    @property
    def g(self) -> int:
        return self.config.g


def build(config: PointConfiguration) -> WhittakerData:
    """Derive centers, radii, involutions, generators and domain discs."""
    p = config.p
    centers = tuple((a + b) / 2 for a, b in config.pairs)
    radii = tuple((b - a) / 2 for a, b in config.pairs)
    involutions = tuple(involution_for_pair(a, b) for a, b in config.pairs)
    generators = tuple(s @ S_INF for s in involutions)
    for gamma, c, r in zip(generators, centers, radii):
        expected = MobiusMap(c, c * c - r * r - 2 * c, 1, c - 2)
        assert gamma.proportional_to(expected), "generator matrix cross-check"
    generator_inverses = tuple(gamma.inverse() for gamma in generators)
    discs = tuple(
        Disc.open_disc(c, int(valuation(r, p))) for c, r in zip(centers, radii)
    )
    mirror_discs = tuple(image_of_disc(S_INF, b, p) for b in discs)
    min_distance = _min_distance(discs, mirror_discs, p)
    return WhittakerData(
        config=config,
        centers=centers,
        radii=radii,
        involutions=involutions,
        s_inf=S_INF,
        generators=generators,
        generator_inverses=generator_inverses,
        discs=discs,
        mirror_discs=mirror_discs,
        min_distance=min_distance,
    )


def build_from_pairs(p: int, pairs: Sequence) -> WhittakerData:
    return build(PointConfiguration(p, tuple((Fraction(a), Fraction(b)) for a, b in pairs)))


def config_to_dict(config: PointConfiguration) -> dict:
    """The configuration-file schema: {p, g, pairs: [[a, b], ...]}."""
    from .padic import scalar_str

    return {
        "p": config.p,
        "g": config.g,
        "pairs": [[scalar_str(a), scalar_str(b)] for a, b in config.pairs],
    }


def config_from_dict(payload: dict) -> PointConfiguration:
    from .padic import parse_scalar

    pairs = tuple(
        (parse_scalar(a), parse_scalar(b)) for a, b in payload["pairs"]
    )
    config = PointConfiguration(int(payload["p"]), pairs)
    if "g" in payload and int(payload["g"]) != config.g:
        raise PreconditionFailed("declared genus does not match the pairs")
    return config


def _min_distance(discs, mirror_discs, p) -> Optional[int]:
    """Minimum Berkovich distance over all pairs of distinct domain discs,
    or None when some closures intersect."""
    all_discs = list(discs) + list(mirror_discs)
    best = None
    for i in range(len(all_discs)):
        for j in range(i + 1, len(all_discs)):
            if not closures_disjoint(all_discs[i], all_discs[j], p):
                return None
            d = disc_distance(all_discs[i], all_discs[j], p)
            best = d if best is None else min(best, d)
    return best


# ---------------------------------------------------------------------------
# good position

@dataclass(frozen=True)
class CheckItem:
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class GoodPositionReport:
    checks: Tuple[CheckItem, ...]

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failed_names(self) -> list:
        return [c.name for c in self.checks if not c.ok]


def good_position_check(data: WhittakerData) -> GoodPositionReport:
    """Certify the valuation inequalities that make the group Whittaker of
    rank g: a_1 = 0, the ascending absolute-value chain
    0 < |b_1| < |a_2| <= |b_2| <= ... <= |b_g| < 1, the ratio condition
    |r_i| / |c_i - c_j| < 1 for i != j, and disjointness of the 2g closed
    discs.  Failures are report entries, never exceptions."""
    checks = []
    a1 = data.config.pairs[0][0]
    checks.append(
        CheckItem("base_point_zero", a1 == 0, f"a_1 = {a1}")
    )
    checks.append(_chain_check(data))
    checks.append(_ratio_check(data))
    ok = data.min_distance is not None
    checks.append(
        CheckItem(
            "discs_disjoint",
            ok,
            "all 2g closed discs pairwise disjoint"
            + (f"; min distance {data.min_distance}" if ok else ": overlap found"),
        )
    )
    return GoodPositionReport(tuple(checks))


def _chain_check(data: WhittakerData) -> CheckItem:
    p = data.p
    # |b_1| < |a_2| <= |b_2| <= |a_3| <= ... <= |b_g| < 1, all nonzero
    chain = [data.config.pairs[0][1]]
    for a, b in data.config.pairs[1:]:
        chain.extend([a, b])
    vals = [valuation(x, p) for x in chain]
    detail = "valuations " + ", ".join(str(v) for v in vals)
    if any(v == float("inf") for v in vals):
        return CheckItem("absolute_value_chain", False, detail + " (zero point)")
    ok = all(v > 0 for v in vals)
    if len(vals) > 1:
        ok = ok and vals[0] > vals[1]
        ok = ok and all(vals[i] >= vals[i + 1] for i in range(1, len(vals) - 1))
    return CheckItem("absolute_value_chain", ok, detail)


def _ratio_check(data: WhittakerData) -> CheckItem:
    p, g = data.p, data.g
    worst = None
    for i in range(g):
        for j in range(g):
            if i == j:
                continue
            dc = data.centers[i] - data.centers[j]
            if dc == 0:
                return CheckItem("radius_center_ratio", False,
                                 f"c_{i + 1} = c_{j + 1}")
            margin = valuation(data.radii[i], p) - valuation(dc, p)
            if worst is None or margin < worst:
                worst = margin
    if worst is None:
        return CheckItem("radius_center_ratio", True, "vacuous for g = 1")
    return CheckItem(
        "radius_center_ratio", worst > 0,
        f"min over i != j of v(r_i) - v(c_i - c_j) = {worst}"
    )


# ---------------------------------------------------------------------------
# word enumeration

@dataclass(frozen=True)
class GroupWord:
    """A reduced word: over {gamma_i^+-1} (alphabet "gamma", letters are
    signed generator indices) or over {s_1..s_g, s_inf} (alphabet
    "involution", letters are indices with 0 for s_inf)."""

    letters: Tuple[int, ...]
    alphabet: str = "gamma"

    def __post_init__(self):
        if self.alphabet == "gamma":
            if any(a + b == 0 for a, b in zip(self.letters, self.letters[1:])):
                raise PreconditionFailed("word is not reduced")
        elif self.alphabet == "involution":
            if any(a == b for a, b in zip(self.letters, self.letters[1:])):
                raise PreconditionFailed("word is not reduced")
        else:
            raise PreconditionFailed(f"unknown alphabet {self.alphabet!r}")

    def __len__(self):
        return len(self.letters)


def _gamma_letter_order(g: int) -> list:
    # gamma_1 < gamma_1^-1 < gamma_2 < gamma_2^-1 < ...
    out = []
    for k in range(1, g + 1):
        out.extend([k, -k])
    return out


def enumerate_words(g: int, n: int, alphabet: str = "gamma") -> Iterator[GroupWord]:
    """All reduced words of length <= n, shortest first, each length block in
    lexicographic order of the alphabet s_1 < ... < s_g < s_inf, respectively
    gamma_1 < gamma_1^-1 < ... < gamma_g^-1."""
    if n < 0:
        raise PreconditionFailed("word length bound must be >= 0")
    if alphabet == "gamma":
        letters = _gamma_letter_order(g)
        blocked = lambda prev, nxt: prev + nxt == 0  # noqa: E731
    elif alphabet == "involution":
        letters = list(range(1, g + 1)) + [INF_LETTER]
        blocked = lambda prev, nxt: prev == nxt  # noqa: E731
    else:
        raise PreconditionFailed(f"unknown alphabet {alphabet!r}")
    level: List[Tuple[int, ...]] = [()]
    yield GroupWord((), alphabet)
    for _ in range(n):
        nxt_level = []
        for word in level:
            for letter in letters:
                if word and blocked(word[-1], letter):
                    continue
                nxt_level.append(word + (letter,))
        for w in nxt_level:
            yield GroupWord(w, alphabet)
        level = nxt_level


def word_count(g: int, n: int, alphabet: str = "gamma") -> int:
    """Closed-form count of reduced words of length <= n."""
    if alphabet == "gamma":
        return 1 + sum(2 * g * (2 * g - 1) ** (k - 1) for k in range(1, n + 1))
    return 1 + sum((g + 1) * g ** (k - 1) for k in range(1, n + 1))


def gamma_letter_matrix(data: WhittakerData, letter: int) -> MobiusMap:
    if letter > 0:
        return data.generators[letter - 1]
    return data.generator_inverses[-letter - 1]


def involution_letter_matrix(data: WhittakerData, letter: int) -> MobiusMap:
    if letter == INF_LETTER:
        return data.s_inf
    return data.involutions[letter - 1]


def word_matrix(data: WhittakerData, word: GroupWord) -> MobiusMap:
    m = MobiusMap(1, 0, 0, 1)
    pick = gamma_letter_matrix if word.alphabet == "gamma" else involution_letter_matrix
    for letter in word.letters:
        m = m @ pick(data, letter)
    return m


def iter_word_matrices(
    data: WhittakerData, n: int, alphabet: str = "gamma"
) -> Iterator[Tuple[GroupWord, MobiusMap]]:
    """(word, matrix) pairs for all reduced words of length <= n, building
    each matrix incrementally from its parent word."""
    if alphabet == "gamma":
        letters = _gamma_letter_order(data.g)
        blocked = lambda prev, nxt: prev + nxt == 0  # noqa: E731
        pick = gamma_letter_matrix
    else:
        letters = list(range(1, data.g + 1)) + [INF_LETTER]
        blocked = lambda prev, nxt: prev == nxt  # noqa: E731
        pick = involution_letter_matrix
    identity = MobiusMap(1, 0, 0, 1)
    yield GroupWord((), alphabet), identity
    level = [((), identity)]
    for _ in range(n):
        nxt_level = []
        for word, m in level:
            for letter in letters:
                if word and blocked(word[-1], letter):
                    continue
                nxt_level.append((word + (letter,), m @ pick(data, letter)))
        for w, m in nxt_level:
            yield GroupWord(w, alphabet), m
        level = nxt_level


# ---------------------------------------------------------------------------
# theta products and the curve model

def theta_value(
    data: WhittakerData, z: Union[ProjectivePoint, Rational], n: int
) -> Fraction:
    """Partial theta product over involution-alphabet words of length <= n:
    prod_w (z - w(0))/(z - w(1)).  Exact; z = inf gives 1 for every n."""
    z = as_point(z)
    if z.is_infinity:
        return Fraction(1)
    zero = ProjectivePoint.affine(0)
    one = ProjectivePoint.affine(1)
    result = Fraction(1)
    for word, m in iter_word_matrices(data, n, "involution"):
        w0 = apply(m, zero)
        w1 = apply(m, one)
        if w0.is_infinity or w1.is_infinity:
            raise PoleHit(word, "word image at infinity")
        den = z.value - w1.value
        if den == 0:
            raise PoleHit(word)
        result *= (z.value - w0.value) / den
    return result


def hyperelliptic_model(data: WhittakerData, n: int = 3) -> List[Fraction]:
    """Monic degree-(2g+1) model: prod over z in Z minus {1} of (x - theta_n(z)).

    Coefficients are exact rationals, lowest degree first.  Requires the
    configuration to pass the good-position check.
    """
    report = good_position_check(data)
    if not report.passed:
        raise PreconditionFailed(
            f"configuration is not in good position: {report.failed_names()}"
        )
    branch_inputs = [
        ProjectivePoint.affine(x) for pair in data.config.pairs for x in pair
    ] + [INFINITY]
    coeffs = [Fraction(1)]
    for z in branch_inputs:
        root = theta_value(data, z, n)
        # multiply by (x - root)
        coeffs = [Fraction(0)] + coeffs
        for i in range(len(coeffs) - 1):
            coeffs[i] -= root * coeffs[i + 1]
    return coeffs
