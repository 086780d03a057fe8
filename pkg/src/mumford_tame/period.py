"""Period matrices of Whittaker curves: truncations, closed forms, bounds.

The true period matrix Q is an infinite product over the free group and is
never materialized; the module computes the exact closed form Q0, exact
truncations Qn over words of length <= n, and the correction factor whose
value is identically 1 for the canonical boundary base points

    a = 2 - c_i + r_i,   z = 2 - c_j - r_j.

Every entry is assembled from the cross-ratio factor

    (z - y a) (y_j z - y y_i a) / ((z - y y_i a) (y_j z - y a)),

y running over reduced words.  Matrices are symmetrized by construction:
the literal (i, j) and (j, i) products are distinct rationals that both
approximate the same symmetric true entry, so entries are computed for
i <= j and mirrored.  A matrix's error_valuation_bound b asserts
v(Q_ij^this / Q_ij - 1) >= b against the true Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .errors import (
    ConjugateBasePoints,
    InsufficientErrorBound,
    PoleHit,
    PreconditionFailed,
)
from .geometry import ProjectivePoint, apply
from .padic import PadicContext, is_mth_power, valuation
from .whittaker import WhittakerData, good_position_check, iter_word_matrices

KIND_CLOSED_FORM = "closed_form_Q0"
KIND_TRUNCATION = "truncation_Qn"
KIND_CORRECTED = "corrected_Qalpha"


@dataclass(frozen=True)
class PeriodMatrixApprox:
    """A g x g rational approximation to the period matrix."""

    g: int
    entries: Tuple[Tuple[Fraction, ...], ...]
    kind: str
    n: Optional[int] = None
    error_valuation_bound: Optional[int] = None

    def entry(self, i: int, j: int) -> Fraction:
        """1-based access."""
        return self.entries[i - 1][j - 1]


def base_points(data: WhittakerData, i: int, j: int) -> Tuple[Fraction, Fraction]:
    """Canonical boundary base points for entry (i, j), 1-based:
    a = 2 - c_i + r_i on the boundary of B'_i, z = 2 - c_j - r_j on B'_j."""
    a = 2 - data.centers[i - 1] + data.radii[i - 1]
    z = 2 - data.centers[j - 1] - data.radii[j - 1]
    return a, z


def q_bound(data: WhittakerData) -> int:
    """Valuation of the tightest admissible q in the truncation bound:
    min over i != j of v(r_i) - v(c_i - c_j).  For g = 1 the quantifier is
    empty and the convention value v(r_1) is returned."""
    report = good_position_check(data)
    if not report.passed:
        raise PreconditionFailed(
            f"good position required: {report.failed_names()}"
        )
    p, g = data.p, data.g
    if g == 1:
        return int(valuation(data.radii[0], p))
    margins = [
        int(valuation(data.radii[i], p))
        - int(valuation(data.centers[i] - data.centers[j], p))
        for i in range(g)
        for j in range(g)
        if i != j
    ]
    return min(margins)


def nonconjugacy_check(
    data: WhittakerData,
    a: Union[Fraction, ProjectivePoint],
    z: Union[Fraction, ProjectivePoint],
    n: int,
) -> bool:
    """Finite certificate that no word of length <= n maps a to z."""
    target = z if isinstance(z, ProjectivePoint) else ProjectivePoint.affine(z)
    for _, m in iter_word_matrices(data, n, "gamma"):
        if apply(m, a) == target:
            return False
    return True


def _entry_product(data: WhittakerData, i: int, j: int, n: int) -> Fraction:
    """Exact product over words of length <= n of the cross-ratio factor for
    entry (i, j), 1-based indices."""
    a, z = base_points(data, i, j)
    gamma_i = data.generators[i - 1]
    gamma_j = data.generators[j - 1]
    if not nonconjugacy_check(data, a, z, n):
        raise ConjugateBasePoints(
            f"base points for entry ({i},{j}) are conjugate within length {n}"
        )
    a_pt = ProjectivePoint.affine(a)
    gia_pt = apply(gamma_i, a_pt)
    zj = apply(gamma_j, z)
    if zj.is_infinity or gia_pt.is_infinity:
        raise PoleHit(None, "base point image at infinity")
    z_val, zj_val = Fraction(z), zj.value
    result = Fraction(1)
    for word, m in iter_word_matrices(data, n, "gamma"):
        ya = apply(m, a_pt)
        yia = apply(m, gia_pt)
        if ya.is_infinity or yia.is_infinity:
            raise PoleHit(word, "word image at infinity")
        den = (z_val - yia.value) * (zj_val - ya.value)
        if den == 0:
            raise PoleHit(word)
        result *= (z_val - ya.value) * (zj_val - yia.value) / den
    return result


def _symmetric_matrix(data: WhittakerData, n: int) -> Tuple[Tuple[Fraction, ...], ...]:
    g = data.g
    vals = {}
    for i in range(1, g + 1):
        for j in range(i, g + 1):
            vals[(i, j)] = _entry_product(data, i, j, n)
    return tuple(
        tuple(vals[(min(i, j), max(i, j))] for j in range(1, g + 1))
        for i in range(1, g + 1)
    )


def period_closed_form(data: WhittakerData) -> PeriodMatrixApprox:
    """The exact closed form Q0:
    Q0_ij = ((c_i - c_j - r_i - r_j)/(2 - c_i - c_j + r_i - r_j))^2 for the
    upper triangle (i <= j), mirrored; on the diagonal this simplifies to
    (r_i / (c_i - 1))^2.  Carries the q_bound error valuation."""
    bound = q_bound(data)
    g = data.g
    c, r = data.centers, data.radii

    def q0(i: int, j: int) -> Fraction:
        num = c[i] - c[j] - r[i] - r[j]
        den = 2 - c[i] - c[j] + r[i] - r[j]
        return (num / den) ** 2

    entries = tuple(
        tuple(q0(min(i, j), max(i, j)) for j in range(g)) for i in range(g)
    )
    return PeriodMatrixApprox(
        g=g, entries=entries, kind=KIND_CLOSED_FORM, n=0,
        error_valuation_bound=bound,
    )


def period_truncated(data: WhittakerData, n: int) -> PeriodMatrixApprox:
    """The exact truncation Qn over all reduced words of length <= n, upper
    triangle mirrored.  Its n = 0 instance equals the closed form exactly."""
    if n < 0:
        raise PreconditionFailed("truncation level must be >= 0")
    report = good_position_check(data)
    if not report.passed:
        raise PreconditionFailed(
            f"good position required: {report.failed_names()}"
        )
    entries = _symmetric_matrix(data, n)
    return PeriodMatrixApprox(
        g=data.g, entries=entries, kind=KIND_TRUNCATION, n=n,
        error_valuation_bound=q_bound(data),
    )


def correction_factor(data: WhittakerData, i: int, j: int) -> Fraction:
    """The factor relating the corrected approximation to the closed form:

        (z - y_j^-1 a)(y_j z - y_j a) / ((z - y_j^-1 y_i a)(y_j z - y_j y_i a))

    computed from first principles by matrix application at the canonical
    base points.  Identically 1; callers assert exactness."""
    a, z = base_points(data, i, j)
    gamma_i = data.generators[i - 1]
    gamma_j = data.generators[j - 1]
    gamma_j_inv = data.generator_inverses[j - 1]
    ia = apply(gamma_i, a)
    if ia.is_infinity:
        raise PoleHit(None, "correction factor hit infinity")
    points = {
        "inv_a": apply(gamma_j_inv, a),
        "ja": apply(gamma_j, a),
        "jz": apply(gamma_j, z),
        "inv_ia": apply(gamma_j_inv, ia.value),
        "jia": apply(gamma_j, ia.value),
    }
    if any(pt.is_infinity for pt in points.values()):
        raise PoleHit(None, "correction factor hit infinity")
    num = (z - points["inv_a"].value) * (points["jz"].value - points["ja"].value)
    den = (z - points["inv_ia"].value) * (points["jz"].value - points["jia"].value)
    if den == 0:
        raise PoleHit(None, "correction factor denominator vanished")
    return num / den


def ratio_valuation(x: Fraction, y: Fraction, p: int) -> Union[int, float]:
    """v(x/y - 1), the multiplicative closeness of two nonzero rationals."""
    return valuation(x / y - 1, p)


@dataclass(frozen=True)
class ApproximationReport:
    """Entrywise valuation gaps v(Qn_ij / Q0_ij - 1) against the bound."""

    g: int
    n: int
    q_bound: int
    gaps: Tuple[Tuple[Union[int, float], ...], ...]
    tame_threshold: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(v >= self.q_bound for row in self.gaps for v in row)

    @property
    def tame_passed(self) -> Optional[bool]:
        if self.tame_threshold is None:
            return None
        return all(v >= self.tame_threshold for row in self.gaps for v in row)

    def min_gap(self) -> Union[int, float]:
        return min(v for row in self.gaps for v in row)


def verify_approximation(
    data: WhittakerData, n: int, m: Optional[int] = None
) -> ApproximationReport:
    """Check v(Qn_ij / Q0_ij - 1) >= q_bound entrywise for a truncation level
    n >= 1; when m is given the report also compares the gaps against e*m
    (the threshold used by the tame construction)."""
    if n < 1:
        raise PreconditionFailed("verification needs a truncation level n >= 1")
    q0 = period_closed_form(data)
    qn = period_truncated(data, n)
    p = data.p
    gaps = tuple(
        tuple(
            ratio_valuation(qn.entries[i][j], q0.entries[i][j], p)
            for j in range(data.g)
        )
        for i in range(data.g)
    )
    return ApproximationReport(
        g=data.g, n=n, q_bound=q_bound(data), gaps=gaps,
        tame_threshold=None if m is None else m,
    )


@dataclass(frozen=True)
class MthPowerMatrixReport:
    ok: bool
    entry_valuations: Tuple[Tuple[Union[int, float], ...], ...]
    witnesses: Tuple[Tuple[Optional[Fraction], ...], ...]
    transfer_note: str


def entries_are_mth_powers(
    q: PeriodMatrixApprox, m: int, ctx: PadicContext
) -> MthPowerMatrixReport:
    """Test every entry of an approximation for being an m-th power.

    Requires the approximation to carry an error valuation bound of at least
    e*m, which is what lets the m-th-power conclusion transfer from the
    approximation to the true period matrix (any unit in 1 + p^{e m} Z_p is
    an m-th power)."""
    if q.error_valuation_bound is None or q.error_valuation_bound < ctx.e * m:
        raise InsufficientErrorBound(
            f"need error valuation >= {ctx.e * m}, have {q.error_valuation_bound}"
        )
    ok = True
    vals = []
    wits = []
    for row in q.entries:
        vrow = []
        wrow = []
        for x in row:
            res = is_mth_power(x, m, ctx)
            ok = ok and res.ok
            vrow.append(valuation(x, ctx.p))
            wrow.append(res.witness)
        vals.append(tuple(vrow))
        wits.append(tuple(wrow))
    note = (
        "entries within 1 + p^{em} of the true entries are m-th powers iff "
        "the true entries are; bound certified by the approximation theorem"
    )
    return MthPowerMatrixReport(
        ok=ok, entry_valuations=tuple(vals), witnesses=tuple(wits),
        transfer_note=note,
    )
