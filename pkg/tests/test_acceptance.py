"""Acceptance suite: one test per criterion, one printed pass/fail line each.

Criteria 1 and 3 assert statements that exact computation shows to be
mathematically unattainable: the closed-form period matrix differs from the
true one by a non-trivial unit-square factor on diagonal entries (README:
known limitation).  They are implemented faithfully and left red on purpose;
the failure messages point at the analysis.
"""

import random
import time
from bisect import bisect_right
from fractions import Fraction

import pytest

from conftest import random_good_position_data
from mumford_tame import galois, tame
from mumford_tame.frobenius import TABLE_ROWS, check_table_row, frobenius_charpoly
from mumford_tame.padic import (
    PadicContext,
    INF,
    int_valuation,
    is_mth_power,
    polygon_slopes,
    newton_polygon,
    valuation,
)
from mumford_tame.period import (
    correction_factor,
    period_closed_form,
    q_bound,
    verify_approximation,
)
from mumford_tame.pipeline import construct_report
from mumford_tame.whittaker import theta_value, word_count, enumerate_words


def report_line(criterion, ok, detail=""):
    mark = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"criterion {criterion}: {mark}{suffix}")


CONSTRUCTION_CASES = [(1, 3), (2, 3), (2, 5), (3, 3), (3, 7)]


def test_criterion_1_construction_suite():
    """All five theorem conditions at n=2 for the (g, p) sweep, each < 30 s,
    with the exact entry-level closed-form checks."""
    failures = []
    for g, p in CONSTRUCTION_CASES:
        start = time.time()
        report = construct_report(g, p, n=2)
        elapsed = time.time() - start
        assert elapsed < 30, (g, p, elapsed)
        conditions = {
            c["id"]: c["status"] for c in report["certificate"]["conditions"]
        }
        theorem_conditions = [
            "base_point_zero", "absolute_value_chain", "radius_center_ratio",
            "closed_form_powers", "truncation_powers",
        ]
        for cid in theorem_conditions:
            if conditions[cid] != "pass":
                failures.append((g, p, cid))
    data13 = tame.whittaker_data_for(tame.canonical_parameters(1, 3))
    assert valuation(period_closed_form(data13).entry(1, 1), 3) == 6
    data23 = tame.whittaker_data_for(tame.canonical_parameters(2, 3))
    assert period_closed_form(data23).entry(1, 2) == Fraction(783, 781) ** 2
    ok = not failures
    report_line(1, ok, "" if ok else f"failed conditions: {failures}")
    assert ok, (
        f"theorem conditions failed: {failures} -- the truncation-transfer "
        "condition is unattainable for the stated construction (diagonal "
        "periods differ from the closed form by a non-m-th-power unit "
        "square; README: known limitation)"
    )


def _hundred_configs():
    rng = random.Random(2024)
    return [random_good_position_data(rng) for _ in range(100)]


def test_criterion_2_correction_factor_identity():
    """correction_factor is exactly 1 on 100 randomized configurations."""
    configs = _hundred_configs()
    for data in configs:
        for i in range(1, data.g + 1):
            for j in range(1, data.g + 1):
                assert correction_factor(data, i, j) == 1, (data.config, i, j)
    report_line(2, True, "100 configurations, zero tolerance")


def test_criterion_3_approximation_bound():
    """v(Qn/Q0 - 1) >= q_bound for n in {1, 2} on the same configurations."""
    start = time.time()
    configs = _hundred_configs()
    violations = 0
    checked = 0
    for data in configs:
        for n in (1, 2):
            rep = verify_approximation(data, n)
            for i in range(data.g):
                for j in range(data.g):
                    checked += 1
                    if rep.gaps[i][j] < rep.q_bound:
                        violations += 1
    elapsed = time.time() - start
    assert elapsed < 120, elapsed
    ok = violations == 0
    report_line(3, ok, f"{violations}/{checked} entry gaps below q_bound")
    assert ok, (
        f"{violations} of {checked} gaps fall below q_bound (every violation "
        "is a diagonal entry; off-diagonal entries all satisfy the bound) -- "
        "unattainable as stated; README: known limitation"
    )


def test_criterion_4_goldbach_reproduction():
    """Excluded primes match the table; the double-Goldbach emptiness sweep
    to g = 10^5 gives exactly {1,2,3,4,5,7,13}; < 5 min."""
    start = time.time()
    table = {3: {7}, 4: {5, 7}, 5: {11}, 7: {5, 11, 13}, 13: {11, 17}}
    for g, expected in table.items():
        assert galois.excluded_primes(g) == expected, g
    empty = galois.empty_double_goldbach_genera(10**5)
    assert empty == [1, 2, 3, 4, 5, 7, 13]
    elapsed = time.time() - start
    assert elapsed < 300, elapsed
    report_line(4, True, f"sweep to 1e5 in {elapsed:.1f}s")


def test_criterion_5_frobenius_table_fast_rows():
    """The 7 rows with g <= 7 verify in under 2 minutes."""
    start = time.time()
    fast_rows = [row for row in TABLE_ROWS if row.ell**row.g <= 10**7]
    assert len(fast_rows) == 7
    for row in fast_rows:
        result = check_table_row(row.g, row.p, row.f, row.ell)
        assert result.ok, row
    elapsed = time.time() - start
    assert elapsed < 120, elapsed
    report_line(5, True, f"7 rows in {elapsed:.1f}s")


@pytest.mark.slow
def test_criterion_5_slow_rows_budget_override():
    """The two g = 13 rows pass under the budget override (slow)."""
    for row in TABLE_ROWS:
        if row.g == 13:
            result = check_table_row(row.g, row.p, row.f, row.ell, budget=2 * 10**9)
            assert result.ok, row
    report_line("5-slow", True)


def test_criterion_6_two_adic_path():
    """Default two-adic curves verify for g <= 10 with slope sets exactly
    {-1, ..., -(g+1)}."""
    for g in range(1, 11):
        curve = tame.two_adic_curve(g)
        cert = tame.verify_two_adic(curve)
        assert cert.ok, (g, [c.id for c in cert.conditions if not c.ok])
        hull = newton_polygon([int_valuation(c, 2) for c in curve.h_coeffs])
        slopes = {s for s, _ in polygon_slopes(hull)}
        assert slopes == {Fraction(-v) for v in range(1, g + 2)}, g
    report_line(6, True, "g <= 10, exact slope sets")


def _oracle_goldbach(n, sieve, primes):
    # independent nested-loop oracle: scan pair openers, then walk the prime
    # list for the third member
    out = []
    hi = bisect_right(primes, n - 1)
    for q1 in primes:
        if 2 * q1 > n:
            break
        if not sieve[n - q1]:
            continue
        q2 = n - q1
        idx = bisect_right(primes, q2)
        while idx < hi:
            out.append((n, q1, q2, primes[idx]))
            idx += 1
    return out


def test_criterion_7_oracle_equivalences():
    """Four independent-oracle comparisons, all exact."""
    # (a) goldbach_triples vs brute force for all even n <= 10^4
    sieve = galois._grow_sieve(10**4)
    primes = galois.primes_upto(10**4)
    for n in range(4, 10**4 + 1, 2):
        assert galois.goldbach_triples(n) == _oracle_goldbach(n, sieve, primes), n

    # (b) irreducibility vs trial division (exhaustive p <= 3, sampled 5, 7)
    from test_frobenius import trial_division_irreducible
    from mumford_tame.frobenius import is_irreducible_over_Fp

    rng = random.Random(99)
    for p in (2, 3):
        for code in range(p**5):
            coeffs = []
            value = code
            for _ in range(5):
                coeffs.append(value % p)
                value //= p
            coeffs.append(1)
            assert is_irreducible_over_Fp(coeffs, p) == \
                trial_division_irreducible(coeffs, p)
    for _ in range(200):
        p = rng.choice([5, 7])
        degree = rng.randrange(2, 7)
        coeffs = [rng.randrange(p) for _ in range(degree)] + [1]
        assert is_irreducible_over_Fp(coeffs, p) == \
            trial_division_irreducible(coeffs, p)

    # (c) genus-1 trace vs direct enumeration on 20 random curves
    from mumford_tame import fppoly

    tested = 0
    while tested < 20:
        ell = rng.choice([5, 7, 11, 13])
        f = [rng.randrange(ell) for _ in range(3)] + [1]
        if not fppoly.is_squarefree(fppoly.reduce_poly(f, ell), ell):
            continue
        data = frobenius_charpoly(f, ell, 1)
        n1 = 1 + sum(
            1 if (x**3 + f[2] * x**2 + f[1] * x + f[0]) % ell == 0
            else 2 if pow((x**3 + f[2] * x**2 + f[1] * x + f[0]) % ell,
                          (ell - 1) // 2, ell) == 1
            else 0
            for x in range(ell)
        )
        assert data.trace == ell + 1 - n1
        tested += 1

    # (d) m-th power witnesses re-verified by exact powering
    ctx = PadicContext(3, 9)
    for x in (Fraction(729, 676), Fraction(28), Fraction(28, 27**3)):
        res = is_mth_power(x, 3, ctx)
        assert res.ok
        assert valuation(res.witness**3 - x, 3) >= ctx.N + valuation(x, 3)
    report_line(7, True, "goldbach, irreducibility, trace, witnesses")


def test_criterion_8_property_suites():
    """Headless property checks: valuation algebra, Weil bounds, functional
    equation, word counts, theta Cauchy convergence; all integer-exact."""
    rng = random.Random(8)

    # valuation algebra over random rationals
    for _ in range(200):
        p = rng.choice([2, 3, 5, 7])
        x = Fraction(rng.randrange(-10**6, 10**6) or 1, rng.randrange(1, 10**4))
        y = Fraction(rng.randrange(-10**6, 10**6) or 1, rng.randrange(1, 10**4))
        assert valuation(x * y, p) == valuation(x, p) + valuation(y, p)
        if x + y != 0:
            assert valuation(x + y, p) >= min(valuation(x, p), valuation(y, p))
            if valuation(x, p) != valuation(y, p):
                assert valuation(x + y, p) == min(valuation(x, p), valuation(y, p))

    # Weil bounds + functional equation on table-backed data
    from mumford_tame import fppoly

    for row in TABLE_ROWS[:4]:
        data = frobenius_charpoly(row.f, row.ell, row.g)
        for k, nk in enumerate(data.counts, start=1):
            assert (nk - (row.ell**k + 1)) ** 2 <= 4 * row.g**2 * row.ell**k
        c = data.charpoly
        for i in range(row.g + 1):
            assert c[i] == row.ell ** (row.g - i) * c[2 * row.g - i]
        assert sum(c) > 0

    # word count formulas
    for g in (1, 2, 3, 4):
        for n in range(0, 6 if g < 3 else 4):
            assert len(list(enumerate_words(g, n, "gamma"))) == word_count(g, n, "gamma")
            assert len(list(enumerate_words(g, n, "involution"))) == word_count(
                g, n, "involution"
            )

    # theta Cauchy convergence n = 0..4
    data = tame.whittaker_data_for(tame.canonical_parameters(1, 3))
    z = data.config.pairs[0][1]
    thetas = [theta_value(data, z, n) for n in range(5)]
    gaps = [valuation(b - a, 3) for a, b in zip(thetas, thetas[1:])]
    finite = [g_ for g_ in gaps if g_ != INF]
    assert finite == sorted(finite)
    report_line(8, True, "all integer/rational identities")
