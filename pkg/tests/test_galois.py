import random

import pytest

from mumford_tame.errors import (
    InfeasibleSpec,
    NotCoprime,
    NotSquarefree,
    OddInput,
    PreconditionFailed,
    SearchExhausted,
)
from mumford_tame.galois import (
    GoldbachTriple,
    TypeSpec,
    build_semistable_local,
    build_typed_local,
    check_type,
    construct_typed_poly,
    double_goldbach,
    double_goldbach_exists,
    empty_double_goldbach_genera,
    excluded_primes,
    find_aux_primes,
    goldbach_triples,
    is_primitive_root,
    primes_upto,
)


def test_goldbach_examples():
    assert goldbach_triples(8) == [GoldbachTriple(8, 3, 5, 7)]
    assert goldbach_triples(10) == [GoldbachTriple(10, 5, 5, 7)]
    assert goldbach_triples(16) == [GoldbachTriple(16, 5, 11, 13)]
    with pytest.raises(OddInput):
        goldbach_triples(9)


def test_goldbach_ordering():
    triples = goldbach_triples(24)
    assert triples == sorted(triples, key=lambda t: (t.q1, t.q3))
    for t in triples:
        assert t.q1 <= t.q2 < t.q3 < 24 and t.q1 + t.q2 == 24


def test_double_goldbach_examples():
    for g in (1, 2, 3, 4, 5, 7, 13):
        assert double_goldbach(2 * g + 2) == []
    out = double_goldbach(14)
    assert out and all(
        t.q4 < t.q1 <= t.q2 < t.q5 < t.q3 < 14
        and t.q1 + t.q2 == t.q4 + t.q5 == 14
        for t in out
    )
    assert double_goldbach(6) == []


def test_double_goldbach_exists_matches_enumeration():
    for n in range(4, 300, 2):
        assert double_goldbach_exists(n) == bool(double_goldbach(n))


def test_empty_double_goldbach_small():
    assert empty_double_goldbach_genera(50) == [1, 2, 3, 4, 5, 7, 13]


def test_excluded_primes_table():
    assert excluded_primes(3) == {7}
    assert excluded_primes(4) == {5, 7}
    assert excluded_primes(5) == {11}
    assert excluded_primes(7) == {5, 11, 13}
    assert excluded_primes(13) == {11, 17}
    for g in list(range(6, 13, 2)) + [9, 11] + list(range(14, 21)):
        if g in (7, 13):
            continue
        assert excluded_primes(g) == set(), g


def test_is_primitive_root():
    assert is_primitive_root(2, 5)
    assert not is_primitive_root(4, 5)
    assert is_primitive_root(3, 7)
    with pytest.raises(NotCoprime):
        is_primitive_root(10, 5)
    with pytest.raises(PreconditionFailed):
        is_primitive_root(2, 6)


def test_is_primitive_root_brute_force():
    for q in (5, 7, 11, 13):
        for a in range(1, q):
            order = next(k for k in range(1, q) if pow(a, k, q) == 1)
            assert is_primitive_root(a, q) == (order == q - 1)


def test_find_aux_primes_g4_p3():
    aux = find_aux_primes(4, 3, GoldbachTriple(10, 5, 5, 7))
    # p2: smallest prime > 9, primitive root mod 5, = 1 mod 3 -> 13
    # p3: smallest prime > 9, primitive root mod 7, = 1 mod 3 -> 19
    # p1: smallest remaining prime > 9 -> 11
    assert aux == (11, 13, 19)
    assert is_primitive_root(aux.p2, 5)
    assert is_primitive_root(aux.p3, 7)
    assert aux.p2 % 3 == 1 and aux.p3 % 3 == 1


def test_find_aux_primes_contradiction():
    with pytest.raises(SearchExhausted):
        find_aux_primes(3, 3, GoldbachTriple(8, 3, 5, 7))


def test_find_aux_primes_p_in_triple_rejected():
    with pytest.raises(PreconditionFailed):
        find_aux_primes(5, 7, GoldbachTriple(12, 5, 7, 11))


# ---------------------------------------------------------------------------
# types


def test_check_type_example_block2():
    # (x^2 - 11)(x^2 + x + 1): type 1-{2} at 11
    f = [-11, -11, -10, 1, 1]
    report = check_type(f, TypeSpec(11, 1, (2,)))
    assert report.ok
    assert report.blocks[0].alpha == 0


def test_check_type_eisenstein():
    assert check_type([-25, 0, 0, 1], TypeSpec(5, 2, (3,))).ok


def test_check_type_wrong_valuation():
    report = check_type([-(13**2), 0, 1], TypeSpec(13, 1, (2,)))
    assert not report.ok


def test_check_type_not_squarefree():
    with pytest.raises(NotSquarefree):
        check_type([1, 2, 1], TypeSpec(5, 1, (2,)))  # (x+1)^2


def test_check_type_repeated_block_degrees():
    # two 5-blocks at distinct residues
    f = construct_typed_poly(10, [(11, TypeSpec(11, 1, (5, 5)))])
    report = check_type(f, TypeSpec(11, 1, (5, 5)))
    assert report.ok
    alphas = {b.alpha for b in report.blocks}
    assert len(alphas) == 2


def test_check_type_stability_under_high_precision_noise():
    rng = random.Random(9)
    f = [-11, -11, -10, 1, 1]
    spec = TypeSpec(11, 1, (2,))
    base = check_type(f, spec, precision=3)
    for _ in range(10):
        noise = [11**3 * rng.randrange(-5, 6) for _ in f]
        noise[-1] = 0  # keep the leading coefficient a unit
        noisy = [a + b for a, b in zip(f, noise)]
        assert check_type(noisy, spec, precision=3).ok == base.ok


def test_construct_typed_poly_single_spec():
    f = construct_typed_poly(4, [(13, TypeSpec(13, 1, (2,)))])
    # (x^2 - 13)(x - 1)(x - 2) up to gluing precision
    expected = [-26, 39, -11, -3, 1]
    assert f == expected
    assert check_type(f, TypeSpec(13, 1, (2,))).ok


def test_construct_typed_poly_roundtrip_multiprime():
    specs = [
        (11, TypeSpec(11, 1, (2,))),
        (13, TypeSpec(13, 1, (3, 5))),
        (17, TypeSpec(17, 2, (7,))),
        (2, "semistable"),
        (3, "semistable"),
    ]
    f = construct_typed_poly(8, specs)
    assert len(f) == 9 and f[-1] == 1
    for prime, spec in specs:
        if isinstance(spec, TypeSpec):
            assert check_type(f, spec).ok, prime


def test_construct_typed_poly_infeasible():
    with pytest.raises(InfeasibleSpec):
        construct_typed_poly(4, [(11, TypeSpec(11, 1, (3, 5)))])


def test_build_semistable_local():
    from mumford_tame import fppoly

    for prime in (2, 3, 5, 7):
        for degree in (3, 8, 11):
            local = build_semistable_local(prime, degree)
            reduced = fppoly.reduce_poly(local, prime)
            assert fppoly.degree(reduced) == degree
            assert fppoly.is_squarefree(reduced, prime)


def test_build_typed_local_monic():
    local = build_typed_local(TypeSpec(11, 1, (2,)), 6)
    assert local[-1] == 1 and len(local) == 7


def test_primes_upto():
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
