from dataclasses import replace
from fractions import Fraction

import pytest

from mumford_tame import tame
from mumford_tame.errors import (
    ConditionFailed,
    DegreeMismatch,
    EvenPrime,
    NonCoprimeModuli,
    PreconditionFailed,
)
from mumford_tame.tame import (
    LocalModel,
    TameParameters,
    canonical_parameters,
    glue_global,
    two_adic_curve,
    verify_construction,
    verify_two_adic,
)

P3 = Fraction(3)


def test_canonical_parameters_examples():
    p1 = canonical_parameters(1, 3)
    assert p1.r == (Fraction(27),) and p1.c == (Fraction(27),)
    assert p1.a == (Fraction(0),) and p1.b == (Fraction(54),)
    p2 = canonical_parameters(2, 3)
    assert p2.alphas == (3, 2) and p2.betas == (1,)
    assert p2.r == (P3**9, P3**6) and p2.c == (P3**9, Fraction(54))
    p3 = canonical_parameters(3, 5)
    assert p3.alphas == (5, 4, 3) and p3.betas == (2, 1)
    assert p3.r[0] == Fraction(5) ** 25 == p3.c[0]


def test_canonical_parameters_rejects_two():
    with pytest.raises(EvenPrime):
        canonical_parameters(2, 2)
    with pytest.raises(PreconditionFailed):
        canonical_parameters(0, 3)


def test_verify_construction_canonical():
    # conditions (0)-(iv) hold; (v) fails by the known diagonal-period
    # defect (README: known limitation), so the certificate reports 5/6
    cert = verify_construction(canonical_parameters(2, 3), 2)
    status = {c.id: c.ok for c in cert.conditions}
    assert status == {
        "exponent_ordering": True,
        "base_point_zero": True,
        "absolute_value_chain": True,
        "radius_center_ratio": True,
        "closed_form_powers": True,
        "truncation_powers": False,
    }
    assert not cert.ok
    with pytest.raises(ConditionFailed) as err:
        cert.require()
    assert err.value.name == "truncation_powers"


def test_verify_construction_sweep_first_four_conditions():
    # every condition other than the defect-blocked transfer passes across
    # the sweep g <= 4, p in {3, 5, 7}
    for g in range(1, 5):
        for p in (3, 5, 7):
            cert = verify_construction(canonical_parameters(g, p), 2)
            for cond in cert.conditions:
                if cond.id != "truncation_powers":
                    assert cond.ok, (g, p, cond.id)


def test_certificate_premises_recorded():
    cert = verify_construction(canonical_parameters(1, 3), 1)
    ids = [pid for pid, _ in cert.premises]
    assert "mumford_semistable" in ids
    assert "raynaud_torsion_field" in ids


def test_mutation_exponent_ordering():
    bad = TameParameters.from_exponents(2, 3, 3, (3, 1), (2,))
    cert = verify_construction(bad, 1)
    assert not cert.condition("exponent_ordering").ok
    with pytest.raises(ConditionFailed) as err:
        cert.require()
    assert err.value.name == "exponent_ordering"


def test_mutation_base_point():
    base = canonical_parameters(2, 3)
    bad = replace(base, a=(Fraction(1), base.a[1]))
    cert = verify_construction(bad, 1)
    assert not cert.condition("base_point_zero").ok
    for cid in ("exponent_ordering", "absolute_value_chain",
                "radius_center_ratio", "closed_form_powers"):
        assert cert.condition(cid).ok


def test_mutation_chain():
    base = canonical_parameters(2, 3)
    bad = replace(base, b=(Fraction(2), base.b[1]))
    cert = verify_construction(bad, 1)
    assert not cert.condition("absolute_value_chain").ok
    for cid in ("exponent_ordering", "base_point_zero",
                "radius_center_ratio", "closed_form_powers"):
        assert cert.condition(cid).ok


def test_mutation_ratio():
    base = canonical_parameters(2, 3)
    bad = replace(base, c=(base.c[0], 2 * P3**9))
    cert = verify_construction(bad, 1)
    assert not cert.condition("radius_center_ratio").ok
    for cid in ("exponent_ordering", "base_point_zero", "absolute_value_chain"):
        assert cert.condition(cid).ok


def test_mutation_closed_form_powers():
    base = canonical_parameters(2, 3)
    bad = replace(base, r=(3 * base.r[0], base.r[1]))
    cert = verify_construction(bad, 1)
    assert not cert.condition("closed_form_powers").ok
    for cid in ("exponent_ordering", "base_point_zero",
                "absolute_value_chain", "radius_center_ratio"):
        assert cert.condition(cid).ok


# ---------------------------------------------------------------------------
# p = 2


def test_two_adic_defaults():
    curve = two_adic_curve(1)
    assert curve.a == (2, 4) and curve.N == 8
    assert curve.h_coeffs == [8, -6, 1]
    curve2 = two_adic_curve(2)
    assert curve2.a == (2, 4, 8) and curve2.N == 2**6


def test_two_adic_rejects_repeated_valuations():
    with pytest.raises(PreconditionFailed):
        two_adic_curve(1, valuation_pattern=[2, 2])


def test_verify_two_adic_defaults():
    for g in range(1, 11):
        cert = verify_two_adic(two_adic_curve(g))
        assert cert.ok, [c.id for c in cert.conditions if not c.ok]


def test_verify_two_adic_g1_witnesses():
    cert = verify_two_adic(two_adic_curve(1))
    cond = cert.condition("n_valuation")
    assert cond.witness == {"v_2(2N)": "4", "v_2(h(0))": "3"}
    slopes = cert.condition("newton_polygon_breaks").witness["slopes"]
    assert slopes == str(["-2", "-1"])


def test_verify_two_adic_bad_n():
    curve = two_adic_curve(2)
    bad = tame.TwoAdicCurve(g=2, a=curve.a, N=curve.N // 2)
    cert = verify_two_adic(bad)
    assert not cert.condition("n_valuation").ok


# ---------------------------------------------------------------------------
# gluing


def test_glue_global_crt_example():
    models = [
        LocalModel(3, 2, (3, 0, 1)),   # x^2 + 3 mod 9
        LocalModel(5, 1, (1, 0, 1)),   # x^2 + 1 mod 5
    ]
    assert glue_global(models) == [21, 0, 1]


def test_glue_single_model_symmetric_range():
    model = LocalModel(13, 3, tuple(c % 13**3 for c in [-26, 39, -11, -3, 1]))
    assert glue_global([model]) == [-26, 39, -11, -3, 1]


def test_glue_idempotent():
    models = [
        LocalModel(3, 2, (3, 0, 1)),
        LocalModel(5, 1, (1, 0, 1)),
    ]
    glued = glue_global(models)
    again = glue_global(
        [LocalModel(3, 2, tuple(c % 9 for c in glued)),
         LocalModel(5, 1, tuple(c % 5 for c in glued))]
    )
    assert again == glued


def test_glue_reduces_to_locals():
    models = [
        LocalModel(3, 3, (10, 4, 1)),
        LocalModel(7, 2, (3, 5, 1)),
    ]
    glued = glue_global(models)
    for model in models:
        for got, want in zip(glued, model.coeffs):
            assert (got - want) % model.modulus == 0


def test_glue_errors():
    with pytest.raises(DegreeMismatch):
        glue_global([LocalModel(3, 1, (1, 1)), LocalModel(5, 1, (1, 1, 1))])
    with pytest.raises(NonCoprimeModuli):
        glue_global([LocalModel(3, 1, (1, 1)), LocalModel(3, 2, (2, 1))])
