from fastapi.testclient import TestClient

from mumford_tame.service.app import app

client = TestClient(app)


def test_health():
    res = client.get("/v1/health")
    assert res.status_code == 200
    body = res.json()
    assert body["status"] == "ok"
    assert body["schema_version"] == "mumford-tame/1"


def test_construct_two_adic():
    res = client.post("/v1/construct", json={"g": 1, "p": 2})
    assert res.status_code == 200
    body = res.json()
    assert body["status"] == "verified" and body["exit_code"] == 0
    model = body["report"]["model"]
    assert model["h_coefficients"] == ["8", "-6", "1"]
    assert model["N"] == "8"


def test_construct_odd_p_reports_conditions():
    res = client.post("/v1/construct", json={"g": 1, "p": 3, "n": 1})
    assert res.status_code == 200
    body = res.json()
    # the known defect: truncation_powers fails, named in the status
    assert body["status"] == "failed:truncation_powers"
    assert body["exit_code"] == 2
    conds = {c["id"]: c["status"] for c in body["report"]["certificate"]["conditions"]}
    assert conds["closed_form_powers"] == "pass"
    assert conds["truncation_powers"] == "fail"


def test_construct_validation():
    assert client.post("/v1/construct", json={"g": 0, "p": 3}).status_code == 422
    assert client.post("/v1/construct", json={"g": 1, "p": 4}).status_code == 400


def test_goldbach_endpoint():
    res = client.post("/v1/goldbach", json={"n": 8})
    assert res.json()["report"]["triples"] == [["3", "5", "7"]]
    res = client.post("/v1/goldbach", json={"n": 9})
    assert res.status_code == 400


def test_excluded_endpoint():
    res = client.post("/v1/excluded", json={"g_max": 5})
    rows = res.json()["report"]["rows"]
    assert rows[2] == {"g": 3, "excluded": ["7"]}
    assert rows[3] == {"g": 4, "excluded": ["5", "7"]}


def test_type_check_endpoint_accepts_poly_string():
    res = client.post(
        "/v1/type-check",
        json={"f": "x^4+x^3-10*x^2-11*x-11", "p": 11, "t": 1, "blocks": [2]},
    )
    body = res.json()
    assert body["status"] == "verified"
    assert body["report"]["ok"] is True


def test_frobenius_endpoint():
    res = client.post(
        "/v1/frobenius",
        json={"f": "x^7+x^3+3*x^2+x+1", "ell": 3, "genus": 3, "p": 7},
    )
    body = res.json()
    assert body["status"] == "verified"
    assert body["report"]["counts"][0] == "7"
    assert body["report"]["mod_p"]["irreducible"] is True
    assert body["report"]["mod_p"]["trace_nonzero"] is True


def test_table_check_endpoint_fast():
    res = client.post("/v1/table-check", json={"rows": "g3-p7,g4-p5"})
    body = res.json()
    assert body["status"] == "verified" and body["exit_code"] == 0
    assert all(row["ok"] for row in body["report"]["rows"])


def test_table_check_unknown_row():
    assert client.post("/v1/table-check", json={"rows": "g9-p2"}).status_code == 400


def test_construct_poly_endpoint():
    res = client.post(
        "/v1/construct-poly",
        json={
            "degree": 4,
            "specs": [{"prime": 13, "kind": "type", "t": 1, "blocks": [2]}],
        },
    )
    body = res.json()
    assert body["report"]["polynomial"] == ["-26", "39", "-11", "-3", "1"]
    assert body["report"]["type_checks"] == [{"prime": 13, "ok": True}]


def test_igp_endpoint_g4_p3():
    res = client.post("/v1/igp", json={"g": 4, "p": 3, "n": 1})
    body = res.json()
    report = body["report"]
    assert report["route"] == "goldbach_triple"
    assert report["triple"] == [10, 5, 5, 7]
    assert report["aux_primes"] == {"p1": "11", "p2": "13", "p3": "19"}
    conds = {c["id"]: c["status"] for c in report["conditions"]}
    assert conds["type_at_11"] == "pass"
    assert conds["type_at_13"] == "pass"
    assert conds["type_at_19"] == "pass"
    assert conds["good_reduction_fillers"] == "pass"
    assert conds["local_model_congruence"] == "pass"
    # the local torsion condition inherits the known defect
    assert conds["local_torsion_field"] == "fail"
    assert body["exit_code"] == 2


def test_igp_excluded_prime():
    res = client.post("/v1/igp", json={"g": 3, "p": 7})
    assert res.status_code == 400
    assert "excluded" in res.json()["detail"]


def test_igp_route_b_g3_p5():
    res = client.post("/v1/igp", json={"g": 3, "p": 5, "n": 1})
    report = res.json()["report"]
    assert report["route"] == "prime_2g_plus_1"
    assert report["degree"] == 7
    conds = {c["id"]: c["status"] for c in report["conditions"]}
    assert conds["aux_primes"] == "pass"


def test_construct_precision_flag():
    res = client.post(
        "/v1/construct", json={"g": 1, "p": 3, "n": 1, "precision": 40}
    )
    assert res.status_code == 200
    # precision shapes the witnesses, not the verdict
    assert res.json()["status"] == "failed:truncation_powers"
