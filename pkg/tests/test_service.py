import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from starlette.testclient import TestClient

from modseq.service import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def seq(modulus, period):
    return {"modulus": modulus, "period": period}


class TestHealth:
    def test_ok(self, client):
        r = client.get("/health")
        assert r.status_code == 200 and r.json() == {"status": "ok"}


class TestPeriod:
    def test_minimal_period_and_trace(self, client):
        r = client.post("/seq/period",
                        json={"sequence": seq(4, [1, 3, 0, 1, 3, 0])})
        body = r.json()
        assert r.status_code == 200
        assert body["tau"] == 3 and body["trace"] == 0
        assert body["sequence"]["period"] == [1, 3, 0]

    def test_bad_modulus_is_422(self, client):
        r = client.post("/seq/period", json={"sequence": seq(1, [0])})
        assert r.status_code == 422


class TestDecompose:
    def test_mod12_example(self, client):
        r = client.post("/seq/decompose",
                        json={"sequence": seq(12, [2, 1, 2, 4, 8, 1, 8, 4])})
        body = r.json()
        assert r.status_code == 200
        assert body["tau"] == 8
        twos, threes = body["parts"]
        assert twos["p"] == 2 and twos["ell"] == 2
        assert twos["sequence"]["period"] == [2, 1, 2, 0, 0, 1, 0, 0]
        assert twos["kind"] == "nilpotent"
        assert twos["nilpotent_vector"]["entries"] == [2, 3, 2, 3, 2]
        assert twos["nilpotent_vector"]["leading_index"] == 3
        assert threes["p"] == 3 and threes["sequence"]["period"] == [2, 1]
        assert threes["kind"] == "idempotent"

    def test_mixed_part_reports_both(self, client):
        # [1,3,0] + [2] mod 4 is idempotent + nonzero constant (nilpotent)
        r = client.post("/seq/decompose",
                        json={"sequence": seq(4, [3, 1, 2, 3, 1, 2])})
        part = r.json()["parts"][0]
        assert part["kind"] == "mixed"
        assert part["idempotent_part"]["period"] == [1, 3, 0]
        assert part["nilpotent_part"]["period"] == [2]


class TestPredictPeriod:
    def test_nilpotent(self, client):
        r = client.post("/seq/predict-period",
                        json={"sequence": seq(4, [2, 1, 2, 0, 0, 1, 0, 0]),
                              "s": 32})
        body = r.json()
        assert body["kind"] == "nilpotent"
        assert body["predicted_period"] == 128

    def test_idempotent(self, client):
        r = client.post("/seq/predict-period",
                        json={"sequence": seq(4, [1, 3, 0]), "s": 8})
        body = r.json()
        assert body["kind"] == "idempotent"
        assert body["predicted_period"] == 48
        assert body["valid_from"] == 6
        assert body["advisory"] is False

    def test_composite_modulus_is_422(self, client):
        r = client.post("/seq/predict-period",
                        json={"sequence": seq(12, [1, 2]), "s": 5})
        assert r.status_code == 422


class TestPrimitive:
    def test_materializes_small(self, client):
        r = client.post("/seq/primitive",
                        json={"sequence": seq(4, [1, 3, 0]), "s": 8})
        body = r.json()
        assert body["materialized"]["period"][:12] == [0] * 8 + [1, 3, 0, 1]
        assert len(body["materialized"]["period"]) == 48

    def test_seed_adds_constant(self, client):
        r = client.post("/seq/primitive",
                        json={"sequence": seq(4, [2]), "s": 1, "seed": 1})
        assert r.json()["materialized"]["period"] == [1, 3]

    def test_cap_falls_back_to_prediction(self, client):
        r = client.post("/seq/primitive",
                        json={"sequence": seq(4, [2, 1, 2, 0, 0, 1, 0, 0]),
                              "s": 5000, "cap": 4096})
        body = r.json()
        assert body["materialized"] is None
        assert body["prediction"]["predicted_period"] == \
            2 ** (2 + (5000 + 3).bit_length() - 1)
        assert "cap" in body["note"]


class TestCrt:
    def test_recombines(self, client):
        r = client.post("/seq/crt", json={"parts": [
            seq(4, [2, 1, 2, 0, 0, 1, 0, 0]), seq(3, [2, 1])]})
        assert r.json()["sequence"] == seq(12, [2, 1, 2, 4, 8, 1, 8, 4])

    def test_non_coprime_is_422(self, client):
        r = client.post("/seq/crt", json={"parts": [seq(4, [1]), seq(6, [1])]})
        assert r.status_code == 422


class TestBinom:
    def test_stats(self, client):
        r = client.post("/binom/stats", json={"p": 2, "ell": 2, "s": 5})
        body = r.json()
        assert body["period"] == 16
        assert body["zeros"] + sum(body["pi"]) == 16
        assert body["digits"] == "101_2"

    def test_reduce_chain(self, client):
        r = client.post("/binom/reduce", json={"p": 2, "ell": 2, "s": 27})
        body = r.json()
        assert body["terminal_s"] < 8
        assert body["chain"]
        direct = client.post("/binom/stats",
                             json={"p": 2, "ell": 2, "s": 27}).json()
        assert body["zeros"] == direct["zeros"] and body["pi"] == direct["pi"]

    def test_composite_p_is_422(self, client):
        r = client.post("/binom/stats", json={"p": 4, "ell": 2, "s": 5})
        assert r.status_code == 422

    def test_oversize_request_is_413(self, client):
        r = client.post("/binom/stats",
                        json={"p": 2, "ell": 2, "s": 10**6, "cap": 1024})
        assert r.status_code == 413


class TestVieru:
    def test_z_block_with_verification(self, client):
        r = client.post("/vieru/z", json={"k": 5, "verify": True})
        body = r.json()
        assert body["mismatches"] == 0
        assert len(body["rows"]) == 32
        assert all(row["match"] for row in body["rows"])

    def test_z_cases_reported(self, client):
        r = client.post("/vieru/z", json={"k": 6})
        cases = {row["case"] for row in r.json()["rows"]}
        assert cases == set("ABCDEF")

    def test_d_three_forms(self, client):
        r = client.post("/vieru/d", json={"k": 7})
        body = r.json()
        assert body["agree"] is True
        assert body["closed"] == body["recursive"] == body["hamming"]
        assert len(body["closed"]) == 2**5 - 4


class TestVerifyAndBench:
    def test_structure_suite(self, client):
        r = client.post("/verify", json={"suite": "structure", "samples": 50})
        body = r.json()
        assert body["ok"] is True and body["instances"] > 0

    def test_lemma_suite(self, client):
        r = client.post("/verify",
                        json={"suite": "lemmas", "p": 2, "ell": 2, "s_max": 40})
        assert r.json()["ok"] is True

    def test_unknown_suite_is_422(self, client):
        r = client.post("/verify", json={"suite": "nope"})
        assert r.status_code == 422

    def test_bench_small(self, client):
        r = client.post("/bench", json={"s_start": 64, "s_stop": 96})
        body = r.json()
        assert body["all_equal"] is True
        assert body["chain_seconds"] >= 0
