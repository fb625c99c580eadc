from app.certify import serialize
from app.ff import make_context
from app.howe import search


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


class TestTables:
    def test_tables(self, client):
        response = client.get("/tables/7")
        assert response.status_code == 200
        body = response.json()
        assert len(body["T"]) == 3
        assert body["S"] == [[6, 0]]
        assert len(body["T_restricted"]) <= 3

    def test_not_a_prime(self, client):
        response = client.get("/tables/4")
        assert response.status_code == 400


class TestCertificates:
    def test_verify(self, client):
        cert = search(4, make_context(11)).certificate
        response = client.post(
            "/certificates/verify", content=serialize(cert), headers={"Content-Type": "application/json"}
        )
        assert response.status_code == 200
        assert response.json()["passed"] is True

    def test_failing_certificate_is_a_report(self, client):
        cert = search(4, make_context(11)).certificate.model_dump()
        cert["witness"]["lambda1"] = [0, 0]
        response = client.post("/certificates/verify", json=cert)
        assert response.status_code == 200
        body = response.json()
        assert body["passed"] is False
        assert "lambda1_witness" in [c["name"] for c in body["checks"] if not c["passed"]]

    def test_schema_violation(self, client):
        response = client.post("/certificates/verify", json={"kind": "genus4", "p": 11})
        assert response.status_code == 422


class TestSearch:
    def test_found(self, client):
        response = client.post("/search", json={"genus": 4, "p": 37})
        assert response.status_code == 200
        body = response.json()
        assert body["status"] == "found"
        assert body["certificate"]["kind"] == "genus4"

    def test_bot(self, client):
        response = client.post("/search", json={"genus": 6, "p": 19, "strategy": "naive"})
        assert response.json()["status"] == "bot"

    def test_bad_request(self, client):
        assert client.post("/search", json={"genus": 4, "p": 11, "strategy": "pairs"}).status_code == 400
        assert client.post("/search", json={"genus": 4, "p": 9}).status_code == 400


class TestAppendix:
    def test_record(self, client):
        response = client.get("/appendix/6/11")
        assert response.status_code == 200
        body = response.json()
        assert body["passed"] is True
        assert body["label"] == "genus6/p11"

    def test_missing_record(self, client):
        assert client.get("/appendix/4/11").status_code == 404
