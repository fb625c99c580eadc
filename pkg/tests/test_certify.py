import json
import random
from pathlib import Path

import pytest

from app.certify import Certificate, deserialize, serialize, verify
from app.certify.appendix import _certificate, find_record, verify_appendix
from app.certify.codec import (
    certificate_filename,
    decode_block,
    genus4_certificate,
    genus5_certificate,
    genus5_pair_certificate,
    genus6_certificate,
    genus6_pair_certificate,
    load_certificate,
    read_certificate_file,
)
from app.errors import CertificateFormatError
from app.ff import make_context
from app.howe import search
from app.ssec import j_from_lambda

SMALL_PRIMES = [7, 11, 13, 17, 19, 23, 29, 31, 37, 41]


@pytest.fixture(scope="module")
def genus4_cert():
    return search(4, make_context(11)).certificate


@pytest.fixture(scope="module")
def genus6_cert():
    return search(6, make_context(29)).certificate


def _appendix_certificate(genus, p):
    record = find_record(genus, p)
    ctx = make_context(p, record.minpoly)
    roots = {"prime_field": None, "zeta": ctx.zeta, "conjugate": ctx.zeta.frobenius()}
    return _certificate(record, ctx, roots[verify_appendix(record).root])


@pytest.fixture(scope="module")
def valid_certs(genus4_cert, genus6_cert):
    return {
        "genus4": genus4_cert,
        "genus5": search(5, make_context(23), "naive").certificate,
        "genus6": genus6_cert,
        "genus5_pair": _appendix_certificate(5, 17),
        "genus6_pair": _appendix_certificate(6, 19),
    }


def _with(cert, **changes):
    data = json.loads(serialize(cert))
    data.update(changes)
    return load_certificate(data)


def _mutate(cert, rng):
    """Change one residue of one parameter or witness entry"""
    ctx = make_context(cert.p, cert.minpoly)
    block = rng.choice([name for name in ("params", "witness") if getattr(cert, name)])
    values = dict(getattr(cert, block))
    name = rng.choice(list(values))
    index = rng.randrange(2)
    old = values[name]
    while True:
        new = list(old)
        new[index] = (old[index] + rng.randrange(1, cert.p)) % cert.p
        # a sixth root of unity times s describes the same curves
        if ctx.element(*new) ** 6 != ctx.element(*old) ** 6:
            break
    values[name] = new
    return _with(cert, **{block: values})


def _random_certificate(rng):
    ctx = make_context(rng.choice(SMALL_PRIMES))
    x = [ctx.from_enc(rng.randrange(ctx.order)) for _ in range(7)]
    kind = rng.choice(["genus4", "genus5", "genus6", "genus5_pair", "genus6_pair"])
    if kind == "genus4":
        return genus4_certificate(x[0], x[1], x[2:5])
    if kind == "genus5":
        return genus5_certificate(*x[:5])
    if kind == "genus6":
        return genus6_certificate(*x[:7]) if rng.random() < 0.5 else genus6_certificate(*x[:5])
    if kind == "genus5_pair":
        return genus5_pair_certificate(*x[:5], e3_lambda=x[5] if rng.random() < 0.5 else None)
    return genus6_pair_certificate(x[:3], x[3:6])


class TestCodec:
    def test_round_trip(self, genus4_cert, genus6_cert):
        for cert in (genus4_cert, genus6_cert):
            assert deserialize(serialize(cert)) == cert

    def test_round_trip_random_certificates(self, rng):
        certs = [_random_certificate(rng) for _ in range(100)]
        assert {c.kind for c in certs} == {"genus4", "genus5", "genus6", "genus5_pair", "genus6_pair"}
        for cert in certs:
            text = serialize(cert)
            assert deserialize(text) == cert
            assert serialize(deserialize(text)) == text

    def test_key_order(self, genus4_cert):
        text = serialize(genus4_cert)
        data = json.loads(text)
        assert list(data) == ["version", "kind", "p", "minpoly", "params", "witness"]
        assert list(data["params"]) == ["s", "t"]
        assert text.endswith("\n")

    def test_filename(self, genus4_cert):
        assert certificate_filename(genus4_cert) == "genus4_p11.json"

    def test_truncated_document(self, genus4_cert):
        with pytest.raises(CertificateFormatError):
            deserialize(serialize(genus4_cert)[:40])

    @pytest.mark.parametrize(
        "changes",
        [
            {"kind": "genus7"},
            {"version": 2},
            {"p": 5},
            {"p": 15},
            {"minpoly": [3, 6, 2]},
            {"params": {"t": [1, 0], "s": [2, 0]}},
            {"witness": {}},
        ],
    )
    def test_schema_violations(self, genus4_cert, changes):
        with pytest.raises(CertificateFormatError):
            _with(genus4_cert, **changes)

    def test_residues_out_of_range(self, genus4_cert):
        data = json.loads(serialize(genus4_cert))
        data["params"]["s"] = [11, 0]
        with pytest.raises(CertificateFormatError) as info:
            load_certificate(data)
        assert "residues" in str(info.value)

    def test_unreadable_file(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(CertificateFormatError):
            read_certificate_file(path)

    def test_file_with_schema_violation(self, tmp_path, genus4_cert):
        data = json.loads(serialize(genus4_cert))
        data["params"]["t"] = ["three", 0]
        path = tmp_path / certificate_filename(genus4_cert)
        path.write_text(json.dumps(data), encoding="utf-8")
        with pytest.raises(CertificateFormatError) as info:
            read_certificate_file(path)
        assert info.value.location[:2] == ("params", "t")


class TestVerifier:
    def test_corollary_certificate(self, genus4_cert):
        report = verify(genus4_cert)
        assert report.passed
        assert not report.failures
        ctx = make_context(11)
        witness = decode_block(ctx, genus4_cert.witness)
        assert j_from_lambda(witness["lambda1"]) == 0

    def test_tampered_parameter_fails(self, genus4_cert):
        c0, c1 = genus4_cert.params["t"]
        tampered = _with(genus4_cert, params={"s": genus4_cert.params["s"], "t": [(c0 + 1) % 11, c1]})
        report = verify(tampered)
        assert not report.passed
        assert report.failures

    def test_tampered_witness_fails(self, genus4_cert):
        witness = dict(genus4_cert.witness)
        c0, c1 = witness["lambda4"]
        witness["lambda4"] = [(c0 + 1) % 11, c1]
        report = verify(_with(genus4_cert, witness=witness))
        assert [c.name for c in report.failures] == ["lambda4_witness"]

    def test_reducible_modulus(self, genus4_cert):
        cert = Certificate(
            kind="genus4",
            p=7,
            minpoly=[6, 0, 1],
            params={"s": [2, 0], "t": [3, 0]},
            witness={"lambda1": [0, 0], "lambda3": [0, 0], "lambda4": [0, 0]},
        )
        report = verify(cert)
        assert not report.passed
        assert [c.name for c in report.checks] == ["field"]

    def test_degenerate_parameters(self, genus4_cert):
        report = verify(_with(genus4_cert, params={"s": [1, 0], "t": [2, 0]}))
        assert [c.name for c in report.checks] == ["parameters"]
        assert not report.passed

    def test_genus6_certificate(self, genus6_cert):
        report = verify(genus6_cert)
        assert report.passed
        names = {c.name for c in report.checks}
        assert {"c3_hasse_witt", "j3_witness", "e3_supersingular"} <= names

    def test_genus6_without_cube_roots(self, genus6_cert):
        witness = {k: v for k, v in genus6_cert.witness.items() if k not in ("s", "t")}
        assert verify(_with(genus6_cert, witness=witness)).passed

    def test_genus5_pair_with_coinciding_points(self, ctx7):
        a, b, c = ctx7.element(2), ctx7.element(3), ctx7.element(4)
        report = verify(genus5_pair_certificate(a, b, c, b, ctx7.element(5)))
        assert [c.name for c in report.checks] == ["distinct"]
        assert not report.passed

    def test_verifier_never_consults_the_search(self):
        source = Path(__file__).parents[1] / "app" / "certify" / "verifier.py"
        text = source.read_text(encoding="utf-8")
        assert "app.howe" not in text
        assert "import howe" not in text

    def test_search_and_appendix_certificates_verify(self, valid_certs):
        for kind, cert in valid_certs.items():
            assert cert.kind == kind
            assert verify(cert).passed, kind

    @pytest.mark.parametrize("kind", ["genus4", "genus5", "genus6", "genus5_pair", "genus6_pair"])
    def test_single_residue_changes_are_rejected(self, valid_certs, rng, kind):
        cert = valid_certs[kind]
        for _ in range(20):
            assert verify(_mutate(cert, rng)).passed is False

    @pytest.mark.slow
    def test_thousand_random_changes_are_rejected(self, valid_certs):
        rng = random.Random(1000)
        certs = list(valid_certs.values())
        for _ in range(1000):
            mutated = _mutate(rng.choice(certs), rng)
            assert verify(mutated).passed is False, serialize(mutated)
