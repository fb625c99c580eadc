import json
from typing import Dict, List, Optional

from pydantic import ValidationError

from app.certify.models import PARAM_ORDER, Certificate
from app.errors import CertificateFormatError
from app.ff import FieldContext, Fp2Element, make_context


def serialize(cert: Certificate) -> str:
    return cert.model_dump_json(indent=2) + "\n"


def deserialize(text: str) -> Certificate:
    try:
        return Certificate.model_validate_json(text)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise CertificateFormatError(first["msg"], first.get("loc", ())) from exc


def load_certificate(data: Dict) -> Certificate:
    """Validate an already-parsed document"""
    try:
        return Certificate.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise CertificateFormatError(first["msg"], first.get("loc", ())) from exc


def context_of(cert: Certificate) -> FieldContext:
    return make_context(cert.p, cert.minpoly)


def decode_block(ctx: FieldContext, block: Dict[str, List[int]]) -> Dict[str, Fp2Element]:
    return {name: ctx.element(*value) for name, value in block.items()}


def _encode(values: Dict[str, Fp2Element]) -> Dict[str, List[int]]:
    return {name: value.to_list() for name, value in values.items()}


def _build(kind: str, ctx: FieldContext, params: Dict[str, Fp2Element], witness: Dict[str, Fp2Element]) -> Certificate:
    ordered = {name: params[name] for name in PARAM_ORDER[kind]}
    return Certificate(
        kind=kind,
        p=ctx.p,
        minpoly=list(ctx.minpoly),
        params=_encode(ordered),
        witness=_encode(witness),
    )


def genus4_certificate(s: Fp2Element, t: Fp2Element, lambdas) -> Certificate:
    lam1, lam3, lam4 = lambdas
    return _build(
        "genus4",
        s.ctx,
        {"s": s, "t": t},
        {"lambda1": lam1, "lambda3": lam3, "lambda4": lam4},
    )


def genus5_certificate(s, t, j1, j2, e3_lambda) -> Certificate:
    return _build("genus5", s.ctx, {"s": s, "t": t, "j1": j1, "j2": j2}, {"e3_lambda": e3_lambda})


def genus6_certificate(u, v, j1, j2, j3, s: Optional[Fp2Element] = None, t: Optional[Fp2Element] = None) -> Certificate:
    witness = {"j3": j3, "alpha1": u * u, "alpha2": v * v}
    if s is not None and t is not None:
        witness["s"] = s
        witness["t"] = t
    return _build("genus6", u.ctx, {"s3": u, "t3": v, "j1": j1, "j2": j2}, witness)


def genus5_pair_certificate(lam1, lam2, lam3, lam2p, lam3p, e3_lambda: Optional[Fp2Element] = None) -> Certificate:
    return _build(
        "genus5_pair",
        lam1.ctx,
        {"lambda1": lam1, "lambda2": lam2, "lambda3": lam3, "lambda2p": lam2p, "lambda3p": lam3p},
        {} if e3_lambda is None else {"e3_lambda": e3_lambda},
    )


def genus6_pair_certificate(first, second) -> Certificate:
    lam1, lam2, lam3 = first
    lam1p, lam2p, lam3p = second
    return _build(
        "genus6_pair",
        lam1.ctx,
        {
            "lambda1": lam1,
            "lambda2": lam2,
            "lambda3": lam3,
            "lambda1p": lam1p,
            "lambda2p": lam2p,
            "lambda3p": lam3p,
        },
        {},
    )


def certificate_filename(cert: Certificate) -> str:
    return f"{cert.kind}_p{cert.p}.json"


def read_certificate_file(path) -> Certificate:
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"{path}: not a JSON document ({exc.msg})", (exc.lineno, exc.colno)) from exc
    return load_certificate(data)
