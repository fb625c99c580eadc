"""Independent re-verification of certificates.

Verdicts come from Hasse-Witt matrices and the Deuring polynomial only; the
search engines are never consulted.
"""

import logging
from typing import Callable, Dict, Sequence

from app.certify.codec import context_of, decode_block
from app.certify.models import Certificate, VerificationReport
from app.errors import DegenerateParameterError, FieldError
from app.ff import Fp2Element
from app.genus2 import (
    case1_model,
    case1_split,
    case2_j,
    case2_model,
    case2_rosenhain_lambdas,
    case3_j,
    case3_model,
    g_polynomial,
    h_polynomial,
    is_superspecial_g2,
    model_from_roots,
    rosenhain_model,
)
from app.ssec import cross_ratio_lambda, is_supersingular_j_by_deuring, is_supersingular_legendre

logger = logging.getLogger(__name__)


def _run(report: VerificationReport, name: str, check: Callable[[], bool], detail: str = "") -> bool:
    try:
        result = bool(check())
        return report.add(name, result, "" if result else detail)
    except (DegenerateParameterError, ZeroDivisionError) as exc:
        return report.add(name, False, str(exc))


def _generic(x: Fp2Element) -> bool:
    return not (x == 0 or x == 1 or x == -1)


def _distinct(values: Sequence[Fp2Element]) -> bool:
    return len(set(values)) == len(values) and all(v != 0 and v != 1 for v in values)


def _verify_genus4(report: VerificationReport, params: Dict, witness: Dict) -> None:
    s, t = params["s"], params["t"]
    if not report.add("parameters", _generic(s) and _generic(t) and s * s != t * t, f"s={s}, t={t}"):
        return

    lam1 = (t - s) / (1 - s)
    lam3, lam4 = case1_split(s * s, t * t)
    for name, value in (("lambda1", lam1), ("lambda3", lam3), ("lambda4", lam4)):
        report.add(f"{name}_witness", witness[name] == value, f"expected {value}, got {witness[name]}")

    conditions = (
        lam1 - lam3,
        lam1 * lam1 - lam3,
        lam1 * lam1 - 2 * lam1 + lam3,
        2 * lam1 * lam3 - lam1 * lam1 - lam3,
    )
    report.add("nondegeneracy", all(conditions), f"lambda1={lam1}, lambda3={lam3}")

    for name, value in (("lambda1", lam1), ("lambda3", lam3), ("lambda4", lam4)):
        _run(report, f"{name}_supersingular", lambda value=value: is_supersingular_legendre(value), f"{value}")
    _run(report, "c3_hasse_witt", lambda: is_superspecial_g2(case1_model(s * s, t * t)))


def _verify_genus5(report: VerificationReport, params: Dict, witness: Dict) -> None:
    s, t, j1, j2 = params["s"], params["t"], params["j1"], params["j2"]
    if not report.add("parameters", _generic(s) and _generic(t) and s * s != t * t, f"s={s}, t={t}"):
        return

    h = h_polynomial(s.ctx)
    _run(report, "c1_hasse_witt", lambda: is_superspecial_g2(case3_model(s * s)))
    _run(report, "c2_hasse_witt", lambda: is_superspecial_g2(case3_model(t * t)))
    report.add("h_s2", not h.eval(s * s), f"h(s^2)={h.eval(s * s)}")
    report.add("h_t2", not h.eval(t * t), f"h(t^2)={h.eval(t * t)}")

    lam = cross_ratio_lambda(s, -s, t, -t)
    report.add("e3_witness", witness["e3_lambda"] == lam, f"expected {lam}")
    _run(report, "e3_supersingular", lambda: is_supersingular_legendre(lam), f"lambda={lam}")

    _run(report, "j1_witness", lambda: case3_j(s) == j1, f"j1={j1}")
    _run(report, "j2_witness", lambda: case3_j(t) == j2, f"j2={j2}")
    report.add("j1_supersingular", is_supersingular_j_by_deuring(j1), f"j1={j1}")
    report.add("j2_supersingular", is_supersingular_j_by_deuring(j2), f"j2={j2}")


def _verify_genus6(report: VerificationReport, params: Dict, witness: Dict) -> None:
    u, v, j1, j2 = params["s3"], params["t3"], params["j1"], params["j2"]
    if not report.add("parameters", _generic(u) and _generic(v) and u * u != v * v, f"s3={u}, t3={v}"):
        return

    ratio = u / v
    g = g_polynomial(u.ctx)
    for name, alpha in (("c1", u * u), ("c2", v * v), ("c3", ratio * ratio)):
        _run(report, f"{name}_hasse_witt", lambda alpha=alpha: is_superspecial_g2(case2_model(alpha)))
        report.add(f"{name}_g_value", not g.eval(alpha), f"g({alpha})={g.eval(alpha)}")

    report.add("alpha1_witness", witness["alpha1"] == u * u, f"alpha1={witness['alpha1']}")
    report.add("alpha2_witness", witness["alpha2"] == v * v, f"alpha2={witness['alpha2']}")
    _run(report, "j1_witness", lambda: case2_j(u) == j1, f"j1={j1}")
    _run(report, "j2_witness", lambda: case2_j(v) == j2, f"j2={j2}")

    j3 = case2_j(ratio)
    report.add("j3_witness", witness["j3"] == j3, f"expected {j3}")
    report.add("e3_supersingular", is_supersingular_j_by_deuring(j3), f"j3={j3}")

    if "s" in witness:
        s, t = witness["s"], witness["t"]
        report.add("s_cube", s**3 == u, f"s^3={s**3}")
        report.add("t_cube", t**3 == v, f"t^3={t**3}")
        for name, root in (("c1", s), ("c2", t)):
            _run(
                report,
                f"{name}_rosenhain_hasse_witt",
                lambda root=root: is_superspecial_g2(rosenhain_model(*case2_rosenhain_lambdas(root * root))),
            )


def _verify_genus5_pair(report: VerificationReport, params: Dict, witness: Dict) -> None:
    lam1, lam2, lam3 = params["lambda1"], params["lambda2"], params["lambda3"]
    lam2p, lam3p = params["lambda2p"], params["lambda3p"]
    if not report.add("distinct", _distinct([lam1, lam2, lam3, lam2p, lam3p]), "marked points coincide"):
        return
    _run(report, "c1_hasse_witt", lambda: is_superspecial_g2(rosenhain_model(lam1, lam2, lam3)))
    _run(report, "c2_hasse_witt", lambda: is_superspecial_g2(rosenhain_model(lam1, lam2p, lam3p)))
    lam = cross_ratio_lambda(lam2, lam3, lam2p, lam3p)
    if "e3_lambda" in witness:
        report.add("e3_witness", witness["e3_lambda"] == lam, f"expected {lam}")
    _run(report, "e3_supersingular", lambda: is_supersingular_legendre(lam), f"lambda={lam}")


def _verify_genus6_pair(report: VerificationReport, params: Dict, witness: Dict) -> None:
    values = [params[k] for k in ("lambda1", "lambda2", "lambda3", "lambda1p", "lambda2p", "lambda3p")]
    if not report.add("distinct", _distinct(values), "marked points coincide"):
        return
    _run(report, "c1_hasse_witt", lambda: is_superspecial_g2(rosenhain_model(*values[:3])))
    _run(report, "c2_hasse_witt", lambda: is_superspecial_g2(rosenhain_model(*values[3:])))
    ctx = values[0].ctx
    _run(report, "c3_hasse_witt", lambda: is_superspecial_g2(model_from_roots(ctx, values)))


_VERIFIERS = {
    "genus4": _verify_genus4,
    "genus5": _verify_genus5,
    "genus6": _verify_genus6,
    "genus5_pair": _verify_genus5_pair,
    "genus6_pair": _verify_genus6_pair,
}


def verify(cert: Certificate) -> VerificationReport:
    report = VerificationReport(kind=cert.kind, p=cert.p)
    try:
        ctx = context_of(cert)
    except FieldError as exc:
        report.add("field", False, str(exc))
        return report

    params = decode_block(ctx, cert.params)
    witness = decode_block(ctx, cert.witness)
    _VERIFIERS[cert.kind](report, params, witness)

    if not report.passed:
        logger.info("%s certificate at p=%d failed: %s", cert.kind, cert.p, [c.name for c in report.failures])
    return report
