"""Published genus-5 and genus-6 pair constructions for the exceptional primes.

Each line reads `genus p minpoly curve1|curve2`. The minimal polynomial is
given by ascending coefficients (or `-` when both curves live over F_p) and a
curve entry is either a residue or `zK`, the K-th power of a root of it.
"""

import hashlib
import logging
import re
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

from pydantic import BaseModel

from app.certify.codec import genus5_pair_certificate, genus6_pair_certificate
from app.certify.models import VerificationReport
from app.certify.verifier import verify
from app.ff import FieldContext, Fp2Element, make_context

logger = logging.getLogger(__name__)

DATASET = """\
5 7 3,-1,1 z34,z2,z36|z34,4,z46
5 11 2,-4,1 z2,z80,z98|z2,z86,z88
5 17 3,-1,1 16,z194,z238|16,z50,z94
5 19 2,-1,1 3,17,10|3,z34,z302
5 37 2,-4,1 z1306,z156,z574|z1306,z584,z1138
5 53 2,-4,1 z2,z538,z1288|z2,z220,z2590
5 89 3,-7,1 z7220,66,z1646|z7220,z4722,z5222
5 97 5,-1,1 z2,z4030,z6088|z2,z3442,z5808
5 101 2,-4,1 z7214,z2882,z7700|z7214,z4920,z6838
5 137 3,-6,1 z12758,z2582,z12468|z12758,130,z15614
6 11 - 2,7,3|5,10,9
6 19 2,-1,1 z50,z250,z332|z130,z172,z290
6 37 2,-4,1 15,5,z1044|z62,z252,z442
6 43 3,-1,1 z224,z1104,z1524|z232,z252,z780
6 61 2,-1,1 z483,z1974,z3164|z114,z436,z2346
6 67 2,-4,1 z1148,z3734,z4346|z538,z1150,z3868
6 79 3,-1,1 z2118,71,z5082|32,35,7
6 97 5,-1,1 z2292,z3468,z7968|z12,z7776,z8244
6 109 6,-1,1 z1476,z1860,z2136|z4584,z10908,z11184
6 127 3,-1,1 z502,z9172,z13058|z1440,z1874,z15370
6 151 6,-2,1 z10800,z13500,z18900|z600,z1500,z4500
6 157 5,-5,1 z66,z7152,z14918|z13262,z14210,z21296
6 223 3,-2,1 z37056,z40200,z44956|z13330,z38554,z40216
6 229 6,-1,1 z23644,z32210,z38638|z3610,z31024,z39590
6 283 - 186,149,271|165,19,35
6 313 10,-3,1 z32774,z44078,z97436|z2108,z32100,z52824
6 331 3,-5,1 z45614,z59208,z83986|z16352,z78768,z79248
6 337 10,-5,1 z13218,z60362,z83388|z12942,z44456,z44962
6 373 2,-4,1 z26442,z58480,z125794|z22264,z26406,z53334
6 571 3,-1,1 z53462,z296376,z301634|z181188,z188806,z190810"""

CHECKSUM = "ef79bb59560f6ce25fcc83d8c6de2c7e1ced14869d70b128178fb1c81eaeb0b3"

# Records kept as published although they do not verify, with the checks they
# fail under every root. The genus6/p61 first curve verifies with z486 in
# place of z483; the record is left uncorrected.
KNOWN_DISCREPANCIES: Dict[str, FrozenSet[str]] = {
    "genus6/p61": frozenset({"c1_hasse_witt", "c3_hasse_witt"}),
}

_ENTRY = re.compile(r"^(z)?(\d+)$")


class ZetaPower(BaseModel):
    exponent: int

    def __str__(self) -> str:
        return f"z{self.exponent}"


Entry = Union[int, ZetaPower]


class AppendixRecord(BaseModel):
    genus: int
    p: int
    minpoly: Optional[Tuple[int, int, int]] = None
    curve1: Tuple[Entry, Entry, Entry]
    curve2: Tuple[Entry, Entry, Entry]

    @property
    def label(self) -> str:
        return f"genus{self.genus}/p{self.p}"

    def canonical_line(self) -> str:
        minpoly = "-" if self.minpoly is None else ",".join(str(c) for c in self.minpoly)
        first = ",".join(str(e) for e in self.curve1)
        second = ",".join(str(e) for e in self.curve2)
        return f"{self.genus} {self.p} {minpoly} {first}|{second}"


def _parse_entry(text: str) -> Entry:
    match = _ENTRY.match(text)
    if match is None:
        raise ValueError(f"unreadable appendix entry {text!r}")
    value = int(match.group(2))
    return ZetaPower(exponent=value) if match.group(1) else value


def _parse_line(line: str) -> AppendixRecord:
    genus, p, minpoly, curves = line.split()
    first, second = curves.split("|")
    return AppendixRecord(
        genus=int(genus),
        p=int(p),
        minpoly=None if minpoly == "-" else tuple(int(c) for c in minpoly.split(",")),
        curve1=tuple(_parse_entry(e) for e in first.split(",")),
        curve2=tuple(_parse_entry(e) for e in second.split(",")),
    )


RECORDS: List[AppendixRecord] = [_parse_line(line) for line in DATASET.splitlines()]


def dataset_checksum(records: List[AppendixRecord] = None) -> str:
    lines = [r.canonical_line() for r in (records if records is not None else RECORDS)]
    return hashlib.sha256("\n".join(lines).encode("ascii")).hexdigest()


def find_record(genus: int, p: int) -> Optional[AppendixRecord]:
    for record in RECORDS:
        if record.genus == genus and record.p == p:
            return record
    return None


def is_known_discrepancy(report: VerificationReport) -> bool:
    """True when a failed report matches a recorded discrepancy exactly"""
    expected = KNOWN_DISCREPANCIES.get(report.label)
    if expected is None or report.passed:
        return False
    return {c.name for c in report.failures} == expected


def _resolve(ctx: FieldContext, entry: Entry, root: Optional[Fp2Element]) -> Fp2Element:
    if isinstance(entry, ZetaPower):
        return root ** entry.exponent
    return ctx.element(entry)


def _certificate(record: AppendixRecord, ctx: FieldContext, root: Optional[Fp2Element]):
    first = [_resolve(ctx, e, root) for e in record.curve1]
    second = [_resolve(ctx, e, root) for e in record.curve2]
    if record.genus == 5:
        return genus5_pair_certificate(first[0], first[1], first[2], second[1], second[2])
    return genus6_pair_certificate(first, second)


def verify_appendix(record: AppendixRecord) -> VerificationReport:
    """Rebuild both curves of a record and re-verify every component.

    Both roots of the minimal polynomial are tried; the report names the one
    under which the record verified.
    """
    ctx = make_context(record.p, record.minpoly)
    prelude = VerificationReport(kind=f"genus{record.genus}_pair", p=record.p, label=record.label)

    if record.minpoly is None:
        designations = [("prime_field", None)]
    else:
        prelude.add("zeta_generator", ctx.is_generator, f"zeta does not generate F_{record.p}^2*")
        designations = [("zeta", ctx.zeta), ("conjugate", ctx.zeta.frobenius())]

    if record.genus == 5 and record.curve1[0] != record.curve2[0]:
        prelude.add("shared_point", False, "genus-5 pairs must share their first parameter")
        return prelude

    report = None
    for name, root in designations:
        report = verify(_certificate(record, ctx, root))
        report.root = name
        if report.passed:
            break
        logger.info("%s fails under root %s: %s", record.label, name, [c.name for c in report.failures])

    report.label = record.label
    report.checks = prelude.checks + report.checks
    report.passed = prelude.passed and report.passed
    return report
