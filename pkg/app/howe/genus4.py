"""Genus-4 Howe curves X_{s,t} built from two genus-1 curves sharing one branch point.

X_{s,t} is superspecial iff the Legendre curves with parameters lambda1,
lambda3 and lambda4 below are all supersingular.
"""

import logging
from typing import Iterator, List, Optional, Tuple

from app.certify.codec import genus4_certificate
from app.certify.models import Certificate
from app.errors import DegenerateParameterError
from app.ff import Fp2Element
from app.howe.base import BaseSearchEngine, SearchPass
from app.ssec import build_tables

logger = logging.getLogger(__name__)


def genus4_conditions(lam1: Fp2Element, lam3: Fp2Element) -> Tuple[Fp2Element, Fp2Element, Fp2Element, Fp2Element]:
    """The four quantities that must be non-zero for (lambda1, lambda3) to come from some (s, t)"""
    sq = lam1 * lam1
    return (lam1 - lam3, sq - lam3, sq - 2 * lam1 + lam3, 2 * lam1 * lam3 - sq - lam3)


def genus4_lambdas(s: Fp2Element, t: Fp2Element) -> Tuple[Fp2Element, Fp2Element, Fp2Element]:
    if any(x == 0 or x == 1 or x == -1 for x in (s, t)) or s * s == t * t:
        raise DegenerateParameterError(f"(s, t) = ({s}, {t}) is not admissible")
    s2, t2 = s * s, t * t
    lam1 = (t - s) / (1 - s)
    lam3 = (t2 - s2) / (1 - s2)
    return lam1, lam3, lam3 / t2


def genus4_st_from_lambdas(lam1: Fp2Element, lam3: Fp2Element) -> Tuple[Fp2Element, Fp2Element]:
    """Invert genus4_lambdas on its first two components"""
    for lam in (lam1, lam3):
        if lam == 0 or lam == 1:
            raise DegenerateParameterError(f"lambda={lam} is not a Legendre parameter")
    diff, sq_diff, denom, t_num = genus4_conditions(lam1, lam3)
    if not (diff and sq_diff and denom and t_num):
        raise DegenerateParameterError(f"(lambda1, lambda3) = ({lam1}, {lam3}) violates the non-degeneracy conditions")
    inv = denom.inverse()
    return sq_diff * inv, t_num * inv


class Genus4Engine(BaseSearchEngine):
    """Pairs (lambda1, lambda3) of supersingular parameters, testing lambda4"""

    genus = 4
    strategy = "naive"

    def prepare(self) -> None:
        self.tables = build_tables(self.ctx)
        tables = self.tables
        self._restricted = set(tables.T_restricted)
        self._two_pass = (
            self.config.restricted_first and 0 < len(tables.T_restricted) < len(tables.T)
        )
        self._passes: List[SearchPass] = []
        if self._two_pass:
            self._passes.append(SearchPass("restricted", tables.T_restricted, tables.T_restricted))
        self._passes.append(SearchPass("full", tables.T, tables.T))

    def passes(self) -> List[SearchPass]:
        return self._passes

    def skip(self, pass_index: int, row: Fp2Element, col: Fp2Element) -> bool:
        return self._two_pass and pass_index == 1 and row in self._restricted and col in self._restricted

    def test(self, lam1: Fp2Element, lam3: Fp2Element) -> Iterator[Certificate]:
        try:
            s, t = genus4_st_from_lambdas(lam1, lam3)
        except DegenerateParameterError:
            return
        lam4 = lam3 / (t * t)
        if self.tables.has_lambda(lam4):
            yield genus4_certificate(s, t, (lam1, lam3, lam4))

    def corollary_certificate(self) -> Optional[Certificate]:
        """(s, t) = (w, w^2) for p = 5 mod 6, where every lambda has j = 0"""
        w = self.ctx.omega
        s, t = w, w * w
        lambdas = genus4_lambdas(s, t)
        if all(self.tables.has_lambda(lam) for lam in lambdas):
            return genus4_certificate(s, t, lambdas)
        logger.warning("p=%d: the cube-root-of-unity construction did not verify", self.ctx.p)
        return None


class Genus4CorollaryEngine(Genus4Engine):
    strategy = "cor"

    def prepare(self) -> None:
        if self.ctx.p % 6 != 5:
            raise DegenerateParameterError(f"the cube-root-of-unity construction needs p = 5 mod 6, got p={self.ctx.p}")
        super().prepare()
        self._passes = []

    def shortcut(self) -> Optional[Certificate]:
        return self.corollary_certificate()


class Genus4AutoEngine(Genus4Engine):
    strategy = "auto"

    def shortcut(self) -> Optional[Certificate]:
        if self.ctx.p % 6 == 5:
            return self.corollary_certificate()
        return None
