"""Genus-5 generalized Howe curves Y_{s,t} from the pair
C1: y^2 = x(x^2-1)(x^2-s^2) and C2: y^2 = x(x^2-1)(x^2-t^2), whose third
factor is E3: y^2 = (x^2-s^2)(x^2-t^2).
"""

import logging
from typing import Dict, Iterator, List

from app.certify.codec import genus5_certificate
from app.certify.models import Certificate
from app.ff import FieldContext, Fp2Element
from app.genus2 import case3_j, h_polynomial
from app.howe.base import BaseSearchEngine, SearchPass
from app.poly import DensePolynomial, Subfield, roots_in_field
from app.ssec import build_tables, cross_ratio_lambda

logger = logging.getLogger(__name__)


def case3_j_equation(j: Fp2Element) -> DensePolynomial:
    """64(3s-1)^3(s-3)^3 - j(s-1)^2(s+1)^4 as a polynomial in s"""
    ctx = j.ctx
    s = DensePolynomial.x(ctx)
    lhs = ((s.scale(3) - 1) * (s - 3)).pow(3).scale(64)
    rhs = ((s - 1).pow(2) * (s + 1).pow(4)).scale(j)
    return lhs - rhs


def solve_case3_j_equation(j: Fp2Element, ctx: FieldContext = None, seed: int = 0) -> List[Fp2Element]:
    ctx = ctx or j.ctx
    roots = roots_in_field(case3_j_equation(j), ctx, Subfield.FP2, seed)
    return [s for s in roots if not (s == 0 or s == 1 or s == -1)]


class Genus5JPairsEngine(BaseSearchEngine):
    """Pairs (j1, j2) of supersingular j-invariants, solving for s and t"""

    genus = 5
    strategy = "jpairs"

    def prepare(self) -> None:
        self.tables = build_tables(self.ctx)
        self._roots: Dict[Fp2Element, List[Fp2Element]] = {}
        self._passes = [SearchPass("jpairs", self.tables.S, self.tables.S)]

    def passes(self) -> List[SearchPass]:
        return self._passes

    def roots_for(self, j: Fp2Element) -> List[Fp2Element]:
        if j not in self._roots:
            self._roots[j] = solve_case3_j_equation(j, self.ctx, self.config.seed)
        return self._roots[j]

    def test(self, j1: Fp2Element, j2: Fp2Element) -> Iterator[Certificate]:
        for s in self.roots_for(j1):
            for t in self.roots_for(j2):
                if s * s == t * t:
                    continue
                lam = cross_ratio_lambda(s, -s, t, -t)
                if self.tables.has_lambda(lam):
                    yield genus5_certificate(s, t, j1, j2, lam)


class Genus5NaiveEngine(BaseSearchEngine):
    """Pairs of roots of h, testing E3 for supersingularity"""

    genus = 5
    strategy = "naive"

    def prepare(self) -> None:
        self.tables = build_tables(self.ctx)
        betas = roots_in_field(h_polynomial(self.ctx), self.ctx, Subfield.FP2, self.config.seed)
        self.betas = [b for b in betas if not (b == 0 or b == 1)]
        self._sqrt = {b: b.sqrt() for b in self.betas}
        self._passes = [SearchPass("naive", self.betas, self.betas)]
        logger.debug("p=%d: %d roots of h", self.ctx.p, len(self.betas))

    def passes(self) -> List[SearchPass]:
        return self._passes

    def skip(self, pass_index: int, beta1: Fp2Element, beta2: Fp2Element) -> bool:
        return beta1 == beta2

    def test(self, beta1: Fp2Element, beta2: Fp2Element) -> Iterator[Certificate]:
        s, t = self._sqrt[beta1], self._sqrt[beta2]
        if s is None or t is None:
            return
        lam = cross_ratio_lambda(s, -s, t, -t)
        if self.tables.has_lambda(lam):
            yield genus5_certificate(s, t, case3_j(s), case3_j(t), lam)
