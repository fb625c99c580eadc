"""Genus-6 generalized Howe curves Z_{s,t} from C1: y^2 = (x^3-1)(x^3-s^6) and
C2: y^2 = (x^3-1)(x^3-t^6). Only the cubes u = s^3 and v = t^3 are searched for.
"""

import logging
from typing import Dict, Iterator, List, Optional, Tuple

from app.certify.codec import genus6_certificate
from app.certify.models import Certificate
from app.errors import DegenerateParameterError
from app.ff import FieldContext, Fp2Element
from app.genus2 import case2_j, g_polynomial
from app.howe.base import BaseSearchEngine, SearchPass
from app.poly import DensePolynomial, Subfield, roots_in_field
from app.ssec import build_tables

logger = logging.getLogger(__name__)


def case2_j_equation(j: Fp2Element) -> DensePolynomial:
    """6912u(2u-1)^3(u-2)^3 - j(u-1)^2(u+1)^6 as a polynomial in u"""
    ctx = j.ctx
    u = DensePolynomial.x(ctx)
    lhs = (u.scale(2) - 1).pow(3) * (u - 2).pow(3) * u.scale(6912)
    rhs = ((u - 1).pow(2) * (u + 1).pow(6)).scale(j)
    return lhs - rhs


def solve_case2_j_equation(j: Fp2Element, ctx: FieldContext = None, seed: int = 0) -> List[Fp2Element]:
    ctx = ctx or j.ctx
    roots = roots_in_field(case2_j_equation(j), ctx, Subfield.FP2, seed)
    return [u for u in roots if not (u == 0 or u == 1 or u == -1)]


def genus6_e3_j(u: Fp2Element, v: Fp2Element) -> Fp2Element:
    """j-invariant of the third elliptic factor, from s^3 and t^3"""
    if not u or not v or u == v or u == -v:
        raise DegenerateParameterError(f"(s^3, t^3) = ({u}, {v}) is a pole of the third j-invariant")
    return case2_j(u / v)


def cube_root(u: Fp2Element, seed: int = 0) -> Optional[Fp2Element]:
    """Smallest cube root of u in F_{p^2}, if any"""
    ctx = u.ctx
    roots = roots_in_field(DensePolynomial(ctx, [-u, 0, 0, 1]), ctx, Subfield.FP2, seed)
    return roots[0] if roots else None


def cube_roots_of(u: Fp2Element, v: Fp2Element, seed: int = 0) -> Tuple[Optional[Fp2Element], Optional[Fp2Element]]:
    s, t = cube_root(u, seed), cube_root(v, seed)
    if s is None or t is None:
        return None, None
    return s, t


def build_genus6_certificate(u: Fp2Element, v: Fp2Element, j1: Fp2Element, j2: Fp2Element, seed: int = 0) -> Certificate:
    s, t = cube_roots_of(u, v, seed)
    return genus6_certificate(u, v, j1, j2, genus6_e3_j(u, v), s, t)


class Genus6JPairsEngine(BaseSearchEngine):
    """Pairs (j1, j2) of supersingular j-invariants, solving for s^3 and t^3"""

    genus = 6
    strategy = "jpairs"

    def prepare(self) -> None:
        self.tables = build_tables(self.ctx)
        self._roots: Dict[Fp2Element, List[Fp2Element]] = {}
        self._passes = [SearchPass("jpairs", self.tables.S, self.tables.S)]

    def passes(self) -> List[SearchPass]:
        return self._passes

    def roots_for(self, j: Fp2Element) -> List[Fp2Element]:
        if j not in self._roots:
            self._roots[j] = solve_case2_j_equation(j, self.ctx, self.config.seed)
        return self._roots[j]

    def test(self, j1: Fp2Element, j2: Fp2Element) -> Iterator[Certificate]:
        for u in self.roots_for(j1):
            for v in self.roots_for(j2):
                if u * u == v * v:
                    continue
                if self.tables.has_j(genus6_e3_j(u, v)):
                    yield build_genus6_certificate(u, v, j1, j2, self.config.seed)


class Genus6NaiveEngine(BaseSearchEngine):
    """Pairs of roots of g whose quotient is again a root"""

    genus = 6
    strategy = "naive"

    def prepare(self) -> None:
        alphas = roots_in_field(g_polynomial(self.ctx), self.ctx, Subfield.FP2, self.config.seed)
        self.alphas = [a for a in alphas if not (a == 0 or a == 1)]
        self._alpha_set = set(self.alphas)
        self._passes = [SearchPass("naive", self.alphas, self.alphas)]
        logger.debug("p=%d: %d roots of g", self.ctx.p, len(self.alphas))

    def passes(self) -> List[SearchPass]:
        return self._passes

    def skip(self, pass_index: int, alpha1: Fp2Element, alpha2: Fp2Element) -> bool:
        return alpha1 == alpha2

    def test(self, alpha1: Fp2Element, alpha2: Fp2Element) -> Iterator[Certificate]:
        if alpha1 / alpha2 not in self._alpha_set:
            return
        u, v = alpha1.sqrt(), alpha2.sqrt()
        if u is None or v is None:
            return
        yield build_genus6_certificate(u, v, case2_j(u), case2_j(v), self.config.seed)
