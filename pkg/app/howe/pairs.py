"""Small-prime pair searches over all superspecial Rosenhain curves.

The Rosenhain curves y^2 = x(x-1)(x-a)(x-b)(x-X) are enumerated by fixing
a < b and treating X as an unknown: each Hasse-Witt entry is a polynomial in
X of degree (p-1)/2, and the superspecial X are the roots of their gcd.
"""

import logging
from functools import lru_cache
from typing import Iterator, List, Tuple

from app.certify.codec import genus5_pair_certificate, genus6_pair_certificate
from app.certify.models import Certificate
from app.errors import EnumerationBoundError
from app.ff import FieldContext, Fp2Element, binomial_mod
from app.genus2 import is_superspecial_g2, model_from_roots
from app.howe.base import BaseSearchEngine, SearchPass
from app.poly import DensePolynomial, Subfield, gcd, roots_in_field
from app.ssec import cross_ratio_lambda, is_supersingular_legendre

logger = logging.getLogger(__name__)

Triple = Tuple[Fp2Element, Fp2Element, Fp2Element]

DEFAULT_PAIR_BOUND = {5: 19, 6: 13}


def _entry_polynomial(ctx: FieldContext, power: DensePolynomial, n: int) -> DensePolynomial:
    """Coefficient of x^n in (g(x)(x - X))^m as a polynomial in X, given power = g^m"""
    p = ctx.p
    m = (p - 1) // 2
    coeffs = []
    for d in range(m + 1):
        k = m - d
        sign = -1 if d % 2 else 1
        coeffs.append(power.coeff(n - k) * (sign * binomial_mod(m, k, p)))
    return DensePolynomial(ctx, coeffs)


@lru_cache(maxsize=4)
def enumerate_superspecial_rosenhain(ctx: FieldContext, seed: int = 0) -> Tuple[Triple, ...]:
    """All sorted triples (l1 < l2 < l3) giving a superspecial Rosenhain curve"""
    p = ctx.p
    m = (p - 1) // 2
    x = DensePolynomial.x(ctx)
    base = x * (x - 1)
    candidates = [e for e in ctx.elements() if not (e == 0 or e == 1)]
    exponents = (p - 1, p - 2, 2 * p - 1, 2 * p - 2)

    triples: List[Triple] = []
    for i, a in enumerate(candidates):
        with_a = base * (x - a)
        for b in candidates[i + 1 :]:
            power = (with_a * (x - b)).pow(m)
            common = DensePolynomial(ctx)
            for n in exponents:
                common = gcd(common, _entry_polynomial(ctx, power, n))
                if common.degree == 0:
                    break
            if common.degree == 0:
                continue
            if common.is_zero():
                roots = candidates
            else:
                roots = roots_in_field(common, ctx, Subfield.FP2, seed)
            for r in roots:
                if r.enc > b.enc and not (r == 0 or r == 1):
                    triples.append((a, b, r))

    triples.sort(key=lambda t: (t[0].enc, t[1].enc, t[2].enc))
    logger.debug("p=%d: %d superspecial Rosenhain triples", p, len(triples))
    return tuple(triples)


class _PairEngine(BaseSearchEngine):
    def prepare(self) -> None:
        bound = self.config.pair_bound or DEFAULT_PAIR_BOUND[self.genus]
        if self.ctx.p > bound:
            raise EnumerationBoundError(
                f"pair search for genus {self.genus} is limited to p <= {bound}, got p={self.ctx.p}"
            )
        self.triples = enumerate_superspecial_rosenhain(self.ctx, self.config.seed)
        self._passes = [SearchPass("pairs", self.triples, self.triples, triangular=True)]

    def passes(self) -> List[SearchPass]:
        return self._passes


class Genus5PairEngine(_PairEngine):
    """Two superspecial Rosenhain curves sharing 0, 1, infinity and one more point"""

    genus = 5
    strategy = "pairs"

    def test(self, first: Triple, second: Triple) -> Iterator[Certificate]:
        shared = set(first) & set(second)
        if len(shared) != 1:
            return
        (lam1,) = shared
        rest1 = [lam for lam in first if lam != lam1]
        rest2 = [lam for lam in second if lam != lam1]
        lam = cross_ratio_lambda(rest1[0], rest1[1], rest2[0], rest2[1])
        if is_supersingular_legendre(lam):
            yield genus5_pair_certificate(lam1, rest1[0], rest1[1], rest2[0], rest2[1], lam)


class Genus6PairEngine(_PairEngine):
    """Two superspecial Rosenhain curves sharing exactly 0, 1 and infinity"""

    genus = 6
    strategy = "pairs"

    def test(self, first: Triple, second: Triple) -> Iterator[Certificate]:
        if set(first) & set(second):
            return
        if is_superspecial_g2(model_from_roots(self.ctx, list(first) + list(second))):
            yield genus6_pair_certificate(first, second)
