"""Supersingular elliptic curves in Legendre form.

The Deuring polynomial H_p(lambda) vanishes exactly on the Legendre
parameters of supersingular curves; everything else here is derived from it.
"""

import logging
from bisect import bisect_left
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Union

from sympy.ntheory import is_quad_residue

from app.errors import DegenerateParameterError, FieldError
from app.ff import FieldContext, Fp2Element, binomial_mod
from app.poly import DensePolynomial, Subfield, roots_in_field

logger = logging.getLogger(__name__)


class _Infinity(Enum):
    INFINITY = "inf"

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity.INFINITY

Point = Union[Fp2Element, _Infinity]


@lru_cache(maxsize=None)
def _deuring_coefficients(p: int) -> Tuple[int, ...]:
    m = (p - 1) // 2
    return tuple(binomial_mod(m, i, p) ** 2 % p for i in range(m + 1))


def deuring_polynomial(ctx: FieldContext) -> DensePolynomial:
    """H_p(lambda) = sum over i of C((p-1)/2, i)^2 lambda^i"""
    return DensePolynomial(ctx, _deuring_coefficients(ctx.p))


def _check_lambda(lam: Fp2Element) -> None:
    if lam == 0 or lam == 1:
        raise DegenerateParameterError(f"lambda={lam} gives a singular Legendre curve")


def is_supersingular_legendre(lam: Fp2Element) -> bool:
    _check_lambda(lam)
    acc = lam.ctx.zero
    for c in reversed(_deuring_coefficients(lam.ctx.p)):
        acc = acc * lam + c
    return not acc


def j_from_lambda(lam: Fp2Element) -> Fp2Element:
    _check_lambda(lam)
    num = 256 * (lam * lam - lam + 1) ** 3
    den = lam * lam * (lam - 1) ** 2
    return num / den


def lambda_orbit(lam: Fp2Element) -> List[Fp2Element]:
    """The six Legendre parameters of curves isomorphic to y^2 = x(x-1)(x-lambda)"""
    _check_lambda(lam)
    inv = lam.inverse()
    return [lam, 1 - lam, inv, (1 - lam).inverse(), lam / (lam - 1), (lam - 1) * inv]


def cross_ratio_lambda(r1: Point, r2: Point, r3: Point, r4: Point) -> Fp2Element:
    """Legendre parameter of y^2 = prod(x - r_i) sending (r1, r2, r4) to (0, 1, infinity)"""
    points = [r1, r2, r3, r4]
    finite = [r for r in points if r is not INFINITY]
    if len(finite) < 3:
        raise DegenerateParameterError("infinity may appear at most once")
    if len(set(finite)) != len(finite):
        raise DegenerateParameterError(f"branch points are not distinct: {points}")

    # factors containing infinity are dropped
    if r4 is INFINITY:
        num, den = r3 - r1, r2 - r1
    elif r1 is INFINITY:
        num, den = r2 - r4, r3 - r4
    elif r2 is INFINITY:
        num, den = r3 - r1, r3 - r4
    elif r3 is INFINITY:
        num, den = r2 - r4, r2 - r1
    else:
        num, den = (r3 - r1) * (r2 - r4), (r3 - r4) * (r2 - r1)
    return num / den


@dataclass(frozen=True)
class SupersingularTables:
    """The supersingular lambda-set T, the j-set S and the F_p-rational part of T"""

    p: int
    ctx: FieldContext
    T: Tuple[Fp2Element, ...]
    S: Tuple[Fp2Element, ...]
    T_restricted: Tuple[Fp2Element, ...]
    _t_enc: Tuple[int, ...] = field(repr=False, default=())
    _s_enc: Tuple[int, ...] = field(repr=False, default=())

    def __post_init__(self):
        object.__setattr__(self, "_t_enc", tuple(x.enc for x in self.T))
        object.__setattr__(self, "_s_enc", tuple(x.enc for x in self.S))

    @staticmethod
    def _member(encodings: Sequence[int], x: Fp2Element) -> bool:
        i = bisect_left(encodings, x.enc)
        return i < len(encodings) and encodings[i] == x.enc

    def has_lambda(self, lam: Fp2Element) -> bool:
        return self._member(self._t_enc, lam)

    def has_j(self, j: Fp2Element) -> bool:
        return self._member(self._s_enc, j)


@lru_cache(maxsize=64)
def build_tables(ctx: FieldContext) -> SupersingularTables:
    T = tuple(roots_in_field(deuring_polynomial(ctx), ctx, Subfield.FP2))
    j_values = {lam: j_from_lambda(lam) for lam in T}
    S = tuple(sorted(set(j_values.values()), key=lambda j: j.enc))
    restricted = tuple(lam for lam in T if j_values[lam].is_prime_field())
    logger.debug("p=%d |T|=%d |S|=%d |T_restricted|=%d", ctx.p, len(T), len(S), len(restricted))
    return SupersingularTables(ctx.p, ctx, T, S, restricted)


def is_supersingular_quartic(
    roots: Sequence[Point], tables: Optional[SupersingularTables] = None
) -> bool:
    """Decide whether y^2 = prod(x - r) over four distinct points is supersingular"""
    if len(roots) != 4:
        raise DegenerateParameterError(f"a quartic model needs four branch points, got {len(roots)}")
    lam = cross_ratio_lambda(*roots)
    if tables is not None:
        return tables.has_lambda(lam)
    return is_supersingular_legendre(lam)


def is_supersingular_j(j: Fp2Element, tables: SupersingularTables) -> bool:
    if j.ctx.p != tables.p:
        raise FieldError(f"tables were built for p={tables.p}, not p={j.ctx.p}")
    return tables.has_j(j)


def is_supersingular_j_by_deuring(j: Fp2Element) -> bool:
    """Decide supersingularity of j from H_p alone, without the tables.

    Every lambda over a supersingular j lies in F_{p^2}, so it is enough to
    find one lambda in F_{p^2} and test it.
    """
    ctx = j.ctx
    lam = DensePolynomial.x(ctx)
    quad = lam * lam - lam + 1
    equation = quad.pow(3).scale(256) - (lam * lam * (lam - 1) * (lam - 1)).scale(j)
    candidates = [r for r in roots_in_field(equation, ctx, Subfield.FP2) if r != 0 and r != 1]
    if not candidates:
        return False
    return is_supersingular_legendre(candidates[0])


def legendre_point_count(lam: Fp2Element) -> int:
    """Number of F_{p^2}-points of y^2 = x(x-1)(x-lambda), counted by brute force"""
    ctx = lam.ctx
    p = ctx.p
    total = 1
    for x in ctx.elements():
        value = x * (x - 1) * (x - lam)
        if not value:
            total += 1
        elif is_quad_residue(value.norm(), p):
            total += 2
    return total


def is_supersingular_by_point_count(lam: Fp2Element) -> bool:
    trace = lam.ctx.order + 1 - legendre_point_count(lam)
    return trace % lam.ctx.p == 0
