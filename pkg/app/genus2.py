"""Genus-2 superspeciality: Hasse-Witt matrices, the polynomials h and g, and
the j-invariant formulas of the elliptic quotients of the three special families.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Tuple

from app.errors import DegenerateParameterError, NotSquarefreeError
from app.ff import FieldContext, Fp2Element, binomial_mod
from app.poly import DensePolynomial, half_power_coeffs


@dataclass(frozen=True)
class HyperellipticModel:
    """The genus-2 curve y^2 = f(x), f squarefree of degree 5 or 6"""

    f: DensePolynomial
    roots: Optional[Tuple[Fp2Element, ...]] = None

    def __post_init__(self):
        if self.f.degree not in (5, 6):
            raise DegenerateParameterError(f"genus-2 models need degree 5 or 6, got {self.f.degree}")
        if not self.f.is_squarefree():
            raise NotSquarefreeError(f"y^2 = {self.f} is singular")

    @property
    def ctx(self) -> FieldContext:
        return self.f.ctx


@dataclass(frozen=True)
class HasseWittMatrix:
    entries: Tuple[Tuple[Fp2Element, Fp2Element], Tuple[Fp2Element, Fp2Element]]

    def is_zero(self) -> bool:
        return not any(e for row in self.entries for e in row)


def model_from_roots(ctx: FieldContext, roots: Sequence[Fp2Element]) -> HyperellipticModel:
    """y^2 = prod(x - r); five finite roots put the sixth branch point at infinity"""
    return HyperellipticModel(DensePolynomial.from_roots(ctx, roots), tuple(roots))


def rosenhain_model(lam1: Fp2Element, lam2: Fp2Element, lam3: Fp2Element) -> HyperellipticModel:
    ctx = lam1.ctx
    return model_from_roots(ctx, [ctx.zero, ctx.one, lam1, lam2, lam3])


def hasse_witt(model: HyperellipticModel) -> HasseWittMatrix:
    p = model.ctx.p
    power = half_power_coeffs(model.f, p)
    return HasseWittMatrix(
        (
            (power.coeff(p - 1), power.coeff(p - 2)),
            (power.coeff(2 * p - 1), power.coeff(2 * p - 2)),
        )
    )


def is_superspecial_g2(model: HyperellipticModel) -> bool:
    return hasse_witt(model).is_zero()


@lru_cache(maxsize=None)
def _criterion_coefficients(p: int, shift: int, top: int) -> Tuple[int, ...]:
    m = (p - 1) // 2
    return tuple(binomial_mod(m, shift + i, p) * binomial_mod(m, i, p) % p for i in range(top + 1))


def h_polynomial(ctx: FieldContext) -> DensePolynomial:
    """h(beta); vanishes at beta iff y^2 = x(x^2-1)(x^2-beta) is superspecial"""
    p = ctx.p
    return DensePolynomial(ctx, _criterion_coefficients(p, (p + 1) // 4, p // 4))


def g_polynomial(ctx: FieldContext) -> DensePolynomial:
    """g(alpha); vanishes at alpha iff y^2 = (x^3-1)(x^3-alpha) is superspecial"""
    p = ctx.p
    return DensePolynomial(ctx, _criterion_coefficients(p, (p + 1) // 6, p // 3))


def case3_model(s2: Fp2Element) -> HyperellipticModel:
    """y^2 = x(x^2-1)(x^2-s2)"""
    ctx = s2.ctx
    return HyperellipticModel(DensePolynomial(ctx, [0, s2, 0, -s2 - 1, 0, 1]))


def case2_model(alpha: Fp2Element) -> HyperellipticModel:
    """y^2 = (x^3-1)(x^3-alpha)"""
    ctx = alpha.ctx
    return HyperellipticModel(DensePolynomial(ctx, [alpha, 0, 0, -alpha - 1, 0, 0, 1]))


def case1_model(a2: Fp2Element, b2: Fp2Element) -> HyperellipticModel:
    """y^2 = (x^2-1)(x^2-a2)(x^2-b2)"""
    ctx = a2.ctx
    x2 = DensePolynomial(ctx, [0, 0, 1])
    return HyperellipticModel((x2 - 1) * (x2 - a2) * (x2 - b2))


def case1_split(a2: Fp2Element, b2: Fp2Element) -> Tuple[Fp2Element, Fp2Element]:
    """Legendre parameters of the two elliptic quotients of y^2 = (x^2-1)(x^2-a2)(x^2-b2)"""
    if a2 == 0 or a2 == 1 or b2 == 0 or b2 == 1 or a2 == b2:
        raise DegenerateParameterError(f"case-1 parameters a^2={a2}, b^2={b2} are degenerate")
    lam_sigma = (b2 - a2) / (1 - a2)
    return lam_sigma, lam_sigma / b2


def case3_j(s: Fp2Element) -> Fp2Element:
    """j-invariant of the elliptic factor of y^2 = x(x^2-1)(x^2-s^2)"""
    if s == 0 or s == 1 or s == -1:
        raise DegenerateParameterError(f"s={s} is a pole of the case-3 j-invariant")
    num = 64 * (3 * s - 1) ** 3 * (s - 3) ** 3
    den = (s - 1) ** 2 * (s + 1) ** 4
    return num / den


def case3_j_from_c(c: Fp2Element) -> Fp2Element:
    """The same j-invariant in terms of c = s + 1/s"""
    den = (c - 2) * (c + 2) ** 2
    if not den:
        raise DegenerateParameterError(f"c={c} is a pole of the case-3 j-invariant")
    return 64 * (3 * c - 10) ** 3 / den


def case2_j(u: Fp2Element) -> Fp2Element:
    """j-invariant of the elliptic factor of y^2 = (x^3-1)(x^3-u^2), with u = s^3"""
    if u == 0 or u == 1 or u == -1:
        raise DegenerateParameterError(f"u={u} is a pole of the case-2 j-invariant")
    num = 6912 * u * (2 * u - 1) ** 3 * (u - 2) ** 3
    den = (u - 1) ** 2 * (u + 1) ** 6
    return num / den


def case2_j_from_c(c: Fp2Element) -> Fp2Element:
    """The same j-invariant in terms of c = u + 1/u"""
    den = (c - 2) * (c + 2) ** 3
    if not den:
        raise DegenerateParameterError(f"c={c} is a pole of the case-2 j-invariant")
    return 6912 * (2 * c - 5) ** 3 / den


def case2_rosenhain_lambdas(s2: Fp2Element) -> Tuple[Fp2Element, Fp2Element, Fp2Element]:
    """Rosenhain parameters of y^2 = (x^3-1)(x^3-s^6) under x -> (1 - wx)/(x - w)"""
    ctx = s2.ctx
    w = ctx.omega
    w2 = w * w
    if s2 == 1 or s2 == w or s2 == w2 or s2 == 0:
        raise DegenerateParameterError(f"s^2={s2} makes the case-2 curve singular")
    lam1 = -w * (s2 - w2) / (s2 - w)
    lam2 = -w * (s2 - 1) / (s2 - w2)
    lam3 = -w * (s2 - w) / (s2 - 1)
    return lam1, lam2, lam3


def s2_from_rosenhain(lam3: Fp2Element) -> Fp2Element:
    """Inverse of case2_rosenhain_lambdas on the third parameter"""
    w = lam3.ctx.omega
    return (w * w + lam3) / (w + lam3)
