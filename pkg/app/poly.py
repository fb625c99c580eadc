"""Dense univariate polynomials over F_p and F_{p^2}.

Coefficients are Fp2Element values in ascending degree. Multiplication packs
the integer coordinates into big integers (Kronecker substitution) so that the
large powers needed by Hasse-Witt matrices stay cheap.
"""

import random
from enum import Enum
from typing import Iterable, List, Sequence, Tuple, Union

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_from_int_poly

from app.errors import DegenerateParameterError, NotSquarefreeError
from app.ff import FieldContext, Fp2Element, sqrt_fp2

Coefficient = Union[int, Fp2Element]


class Subfield(str, Enum):
    FP = "Fp"
    FP2 = "Fp2"


def _pack(values: Sequence[int], width: int) -> int:
    return int.from_bytes(b"".join(v.to_bytes(width, "little") for v in values), "little")


def _unpack(number: int, count: int, width: int) -> List[int]:
    data = number.to_bytes(count * width, "little")
    return [int.from_bytes(data[i * width : (i + 1) * width], "little") for i in range(count)]


def _kronecker(a: Sequence[int], b: Sequence[int], width: int) -> List[int]:
    """Exact integer convolution of two non-negative coefficient lists"""
    count = len(a) + len(b) - 1
    return _unpack(_pack(a, width) * _pack(b, width), count, width)


class DensePolynomial:
    """Polynomial with coefficients in F_{p^2}, ascending degree, no trailing zeros"""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldContext, coeffs: Iterable[Coefficient] = ()):
        self.ctx = ctx
        items = [c if isinstance(c, Fp2Element) else ctx.element(c) for c in coeffs]
        while items and not items[-1]:
            items.pop()
        self.coeffs: Tuple[Fp2Element, ...] = tuple(items)

    @classmethod
    def x(cls, ctx: FieldContext) -> "DensePolynomial":
        return cls(ctx, [0, 1])

    @classmethod
    def constant(cls, ctx: FieldContext, value: Coefficient) -> "DensePolynomial":
        return cls(ctx, [value])

    @classmethod
    def from_roots(cls, ctx: FieldContext, roots: Iterable[Coefficient]) -> "DensePolynomial":
        result = cls(ctx, [1])
        for r in roots:
            result = result * cls(ctx, [-r if isinstance(r, Fp2Element) else -r % ctx.p, 1])
        return result

    @classmethod
    def _from_coordinates(cls, ctx: FieldContext, c0: Sequence[int], c1: Sequence[int]) -> "DensePolynomial":
        p = ctx.p
        return cls(ctx, [Fp2Element(ctx, u % p, v % p) for u, v in zip(c0, c1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fp2Element:
        return self.coeffs[-1] if self.coeffs else self.ctx.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_prime_field(self) -> bool:
        return all(c.c1 == 0 for c in self.coeffs)

    def coeff(self, n: int) -> Fp2Element:
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        return self.ctx.zero

    __getitem__ = coeff

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DensePolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(reversed(terms))

    def _lift(self, other) -> "DensePolynomial":
        if isinstance(other, DensePolynomial):
            return other
        return DensePolynomial(self.ctx, [other])

    def __add__(self, other) -> "DensePolynomial":
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return DensePolynomial(self.ctx, [self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other) -> "DensePolynomial":
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return DensePolynomial(self.ctx, [self.coeff(i) - other.coeff(i) for i in range(n)])

    def __rsub__(self, other) -> "DensePolynomial":
        return self._lift(other) - self

    def __neg__(self) -> "DensePolynomial":
        return DensePolynomial(self.ctx, [-c for c in self.coeffs])

    def scale(self, factor: Coefficient) -> "DensePolynomial":
        return DensePolynomial(self.ctx, [c * factor for c in self.coeffs])

    def __mul__(self, other) -> "DensePolynomial":
        if not isinstance(other, DensePolynomial):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return DensePolynomial(self.ctx)

        ctx = self.ctx
        p = ctx.p
        a0 = [c.c0 for c in self.coeffs]
        a1 = [c.c1 for c in self.coeffs]
        b0 = [c.c0 for c in other.coeffs]
        b1 = [c.c1 for c in other.coeffs]
        width = (4 * min(len(a0), len(b0)) * (p - 1) ** 2).bit_length() // 8 + 1
        count = len(a0) + len(b0) - 1

        low = _kronecker(a0, b0, width)
        a_ext, b_ext = any(a1), any(b1)
        if not a_ext and not b_ext:
            return DensePolynomial._from_coordinates(ctx, low, [0] * count)
        if not b_ext:
            return DensePolynomial._from_coordinates(ctx, low, _kronecker(a1, b0, width))
        if not a_ext:
            return DensePolynomial._from_coordinates(ctx, low, _kronecker(a0, b1, width))

        high = _kronecker(a1, b1, width)
        both = _kronecker(
            [u + v for u, v in zip(a0, a1)], [u + v for u, v in zip(b0, b1)], width
        )
        # zeta^2 = -m1*zeta - m0
        c0 = [lo - ctx.m0 * hi for lo, hi in zip(low, high)]
        c1 = [bo - lo - hi - ctx.m1 * hi for bo, lo, hi in zip(both, low, high)]
        return DensePolynomial._from_coordinates(ctx, c0, c1)

    __rmul__ = __mul__

    def divmod(self, divisor: "DensePolynomial") -> Tuple["DensePolynomial", "DensePolynomial"]:
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        ctx = self.ctx
        rem = list(self.coeffs)
        dd = divisor.degree
        if len(rem) - 1 < dd:
            return DensePolynomial(ctx), self
        inv_lead = divisor.leading.inverse()
        quot = [ctx.zero] * (len(rem) - dd)
        dcoeffs = divisor.coeffs
        for i in range(len(rem) - 1, dd - 1, -1):
            coef = rem[i] * inv_lead
            if not coef:
                continue
            quot[i - dd] = coef
            base = i - dd
            for j in range(dd + 1):
                rem[base + j] = rem[base + j] - coef * dcoeffs[j]
        return DensePolynomial(ctx, quot), DensePolynomial(ctx, rem[:dd])

    def __floordiv__(self, divisor: "DensePolynomial") -> "DensePolynomial":
        return self.divmod(divisor)[0]

    def __mod__(self, divisor: "DensePolynomial") -> "DensePolynomial":
        return self.divmod(divisor)[1]

    def __call__(self, x: Coefficient) -> Fp2Element:
        return self.eval(x)

    def eval(self, x: Coefficient) -> Fp2Element:
        acc = self.ctx.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "DensePolynomial":
        return DensePolynomial(self.ctx, [c * i for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "DensePolynomial":
        if self.is_zero():
            return self
        return self.scale(self.leading.inverse())

    def pow(self, exponent: int) -> "DensePolynomial":
        result = DensePolynomial(self.ctx, [1])
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    __pow__ = pow

    def powmod(self, exponent: int, modulus: "DensePolynomial") -> "DensePolynomial":
        result = DensePolynomial(self.ctx, [1]) % modulus
        base = self % modulus
        while exponent:
            if exponent & 1:
                result = (result * base) % modulus
            exponent >>= 1
            if exponent:
                base = (base * base) % modulus
        return result

    def is_squarefree(self) -> bool:
        return gcd(self, self.derivative()).degree == 0


def gcd(f: DensePolynomial, g: DensePolynomial) -> DensePolynomial:
    """Monic greatest common divisor; gcd(0, 0) = 0"""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def powmod_frobenius(f: DensePolynomial, q: int) -> DensePolynomial:
    """x^q reduced modulo f"""
    return DensePolynomial.x(f.ctx).powmod(q, f)


def _random_element(ctx: FieldContext, which: Subfield, rng: random.Random) -> Fp2Element:
    if which is Subfield.FP:
        return ctx.element(rng.randrange(ctx.p))
    return ctx.from_enc(rng.randrange(ctx.order))


def _split_linear(g: DensePolynomial, which: Subfield, rng: random.Random) -> List[Fp2Element]:
    """Roots of a monic g that splits into distinct linear factors over the subfield"""
    if g.degree <= 0:
        return []
    if g.degree == 1:
        return [-g.coeffs[0] / g.coeffs[1]]

    ctx = g.ctx
    q = ctx.p if which is Subfield.FP else ctx.order
    while True:
        delta = _random_element(ctx, which, rng)
        shifted = DensePolynomial(ctx, [delta, 1]).powmod((q - 1) // 2, g) - 1
        d = gcd(g, shifted)
        if 0 < d.degree < g.degree:
            return _split_linear(d, which, rng) + _split_linear(g // d, which, rng)


def _prime_field_roots(f: DensePolynomial, which: Subfield) -> List[Fp2Element]:
    ctx = f.ctx
    p = ctx.p
    dense = gf_from_int_poly([c.c0 for c in reversed(f.coeffs)], p)
    _, factors = gf_factor(dense, p, ZZ)
    roots = []
    two_inv = pow(2, -1, p)
    for factor, _ in factors:
        factor = [int(c) for c in factor]
        if len(factor) == 2:
            roots.append(ctx.element(-factor[1]))
        elif len(factor) == 3 and which is Subfield.FP2:
            b, c = factor[1], factor[2]
            disc = sqrt_fp2(ctx.element(b * b - 4 * c))
            roots.append((disc - b) * two_inv)
            roots.append((-disc - b) * two_inv)
    return roots


def roots_in_field(
    f: DensePolynomial,
    ctx: FieldContext = None,
    which: Subfield = Subfield.FP2,
    seed: int = 0,
) -> List[Fp2Element]:
    """Distinct roots of f lying in F_p or F_{p^2}, sorted by canonical encoding"""
    ctx = ctx or f.ctx
    which = Subfield(which)
    if f.is_zero():
        raise ZeroDivisionError("roots of the zero polynomial")
    if f.degree == 0:
        return []

    if f.is_prime_field():
        roots = _prime_field_roots(f, which)
    else:
        q = ctx.p if which is Subfield.FP else ctx.order
        target = f.monic()
        split_part = gcd(target, powmod_frobenius(target, q) - DensePolynomial.x(ctx))
        roots = _split_linear(split_part, which, random.Random(seed))

    return sorted(set(roots), key=lambda r: r.enc)


def half_power_coeffs(f: DensePolynomial, p: int = None) -> DensePolynomial:
    """f^((p-1)/2) for a squarefree quintic or sextic f"""
    p = p or f.ctx.p
    if f.degree not in (5, 6):
        raise DegenerateParameterError(f"expected a polynomial of degree 5 or 6, got degree {f.degree}")
    if not f.is_squarefree():
        raise NotSquarefreeError(f"{f} has a repeated root")
    return f.pow((p - 1) // 2)
