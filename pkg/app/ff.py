"""Arithmetic in F_p and in the quadratic extension F_{p^2}.

F_{p^2} is presented as F_p[z] / (z^2 + m1*z + m0). An element is stored as
its coordinates (c0, c1) over the basis {1, zeta}, where zeta is the class of z.
"""

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Optional, Sequence, Tuple, Union

from sympy import factorint, isprime
from sympy.ntheory import is_quad_residue

from app.errors import FieldError

PRIME_LIMIT = 2**31

IntLike = Union[int, "Fp2Element"]


@dataclass(frozen=True)
class FieldContext:
    """A prime p > 5 together with a monic irreducible quadratic over F_p"""

    p: int
    m0: int
    m1: int
    is_generator: bool

    @property
    def minpoly(self) -> Tuple[int, int, int]:
        """Ascending coefficients [a0, a1, 1] of the defining quadratic"""
        return (self.m0, self.m1, 1)

    @property
    def order(self) -> int:
        return self.p * self.p

    def element(self, c0: int, c1: int = 0) -> "Fp2Element":
        return Fp2Element(self, c0 % self.p, c1 % self.p)

    @property
    def zero(self) -> "Fp2Element":
        return Fp2Element(self, 0, 0)

    @property
    def one(self) -> "Fp2Element":
        return Fp2Element(self, 1, 0)

    @property
    def zeta(self) -> "Fp2Element":
        return Fp2Element(self, 0, 1)

    def from_enc(self, enc: int) -> "Fp2Element":
        if not 0 <= enc < self.order:
            raise FieldError(f"encoding {enc} out of range for p={self.p}")
        return Fp2Element(self, enc % self.p, enc // self.p)

    def elements(self, start: int = 0) -> Iterator["Fp2Element"]:
        """All field elements in canonical (encoding) order"""
        for enc in range(start, self.order):
            yield self.from_enc(enc)

    @cached_property
    def nonresidue(self) -> int:
        return least_nonresidue(self.p)

    @cached_property
    def nonsquare(self) -> "Fp2Element":
        # an element of F_{p^2} is a square iff its norm is a square in F_p
        for x in self.elements(start=2):
            if not is_quad_residue(x.norm(), self.p):
                return x
        raise FieldError(f"no non-square found in F_{self.p}^2")

    @cached_property
    def omega(self) -> "Fp2Element":
        """Primitive cube root of unity, (sqrt(-3) - 1) / 2"""
        root = sqrt_fp2(self.element(-3))
        return (root - 1) * self.element(2).inverse()

    def __repr__(self) -> str:
        return f"FieldContext(p={self.p}, minpoly=z^2+{self.m1}z+{self.m0})"


class Fp2Element:
    """Element c0 + c1*zeta of F_{p^2}"""

    __slots__ = ("ctx", "c0", "c1")

    def __init__(self, ctx: FieldContext, c0: int, c1: int = 0):
        self.ctx = ctx
        self.c0 = c0
        self.c1 = c1

    def _coerce(self, other: IntLike) -> "Fp2Element":
        if isinstance(other, Fp2Element):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise FieldError(f"cannot combine elements of {self.ctx} and {other.ctx}")
            return other
        if isinstance(other, int):
            return Fp2Element(self.ctx, other % self.ctx.p, 0)
        return NotImplemented

    @property
    def enc(self) -> int:
        return self.c0 + self.ctx.p * self.c1

    def is_prime_field(self) -> bool:
        return self.c1 == 0

    def to_list(self):
        return [self.c0, self.c1]

    def __add__(self, other: IntLike) -> "Fp2Element":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        return Fp2Element(self.ctx, (self.c0 + other.c0) % p, (self.c1 + other.c1) % p)

    __radd__ = __add__

    def __sub__(self, other: IntLike) -> "Fp2Element":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        return Fp2Element(self.ctx, (self.c0 - other.c0) % p, (self.c1 - other.c1) % p)

    def __rsub__(self, other: IntLike) -> "Fp2Element":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self) -> "Fp2Element":
        p = self.ctx.p
        return Fp2Element(self.ctx, -self.c0 % p, -self.c1 % p)

    def __mul__(self, other: IntLike) -> "Fp2Element":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        p = ctx.p
        a0, a1, b0, b1 = self.c0, self.c1, other.c0, other.c1
        hi = a1 * b1
        return Fp2Element(
            ctx,
            (a0 * b0 - ctx.m0 * hi) % p,
            (a0 * b1 + a1 * b0 - ctx.m1 * hi) % p,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: IntLike) -> "Fp2Element":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other: IntLike) -> "Fp2Element":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "Fp2Element":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.ctx.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Fp2Element):
            return (
                self.c0 == other.c0
                and self.c1 == other.c1
                and self.ctx.p == other.ctx.p
                and self.ctx.minpoly == other.ctx.minpoly
            )
        if isinstance(other, int):
            return self.c1 == 0 and self.c0 == other % self.ctx.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx.p, self.c0, self.c1))

    def __lt__(self, other: "Fp2Element") -> bool:
        return self.enc < other.enc

    def __le__(self, other: "Fp2Element") -> bool:
        return self.enc <= other.enc

    def __bool__(self) -> bool:
        return bool(self.c0 or self.c1)

    def __repr__(self) -> str:
        if self.c1 == 0:
            return f"{self.c0}"
        return f"({self.c0}+{self.c1}z)"

    def __reduce__(self):
        return (_rebuild_element, (self.ctx.p, self.ctx.minpoly[:2], self.c0, self.c1))

    def frobenius(self) -> "Fp2Element":
        p = self.ctx.p
        return Fp2Element(self.ctx, (self.c0 - self.ctx.m1 * self.c1) % p, -self.c1 % p)

    def norm(self) -> int:
        """x * x^p, an element of F_p"""
        ctx = self.ctx
        c0, c1 = self.c0, self.c1
        return (c0 * c0 - ctx.m1 * c0 * c1 + ctx.m0 * c1 * c1) % ctx.p

    def inverse(self) -> "Fp2Element":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in F_{p^2}")
        return self.frobenius() * pow(n, -1, self.ctx.p)

    def is_square(self) -> bool:
        if not self:
            return True
        return is_quad_residue(self.norm(), self.ctx.p)

    def sqrt(self) -> Optional["Fp2Element"]:
        return sqrt_fp2(self)

    def minimal(self) -> "Fp2Element":
        """The representative of {x, -x} with the smaller encoding"""
        other = -self
        return self if self.enc <= other.enc else other


def _rebuild_element(p: int, minpoly: Tuple[int, int], c0: int, c1: int) -> Fp2Element:
    return Fp2Element(make_context(p, minpoly), c0, c1)


def least_nonresidue(p: int) -> int:
    n = 2
    while is_quad_residue(n, p):
        n += 1
    return n


def _normalize_minpoly(p: int, minpoly: Sequence[int]) -> Tuple[int, int]:
    coeffs = list(minpoly)
    if len(coeffs) == 3:
        if coeffs[2] % p != 1:
            raise FieldError(f"minimal polynomial {coeffs} is not monic")
        coeffs = coeffs[:2]
    if len(coeffs) != 2:
        raise FieldError(f"minimal polynomial must be quadratic, got {list(minpoly)}")
    return coeffs[0] % p, coeffs[1] % p


def _zeta_generates(p: int, m0: int, m1: int) -> bool:
    ctx = FieldContext(p, m0, m1, False)
    zeta = ctx.zeta
    group_order = p * p - 1
    for q in factorint(group_order):
        if zeta ** (group_order // q) == 1:
            return False
    return True


def check_prime(p: int) -> int:
    if isinstance(p, bool) or not isinstance(p, int) or not isprime(p):
        raise FieldError(f"{p} is not a prime")
    if p <= 5:
        raise FieldError(f"characteristic must exceed 5, got {p}")
    if p >= PRIME_LIMIT:
        raise FieldError(f"characteristic must be below 2^31, got {p}")
    return p


@lru_cache(maxsize=None)
def _cached_context(p: int, minpoly: Optional[Tuple[int, int]]) -> FieldContext:
    if minpoly is None:
        m0, m1 = -least_nonresidue(p) % p, 0
    else:
        m0, m1 = minpoly
        if is_quad_residue((m1 * m1 - 4 * m0) % p, p):
            raise FieldError(f"z^2 + {m1}z + {m0} is reducible over F_{p}")

    return FieldContext(p, m0, m1, _zeta_generates(p, m0, m1))


def make_context(p: int, minpoly: Optional[Sequence[int]] = None) -> FieldContext:
    """Build (or fetch) the context for F_{p^2}.

    minpoly is given by ascending coefficients, either [a0, a1] or [a0, a1, 1].
    Without one, z^2 - n is used with n the least quadratic non-residue mod p.
    """
    check_prime(p)
    key = None if minpoly is None else _normalize_minpoly(p, minpoly)
    return _cached_context(p, key)


def frobenius(x: Fp2Element) -> Fp2Element:
    return x.frobenius()


def sqrt_fp2(x: Fp2Element) -> Optional[Fp2Element]:
    """Square root with the smaller canonical encoding, or None for non-squares"""
    ctx = x.ctx
    if not x:
        return ctx.zero
    if not x.is_square():
        return None

    # Tonelli-Shanks in the cyclic group of order p^2 - 1
    q = ctx.order - 1
    e = (q & -q).bit_length() - 1
    odd = q >> e
    c = ctx.nonsquare ** odd
    t = x ** odd
    r = x ** ((odd + 1) // 2)
    m = e
    while t != 1:
        i = 0
        square = t
        while square != 1:
            square = square * square
            i += 1
        b = c ** (1 << (m - i - 1))
        m = i
        c = b * b
        t = t * c
        r = r * b

    other = -r
    return r if r.enc <= other.enc else other


def binomial_mod(n: int, k: int, p: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k) % p
