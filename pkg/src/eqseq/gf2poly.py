"""Dense polynomial arithmetic over GF(2) on bit-packed integers.

A polynomial a_0 + a_1 x + ... + a_n x^n is stored as the Python integer with
bit i equal to a_i, the same convention used for bit sequences.  Addition is
XOR, multiplication is carry-less shift-XOR, and two polynomials are equal
exactly when their integers are equal, so the representation is canonical by
construction.

The module also builds cyclotomic polynomials over GF(2) by recursive exact
division, which is valid for odd index because reduction mod 2 commutes with
the defining divisions there.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable

from .errors import DomainError, InternalConsistencyError, ResourceError, UnsupportedInputError
from .limits import max_period

if TYPE_CHECKING:  # pragma: no cover
    from .sequence import BitSequence

#: Degree of the zero polynomial; compares below every integer degree.
NEG_INFINITY = float("-inf")


def _int_mul(a: int, b: int) -> int:
    # schoolbook carry-less product, iterating over the sparser operand
    if a.bit_count() > b.bit_count():
        a, b = b, a
    r = 0
    while a:
        low = a & -a
        r ^= b << (low.bit_length() - 1)
        a ^= low
    return r


def _int_divmod(f: int, g: int) -> tuple[int, int]:
    dg = g.bit_length() - 1
    q = 0
    while f.bit_length() - 1 >= dg:
        shift = f.bit_length() - 1 - dg
        q |= 1 << shift
        f ^= g << shift
    return q, f


def _int_mod(f: int, g: int) -> int:
    dg = g.bit_length() - 1
    while f.bit_length() - 1 >= dg:
        f ^= g << (f.bit_length() - 1 - dg)
    return f


def _int_gcd(f: int, g: int) -> int:
    while g:
        f, g = g, _int_mod(f, g)
    return f


@dataclass(frozen=True)
class Gf2Poly:
    """Immutable GF(2)[x] polynomial; bit i of `bits` is the coefficient of x^i."""

    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0:
            raise DomainError("polynomial bits must be a nonnegative integer")

    @classmethod
    def zero(cls) -> "Gf2Poly":
        return cls(0)

    @classmethod
    def one(cls) -> "Gf2Poly":
        return cls(1)

    @classmethod
    def x_power(cls, k: int) -> "Gf2Poly":
        if k < 0:
            raise DomainError(f"exponent must be nonnegative, got {k}")
        return cls(1 << k)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "Gf2Poly":
        """Build from coefficients in ascending order of degree."""
        bits = 0
        for i, c in enumerate(coeffs):
            if c not in (0, 1):
                raise DomainError(f"coefficients must be 0 or 1, got {c}")
            bits |= c << i
        return cls(bits)

    @classmethod
    def from_terms(cls, degrees: Iterable[int]) -> "Gf2Poly":
        """Build from the degrees of the nonzero terms."""
        bits = 0
        for d in degrees:
            bits |= 1 << d
        return cls(bits)

    @property
    def degree(self) -> int | float:
        """Degree, or NEG_INFINITY for the zero polynomial."""
        return self.bits.bit_length() - 1 if self.bits else NEG_INFINITY

    @property
    def is_zero(self) -> bool:
        return self.bits == 0

    @property
    def num_terms(self) -> int:
        return self.bits.bit_count()

    def coefficient(self, i: int) -> int:
        return (self.bits >> i) & 1 if i >= 0 else 0

    def term_degrees(self) -> list[int]:
        """Degrees of the nonzero terms, descending."""
        return [i for i in range(self.bits.bit_length() - 1, -1, -1)
                if (self.bits >> i) & 1]

    def __bool__(self) -> bool:
        return self.bits != 0

    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(self.bits ^ other.bits)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(_int_mul(self.bits, other.bits))

    def __divmod__(self, other: "Gf2Poly") -> tuple["Gf2Poly", "Gf2Poly"]:
        if other.is_zero:
            raise DomainError("polynomial division by zero")
        q, r = _int_divmod(self.bits, other.bits)
        return Gf2Poly(q), Gf2Poly(r)

    def __floordiv__(self, other: "Gf2Poly") -> "Gf2Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Gf2Poly") -> "Gf2Poly":
        if other.is_zero:
            raise DomainError("polynomial division by zero")
        return Gf2Poly(_int_mod(self.bits, other.bits))

    def __str__(self) -> str:
        return self.render()

    def render(self) -> str:
        """Text form in descending powers: \"x^3 + x + 1\", \"x\", \"1\", \"0\"."""
        if self.bits == 0:
            return "0"
        parts = []
        for d in self.term_degrees():
            if d == 0:
                parts.append("1")
            elif d == 1:
                parts.append("x")
            else:
                parts.append(f"x^{d}")
        return " + ".join(parts)


def add(f: Gf2Poly, g: Gf2Poly) -> Gf2Poly:
    return f + g


def mul(f: Gf2Poly, g: Gf2Poly) -> Gf2Poly:
    return f * g


def divrem(f: Gf2Poly, g: Gf2Poly) -> tuple[Gf2Poly, Gf2Poly]:
    return divmod(f, g)


def gcd(f: Gf2Poly, g: Gf2Poly) -> Gf2Poly:
    """Greatest common divisor (monic automatically over GF(2))."""
    if f.is_zero and g.is_zero:
        raise DomainError("gcd(0, 0) is undefined")
    return Gf2Poly(_int_gcd(f.bits, g.bits))


def compose_power(f: Gf2Poly, k: int) -> Gf2Poly:
    """f(x^k): bit i of f moves to bit i*k."""
    if k < 1:
        raise DomainError(f"compose_power requires k >= 1, got {k}")
    if k == 1 or f.is_zero:
        return f
    out_degree = (f.bits.bit_length() - 1) * k
    budget = max_period()
    if out_degree > budget:
        raise ResourceError(
            f"composed degree {out_degree} exceeds budget {budget} "
            "(EQSEQ_MAX_PERIOD)"
        )
    bits = 0
    src = f.bits
    while src:
        low = src & -src
        bits |= 1 << ((low.bit_length() - 1) * k)
        src ^= low
    return Gf2Poly(bits)


@functools.lru_cache(maxsize=None)
def _cyclotomic_bits(n: int) -> int:
    f = (1 << n) | 1  # x^n + 1
    for d in range(1, n):
        if n % d == 0:
            q, r = _int_divmod(f, _cyclotomic_bits(d))
            if r:
                raise InternalConsistencyError(
                    f"cyclotomic division for n={n} left a remainder"
                )
            f = q
    return f


def cyclotomic_f2(n: int) -> Gf2Poly:
    """n-th cyclotomic polynomial reduced mod 2, for odd n (or n == 1).

    Computed as (x^n + 1) divided by the cyclotomic polynomials of all proper
    divisors, so x^n - 1 = prod_{d | n} Phi_d holds by construction.
    """
    if n < 1:
        raise DomainError(f"cyclotomic index must be positive, got {n}")
    if n > 1 and n % 2 == 0:
        raise UnsupportedInputError(
            f"cyclotomic_f2 supports odd n only (x^n - 1 squarefree), got {n}"
        )
    budget = max_period()
    if n > budget:
        raise ResourceError(f"cyclotomic index {n} exceeds budget {budget} (EQSEQ_MAX_PERIOD)")
    return Gf2Poly(_cyclotomic_bits(n))


def generating_polynomial(seq: "BitSequence") -> Gf2Poly:
    """One period of a sequence read as polynomial coefficients (bit t -> x^t)."""
    return Gf2Poly(seq.bits)
