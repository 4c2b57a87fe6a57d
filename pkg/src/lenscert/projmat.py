"""Elements of PSL(2, F) as sign-normalized determinant-1 matrices.

The +-M ambiguity is resolved at construction: scanning entries in the
order (a, b, c, d), the first nonzero entry's first nonzero coordinate
is forced into [0, (p-1)/2], so equal group elements have equal
representatives and equality is plain tuple equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .galois import FieldElement, FieldSpec, factorize
from .presentation import Word


class OrderCeilingExceeded(RuntimeError):
    """projective_order found an order above the caller's ceiling."""


@dataclass
class OpCounter:
    """Exact tallies for verification cost accounting.

    A 2x2 multiply is 8 field multiplications and 4 additions; an inverse
    is 2 negations.  Normalization sign flips are not charged.
    """

    mat_mults: int = 0
    field_ops: int = 0

    def count_mul(self) -> None:
        self.mat_mults += 1
        self.field_ops += 12

    def count_inverse(self) -> None:
        self.field_ops += 2


@dataclass(frozen=True)
class ProjMatrix:
    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: FieldElement

    def __post_init__(self) -> None:
        spec = self.a.spec
        for x in (self.b, self.c, self.d):
            if x.spec != spec:
                raise ValueError("matrix entries from different fields")
        det = self.a * self.d - self.b * self.c
        if det != spec.one():
            raise ValueError(f"matrix determinant is {det}, not 1")
        half = (spec.p - 1) // 2
        for entry in (self.a, self.b, self.c, self.d):
            coord = entry.a if entry.a != 0 else entry.b
            if coord == 0:
                continue
            if coord > half:
                for name, val in (("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d)):
                    object.__setattr__(self, name, -val)
            break

    @property
    def spec(self) -> FieldSpec:
        return self.a.spec

    @staticmethod
    def identity(spec: FieldSpec) -> "ProjMatrix":
        return ProjMatrix(spec.one(), spec.zero(), spec.zero(), spec.one())

    def is_identity(self) -> bool:
        return self == ProjMatrix.identity(self.spec)

    def mul(self, other: "ProjMatrix", counter: Optional[OpCounter] = None) -> "ProjMatrix":
        if self.spec != other.spec:
            raise ValueError("field spec mismatch")
        if counter is not None:
            counter.count_mul()
        return ProjMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self, counter: Optional[OpCounter] = None) -> "ProjMatrix":
        if counter is not None:
            counter.count_inverse()
        return ProjMatrix(self.d, -self.b, -self.c, self.a)

    def power(self, n: int) -> "ProjMatrix":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = ProjMatrix.identity(self.spec)
        while n:
            if n & 1:
                out = out.mul(base)
            base = base.mul(base)
            n >>= 1
        return out

    def trace(self) -> FieldElement:
        """Trace of the normalized representative (defined up to sign)."""
        return self.a + self.d

    def entries(self) -> tuple[FieldElement, FieldElement, FieldElement, FieldElement]:
        return (self.a, self.b, self.c, self.d)

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def psl_group_order(spec: FieldSpec) -> int:
    q = spec.order
    return q * (q * q - 1) // math.gcd(2, q - 1)


def _group_exponent(spec: FieldSpec) -> int:
    # every element order divides p, (q-1)/2 or (q+1)/2 (q odd)
    q = spec.order
    return math.lcm(spec.p, (q - 1) // 2, (q + 1) // 2)


def projective_order(m: ProjMatrix, ceiling: int = 10**9) -> int:
    """Least k with M^k trivial in PSL, by divisor descent from the group
    exponent rather than naive iteration."""
    if ceiling < 1:
        raise ValueError("ceiling must be at least 1")
    n = _group_exponent(m.spec)
    if not m.power(n).is_identity():
        raise ArithmeticError("matrix power of group exponent is not the identity")
    for q in factorize(n):
        while n % q == 0 and m.power(n // q).is_identity():
            n //= q
    if n > ceiling:
        raise OrderCeilingExceeded(f"projective order {n} exceeds ceiling {ceiling}")
    return n


def evaluate_word(
    images: Sequence[ProjMatrix],
    word: Word,
    counter: Optional[OpCounter] = None,
) -> ProjMatrix:
    """Left-to-right product of generator images; one multiply per letter."""
    if not images:
        raise ValueError("no generator images")
    spec = images[0].spec
    out = ProjMatrix.identity(spec)
    for gen, exp in word.letters:
        if gen >= len(images):
            raise ValueError(f"no image for generator {gen}")
        m = images[gen] if exp == 1 else images[gen].inverse(counter)
        out = out.mul(m, counter)
    return out


def bit_size(m: ProjMatrix) -> int:
    """Bits to encode the matrix: 4 * degree * ceil(log2(p-1))."""
    return bit_size_spec(m.spec)


def bit_size_spec(spec: FieldSpec) -> int:
    ceil_log = (spec.p - 2).bit_length()
    return 4 * spec.degree * ceil_log
