"""Arithmetic in F_p and F_{p^2}, prime search in arithmetic progressions.

F_{p^2} is realized as F_p[w] with w^2 = s for the smallest positive
quadratic nonresidue s, so serialized elements are reproducible
bit-for-bit.  Primality is decided by a deterministic Miller-Rabin base
set valid below 3.3e24; anything larger is an error, never a
probabilistic accept.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

# Sorenson-Webster: these bases are a deterministic primality test below this bound.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3317044064679887385961981

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


class PrimalityBoundError(RuntimeError):
    """Input exceeds the deterministic Miller-Rabin range."""


class SearchLimitExceeded(RuntimeError):
    """Prime search passed its configured ceiling."""


class FactorizationError(RuntimeError):
    """Pollard rho gave up within its iteration budget."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n >= _MR_LIMIT:
        raise PrimalityBoundError(f"{n} exceeds the deterministic primality range")
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def smallest_prime_in_progression(l: int, ceiling: int = 10**9) -> int:
    """Least prime p = 1 (mod l), scanning l+1, 2l+1, ... up to ceiling."""
    if l < 2:
        raise ValueError("modulus must be at least 2")
    candidate = l + 1
    while candidate <= ceiling:
        if is_prime(candidate):
            return candidate
        candidate += l
    raise SearchLimitExceeded(
        f"no prime = 1 (mod {l}) found below ceiling {ceiling}"
    )


def linnik_ratio(p: int, l: int) -> float:
    """Observed p / l^5.18 (Xylouris exponent); reported, never asserted."""
    return p / l**5.18


def _pollard_rho(n: int, max_iter: int = 10**7) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        x = y = 2
        d = 1
        count = 0
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
            count += 1
            if count > max_iter:
                raise FactorizationError(f"factorization budget exhausted on {n}")
        if d != n:
            return d
    raise FactorizationError(f"pollard rho failed on {n}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division then Pollard rho."""
    if n <= 0:
        raise ValueError("factorize needs a positive integer")
    out: dict[int, int] = {}
    for p in range(2, 10000):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        if p * p > n:
            break
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend([d, m // d])
    return dict(sorted(out.items()))


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    if n <= 0:
        raise ValueError("phi of a positive integer only")
    out = n
    for p in factorize(n):
        out -= out // p
    return out


def is_quadratic_residue(a: int, p: int) -> bool:
    a %= p
    if a == 0:
        return True
    return pow(a, (p - 1) // 2, p) == 1


def smallest_nonresidue(p: int) -> int:
    for s in range(2, p):
        if not is_quadratic_residue(s, p):
            return s
    raise ValueError(f"no nonresidue modulo {p}; is it prime and odd?")


def sqrt_mod_p(a: int, p: int) -> Optional[int]:
    """Canonical square root of a modulo an odd prime, or None.

    Tonelli-Shanks with the smallest nonresidue as auxiliary; the root in
    [0, (p-1)/2] is returned so certificates are deterministic.
    """
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        x = pow(a, (p + 1) // 4, p)
    else:
        q = p - 1
        s = 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = pow(smallest_nonresidue(p), q, p)
        m, c, t, x = s, z, pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            t2 = t
            i = 0
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t = t * c % p
            x = x * b % p
    return min(x, p - x)


@dataclass(frozen=True)
class FieldSpec:
    """F_p (degree 1) or F_{p^2} = F_p[w], w^2 = s (degree 2)."""

    p: int
    degree: int = 1
    s: Optional[int] = None

    def __post_init__(self) -> None:
        if self.p < 3 or not is_prime(self.p):
            raise ValueError(f"field characteristic must be an odd prime, got {self.p}")
        if self.degree not in (1, 2):
            raise ValueError("only degree 1 and 2 fields are supported")
        if self.degree == 1:
            if self.s is not None:
                raise ValueError("nonresidue only makes sense for degree 2")
        else:
            if self.s is None:
                raise ValueError("degree 2 needs the defining nonresidue s")
            if not 0 < self.s < self.p or is_quadratic_residue(self.s, self.p):
                raise ValueError(f"s={self.s} is not a nonresidue modulo {self.p}")

    @property
    def order(self) -> int:
        return self.p**self.degree

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1, 0)

    def element(self, a: int, b: int = 0) -> "FieldElement":
        return FieldElement(self, a, b)

    def elements(self):
        """All field elements in canonical (a, b) lexicographic order."""
        if self.degree == 1:
            for a in range(self.p):
                yield FieldElement(self, a)
        else:
            for a in range(self.p):
                for b in range(self.p):
                    yield FieldElement(self, a, b)


def quadratic_extension(p: int) -> FieldSpec:
    return FieldSpec(p, 2, smallest_nonresidue(p))


@dataclass(frozen=True)
class FieldElement:
    """a (degree 1) or a + b*w (degree 2), coordinates reduced mod p."""

    spec: FieldSpec
    a: int
    b: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", self.a % self.spec.p)
        object.__setattr__(self, "b", self.b % self.spec.p)
        if self.spec.degree == 1 and self.b:
            raise ValueError("degree-1 element with a w coordinate")

    def _check(self, other: "FieldElement") -> None:
        if self.spec != other.spec:
            raise ValueError("field spec mismatch")

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.spec, self.a + other.a, self.b + other.b)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.spec, self.a - other.a, self.b - other.b)

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.spec, -self.a, -self.b)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        p = self.spec.p
        if self.spec.degree == 1:
            return FieldElement(self.spec, self.a * other.a % p)
        s = self.spec.s
        a = (self.a * other.a + s * self.b * other.b) % p
        b = (self.a * other.b + self.b * other.a) % p
        return FieldElement(self.spec, a, b)

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        p = self.spec.p
        if self.spec.degree == 1:
            return FieldElement(self.spec, pow(self.a, p - 2, p))
        norm = (self.a * self.a - self.spec.s * self.b * self.b) % p
        ninv = pow(norm, p - 2, p)
        return FieldElement(self.spec, self.a * ninv, -self.b * ninv)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inverse()

    def __pow__(self, n: int) -> "FieldElement":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = self.spec.one()
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def lift(self, spec: FieldSpec) -> "FieldElement":
        """Embed a prime-field element into a degree-2 extension of the same p."""
        if self.spec == spec:
            return self
        if self.spec.degree != 1 or spec.p != self.spec.p:
            raise ValueError("can only lift F_p into F_{p^2}")
        return FieldElement(spec, self.a, 0)

    def __str__(self) -> str:
        if self.spec.degree == 1:
            return str(self.a)
        return f"{self.a}+{self.b}*w"


def parse_field_element(text: str, spec: FieldSpec) -> FieldElement:
    """Strict canonical form: coordinates must already lie in [0, p)."""
    text = text.strip()
    if spec.degree == 1:
        coords = [int(text)]
    else:
        main, _, wpart = text.partition("+")
        if not wpart.endswith("*w"):
            raise ValueError(f"bad degree-2 element syntax: {text!r}")
        coords = [int(main), int(wpart[:-2])]
    for c in coords:
        if not 0 <= c < spec.p:
            raise ValueError(f"coordinate {c} out of range for p={spec.p}")
    return FieldElement(spec, *coords)


def primitive_root(p: int) -> int:
    """Smallest generator of F_p^*, verified against every factor of p-1."""
    factors = list(factorize(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise ValueError(f"no primitive root found modulo {p}")


def root_of_unity(p: int, l: int) -> FieldElement:
    """Element of exact multiplicative order l in F_p, from the smallest
    primitive root; the order is verified against every maximal proper
    divisor of l."""
    if (p - 1) % l != 0:
        raise ValueError(f"{l} does not divide p-1 = {p - 1}")
    g = primitive_root(p)
    z = pow(g, (p - 1) // l, p)
    for q in factorize(l):
        if pow(z, l // q, p) == 1:
            raise ArithmeticError(f"order verification failed for l={l}, p={p}")
    return FieldElement(FieldSpec(p), z)


def element_order(x: FieldElement) -> int:
    """Exact multiplicative order via factoring the group order."""
    if x.is_zero():
        raise ValueError("zero has no multiplicative order")
    one = x.spec.one()
    n = x.spec.order - 1
    for q in factorize(n):
        while n % q == 0 and x ** (n // q) == one:
            n //= q
    return n


def imaginary_unit(spec: FieldSpec) -> FieldElement:
    """A square root of -1: in F_p when p = 1 (mod 4), else u*w in F_{p^2}."""
    p = spec.p
    if p % 4 == 1:
        root = sqrt_mod_p(p - 1, p)
        assert root is not None
        return FieldElement(spec, root)
    if spec.degree != 2:
        raise ValueError(f"-1 is not a square in F_{p}")
    u2 = (-pow(spec.s, p - 2, p)) % p  # (-1)/s is a residue: both are nonresidues
    u = sqrt_mod_p(u2, p)
    assert u is not None
    return FieldElement(spec, 0, u)
