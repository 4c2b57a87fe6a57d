"""Triangle groups T_{n1,n2,n3} and their small PSL(2, F) images.

For a hyperbolic triple with coprime entries the construction follows
the explicit integral representation: x maps to [[2c, 1], [-1, 0]] with
c = cos(pi/n1), y to a conjugate of the same shape, and everything is
reduced modulo a prime p = 1 (mod 2*lcm(n1,n2,n3)) so the cosines become
explicit roots of unity sums in F_p.  The parameter r solves a quadratic
whose discriminant decides whether F_p suffices or F_{p^2} is needed.
Non-hyperbolic triples get either a (Z/d)^2 abelian image or a small
dihedral / spherical matrix image found by bounded search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .galois import (
    FieldElement,
    FieldSpec,
    euler_phi,
    imaginary_unit,
    is_quadratic_residue,
    quadratic_extension,
    root_of_unity,
    smallest_prime_in_progression,
    sqrt_mod_p,
)
from .presentation import GroupPresentation, Word, word_power
from .projmat import ProjMatrix, evaluate_word, projective_order

HYPERBOLIC = "hyperbolic"
EUCLIDEAN = "euclidean"
SPHERICAL = "spherical"


class RepVerificationError(AssertionError):
    """A built representation failed its own postconditions (a bug)."""


@dataclass(frozen=True)
class TriangleType:
    n1: int
    n2: int
    n3: int
    ell: int
    d: int
    curvature: str

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.n1, self.n2, self.n3)


def classify(n1: int, n2: int, n3: int) -> TriangleType:
    """Sort the triple and classify by the sign of 1/n1 + 1/n2 + 1/n3 - 1."""
    ns = sorted((n1, n2, n3))
    if ns[0] < 2:
        raise ValueError("triangle group orders must be at least 2")
    total = Fraction(1, ns[0]) + Fraction(1, ns[1]) + Fraction(1, ns[2])
    if total < 1:
        curvature = HYPERBOLIC
    elif total == 1:
        curvature = EUCLIDEAN
    else:
        curvature = SPHERICAL
    ell = 2 * math.lcm(ns[0], ns[1], ns[2])
    d = math.gcd(ns[0], math.gcd(ns[1], ns[2]))
    return TriangleType(ns[0], ns[1], ns[2], ell, d, curvature)


def triangle_presentation(t: TriangleType) -> GroupPresentation:
    """<x, y | x^n1, y^n2, (xy)^n3> with labels x, y."""
    x, y = Word(((0, 1),)), Word(((1, 1),))
    relators = (
        word_power(x, t.n1),
        word_power(y, t.n2),
        word_power(x * y, t.n3),
    )
    return GroupPresentation(g=2, relators=relators, labels=("x", "y"))


def reduced_cosines(
    p: int, ell: int, triple: tuple[int, int, int]
) -> tuple[FieldElement, FieldElement, FieldElement, FieldElement]:
    """(zeta, C1, C2, C3) with zeta of exact order ell in F_p and
    C_k = zeta^(ell/2n_k) + zeta^(-ell/2n_k), the image of 2cos(pi/n_k)."""
    if (p - 1) % ell != 0:
        raise ValueError(f"p={p} is not 1 mod ell={ell}")
    zeta = root_of_unity(p, ell)
    cs = []
    for n in triple:
        zk = zeta ** (ell // (2 * n))
        cs.append(zk + zk.inverse())
    return (zeta, cs[0], cs[1], cs[2])


def solve_r(
    spec: FieldSpec, c1: FieldElement, c2: FieldElement, c3: FieldElement
) -> tuple[FieldSpec, FieldElement]:
    """Root of r^2 + r(C1-C2) + (2 - C1*C2 - C3) over F_p, upgrading to
    F_{p^2} when the discriminant is a nonresidue."""
    if spec.degree != 1:
        raise ValueError("solve_r starts from the prime field")
    p = spec.p
    two = spec.element(2)
    lin = c1 - c2
    const = two - c1 * c2 - c3
    disc = lin * lin - spec.element(4) * const
    if is_quadratic_residue(disc.a, p):
        root = sqrt_mod_p(disc.a, p)
        assert root is not None
        out_spec = spec
        sqrt_disc = spec.element(root)
    else:
        out_spec = quadratic_extension(p)
        scaled = disc.a * pow(out_spec.s, p - 2, p) % p  # disc/s is a residue
        u = sqrt_mod_p(scaled, p)
        assert u is not None
        sqrt_disc = out_spec.element(0, u)
        lin = lin.lift(out_spec)
        c1, c2, c3 = (x.lift(out_spec) for x in (c1, c2, c3))
    r = (sqrt_disc - lin) * out_spec.element(2).inverse()
    check = r * r + r * lin + (out_spec.element(2) - c1 * c2 - c3)
    if not check.is_zero():
        raise RepVerificationError("r does not satisfy its quadratic")
    return out_spec, r


def _standard_matrix(c: FieldElement) -> ProjMatrix:
    """[[C, 1], [-1, 0]]: determinant 1, trace the cosine value."""
    spec = c.spec
    return ProjMatrix(c, spec.one(), -spec.one(), spec.zero())


def _translation(r: FieldElement) -> ProjMatrix:
    spec = r.spec
    return ProjMatrix(spec.one(), r, spec.zero(), spec.one())


@dataclass(frozen=True)
class ReducedRepData:
    triple: tuple[int, int, int]
    ell: int
    p: int
    spec: FieldSpec
    zeta: FieldElement
    c1: FieldElement
    c2: FieldElement
    c3: FieldElement
    r: FieldElement
    x_image: ProjMatrix
    y_image: ProjMatrix

    @property
    def field_degree(self) -> int:
        return self.spec.degree


def build_hyperbolic_rep(t: TriangleType, ceiling: int = 10**9) -> ReducedRepData:
    """Construct and verify the mod-p image for a coprime hyperbolic triple.

    Postconditions are checked computationally: images of x, y, xy have
    projective orders exactly n1, n2, n3, the trace of the xy image is
    +-C3, and xy, yx have distinct images.  Any failure is a bug, not a
    math failure, and raises RepVerificationError.
    """
    if t.curvature != HYPERBOLIC:
        raise ValueError("build_hyperbolic_rep needs a hyperbolic triple")
    if t.d != 1:
        raise ValueError("triple has a common divisor; use the abelian certificate")
    p = smallest_prime_in_progression(t.ell, ceiling)
    zeta, c1, c2, c3 = reduced_cosines(p, t.ell, t.triple)
    spec, r = solve_r(FieldSpec(p), c1, c2, c3)
    c1, c2, c3 = (x.lift(spec) for x in (c1, c2, c3))

    x_img = _standard_matrix(c1)
    t_r = _translation(r)
    y_img = t_r.mul(_standard_matrix(c2)).mul(t_r.inverse())

    xy = x_img.mul(y_img)
    yx = y_img.mul(x_img)
    orders = (
        projective_order(x_img, 2 * t.ell),
        projective_order(y_img, 2 * t.ell),
        projective_order(xy, 2 * t.ell),
    )
    if orders != t.triple:
        raise RepVerificationError(f"orders {orders} != {t.triple}")
    if xy.trace() not in (c3, -c3):
        raise RepVerificationError("trace of xy image is not +-C3")
    if xy == yx:
        raise RepVerificationError("image is abelian")
    return ReducedRepData(
        triple=t.triple,
        ell=t.ell,
        p=p,
        spec=spec,
        zeta=zeta,
        c1=c1,
        c2=c2,
        c3=c3,
        r=r,
        x_image=x_img,
        y_image=y_img,
    )


@dataclass(frozen=True)
class TriangleCertData:
    """What a triangle-group certificate needs, before serialization."""

    triple: tuple[int, int, int]
    kind: str  # "abelian" or "rep"
    # abelian: surject (Z/d)^2 by x -> (1,0), y -> (0,1)
    d: Optional[int] = None
    # rep: matrices for x and y over spec
    spec: Optional[FieldSpec] = None
    x_image: Optional[ProjMatrix] = None
    y_image: Optional[ProjMatrix] = None


def _psl_elements(spec: FieldSpec) -> list[ProjMatrix]:
    """All of PSL(2, F) in a deterministic order."""
    seen = set()
    out = []

    def record(m: ProjMatrix) -> None:
        key = tuple((e.a, e.b) for e in m.entries())
        if key not in seen:
            seen.add(key)
            out.append(m)

    zero, one = spec.zero(), spec.one()
    for a in spec.elements():
        if a.is_zero():
            continue
        inv_a = a.inverse()
        for b in spec.elements():
            for c in spec.elements():
                record(ProjMatrix(a, b, c, (one + b * c) * inv_a))
    for b in spec.elements():
        if b.is_zero():
            continue
        c = -b.inverse()
        for d in spec.elements():
            record(ProjMatrix(zero, b, c, d))
    out.sort(key=lambda m: tuple((e.a, e.b) for e in m.entries()))
    return out


_SPHERICAL_FIELDS = (
    FieldSpec(3),
    FieldSpec(5),
    FieldSpec(7),
    quadratic_extension(3),  # F_9
)


@lru_cache(maxsize=None)
def _spherical_pair(n1: int, n2: int, n3: int) -> tuple[ProjMatrix, ProjMatrix]:
    """First (A, B) over PSL(2,q), q in {3,5,7,9}, with orders (n1, n2),
    order(AB) = n3 and AB != BA."""
    for spec in _SPHERICAL_FIELDS:
        elements = _psl_elements(spec)
        orders = [projective_order(m, 10**6) for m in elements]
        a_candidates = [m for m, o in zip(elements, orders) if o == n1]
        b_candidates = [m for m, o in zip(elements, orders) if o == n2]
        for a in a_candidates:
            for b in b_candidates:
                ab = a.mul(b)
                if ab == b.mul(a):
                    continue
                if projective_order(ab, 10**6) == n3:
                    return (a, b)
    raise RepVerificationError(f"no spherical pair found for ({n1},{n2},{n3})")


def build_nonhyperbolic_cert(t: TriangleType) -> TriangleCertData:
    """Certificate data for non-hyperbolic triples (and d > 1 in general).

    d > 1 gives the abelian image in (Z/d)^2; the spherical triples get a
    bounded brute-force matrix pair; (2,3,6) reuses the (2,3,3) images
    since (xy)^3 = 1 kills (xy)^6; odd (2,2,m) gets the dihedral image
    over the smallest prime divisor of m.
    """
    if t.curvature == HYPERBOLIC and t.d == 1:
        raise ValueError("coprime hyperbolic triples use build_hyperbolic_rep")
    if t.d > 1:
        return TriangleCertData(triple=t.triple, kind="abelian", d=t.d)
    if t.triple in ((2, 3, 3), (2, 3, 4), (2, 3, 5)):
        a, b = _spherical_pair(*t.triple)
        return TriangleCertData(
            triple=t.triple, kind="rep", spec=a.spec, x_image=a, y_image=b
        )
    if t.triple == (2, 3, 6):
        a, b = _spherical_pair(2, 3, 3)
        return TriangleCertData(
            triple=t.triple, kind="rep", spec=a.spec, x_image=a, y_image=b
        )
    if t.n1 == 2 and t.n2 == 2 and t.n3 % 2 == 1:
        return _dihedral_cert(t)
    raise ValueError(f"no construction for triple {t.triple}")


def _dihedral_cert(t: TriangleType) -> TriangleCertData:
    """x -> diag(i, -i), y -> [[i, i], [0, -i]] over F_p or F_p[i] for the
    smallest prime divisor p of m, so xy is unipotent of order p."""
    from .galois import factorize

    m = t.n3
    p = min(factorize(m))
    spec = FieldSpec(p) if p % 4 == 1 else quadratic_extension(p)
    i = imaginary_unit(spec)
    zero = spec.zero()
    x_img = ProjMatrix(i, zero, zero, -i)
    y_img = ProjMatrix(i, i, zero, -i)
    xy = x_img.mul(y_img)
    if projective_order(x_img, 4) != 2 or projective_order(y_img, 4) != 2:
        raise RepVerificationError("dihedral generators are not order 2")
    if projective_order(xy, 2 * m) != p:
        raise RepVerificationError("xy image does not have order p")
    if not evaluate_word([x_img, y_img], word_power(Word(((0, 1), (1, 1))), m)).is_identity():
        raise RepVerificationError("(xy)^m does not die")
    if xy == y_img.mul(x_img):
        raise RepVerificationError("dihedral image is abelian")
    return TriangleCertData(triple=t.triple, kind="rep", spec=spec, x_image=x_img, y_image=y_img)


def cosine_norm(n: int, variant: str = "plain") -> int:
    """|field norm| of 2cos(pi/n) over Q (plain) or of 2cos(pi/n) - 2
    (minus_two), by the closed forms: p^2 when n is twice a power of the
    prime p, else 1; and 4 when n is a power of 2, else 1."""
    if n <= 2:
        raise ValueError("need n > 2")
    if variant == "plain":
        if n % 2 == 0:
            half = n // 2
            base = _prime_power_base(half)
            if base is not None:
                return base * base
        return 1
    if variant == "minus_two":
        return 4 if n & (n - 1) == 0 else 1
    raise ValueError(f"unknown variant {variant!r}")


def _prime_power_base(m: int) -> Optional[int]:
    """p when m = p^e with e >= 1, else None."""
    if m < 2:
        return None
    from .galois import factorize

    factors = factorize(m)
    if len(factors) == 1:
        return next(iter(factors))
    return None


@lru_cache(maxsize=None)
def _cyclotomic_poly(k: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the k-th cyclotomic polynomial,
    by exact division of x^k - 1 by the lower cyclotomic factors."""
    poly = [-1] + [0] * (k - 1) + [1]  # x^k - 1
    for d in range(1, k):
        if k % d == 0:
            poly = _polydiv_exact(poly, list(_cyclotomic_poly(d)))
    return tuple(poly)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    out = [0] * (len(num) - len(den) + 1)
    rem = list(num)
    for i in range(len(out) - 1, -1, -1):
        coeff = rem[i + len(den) - 1] // den[-1]
        out[i] = coeff
        for j, dj in enumerate(den):
            rem[i + j] -= coeff * dj
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return out


def cyclotomic_eval(k: int, at: int) -> int:
    """Exact value of the k-th cyclotomic polynomial at +1 or -1."""
    if k < 1:
        raise ValueError("k must be positive")
    if at not in (1, -1):
        raise ValueError("evaluation point must be +1 or -1")
    coeffs = _cyclotomic_poly(k)
    out = 0
    sign = 1
    for c in coeffs:
        out += c * sign
        sign *= at
    return out


@dataclass(frozen=True)
class FieldDegreeReport:
    triple: tuple[int, int, int]
    ell: int
    trace_degree: int  # phi(ell)/2
    candidate_degrees: tuple[int, int]
    witness_l: Optional[int]
    verdict: str  # "degree_phi", "half_possible", "undetermined"
    variant_disagrees: bool


def field_degree_report(t: TriangleType, margin: float = 1e-9) -> FieldDegreeReport:
    """Scan l coprime to ell for a non-real embedding witness.

    The inequality tested is the published one, indexed by (n2, n3); the
    proof's discriminant condition indexes (n1, n2, n3) instead, so both
    are scanned and a disagreement on the verdict is flagged rather than
    silently resolved.
    """
    if t.curvature != HYPERBOLIC:
        raise ValueError("field degree scan applies to hyperbolic triples")
    phi = euler_phi(t.ell)
    witness = _embedding_witness(t.ell, t.n2, t.n3, t.n3, margin)
    variant = _embedding_witness(t.ell, t.n1, t.n2, t.n3, margin)
    if witness[0] is not None:
        verdict = "degree_phi"
    elif witness[1]:
        verdict = "half_possible"
    else:
        verdict = "undetermined"
    return FieldDegreeReport(
        triple=t.triple,
        ell=t.ell,
        trace_degree=phi // 2,
        candidate_degrees=(phi // 2, phi),
        witness_l=witness[0],
        verdict=verdict,
        variant_disagrees=(witness[0] is None) != (variant[0] is None),
    )


def _embedding_witness(
    ell: int, na: int, nb: int, nc: int, margin: float
) -> tuple[Optional[int], bool]:
    """First l with (cos(pi l/na) + cos(pi l/nb))^2 + 2cos(pi l/nc) < 2,
    and whether every non-witness cleared the far side of the margin."""
    all_clear = True
    for l in range(1, ell):
        if math.gcd(l, ell) != 1:
            continue
        value = (
            math.cos(math.pi * l / na) + math.cos(math.pi * l / nb)
        ) ** 2 + 2 * math.cos(math.pi * l / nc)
        if value < 2 - margin:
            return l, all_clear
        if value <= 2 + margin:
            all_clear = False
    return None, all_clear


@dataclass(frozen=True)
class BoundReport:
    """Big-integer comparisons against the certificate-size bounds.

    Everything here is reported, never asserted: the absolute constant in
    the prime-search bound is effectively computable but unknown.
    """

    triple: tuple[int, int, int]
    ell: int
    d: int
    t: Optional[int] = None
    ell_bound: Optional[int] = None  # 2^(2t) * 3^(12t)
    ell_within_bound: Optional[bool] = None
    trace_degree: Optional[int] = None  # phi(ell)/2
    degree_bound: Optional[int] = None  # 2^(t-1) * 3^(6t)
    degree_within_bound: Optional[bool] = None
    field_size: Optional[int] = None
    field_within_ell10: Optional[bool] = None
    field_ratio_ell10: Optional[float] = None
    prime: Optional[int] = None
    linnik_ratio: Optional[float] = None


def bound_report(
    t_type: TriangleType,
    t: Optional[int] = None,
    rep: Optional[ReducedRepData] = None,
) -> BoundReport:
    ell = t_type.ell
    phi_half = euler_phi(ell) // 2
    kwargs: dict = {}
    if t is not None:
        ell_bound = 2 ** (2 * t) * 3 ** (12 * t)
        degree_bound = 2 ** (t - 1) * 3 ** (6 * t)
        kwargs.update(
            t=t,
            ell_bound=ell_bound,
            ell_within_bound=ell <= ell_bound,
            trace_degree=phi_half,
            degree_bound=degree_bound,
            degree_within_bound=phi_half <= degree_bound,
        )
    if rep is not None:
        size = rep.spec.order
        try:
            ratio = size / ell**10
        except OverflowError:
            ratio = 0.0
        kwargs.update(
            field_size=size,
            field_within_ell10=size < ell**10,
            field_ratio_ell10=ratio,
            prime=rep.p,
            linnik_ratio=rep.p / ell**5.18,
        )
        kwargs.setdefault("trace_degree", phi_half)
    return BoundReport(triple=t_type.triple, ell=ell, d=t_type.d, **kwargs)


def hyperbolic_triples(max_n: int) -> list[TriangleType]:
    """All sorted hyperbolic triples with entries in [2, max_n]."""
    out = []
    for a in range(2, max_n + 1):
        for b in range(a, max_n + 1):
            for c in range(b, max_n + 1):
                t = classify(a, b, c)
                if t.curvature == HYPERBOLIC:
                    out.append(t)
    return out
