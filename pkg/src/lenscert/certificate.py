"""Serialize, parse and verify "not a lens space" certificates.

Two kinds of witness exist: a surjection onto a non-cyclic abelian group
Z/a x Z/b, or a non-abelian image in PSL(2, F).  Verification is
polynomial with exact operation tallies; a malformed file is an error
while a well-formed but false certificate is a rejection.  The text form
is canonical: serialize(parse(serialize(c))) is byte-identical.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Optional

from .galois import FieldSpec, parse_field_element
from .intlinalg import IntMatrix, smith_normal_form
from .presentation import (
    GroupPresentation,
    Word,
    format_presentation,
    format_word,
    parse_word,
)
from .projmat import OpCounter, ProjMatrix, bit_size, evaluate_word
from .trianglerep import (
    build_hyperbolic_rep,
    build_nonhyperbolic_cert,
    classify,
    triangle_presentation,
)

NON_ABELIAN = "NonAbelianRep"
NON_CYCLIC = "NonCyclicAbelian"

HEADER = "lenscert v1"


class CertificateSyntaxError(ValueError):
    """Malformed certificate text (distinct from a verification rejection)."""


class PipelineError(RuntimeError):
    """The certificate producer cannot proceed on this input."""


@dataclass(frozen=True)
class Certificate:
    kind: str
    presentation: GroupPresentation
    level: Optional[str] = None
    # NonCyclicAbelian
    target: Optional[tuple[int, int]] = None
    abelian_images: Optional[tuple[tuple[int, int], ...]] = None
    # NonAbelianRep
    field: Optional[FieldSpec] = None
    rep_gens: Optional[tuple[str, ...]] = None
    rep_images: Optional[tuple[ProjMatrix, ...]] = None
    surjection: Optional[tuple[Word, ...]] = None  # per presentation generator
    witness: Optional[tuple[Word, Word]] = None  # words over presentation gens

    def __post_init__(self) -> None:
        pres = self.presentation
        for w in pres.relators:
            if not w.is_reduced():
                raise CertificateSyntaxError("relator word is not freely reduced")
        if self.kind == NON_CYCLIC:
            if self.target is None or self.abelian_images is None:
                raise CertificateSyntaxError("abelian certificate needs target and images")
            if self.field or self.rep_gens or self.rep_images or self.surjection or self.witness:
                raise CertificateSyntaxError("abelian certificate with representation fields")
            a, b = self.target
            if a <= 1 or b <= 1:
                raise CertificateSyntaxError("abelian target moduli must exceed 1")
            if len(self.abelian_images) != pres.g:
                raise CertificateSyntaxError("need one abelian image per generator")
            object.__setattr__(
                self,
                "abelian_images",
                tuple((u % a, v % b) for u, v in self.abelian_images),
            )
        elif self.kind == NON_ABELIAN:
            if self.field is None or self.rep_gens is None or self.rep_images is None:
                raise CertificateSyntaxError("representation certificate needs field and images")
            if self.witness is None:
                raise CertificateSyntaxError("representation certificate needs a witness pair")
            if self.target is not None or self.abelian_images is not None:
                raise CertificateSyntaxError("representation certificate with abelian fields")
            if len(self.rep_gens) != len(self.rep_images):
                raise CertificateSyntaxError("matrix count does not match matrix generators")
            if len(set(self.rep_gens)) != len(self.rep_gens):
                raise CertificateSyntaxError("duplicate matrix generator names")
            for m in self.rep_images:
                if m.spec != self.field:
                    raise CertificateSyntaxError("matrix over the wrong field")
            if self.surjection is None:
                if self.rep_gens != pres.labels:
                    raise CertificateSyntaxError(
                        "without a surjection the matrices must be indexed by the "
                        "presentation generators"
                    )
            else:
                if len(self.surjection) != pres.g:
                    raise CertificateSyntaxError("need one surjection word per generator")
                for w in self.surjection:
                    if not w.is_reduced():
                        raise CertificateSyntaxError("surjection word is not freely reduced")
                    if w.max_generator() >= len(self.rep_gens):
                        raise CertificateSyntaxError("surjection word uses unknown generator")
            for w in self.witness:
                if not w.is_reduced():
                    raise CertificateSyntaxError("witness word is not freely reduced")
                if w.max_generator() >= pres.g:
                    raise CertificateSyntaxError("witness word uses unknown generator")
        else:
            raise CertificateSyntaxError(f"unknown certificate kind {self.kind!r}")


def serialize(cert: Certificate) -> str:
    lines = [HEADER, f"kind {cert.kind}"]
    if cert.level:
        lines.append(f"level {cert.level}")
    lines.extend(format_presentation(cert.presentation))
    labels = cert.presentation.labels
    if cert.kind == NON_CYCLIC:
        a, b = cert.target  # type: ignore[misc]
        lines.append(f"target Z/{a} x Z/{b}")
        for lab, (u, v) in zip(labels, cert.abelian_images):  # type: ignore[arg-type]
            lines.append(f"gen {lab} = ({u},{v})")
    else:
        spec = cert.field
        assert spec is not None
        field_line = f"field p={spec.p} deg={spec.degree}"
        if spec.degree == 2:
            field_line += f" s={spec.s}"
        lines.append(field_line)
        for name, m in zip(cert.rep_gens, cert.rep_images):  # type: ignore[arg-type]
            lines.append(f"gen {name} = {m}")
        if cert.surjection is not None:
            lines.append("surjection")
            for lab, w in zip(labels, cert.surjection):
                lines.append(f"gen {lab} -> {format_word(w, cert.rep_gens)}")
        w1, w2 = cert.witness  # type: ignore[misc]
        lines.append(
            f"witness {format_word(w1, labels)} | {format_word(w2, labels)}"
        )
    return "\n".join(lines) + "\n"


_MATRIX_RE = re.compile(
    r"^gen\s+(\w+)\s*=\s*\[\[([^\],]+),([^\],]+)\],\[([^\],]+),([^\],]+)\]\]$"
)
_ABELIAN_RE = re.compile(r"^gen\s+(\w+)\s*=\s*\((-?\d+),(-?\d+)\)$")
_TARGET_RE = re.compile(r"^target\s+Z/(\d+)\s*x\s*Z/(\d+)$")
_FIELD_RE = re.compile(r"^field\s+p=(\d+)\s+deg=(\d+)(?:\s+s=(\d+))?$")
_SURJ_RE = re.compile(r"^gen\s+(\w+)\s*->\s*(.*)$")


class _Reader:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    def peek(self) -> Optional[str]:
        pos = self.pos
        while pos < len(self.lines):
            stripped = self.lines[pos].strip()
            if stripped and not stripped.startswith("#"):
                return stripped
            pos += 1
        return None

    def next(self) -> str:
        while self.pos < len(self.lines):
            line = self.lines[self.pos]
            self.pos += 1
            stripped = line.strip()
            if stripped and not stripped.startswith("#"):
                return stripped
        raise CertificateSyntaxError(f"line {self.pos + 1}: unexpected end of file")

    def next_raw(self) -> str:
        if self.pos >= len(self.lines):
            raise CertificateSyntaxError(f"line {self.pos + 1}: unexpected end of file")
        line = self.lines[self.pos]
        self.pos += 1
        return line.strip()

    def error(self, message: str) -> CertificateSyntaxError:
        return CertificateSyntaxError(f"line {self.pos}: {message}")


def _parse_reduced_word(reader: _Reader, text: str, labels: tuple[str, ...]) -> Word:
    try:
        word = parse_word(text, labels)
    except ValueError as exc:
        raise reader.error(str(exc)) from None
    if not word.is_reduced():
        raise reader.error(f"word {text!r} is not freely reduced")
    return word


def parse(text: str) -> Certificate:
    reader = _Reader(text)
    if reader.next() != HEADER:
        raise reader.error(f"expected header {HEADER!r}")
    line = reader.next()
    if not line.startswith("kind "):
        raise reader.error("expected 'kind <NonCyclicAbelian|NonAbelianRep>'")
    kind = line[5:].strip()

    level = None
    line = reader.next()
    if line.startswith("level "):
        level = line[6:].strip()
        line = reader.next()

    if not line.startswith("gens "):
        raise reader.error("expected 'gens <g> <labels...>'")
    parts = line.split()
    try:
        g = int(parts[1])
    except (IndexError, ValueError):
        raise reader.error("bad generator count") from None
    labels = tuple(parts[2:])
    if not labels:
        labels = tuple(f"x{i}" for i in range(g))
    if len(labels) != g:
        raise reader.error("label count does not match generator count")

    line = reader.next()
    if not line.startswith("rels "):
        raise reader.error("expected 'rels <r>'")
    try:
        r = int(line.split()[1])
    except (IndexError, ValueError):
        raise reader.error("bad relator count") from None
    relators = tuple(
        _parse_reduced_word(reader, reader.next_raw(), labels) for _ in range(r)
    )
    try:
        pres = GroupPresentation(g=g, relators=relators, labels=labels)
    except ValueError as exc:
        raise reader.error(str(exc)) from None

    try:
        if kind == NON_CYCLIC:
            return _parse_abelian(reader, pres, level)
        if kind == NON_ABELIAN:
            return _parse_rep(reader, pres, level)
    except (ValueError, CertificateSyntaxError) as exc:
        if isinstance(exc, CertificateSyntaxError):
            raise
        raise reader.error(str(exc)) from None
    raise reader.error(f"unknown certificate kind {kind!r}")


def _parse_abelian(reader: _Reader, pres: GroupPresentation, level: Optional[str]) -> Certificate:
    m = _TARGET_RE.match(reader.next())
    if not m:
        raise reader.error("expected 'target Z/<a> x Z/<b>'")
    a, b = int(m.group(1)), int(m.group(2))
    images: dict[str, tuple[int, int]] = {}
    for _ in range(pres.g):
        gm = _ABELIAN_RE.match(reader.next())
        if not gm:
            raise reader.error("expected 'gen <name> = (<u>,<v>)'")
        images[gm.group(1)] = (int(gm.group(2)), int(gm.group(3)))
    if set(images) != set(pres.labels):
        raise reader.error("abelian images do not cover the generators")
    if reader.peek() is not None:
        raise reader.error(f"unexpected trailing line {reader.peek()!r}")
    return Certificate(
        kind=NON_CYCLIC,
        presentation=pres,
        level=level,
        target=(a, b),
        abelian_images=tuple(images[lab] for lab in pres.labels),
    )


def _parse_rep(reader: _Reader, pres: GroupPresentation, level: Optional[str]) -> Certificate:
    m = _FIELD_RE.match(reader.next())
    if not m:
        raise reader.error("expected 'field p=<p> deg=<d> [s=<s>]'")
    p, deg = int(m.group(1)), int(m.group(2))
    s = int(m.group(3)) if m.group(3) else None
    try:
        spec = FieldSpec(p, deg, s)
    except ValueError as exc:
        raise reader.error(str(exc)) from None

    rep_gens: list[str] = []
    rep_images: list[ProjMatrix] = []
    while True:
        line = reader.peek()
        if line is None or not _MATRIX_RE.match(line):
            break
        gm = _MATRIX_RE.match(reader.next())
        assert gm is not None
        try:
            entries = [parse_field_element(gm.group(k), spec) for k in range(2, 6)]
            matrix = ProjMatrix(*entries)
        except (ValueError, ZeroDivisionError) as exc:
            raise reader.error(str(exc)) from None
        rep_gens.append(gm.group(1))
        rep_images.append(matrix)
    if not rep_images:
        raise reader.error("expected at least one 'gen <name> = [[..],[..]]' line")

    surjection = None
    line = reader.peek()
    if line == "surjection":
        reader.next()
        words: dict[str, Word] = {}
        for _ in range(pres.g):
            sm = _SURJ_RE.match(reader.next())
            if not sm:
                raise reader.error("expected 'gen <name> -> <word>'")
            words[sm.group(1)] = _parse_reduced_word(reader, sm.group(2), tuple(rep_gens))
        if set(words) != set(pres.labels):
            raise reader.error("surjection does not cover the generators")
        surjection = tuple(words[lab] for lab in pres.labels)

    line = reader.next()
    if not line.startswith("witness "):
        raise reader.error("expected 'witness <word1> | <word2>'")
    body = line[len("witness "):]
    if "|" not in body:
        raise reader.error("witness needs two words separated by '|'")
    left, right = body.split("|", 1)
    witness = (
        _parse_reduced_word(reader, left.strip(), pres.labels),
        _parse_reduced_word(reader, right.strip(), pres.labels),
    )
    if reader.peek() is not None:
        raise reader.error(f"unexpected trailing line {reader.peek()!r}")
    return Certificate(
        kind=NON_ABELIAN,
        presentation=pres,
        level=level,
        field=spec,
        rep_gens=tuple(rep_gens),
        rep_images=tuple(rep_images),
        surjection=surjection,
        witness=witness,
    )


@dataclass(frozen=True)
class VerificationReport:
    accepted: bool
    kind: str
    reason: Optional[str]
    relator_mat_mults: int
    mat_mults: int
    field_ops: int
    cert_bits: int
    matrix_bits: tuple[int, ...]


def _push(cert: Certificate, word: Word) -> Word:
    if cert.surjection is None:
        return word
    letters: list[tuple[int, int]] = []
    for gen, exp in word.letters:
        image = cert.surjection[gen]
        letters.extend((image if exp == 1 else image.inverse()).letters)
    return Word(tuple(letters))


def subgroup_invariants(
    a: int, b: int, images: tuple[tuple[int, int], ...]
) -> tuple[int, int]:
    """Invariant factors (s1 | s2) of the subgroup of Z/a x Z/b generated
    by the images, via two Smith normal forms of small integer lattices."""
    rows = [list(img) for img in images] + [[a, 0], [0, b]]
    snf = smith_normal_form(IntMatrix(rows, cols=2), want_transforms=True)
    d1, d2 = snf.diag[0], snf.diag[1]
    v = snf.v
    assert v is not None
    det_v = v.det()
    # inverse of the unimodular 2x2 V
    vinv = [
        [det_v * v[1, 1], -det_v * v[0, 1]],
        [-det_v * v[1, 0], det_v * v[0, 0]],
    ]
    # rows of C are a basis for the lattice spanned by images and (a,0),(0,b)
    c = [[d1 * vinv[0][0], d1 * vinv[0][1]], [d2 * vinv[1][0], d2 * vinv[1][1]]]
    det_c = c[0][0] * c[1][1] - c[0][1] * c[1][0]
    adj = [[c[1][1], -c[0][1]], [-c[1][0], c[0][0]]]
    w = [[a * adj[0][0], a * adj[0][1]], [b * adj[1][0], b * adj[1][1]]]
    for i in range(2):
        for j in range(2):
            if w[i][j] % det_c != 0:
                raise ArithmeticError("subgroup lattice is not contained in its span")
            w[i][j] //= det_c
    inner = smith_normal_form(IntMatrix(w))
    return inner.diag[0], inner.diag[1]


def verify(cert: Certificate) -> VerificationReport:
    """Check a certificate; accept iff every check passes.

    Representation path: every relator (pushed through the surjection if
    present) evaluates to the identity, some generator image is
    non-trivial, and the witness words have distinct images.  Abelian
    path: relator exponent images vanish in Z/a x Z/b and the generator
    images span a non-cyclic subgroup.
    """
    counter = OpCounter()
    cert_bits = 8 * len(serialize(cert).encode())
    matrix_bits = tuple(bit_size(m) for m in cert.rep_images) if cert.rep_images else ()

    def report(accepted: bool, reason: Optional[str], relator_mults: int) -> VerificationReport:
        return VerificationReport(
            accepted=accepted,
            kind=cert.kind,
            reason=reason,
            relator_mat_mults=relator_mults,
            mat_mults=counter.mat_mults,
            field_ops=counter.field_ops,
            cert_bits=cert_bits,
            matrix_bits=matrix_bits,
        )

    pres = cert.presentation
    if cert.kind == NON_ABELIAN:
        images = list(cert.rep_images)  # type: ignore[arg-type]
        relator_mults = 0
        for k, rel in enumerate(pres.relators):
            pushed = _push(cert, rel)
            before = counter.mat_mults
            value = evaluate_word(images, pushed, counter)
            relator_mults += counter.mat_mults - before
            if not value.is_identity():
                return report(False, f"relator {k} does not map to the identity", relator_mults)
        gen_images = [
            evaluate_word(images, _push(cert, Word(((i, 1),))), counter)
            for i in range(pres.g)
        ]
        if all(m.is_identity() for m in gen_images):
            return report(False, "every generator maps to the identity", relator_mults)
        w1, w2 = cert.witness  # type: ignore[misc]
        m1 = evaluate_word(images, _push(cert, w1), counter)
        m2 = evaluate_word(images, _push(cert, w2), counter)
        if m1 == m2:
            return report(False, "witness words have equal images", relator_mults)
        return report(True, None, relator_mults)

    # NonCyclicAbelian
    a, b = cert.target  # type: ignore[misc]
    images_ab = cert.abelian_images
    assert images_ab is not None
    for k, rel in enumerate(pres.relators):
        sums = rel.exponent_sums(pres.g)
        u = v = 0
        for i, e in enumerate(sums):
            if e:
                u += e * images_ab[i][0]
                v += e * images_ab[i][1]
                counter.field_ops += 4
        if u % a or v % b:
            return report(False, f"relator {k} image is nonzero in the target", 0)
    s1, _s2 = subgroup_invariants(a, b, images_ab)
    if s1 <= 1:
        return report(False, "generator images span a cyclic subgroup", 0)
    return report(True, None, 0)


def make_abelian_certificate(
    pres: GroupPresentation,
    target: tuple[int, int],
    images: tuple[tuple[int, int], ...],
    level: Optional[str] = None,
) -> Certificate:
    return Certificate(
        kind=NON_CYCLIC,
        presentation=pres,
        level=level,
        target=target,
        abelian_images=images,
    )


def noncyclic_certificate(pres: GroupPresentation, level: Optional[str] = None) -> Certificate:
    """Build the homology certificate from the Smith normal form.

    Generator k has coordinates given by row k of the column transform V;
    two coordinates whose moduli share a factor give a surjection onto a
    non-cyclic Z/a x Z/b.  Raises if the abelianization is cyclic.
    """
    a_matrix = IntMatrix(pres.exponent_rows(), cols=pres.g)
    snf = smith_normal_form(a_matrix, want_transforms=True)
    v = snf.v
    assert v is not None
    diag, rank = snf.diag, snf.rank
    torsion_idx = [i for i in range(rank) if diag[i] > 1]
    free_idx = list(range(rank, pres.g))
    if len(torsion_idx) >= 2:
        i1, i2 = torsion_idx[-2], torsion_idx[-1]
        a, b = diag[i1], diag[i2]
    elif torsion_idx and free_idx:
        i1, i2 = torsion_idx[-1], free_idx[0]
        a = b = diag[i1]
    elif len(free_idx) >= 2:
        i1, i2 = free_idx[0], free_idx[1]
        a = b = 2
    else:
        raise ValueError("abelianization is cyclic; no non-cyclic abelian certificate")
    images = tuple((v[k, i1] % a, v[k, i2] % b) for k in range(pres.g))
    cert = make_abelian_certificate(pres, (a, b), images, level=level)
    outcome = verify(cert)
    if not outcome.accepted:
        raise ArithmeticError(f"built abelian certificate fails: {outcome.reason}")
    return cert


_XY_WITNESS = (Word(((0, 1), (1, 1))), Word(((1, 1), (0, 1))))


def triangle_certificate(
    n1: int, n2: int, n3: int, ceiling: int = 10**9
) -> tuple[Certificate, dict]:
    """Certificate for the triangle group itself, plus build metadata."""
    t = classify(n1, n2, n3)
    pres = triangle_presentation(t)
    info: dict = {"triple": t.triple, "ell": t.ell, "gcd": t.d, "curvature": t.curvature}
    if t.curvature == "hyperbolic" and t.d == 1:
        rep = build_hyperbolic_rep(t, ceiling)
        cert = Certificate(
            kind=NON_ABELIAN,
            presentation=pres,
            field=rep.spec,
            rep_gens=("x", "y"),
            rep_images=(rep.x_image, rep.y_image),
            witness=_XY_WITNESS,
        )
        info.update(
            kind=NON_ABELIAN,
            p=rep.p,
            field_degree=rep.spec.degree,
            field_size=rep.spec.order,
            orders=t.triple,
        )
    else:
        data = build_nonhyperbolic_cert(t)
        if data.kind == "abelian":
            assert data.d is not None
            cert = make_abelian_certificate(
                pres, (data.d, data.d), ((1, 0), (0, 1))
            )
            info.update(kind=NON_CYCLIC, target=(data.d, data.d))
        else:
            assert data.spec is not None
            cert = Certificate(
                kind=NON_ABELIAN,
                presentation=pres,
                field=data.spec,
                rep_gens=("x", "y"),
                rep_images=(data.x_image, data.y_image),
                witness=_XY_WITNESS,
            )
            info.update(
                kind=NON_ABELIAN,
                p=data.spec.p,
                field_degree=data.spec.degree,
                field_size=data.spec.order,
            )
    outcome = verify(cert)
    if not outcome.accepted:
        raise ArithmeticError(f"built certificate fails verification: {outcome.reason}")
    return cert, info


def parse_surjection(
    text: str, pres_labels: tuple[str, ...], rep_labels: tuple[str, ...] = ("x", "y")
) -> tuple[Word, ...]:
    """Read 'gen <name> -> <word in x,y>' lines; every generator must appear."""
    words: dict[str, Word] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line or line == "surjection":
            continue
        m = _SURJ_RE.match(line)
        if not m:
            raise CertificateSyntaxError(f"line {lineno}: expected 'gen <name> -> <word>'")
        name = m.group(1)
        if name not in pres_labels:
            raise CertificateSyntaxError(f"line {lineno}: unknown generator {name!r}")
        if name in words:
            raise CertificateSyntaxError(f"line {lineno}: generator {name!r} mapped twice")
        try:
            word = parse_word(m.group(2), rep_labels)
        except ValueError as exc:
            raise CertificateSyntaxError(f"line {lineno}: {exc}") from None
        if not word.is_reduced():
            raise CertificateSyntaxError(f"line {lineno}: word is not freely reduced")
        words[name] = word
    missing = [lab for lab in pres_labels if lab not in words]
    if missing:
        raise CertificateSyntaxError(f"surjection misses generators: {', '.join(missing)}")
    return tuple(words[lab] for lab in pres_labels)


def pipeline(
    tri,
    base: tuple[int, int, int],
    surjection_text: Optional[str] = None,
    ceiling: int = 10**9,
    level: str = "auto",
) -> tuple[Certificate, dict]:
    """Produce a certificate for a triangulated Seifert fiber space.

    Step 1 computes homology from the triangulation's own presentation
    and emits a non-cyclic abelian certificate when possible.  Step 2
    dispatches on the caller-asserted base orbifold triple: the triangle
    group gets its representation, pushed through the user-supplied
    surjection onto the triangulation's presentation when one is given,
    and marked orbifold-level otherwise.  Passing level="triangulation"
    makes the missing-surjection case an error instead of a downgrade.
    """
    if level not in ("auto", "orbifold", "triangulation"):
        raise ValueError(f"unknown level {level!r}")
    if level == "triangulation" and surjection_text is None:
        raise PipelineError(
            "a triangulation-level certificate needs a surjection file "
            "mapping the presentation generators into the triangle group"
        )
    from .intlinalg import abelianization, format_abelian, is_cyclic
    from .presentation import fundamental_group
    from .triangulation import orientation_check, validate

    report = validate(tri)
    if not report.passed:
        raise PipelineError(
            "triangulation is not a closed 3-manifold: " + "; ".join(report.failures)
        )
    orient = orientation_check(tri)
    if not orient.orientable:
        raise PipelineError("triangulation is non-orientable (already not a lens space)")

    pres = fundamental_group(tri)
    h1 = abelianization(pres)
    info: dict = {"h1": format_abelian(h1), "t": tri.t}
    if not is_cyclic(h1):
        cert = noncyclic_certificate(pres)
        info.update(step=1, kind=NON_CYCLIC, target=cert.target)
        return cert, info

    t_type = classify(*base)
    info.update(step=2, triple=t_type.triple, curvature=t_type.curvature)
    if t_type.curvature == "hyperbolic" and t_type.d == 1:
        rep = build_hyperbolic_rep(t_type, ceiling)
        spec, x_img, y_img = rep.spec, rep.x_image, rep.y_image
        info.update(p=rep.p, field_degree=spec.degree, orders=t_type.triple)
        rep_data = None
    else:
        data = build_nonhyperbolic_cert(t_type)
        rep_data = data
        if data.kind == "rep":
            spec, x_img, y_img = data.spec, data.x_image, data.y_image
            info.update(p=spec.p, field_degree=spec.degree)
        else:
            spec = x_img = y_img = None

    if surjection_text is not None:
        surj = parse_surjection(surjection_text, pres.labels)
        if spec is None:
            # abelian target: push exponent sums through the surjection
            assert rep_data is not None and rep_data.d is not None
            d = rep_data.d
            images = tuple(
                (w.exponent_sums(2)[0] % d, w.exponent_sums(2)[1] % d) for w in surj
            )
            cert = make_abelian_certificate(pres, (d, d), images)
            outcome = verify(cert)
            if not outcome.accepted:
                raise PipelineError(f"surjection gives no valid certificate: {outcome.reason}")
            info.update(kind=NON_CYCLIC, target=(d, d), level="triangulation")
            return cert, info
        images = [evaluate_word([x_img, y_img], w) for w in surj]
        witness = None
        for i in range(pres.g):
            for j in range(i + 1, pres.g):
                if images[i].mul(images[j]) != images[j].mul(images[i]):
                    witness = (Word(((i, 1), (j, 1))), Word(((j, 1), (i, 1))))
                    break
            if witness:
                break
        if witness is None:
            raise PipelineError(
                "pushed generator images all commute; surjection does not "
                "carry a non-abelian image"
            )
        cert = Certificate(
            kind=NON_ABELIAN,
            presentation=pres,
            field=spec,
            rep_gens=("x", "y"),
            rep_images=(x_img, y_img),
            surjection=surj,
            witness=witness,
        )
        outcome = verify(cert)
        if not outcome.accepted:
            raise PipelineError(f"surjection kills no relators: {outcome.reason}")
        info.update(kind=NON_ABELIAN, level="triangulation")
        return cert, info

    # Orbifold-level: certificate about the triangle group itself.
    cert, tri_info = triangle_certificate(*base, ceiling=ceiling)
    cert = replace(cert, level="orbifold")
    outcome = verify(cert)
    if not outcome.accepted:
        raise ArithmeticError(f"orbifold certificate fails: {outcome.reason}")
    info.update(kind=cert.kind, level="orbifold", **{
        k: v for k, v in tri_info.items() if k in ("p", "field_degree", "target", "orders")
    })
    return cert, info
