"""Command-line front end.

Exit codes: 0 success/accept, 1 reject, 2 error.  Every subcommand takes
--json for a single machine-readable document; identical invocations
produce byte-identical output.  Certificates are written atomically
(temp file + rename).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from typing import Optional

from . import certificate as certmod
from .galois import euler_phi
from .intlinalg import abelianization, format_abelian, is_cyclic
from .presentation import format_presentation, fundamental_group
from .trianglerep import (
    HYPERBOLIC,
    bound_report,
    build_hyperbolic_rep,
    classify,
    cosine_norm,
    field_degree_report,
    hyperbolic_triples,
)
from .triangulation import orientation_check, parse_triangulation, validate


class CliError(RuntimeError):
    pass


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".lenscert-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(doc: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _load_triangulation(path: str):
    return parse_triangulation(_read(path))


def cmd_validate(args) -> int:
    tri = _load_triangulation(args.triangulation)
    report = validate(tri)
    doc = {
        "v": report.v,
        "e": report.e,
        "f": report.f,
        "t": report.t,
        "euler": report.euler,
        "vertex_link_eulers": list(report.vertex_link_eulers),
        "reversed_edges": report.reversed_edges,
        "passed": report.passed,
        "failures": list(report.failures),
    }
    lines = [
        f"v={report.v} e={report.e} f={report.f} t={report.t} euler={report.euler}",
        "links=" + ",".join(str(x) for x in report.vertex_link_eulers),
        f"passed={'yes' if report.passed else 'no'}",
    ]
    lines.extend(f"failure: {msg}" for msg in report.failures)
    _emit(doc, args.json, lines)
    return 0 if report.passed else 1


def cmd_orient(args) -> int:
    tri = _load_triangulation(args.triangulation)
    result = orientation_check(tri)
    if result.orientable:
        assert result.assignment is not None
        signs = "".join("+" if s > 0 else "-" for s in result.assignment)
        doc = {"orientable": True, "assignment": signs}
        lines = [f"orientable=yes assignment={signs}"]
    else:
        fp = result.witness
        assert fp is not None
        witness = (
            f"{fp.source[0]}:{fp.source[1]}->{fp.target[0]}:{fp.target[1]} perm={fp.perm}"
        )
        doc = {"orientable": False, "witness": witness}
        lines = [f"orientable=no witness={witness}"]
    _emit(doc, args.json, lines)
    return 0


def cmd_pi1(args) -> int:
    tri = _load_triangulation(args.triangulation)
    pres = fundamental_group(tri)
    block = format_presentation(pres)
    doc = {
        "generators": pres.g,
        "relators": len(pres.relators),
        "size": pres.size(),
        "presentation": block,
    }
    _emit(doc, args.json, block + [f"size={pres.size()}"])
    return 0


def cmd_homology(args) -> int:
    tri = _load_triangulation(args.triangulation)
    group = abelianization(fundamental_group(tri))
    text = format_abelian(group)
    doc = {
        "h1": text,
        "free_rank": group.free_rank,
        "torsion": list(group.torsion),
        "cyclic": is_cyclic(group),
    }
    _emit(doc, args.json, [f"h1={text} cyclic={'yes' if is_cyclic(group) else 'no'}"])
    return 0


def _cert_summary(cert, info: dict) -> tuple[dict, list[str]]:
    if cert.kind == certmod.NON_ABELIAN:
        orders = info.get("orders")
        parts = [f"p={info['p']}", f"field_deg={info['field_degree']}"]
        if orders:
            parts.append("orders=" + ",".join(str(n) for n in orders))
        parts.append("nonabelian=yes")
        line = " ".join(parts)
    else:
        a, b = info["target"]
        line = f"kind=NonCyclicAbelian target=Z/{a}xZ/{b}"
    doc = {"kind": cert.kind, **{k: v for k, v in info.items() if k != "triple"}}
    if "triple" in info:
        doc["triple"] = list(info["triple"])
    if "orders" in doc:
        doc["orders"] = list(doc["orders"])
    if "target" in doc:
        doc["target"] = list(doc["target"])
    return doc, [line]


def cmd_trianglecert(args) -> int:
    cert, info = certmod.triangle_certificate(args.n1, args.n2, args.n3, ceiling=args.ceiling)
    out = args.output or f"t_{args.n1}_{args.n2}_{args.n3}.cert"
    _write_atomic(out, certmod.serialize(cert))
    doc, lines = _cert_summary(cert, info)
    doc["output"] = out
    _emit(doc, args.json, lines)
    return 0


def cmd_verify(args) -> int:
    cert = certmod.parse(_read(args.certificate))
    report = certmod.verify(cert)
    doc = {
        "accepted": report.accepted,
        "kind": report.kind,
        "reason": report.reason,
        "mat_mults": report.relator_mat_mults,
        "total_mat_mults": report.mat_mults,
        "field_ops": report.field_ops,
        "cert_bits": report.cert_bits,
        "matrix_bits": list(report.matrix_bits),
    }
    line = (
        f"accepted={'yes' if report.accepted else 'no'} kind={report.kind} "
        f"mat_mults={report.relator_mat_mults} field_ops={report.field_ops} "
        f"cert_bits={report.cert_bits}"
    )
    lines = [line]
    if report.reason:
        lines.append(f"reason: {report.reason}")
    _emit(doc, args.json, lines)
    return 0 if report.accepted else 1


def cmd_pipeline(args) -> int:
    tri = _load_triangulation(args.triangulation)
    try:
        base = tuple(int(x) for x in args.base.split(","))
    except ValueError:
        raise CliError(f"bad --base value {args.base!r}; expected n1,n2,n3") from None
    if len(base) != 3:
        raise CliError("--base needs exactly three integers")
    surjection_text = _read(args.surjection) if args.surjection else None
    cert, info = certmod.pipeline(
        tri, base, surjection_text, ceiling=args.ceiling, level=args.level
    )
    out = args.output or "pipeline.cert"
    _write_atomic(out, certmod.serialize(cert))
    doc, lines = _cert_summary(cert, info)
    doc.update(output=out, step=info["step"], h1=info["h1"])
    lines.insert(0, f"step={info['step']} h1={info['h1']}")
    if info.get("level"):
        lines.append(f"level={info['level']}")
    _emit(doc, args.json, lines)
    return 0


def cmd_sweep(args) -> int:
    triples = hyperbolic_triples(args.max_n)
    built = verified = witnesses = failures = 0
    rows = []
    failure_rows = []
    for t in triples:
        row: dict = {
            "triple": list(t.triple),
            "ell": t.ell,
            "gcd": t.d,
        }
        try:
            cert, info = certmod.triangle_certificate(*t.triple, ceiling=args.ceiling)
            built += 1
            outcome = certmod.verify(cert)
            if outcome.accepted:
                verified += 1
            else:
                failures += 1
                failure_rows.append((t.triple, outcome.reason))
            row["kind"] = cert.kind
            if cert.kind == certmod.NON_ABELIAN:
                row["p"] = info["p"]
                row["field_deg"] = info["field_degree"]
            else:
                row["target"] = list(info["target"])
            scan = field_degree_report(t)
            row["witness_l"] = scan.witness_l
            row["trace_degree"] = scan.trace_degree
            if scan.witness_l is not None:
                witnesses += 1
        except Exception as exc:  # build failure: report, keep sweeping
            failures += 1
            row["error"] = str(exc)
            failure_rows.append((t.triple, str(exc)))
        rows.append(row)
    summary = (
        f"{len(triples)} triples, {built} built, {verified} verified, {failures} failures"
    )
    doc = {
        "max_n": args.max_n,
        "triples": len(triples),
        "built": built,
        "verified": verified,
        "embedding_witnesses": witnesses,
        "failures": failures,
        "rows": rows,
        "summary": summary,
    }
    lines = []
    if args.verbose:
        for row in rows:
            triple = ",".join(str(x) for x in row["triple"])
            detail = f"p={row['p']} deg={row['field_deg']}" if "p" in row else (
                f"target={row.get('target')}" if "target" in row else f"error={row.get('error')}"
            )
            lines.append(
                f"({triple}) ell={row['ell']} gcd={row['gcd']} {detail} "
                f"witness_l={row.get('witness_l')}"
            )
    lines.append(f"embedding witnesses found: {witnesses}/{len(triples)}")
    lines.append(summary)
    _emit(doc, args.json, lines)
    return 0 if failures == 0 else 1


def cmd_degree_report(args) -> int:
    t = classify(args.n1, args.n2, args.n3)
    if t.curvature != HYPERBOLIC:
        raise CliError(f"triple {t.triple} is {t.curvature}; the scan needs hyperbolic")
    scan = field_degree_report(t)
    doc = {
        "triple": list(t.triple),
        "ell": t.ell,
        "trace_degree": scan.trace_degree,
        "candidate_degrees": list(scan.candidate_degrees),
        "witness_l": scan.witness_l,
        "verdict": scan.verdict,
        "variant_disagrees": scan.variant_disagrees,
        "phi_ell": euler_phi(t.ell),
    }
    lines = [
        f"triple=({args.n1},{args.n2},{args.n3}) ell={t.ell} phi={euler_phi(t.ell)}",
        f"trace_degree={scan.trace_degree} candidates={scan.candidate_degrees}",
        f"witness_l={scan.witness_l} verdict={scan.verdict} "
        f"variant_disagrees={'yes' if scan.variant_disagrees else 'no'}",
    ]
    _emit(doc, args.json, lines)
    return 0


def cmd_norms(args) -> int:
    rows = []
    lines = []
    max_err = 0.0
    for n in range(3, args.max_n + 1):
        plain = cosine_norm(n, "plain")
        minus = cosine_norm(n, "minus_two")
        err = max(
            abs(_float_norm(n, 0.0) - plain),
            abs(_float_norm(n, 2.0) - minus),
        )
        max_err = max(max_err, err)
        rows.append({"n": n, "plain": plain, "minus_two": minus, "float_err": err})
        if args.verbose:
            lines.append(f"n={n} plain={plain} minus_two={minus} float_err={err:.3g}")
    lines.append(f"checked n=3..{args.max_n}, max float deviation {max_err:.3g}")
    doc = {"max_n": args.max_n, "rows": rows, "max_float_err": max_err}
    _emit(doc, args.json, lines)
    return 0


def _float_norm(n: int, shift: float) -> float:
    out = 1.0
    for l in range(1, 2 * n):
        if math.gcd(l, 2 * n) == 1:
            out *= abs(2 * math.cos(2 * math.pi * l / (2 * n)) - shift)
    return out


def _bound_doc(args) -> int:
    t = classify(args.n1, args.n2, args.n3)
    rep = None
    if t.curvature == HYPERBOLIC and t.d == 1:
        rep = build_hyperbolic_rep(t, ceiling=args.ceiling)
    report = bound_report(t, t=args.tetrahedra, rep=rep)
    doc = {k: v for k, v in report.__dict__.items()}
    doc["triple"] = list(doc["triple"])
    lines = [f"{k}={v}" for k, v in doc.items()]
    _emit(doc, args.json, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lenscert",
        description="Certificates distinguishing Seifert fiber spaces from lens spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", help="emit one JSON document")
        return p

    p = add("validate", cmd_validate, help="closed-3-manifold checks on a triangulation")
    p.add_argument("triangulation")

    p = add("orient", cmd_orient, help="orientability by spanning-tree sign propagation")
    p.add_argument("triangulation")

    p = add("pi1", cmd_pi1, help="fundamental group presentation")
    p.add_argument("triangulation")

    p = add("homology", cmd_homology, help="first homology via Smith normal form")
    p.add_argument("triangulation")

    p = add("trianglecert", cmd_trianglecert, help="certificate for a triangle group")
    p.add_argument("n1", type=int)
    p.add_argument("n2", type=int)
    p.add_argument("n3", type=int)
    p.add_argument("-o", "--output")
    p.add_argument("--ceiling", type=int, default=10**9, help="prime search ceiling")

    p = add("verify", cmd_verify, help="verify a certificate file")
    p.add_argument("certificate")

    p = add("pipeline", cmd_pipeline, help="homology check, then triangle-group certificate")
    p.add_argument("triangulation")
    p.add_argument("--base", required=True, help="base orbifold cone orders n1,n2,n3")
    p.add_argument("--surjection", help="file mapping presentation generators to words in x,y")
    p.add_argument(
        "--level",
        choices=("auto", "orbifold", "triangulation"),
        default="auto",
        help="demand a certificate tier; triangulation needs --surjection",
    )
    p.add_argument("-o", "--output")
    p.add_argument("--ceiling", type=int, default=10**9)

    p = add("sweep", cmd_sweep, help="build and verify all hyperbolic triples up to a bound")
    p.add_argument("--max-n", type=int, default=19)
    p.add_argument("--ceiling", type=int, default=10**9)
    p.add_argument("--verbose", action="store_true", help="one line per triple")

    p = add("degree-report", cmd_degree_report, help="trace-field degree and embedding scan")
    p.add_argument("n1", type=int)
    p.add_argument("n2", type=int)
    p.add_argument("n3", type=int)

    p = add("norms", cmd_norms, help="cosine norm closed forms vs float products")
    p.add_argument("--max-n", type=int, default=200)
    p.add_argument("--verbose", action="store_true")

    p = add("bounds", _bound_doc, help="certificate-size bound report for a triple")
    p.add_argument("n1", type=int)
    p.add_argument("n2", type=int)
    p.add_argument("n3", type=int)
    p.add_argument("-t", "--tetrahedra", type=int)
    p.add_argument("--ceiling", type=int, default=10**9)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (CliError, ValueError, RuntimeError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
