"""Command line interface.

Pairs are read from JSON documents::

    {"ring": {"kind": "zmod", "p": 2, "n": 3},
     "B": [3, 1],
     "A": [[2, 1]],
     "m": 2}

Coordinates are integers (or decimal strings) for ``zmod`` and
little-endian coefficient arrays for ``truncpoly``.  Exit status is 0 on
success, 1 when a verification fails and 2 for bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import posetrep as pr
from .functor import apply_F, classify_s2, iso_witness
from .homs import hom_basis, ideal_N, identity, quotient_dim_mod_N
from .module import LambdaModule
from .oracle import CapExceeded, check_cap, is_isomorphic_bruteforce, verify_census
from .pairs import Pair, labels_s2
from .ring import RingKind, RingSpec, is_prime

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


# -- documents ------------------------------------------------------------------


def _int(value, where: str) -> int:
    if isinstance(value, bool):
        raise InputError(f"{where}: expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip(), 10)
        except ValueError:
            pass
    raise InputError(f"{where}: expected an integer, got {value!r}")


def parse_ring(doc: Any) -> RingSpec:
    if not isinstance(doc, dict):
        raise InputError("ring: expected an object with kind, p and n")
    kind = doc.get("kind", "zmod")
    if kind not in ("zmod", "truncpoly"):
        raise InputError(f"ring.kind: expected 'zmod' or 'truncpoly', got {kind!r}")
    if "p" not in doc or "n" not in doc:
        raise InputError("ring: missing p or n")
    p = _int(doc["p"], "ring.p")
    n = _int(doc["n"], "ring.n")
    if not is_prime(p):
        raise InputError(f"ring.p: {p} is not prime")
    if n < 1:
        raise InputError(f"ring.n: {n} must be at least 1")
    return RingSpec(RingKind(kind), p, n)


def _coordinate(spec: RingSpec, value, lam: int, where: str) -> int:
    p = spec.p
    if spec.kind is RingKind.ZMOD:
        return _int(value, where) % p**lam
    if not isinstance(value, list):
        raise InputError(f"{where}: truncpoly coordinates are coefficient arrays, got {value!r}")
    out = 0
    for k, c in enumerate(value):
        c = _int(c, f"{where}[{k}]")
        if not 0 <= c < p:
            raise InputError(f"{where}[{k}]: coefficient {c} is not in [0, {p})")
        if k < lam:
            out += c * p**k
    return out


def parse_pair(doc: Any) -> Pair:
    if not isinstance(doc, dict):
        raise InputError("document: expected a JSON object")
    for key in ("ring", "B"):
        if key not in doc:
            raise InputError(f"document: missing field {key!r}")
    spec = parse_ring(doc["ring"])
    if not isinstance(doc["B"], list):
        raise InputError("B: expected a list of exponents")
    lam = [_int(x, f"B[{i}]") for i, x in enumerate(doc["B"])]
    for i, x in enumerate(lam):
        if not 1 <= x <= spec.n:
            raise InputError(f"B[{i}]: exponent {x} outside [1, {spec.n}]")
    order = sorted(range(len(lam)), key=lambda i: -lam[i])
    if order != list(range(len(lam))):
        raise InputError("B: exponents must be listed in weakly decreasing order")
    B = LambdaModule(spec, tuple(lam))
    gens = doc.get("A", [])
    if not isinstance(gens, list):
        raise InputError("A: expected a list of generators")
    rows = []
    for k, g in enumerate(gens):
        if not isinstance(g, list) or len(g) != len(lam):
            raise InputError(f"A[{k}]: expected {len(lam)} coordinates")
        rows.append(tuple(_coordinate(spec, c, lam[i], f"A[{k}][{i}]") for i, c in enumerate(g)))
    m = _int(doc.get("m", 2), "m")
    if m < 0:
        raise InputError(f"m: {m} is negative")
    A = B.submodule(rows)
    if not A.scalar_image(m).is_zero():
        raise InputError(f"A: p^{m} A != 0")
    return Pair(B, A, m)


def coords_json(spec: RingSpec, coords, partition) -> list:
    if spec.kind is RingKind.ZMOD:
        return [int(c) for c in coords]
    out = []
    for c, lam in zip(coords, partition):
        out.append([(c // spec.p**k) % spec.p for k in range(lam)])
    return out


def pair_json(x: Pair) -> dict:
    spec = x.spec
    return {
        "ring": {"kind": spec.kind.value, "p": spec.p, "n": spec.n},
        "B": list(x.B.partition),
        "A": [coords_json(spec, g.coords, x.B.partition) for g in x.A.gens],
        "m": x.m,
    }


def load_pair(path: str) -> Pair:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        return parse_pair(doc)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def labels_json(report) -> list[dict]:
    out = []
    for lab, k in report.labels:
        entry = {"label": str(lab), "multiplicity": k}
        if lab.a_length:
            entry["height_sequence"] = list(lab.expected_height_sequence())
        out.append(entry)
    return out


def mirror_pair(x: Pair, kind: RingKind) -> Pair:
    """Same partition, generators with the same base-``p`` digits, read in the other ring."""
    spec = RingSpec(kind, x.spec.p, x.spec.n)
    B = LambdaModule(spec, x.B.partition)
    A = B.submodule([g.coords for g in x.A.gens])
    return Pair(B, A, x.m)


# -- commands ---------------------------------------------------------------------


def cmd_classify(args) -> tuple[dict, int]:
    x = load_pair(args.file)
    report = classify_s2(x)
    doc = {"input": pair_json(x), "labels": labels_json(report)}
    status = EXIT_OK
    if args.witness or args.check:
        f = iso_witness(x, report)
        doc["witness"] = {"matrix": [list(r) for r in f.matrix], "target_B": list(f.target.B.partition)}
    if args.check:
        inv = f.inverse()
        ok = inv is not None and f.image(x.A) == f.target.A and inv.image(f.target.A) == x.A
        checks = {"witness_invertible": ok}
        try:
            check_cap(x.B)
            checks["oracle_isomorphic"] = is_isomorphic_bruteforce(x, f.target)
        except CapExceeded:
            checks["oracle_isomorphic"] = None
        doc["verification"] = checks
        if not all(v is not False for v in checks.values()):
            status = EXIT_FAILED
    return doc, status


def indecomposables_document(spec: RingSpec) -> dict:
    n = spec.n
    labels = labels_s2(n)
    rows = []
    for lab in labels:
        x = lab.pair(spec)
        report = classify_s2(x)
        entry = {"label": str(lab), "pair": pair_json(x), "classified_as": str(report)}
        entry["height_sequence"] = list(x.B.height_sequence(x.A.gens[0])) if x.A.gens else []
        entry["self_classifies"] = report.labels == ((lab, 1),)
        rows.append(entry)
    expected = (n * n + 3 * n) // 2
    return {
        "ring": {"kind": spec.kind.value, "p": spec.p, "n": n},
        "count": len(labels),
        "expected_count": expected,
        "labels": rows,
    }


def cmd_indecomposables(args) -> tuple[dict, int]:
    spec = _spec_from_args(args)
    doc = indecomposables_document(spec)
    ok = doc["count"] == doc["expected_count"] and all(r["self_classifies"] for r in doc["labels"])
    return doc, EXIT_OK if ok else EXIT_FAILED


def cmd_hom(args) -> tuple[dict, int]:
    x, y = load_pair(args.file_x), load_pair(args.file_y)
    if x.spec != y.spec:
        raise InputError("the two pairs are over different rings")
    H = hom_basis(x, y)
    N = ideal_N(x, y)
    qdim = quotient_dim_mod_N(x, y)
    rdim = pr.hom_dim(apply_F(x), apply_F(y))
    applicable = x.B.socle <= x.A and y.B.socle <= y.A
    doc = {
        "hom_length": H.length,
        "hom_structure": list(H.structure),
        "n_length": N.length,
        "quotient_dim": qdim,
        "rep_hom_dim": rdim,
        "socle_contained": applicable,
        "dims_equal": qdim == rdim,
    }
    if x == y:
        doc["contains_identity"] = H.contains(identity(x))
    status = EXIT_FAILED if applicable and qdim != rdim else EXIT_OK
    return doc, status


def cmd_census(args) -> tuple[dict, int]:
    spec = _spec_from_args(args)
    census = verify_census(spec, args.max_parts, args.max_part, args.max_length)
    doc = census.to_json()
    doc["indecomposable_count"] = len(census.indecomposables())
    doc["passed"] = census.passed
    return doc, EXIT_OK if census.passed else EXIT_FAILED


def compare_rings_document(pairs: list[tuple[str, Pair]]) -> dict:
    rows = []
    for name, x in pairs:
        other = RingKind.TRUNCPOLY if x.spec.kind is RingKind.ZMOD else RingKind.ZMOD
        y = mirror_pair(x, other)
        rx, ry = classify_s2(x), classify_s2(y)
        rows.append(
            {
                "input": name,
                x.spec.kind.value: str(rx),
                y.spec.kind.value: str(ry),
                "identical": rx.labels == ry.labels,
            }
        )
    return {"pairs": rows, "identical": all(r["identical"] for r in rows)}


def cmd_compare_rings(args) -> tuple[dict, int]:
    if args.file:
        x = load_pair(args.file)
        pairs = [(args.file, x)]
    else:
        spec = _spec_from_args(args)
        pairs = [(str(lab), lab.pair(spec)) for lab in labels_s2(spec.n)]
    doc = compare_rings_document(pairs)
    return doc, EXIT_OK if doc["identical"] else EXIT_FAILED


def _spec_from_args(args) -> RingSpec:
    if not is_prime(args.p):
        raise InputError(f"--p: {args.p} is not prime")
    if args.n < 1:
        raise InputError(f"--n: {args.n} must be at least 1")
    return RingSpec(RingKind(args.ring), args.p, args.n)


# -- text rendering -------------------------------------------------------------


def render_text(command: str, doc: dict) -> str:
    lines = []
    if command == "classify":
        lines.append(" + ".join(f"{e['multiplicity']}*{e['label']}" if e["multiplicity"] > 1 else e["label"] for e in doc["labels"]) or "0")
        for e in doc["labels"]:
            if "height_sequence" in e:
                lines.append(f"  {e['label']}: heights {tuple(e['height_sequence'])}")
        if "witness" in doc:
            lines.append(f"witness: {doc['witness']['matrix']}")
        for k, v in doc.get("verification", {}).items():
            lines.append(f"{k}: {v}")
    elif command == "indecomposables":
        for e in doc["labels"]:
            lines.append(f"{e['label']:<14} heights {tuple(e['height_sequence'])}  -> {e['classified_as']}")
        lines.append(f"count {doc['count']} (expected {doc['expected_count']})")
    elif command == "census":
        lines.append(f"classes {len(doc['classes'])}, indecomposable {doc['indecomposable_count']}")
        for k, v in doc["checks"].items():
            lines.append(f"{k}: {'pass' if v else 'FAIL'}")
        lines += doc["failures"]
    elif command == "compare-rings":
        for r in doc["pairs"]:
            lines.append(f"{r['input']}: zmod {r['zmod']} | truncpoly {r['truncpoly']} | {'same' if r['identical'] else 'DIFFERENT'}")
    else:
        for k, v in doc.items():
            lines.append(f"{k}: {v}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subpair", description="Classify submodules of modules over Z/p^n and F_p[T]/(T^n).")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["text", "json"], default="text")

    def ring_opts(p, need_n=True):
        p.add_argument("--p", type=int, default=2)
        p.add_argument("--n", type=int, required=need_n, default=None if need_n else 2)
        p.add_argument("--ring", choices=["zmod", "truncpoly"], default="zmod")

    c = sub.add_parser("classify", help="decompose a pair into indecomposables")
    c.add_argument("file", help="pair document (JSON), '-' for stdin")
    c.add_argument("--witness", action="store_true", help="include an explicit isomorphism")
    c.add_argument("--check", action="store_true", help="verify the witness and compare with brute force")
    common(c)

    c = sub.add_parser("indecomposables", help="list the indecomposable pairs")
    ring_opts(c)
    common(c)

    c = sub.add_parser("hom", help="compare Hom modulo N with the representation Hom")
    c.add_argument("file_x")
    c.add_argument("file_y")
    common(c)

    c = sub.add_parser("census", help="exhaustive brute-force cross-check")
    ring_opts(c)
    c.add_argument("--max-parts", type=int, default=2)
    c.add_argument("--max-part", type=int, default=None)
    c.add_argument("--max-length", type=int, default=None)
    common(c)

    c = sub.add_parser("compare-rings", help="classify a pair and its digit mirror in the other ring")
    c.add_argument("file", nargs="?", help="pair document; without it all labels are compared")
    ring_opts(c, need_n=False)
    common(c)
    return parser


COMMANDS = {
    "classify": cmd_classify,
    "indecomposables": cmd_indecomposables,
    "hom": cmd_hom,
    "census": cmd_census,
    "compare-rings": cmd_compare_rings,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        doc, status = COMMANDS[args.command](args)
    except (InputError, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ArithmeticError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(render_text(args.command, doc))
    return status


if __name__ == "__main__":
    sys.exit(main())
