"""Command-line front end.

Every subcommand prints a report (aligned text, or JSON with ``--json``) and
exits with 0 when every checked identity holds, 1 when one fails, 2 on bad
input and 3 when a size cap is exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Sequence

from . import cramer, graph, involution, lgv, ring, sumident, walks
from .errors import CapExceeded, InputError
from .formats import load_digraph, load_matrix, read_json, vector_from_json
from .report import ERROR, Report, to_jsonable

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_CAP = 3


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _literal_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="combident", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (("det", "determinant, cross-checked against charpoly and transpose"),
                           ("per", "permanent, cross-checked against the transpose"),
                           ("charpoly", "coefficients of det(xI - M)")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--matrix", required=True, metavar="FILE")

    p = sub.add_parser("newton", parents=[common], help="graphical Newton-Girard identities")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", metavar="FILE")
    src.add_argument("--coefficients", type=_literal_list, metavar="E1,E2,...",
                     help="monic polynomial x^n + e1 x^(n-1) + ... + en (Newton's identities)")
    p.add_argument("--r", type=int, help="single r to check (default: 1..2n)")

    p = sub.add_parser("involution", parents=[common], help="certify the sign-reversing involution")
    p.add_argument("--graph", required=True, metavar="FILE")
    p.add_argument("--r", type=int, help="single r to check (default: 1..min(n+1, 6))")

    p = sub.add_parser("lgv", parents=[common], help="path matrix determinant vs path systems")
    p.add_argument("--graph", required=True, metavar="FILE")
    p.add_argument("--sources", required=True, type=_int_list, metavar="LIST")
    p.add_argument("--sinks", required=True, type=_int_list, metavar="LIST")
    p.add_argument("--permanent", action="store_true", help="also check the permanent analogue")

    p = sub.add_parser("cramer", parents=[common], help="solve A x = b, or verify the identity")
    p.add_argument("--matrix", metavar="FILE")
    p.add_argument("--rhs", metavar="FILE")
    p.add_argument("--verify-identity", nargs=2, type=int, metavar=("N", "K"))

    p = sub.add_parser("sumident", parents=[common], help="alternating det/per sums of matrix sums")
    p.add_argument("--matrices", required=True, nargs="+", metavar="FILE")
    p.add_argument("--permanent", action="store_true")
    p.add_argument("--pie", action="store_true", help="also run the inclusion-exclusion check")
    return parser


def _digest(paths: Sequence[str]) -> str:
    h = hashlib.sha256()
    for p in paths:
        try:
            with open(p, "rb") as fh:
                h.update(fh.read())
        except OSError:
            pass
        h.update(b"\0")
    return "sha256:" + h.hexdigest()[:16]


def _input_files(args: argparse.Namespace) -> list[str]:
    files = []
    for attr in ("graph", "matrix", "rhs"):
        if getattr(args, attr, None):
            files.append(getattr(args, attr))
    files.extend(getattr(args, "matrices", None) or [])
    return files


def _run_matrix(args) -> Report:
    m = load_matrix(args.matrix)
    rep = Report(args.command)
    if args.command == "det":
        d = graph.det(m)
        rep.values["det"] = d
        cp = graph.charpoly(m)
        sign = 1 if m.rows % 2 == 0 else -1
        rep.add("det == (-1)^n * charpoly(0)", d == sign * cp[-1])
        rep.add("det(M^T) == det(M)", graph.det(m.transpose()) == d)
    elif args.command == "per":
        p = graph.per(m)
        rep.values["per"] = p
        rep.add("per(M^T) == per(M)", graph.per(m.transpose()) == p)
    else:
        cp = graph.charpoly(m)
        rep.values["coefficients"] = cp
        sign = 1 if m.rows % 2 == 0 else -1
        rep.add("constant coefficient == (-1)^n det", cp[-1] == sign * graph.det(m))
        rep.add("x^(n-1) coefficient == -trace", cp[1] == -graph.trace(m) if m.rows else True)
    return rep


def _run_newton(args) -> Report:
    if args.coefficients is not None:
        if not args.coefficients:
            raise InputError("--coefficients needs at least one value")
        mode, es = ring.unify(ring.parse_literal(t) for t in args.coefficients)
        r_max = args.r if args.r is not None else 2 * len(es)
        if r_max < 1:
            raise InputError("--r must be >= 1")
        return walks.newton_corollary_check(es, r_max)
    g = load_digraph(args.graph)
    rs = [args.r] if args.r is not None else list(range(1, max(2 * g.n, 1) + 1))
    if any(r < 1 for r in rs):
        raise InputError("--r must be >= 1")
    return walks.newton_check(g, rs)


def _run_involution(args) -> Report:
    g = load_digraph(args.graph)
    rs = [args.r] if args.r is not None else list(range(1, min(g.n + 1, involution.MAX_LENGTH) + 1))
    if any(r < 1 for r in rs):
        raise InputError("--r must be >= 1")
    rep = Report("involution")
    for r in rs:
        sub = involution.verify_theorem_proof(g, r)
        rep.values[f"r={r}"] = sub.values
        rep.extend(sub, prefix=f"r={r}: ")
    return rep


def _run_lgv(args) -> Report:
    g = load_digraph(args.graph)
    rep = lgv.lgv_check(g, args.sources, args.sinks)
    if args.permanent:
        prep = lgv.per_check(g, args.sources, args.sinks)
        rep.values.update({k: v for k, v in prep.values.items() if k not in rep.values})
        rep.extend(prep)
    return rep


def _run_cramer(args) -> Report:
    if args.verify_identity is None and not args.matrix:
        raise InputError("cramer needs --matrix/--rhs or --verify-identity N K")
    rep = Report("cramer")
    if args.matrix:
        if not args.rhs:
            raise InputError("--matrix needs --rhs")
        a = load_matrix(args.matrix)
        b = vector_from_json(read_json(args.rhs))
        if ring.unify(b)[0] != ring.RATIONAL or a.mode != ring.RATIONAL:
            raise InputError("the solver needs rational entries")
        solved = cramer.solve_report(cramer.LinearSystem(a, tuple(b)))
        rep.values.update(solved.values)
        rep.extend(solved)
    if args.verify_identity is not None:
        n, k = args.verify_identity
        ident = cramer.verify_cramer_identity(n, k)
        rep.values["identity"] = ident.values
        rep.extend(ident, prefix="identity: ")
    return rep


def _run_sumident(args) -> Report:
    s = sumident.MatrixTuple.of([load_matrix(p) for p in args.matrices])
    rep = sumident.sumident_report(s, permanent=args.permanent)
    if args.pie:
        pie = sumident.pie_decomposition_check(s)
        rep.values["pie"] = pie.values
        rep.extend(pie, prefix="pie: ")
    return rep


_HANDLERS = {
    "det": _run_matrix,
    "per": _run_matrix,
    "charpoly": _run_matrix,
    "newton": _run_newton,
    "involution": _run_involution,
    "lgv": _run_lgv,
    "cramer": _run_cramer,
    "sumident": _run_sumident,
}


def _format_text(doc: dict) -> str:
    lines = [f"command: {doc['command']}", f"inputs:  {doc['inputs']}", f"verdict: {doc['verdict']}"]
    if "error" in doc:
        lines.append(f"error:   {doc['error']}")
        return "\n".join(lines) + "\n"
    values = doc["values"]
    if values:
        lines.append("values:")
        width = max(len(k) for k in values)
        for k, v in values.items():
            text = v if isinstance(v, str) else json.dumps(v, sort_keys=True)
            lines.append(f"  {k.ljust(width)}  {text}")
    if doc["checks"]:
        lines.append("checks:")
        width = max(len(c["name"]) for c in doc["checks"])
        for c in doc["checks"]:
            mark = "PASS" if c["passed"] else "FAIL"
            detail = f"  {c['detail']}" if c["detail"] else ""
            lines.append(f"  {mark}  {c['name'].ljust(width)}{detail}".rstrip())
    return "\n".join(lines) + "\n"


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    doc: dict = {"command": " ".join(["combident", *argv]), "inputs": _digest(_input_files(args))}
    try:
        rep = _HANDLERS[args.command](args)
    except CapExceeded as exc:
        doc.update(verdict=ERROR, error=f"cap exceeded: {exc}")
        code = EXIT_CAP
    except InputError as exc:
        doc.update(verdict=ERROR, error=str(exc))
        code = EXIT_INPUT
    else:
        body = rep.to_dict()
        doc.update(verdict=body["verdict"], values=body["values"], checks=body["checks"])
        code = EXIT_PASS if rep.passed else EXIT_FAIL
    if args.json:
        out.write(json.dumps(to_jsonable(doc), indent=2, sort_keys=True) + "\n")
    else:
        out.write(_format_text(doc))
    return code


def main() -> None:
    sys.exit(run())
