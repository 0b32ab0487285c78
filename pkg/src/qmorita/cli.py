"""Command line: validate structure files, compute constructions, run Morita
checks and the named suites.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error,
3 a size budget was exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time

from . import catalog
from .config import DEFAULT_BUDGET
from .errors import BudgetExceeded, ParseError, QuantaleError, UnknownSuite
from .io import Document, Workspace, load_workspace
from .lattice import FiniteSupLattice
from .matrix import elementary_matrix, identity_matrix, matrix_quantale
from .modules import free_module
from .morita import (
    commutative_check,
    eAe_quantale,
    find_full_idempotents,
    morita_witness_check,
    projective_generator_census,
)
from .quantale import Quantale, endo_quantale, is_commutative, quantale_iso_search, relation_quantale
from .report import Report
from .suites import run_suite, suite_names
from .tensor import internal_hom, tensor

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def default_budget() -> int:
    raw = os.environ.get("QF_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ParseError(f"QF_BUDGET must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ParseError("QF_BUDGET must be positive")
    return value


# ---------------------------------------------------------------------------
# name resolution

class Resolver:
    """Looks names up in an optional workspace file, then in the built-in catalog."""

    def __init__(self, ws: Workspace | None, budget: int):
        self.ws = ws
        self.budget = budget

    def lattice(self, name: str) -> FiniteSupLattice:
        if self.ws is not None and self.ws.has("lattices", name):
            return self.ws.lattice(name)
        return catalog.lattice(name)

    def quantale(self, name: str) -> Quantale:
        if self.ws is not None and self.ws.has("quantales", name):
            return self.ws.quantale(name)
        m = re.fullmatch(r"Rel(\d+)", name)
        if m:
            Q = relation_quantale(int(m.group(1)), budget=self.budget)
            Q.name = name
            return Q
        m = re.fullmatch(r"Mat(\d+)_(.+)", name)
        if m:
            Q = matrix_quantale(self.quantale(m.group(2)), int(m.group(1)), budget=self.budget)
            Q.name = name
            return Q
        return catalog.quantale(name)


def element(A: Quantale, token: str) -> int:
    names = [A.name_of(x) for x in A.elements]
    if token in names:
        return names.index(token)
    if re.fullmatch(r"\d+", token) and int(token) < len(A):
        return int(token)
    raise ParseError(f"{token!r} is not an element of {A.name}")


def parse_matrix(A: Quantale, n: int, text: str) -> tuple[int, ...]:
    """``identity``, ``E<i><j>`` (1-based elementary matrix) or rows ``a,b;c,d`` of element names."""
    if text in ("identity", "i"):
        return identity_matrix(A, n).flat()
    m = re.fullmatch(r"E(\d)(\d)", text)
    if m:
        i, j = int(m.group(1)) - 1, int(m.group(2)) - 1
        if not (0 <= i < n and 0 <= j < n):
            raise ParseError(f"{text} is outside a {n}x{n} matrix")
        return elementary_matrix(A, n, i, j).flat()
    rows = [r.split(",") for r in text.split(";")]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ParseError(f"matrix {text!r} must be {n}x{n}")
    return tuple(element(A, tok.strip()) for row in rows for tok in row)


def positive(text: str) -> int:
    if not re.fullmatch(r"\d+", text):
        raise ParseError(f"expected a non-negative integer, got {text!r}")
    return int(text)


# ---------------------------------------------------------------------------
# commands

def cmd_check(args, report: Report) -> None:
    ws = load_workspace(args.file)
    for kind, build in (("lattices", ws.lattice), ("quantales", ws.quantale),
                        ("modules", ws.module), ("matrices", ws.matrix)):
        for name in ws.names(kind):
            try:
                build(name)
                report.add(f"{kind[:-1] if kind != 'matrices' else 'matrix'} {name}", True)
            except QuantaleError as exc:
                report.add(f"{kind[:-1] if kind != 'matrices' else 'matrix'} {name}", False,
                           {"error": type(exc).__name__, "witness": exc.witness, "message": str(exc)})


def cmd_compute(args, report: Report) -> None:
    res = Resolver(load_workspace(args.input) if args.input else None, args.budget)
    doc = Document()
    kind, params = args.kind, args.params
    need = {"tensor": 2, "hom": 2, "matq": 2, "eAe": 2, "free": 2, "rel": 1, "endo": 1}
    if len(params) != need[kind]:
        raise ParseError(f"compute {kind} takes {need[kind]} arguments")
    if kind == "tensor":
        L, M = res.lattice(params[0]), res.lattice(params[1])
        T = tensor(L, M, budget=args.budget)
        doc.add_lattice(T.lattice, f"{params[0]}(x){params[1]}")
        size = len(T.lattice)
    elif kind == "hom":
        L, M = res.lattice(params[0]), res.lattice(params[1])
        H = internal_hom(L, M)
        doc.add_lattice(H, f"[{params[0]},{params[1]}]")
        size = len(H)
    elif kind == "matq":
        A, n = res.quantale(params[0]), positive(params[1])
        Q = matrix_quantale(A, n, budget=args.budget)
        if Q.lazy:
            report.data["lazily_validated"] = True
            raise BudgetExceeded("emitting a lazily validated matrix quantale", len(Q), len(Q))
        doc.add_quantale(Q, f"Mat{n}({params[0]})")
        size = len(Q)
    elif kind == "eAe":
        A = res.quantale(params[0])
        if A.mult_array is None:
            raise BudgetExceeded("corner of a lazily validated quantale", len(A), args.budget)
        C = eAe_quantale(A, element(A, params[1]))
        doc.add_quantale(C, f"{params[0]}[{params[1]}]")
        size = len(C)
    elif kind == "free":
        A, n = res.quantale(params[0]), positive(params[1])
        F = free_module(A, n, budget=args.budget)
        doc.add_module(F, f"{params[0]}^{n}")
        size = len(F)
    elif kind == "rel":
        R = relation_quantale(positive(params[0]), budget=args.budget)
        doc.add_quantale(R, f"Rel{params[0]}")
        size = len(R)
    else:
        E = endo_quantale(res.lattice(params[0]))
        if len(E) > args.budget:
            raise BudgetExceeded("endomorphism quantale", len(E), args.budget)
        doc.add_quantale(E, f"End({params[0]})")
        size = len(E)
    report.add(f"compute {kind}", True, {"size": size})
    report.data["size"] = size
    text = doc.to_json()
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(text)
        report.data["emitted"] = args.emit
    else:
        report.data["structure"] = json.loads(text)


def cmd_morita(args, report: Report) -> None:
    res = Resolver(load_workspace(args.input) if args.input else None, args.budget)
    if args.action == "find-full-idempotents":
        A, n = res.quantale(args.quantale), positive(args.size)
        Mq = matrix_quantale(A, n, budget=args.budget)
        found = find_full_idempotents(A, n, budget=args.budget)
        names = [Mq.name_of(f) for f in found]
        report.data["full_idempotents"] = names
        report.add("identity is full", Mq.unit in found)
        for f in found:
            report.add(f"full {Mq.name_of(f)}", True)
    elif args.action == "verify-witness":
        A, n = res.quantale(args.quantale), positive(args.size)
        flat = parse_matrix(A, n, args.matrix)
        r = morita_witness_check(A, n, flat, budget=args.carrier_budget, size_budget=args.budget)
        report.add("idempotent", r.idempotent)
        report.add("columns transport", bool(r.columns_transport), r.columns_transport.witness)
        report.add("corner transport", bool(r.corner_transport), r.corner_transport.witness)
        report.add("End(Q) ~ corner", bool(r.corner_iso), r.corner_iso.witness)
        report.add("full", r.full)
        report.add("generator matches fullness", r.generator == r.full)
        if r.equivalence is not None:
            eq = r.equivalence
            report.add("fully faithful", all(x[2] for x in eq.fully_faithful), {"pairs": len(eq.fully_faithful)})
            report.add("essentially surjective", all(x[1] for x in eq.essentially_surjective),
                       {"modules": len(eq.essentially_surjective), "derived_budget": eq.derived_budget})
        else:
            report.skip("equivalence", "idempotent not full")
        report.data["corner_size"] = len(r.corner)
        report.data["corner_elements"] = [r.corner.name_of(x) for x in r.corner.elements]
        for B in ("2", "C3", "C4"):
            if len(catalog.quantale(B)) == len(r.corner) and quantale_iso_search(r.corner, catalog.quantale(B)):
                report.data["corner_isomorphic_to"] = B
                break
        report.data["notes"] = r.notes
    elif args.action == "census":
        A = res.quantale(args.quantale)
        census = projective_generator_census(A, args.carrier_budget)
        entries = []
        for c in census:
            entries.append({"module_size": len(c.module), "end_size": len(c.endomorphisms),
                            "end_commutative": is_commutative(c.endomorphisms),
                            "end_isomorphic_to_base": quantale_iso_search(c.endomorphisms, A).found})
        report.data["census"] = entries
        report.add("base quantale in census", any(e["module_size"] == len(A) and e["end_isomorphic_to_base"]
                                                   for e in entries))
    else:
        A, B = res.quantale(args.quantale), res.quantale(args.other)
        report.add(f"{args.quantale} commutative", is_commutative(A))
        report.add(f"{args.other} commutative", is_commutative(B))
        verdict = commutative_check(A, B, args.carrier_budget)
        report.data["isomorphic"] = verdict.isomorphic
        report.data["census_ends_matching_other"] = {args.quantale: verdict.census_a, args.other: verdict.census_b}
        report.data["conclusion"] = ("Morita equivalent (isomorphic)" if verdict.equivalent_at_budget
                                     else f"not Morita equivalent at budget {args.carrier_budget}")


def cmd_suite(args, report: Report) -> None:
    result = run_suite(args.name)
    report.checks.extend(result.checks)
    report.budgets.update(result.budgets)
    report.data.update(result.data)


# ---------------------------------------------------------------------------
# parser

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=int, default=None, help="element cap for constructed carriers")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--threads", type=int, default=1, help="accepted for compatibility; checks run serially")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmorita", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate every structure in a definition file")
    p.add_argument("file")
    _common(p)

    p = sub.add_parser("compute", help="build a structure and emit it in the interchange format")
    p.add_argument("kind", choices=("tensor", "hom", "matq", "eAe", "free", "rel", "endo"))
    p.add_argument("params", nargs="*")
    p.add_argument("--in", dest="input", default=None, help="definition file to resolve names from")
    p.add_argument("--emit", default=None, help="path for the emitted structure file")
    _common(p)

    p = sub.add_parser("morita", help="idempotents, witnesses and censuses")
    msub = p.add_subparsers(dest="action", required=True)
    q = msub.add_parser("find-full-idempotents")
    q.add_argument("quantale")
    q.add_argument("size")
    q = msub.add_parser("verify-witness")
    q.add_argument("quantale")
    q.add_argument("size")
    q.add_argument("matrix")
    q = msub.add_parser("census")
    q.add_argument("quantale")
    q = msub.add_parser("commutative-check")
    q.add_argument("quantale")
    q.add_argument("other")
    for q in msub.choices.values():
        q.add_argument("--carrier-budget", type=int, default=4, help="largest module carrier enumerated")
        q.add_argument("--in", dest="input", default=None)
        _common(q)

    p = sub.add_parser("suite", help=f"run a named suite: {', '.join(suite_names())}")
    p.add_argument("name")
    _common(p)
    return parser


COMMANDS = {"check": cmd_check, "compute": cmd_compute, "morita": cmd_morita, "suite": cmd_suite}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.budget is None:
            args.budget = default_budget()
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = Report(command=argv, budgets={"elements": args.budget})
    start = time.perf_counter()
    code = EXIT_OK
    try:
        COMMANDS[args.command](args, report)
        code = EXIT_OK if report.ok else EXIT_FAIL
    except (ParseError, UnknownSuite) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        report.skip("budget", {"message": str(exc), "size": exc.size, "budget": exc.budget})
        code = EXIT_BUDGET
    report.wall_time = time.perf_counter() - start
    text = report.render(args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
