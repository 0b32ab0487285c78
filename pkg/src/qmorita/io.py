"""JSON interchange format for lattices, quantales, modules and matrices.

A document has the top-level keys ``lattices``, ``quantales``, ``modules``
and ``matrices``, each a list of named entries referring to elements by
index.  Only defining data is stored; joins and the like are rederived.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ParseError, QuantaleError
from .lattice import FiniteSupLattice, validate_lattice
from .matrix import Matrix
from .modules import RightModule, validate_module
from .quantale import Quantale, validate_quantale

KINDS = ("lattices", "quantales", "modules", "matrices")


def _require(entry: dict, key: str, kind: str):
    if key not in entry:
        raise ParseError(f"{kind} entry is missing {key!r}")
    return entry[key]


def _int_table(value, kind: str, key: str) -> list[list[int]]:
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise ParseError(f"{kind}.{key} must be a list of rows")
    for row in value:
        for v in row:
            if isinstance(v, bool) or not isinstance(v, int):
                raise ParseError(f"{kind}.{key} entries must be integers")
    return value


@dataclass
class Workspace:
    """Raw named entries; ``build_*`` validate and cache the structures."""

    entries: dict = field(default_factory=lambda: {k: {} for k in KINDS})
    _built: dict = field(default_factory=dict)

    def names(self, kind: str) -> list[str]:
        return list(self.entries[kind])

    def has(self, kind: str, name: str) -> bool:
        return name in self.entries[kind]

    def _cached(self, kind, name, build):
        key = (kind, name)
        if key not in self._built:
            self._built[key] = build(self.entries[kind][name])
        return self._built[key]

    def lattice(self, name: str) -> FiniteSupLattice:
        def build(e):
            return validate_lattice(e["elements"], [[bool(v) for v in row] for row in e["leq"]])
        return self._cached("lattices", name, build)

    def quantale(self, name: str) -> Quantale:
        def build(e):
            L = self.lattice(e["carrier"])
            return validate_quantale(L, e["mult"], e["unit"], name=name)
        return self._cached("quantales", name, build)

    def module(self, name: str) -> RightModule:
        def build(e):
            return validate_module(self.quantale(e["quantale"]), self.lattice(e["carrier"]), e["action"], name=name)
        return self._cached("modules", name, build)

    def matrix(self, name: str) -> Matrix:
        def build(e):
            A = self.quantale(e["quantale"])
            for row in e["entries"]:
                for v in row:
                    if not 0 <= v < len(A):
                        raise QuantaleError(f"matrix entry {v} is not an element", v)
            return Matrix(A, tuple(e["rows"]), tuple(e["cols"]), tuple(tuple(r) for r in e["entries"]))
        return self._cached("matrices", name, build)


def parse_workspace(text: str) -> Workspace:
    """Structural parsing: JSON shape, types, table sizes and name references."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    unknown = set(doc) - set(KINDS)
    if unknown:
        raise ParseError(f"unknown top-level keys: {sorted(unknown)}")
    ws = Workspace()
    for kind in KINDS:
        items = doc.get(kind, [])
        if not isinstance(items, list):
            raise ParseError(f"{kind} must be a list")
        for entry in items:
            if not isinstance(entry, dict):
                raise ParseError(f"{kind} entries must be objects")
            name = _require(entry, "name", kind)
            if not isinstance(name, str):
                raise ParseError(f"{kind} names must be strings")
            if name in ws.entries[kind]:
                raise ParseError(f"duplicate {kind} name {name!r}")
            ws.entries[kind][name] = entry
    for name, e in ws.entries["lattices"].items():
        elements = _require(e, "elements", "lattice")
        if not isinstance(elements, list) or not elements or len(set(map(str, elements))) != len(elements):
            raise ParseError(f"lattice {name!r} needs a nonempty list of distinct element names")
        leq = _int_table(_require(e, "leq", "lattice"), "lattice", "leq")
        if len(leq) != len(elements) or any(len(r) != len(elements) for r in leq):
            raise ParseError(f"lattice {name!r}: leq must be {len(elements)}x{len(elements)}")
        if any(v not in (0, 1) for r in leq for v in r):
            raise ParseError(f"lattice {name!r}: leq entries must be 0 or 1")
    size = {n: len(e["elements"]) for n, e in ws.entries["lattices"].items()}
    for name, e in ws.entries["quantales"].items():
        carrier = _require(e, "carrier", "quantale")
        if carrier not in size:
            raise ParseError(f"quantale {name!r} refers to unknown lattice {carrier!r}")
        n = size[carrier]
        mult = _int_table(_require(e, "mult", "quantale"), "quantale", "mult")
        if len(mult) != n or any(len(r) != n for r in mult):
            raise ParseError(f"quantale {name!r}: mult must be {n}x{n}")
        if any(not 0 <= v < n for r in mult for v in r):
            raise ParseError(f"quantale {name!r}: mult entries must be element indices")
        unit = _require(e, "unit", "quantale")
        if isinstance(unit, bool) or not isinstance(unit, int) or not 0 <= unit < n:
            raise ParseError(f"quantale {name!r}: unit must be an element index")
    qsize = {n: size[e["carrier"]] for n, e in ws.entries["quantales"].items()}
    for name, e in ws.entries["modules"].items():
        q, carrier = _require(e, "quantale", "module"), _require(e, "carrier", "module")
        if q not in qsize or carrier not in size:
            raise ParseError(f"module {name!r} refers to an unknown quantale or lattice")
        action = _int_table(_require(e, "action", "module"), "module", "action")
        if len(action) != size[carrier] or any(len(r) != qsize[q] for r in action):
            raise ParseError(f"module {name!r}: action must be {size[carrier]}x{qsize[q]}")
        if any(not 0 <= v < size[carrier] for r in action for v in r):
            raise ParseError(f"module {name!r}: action entries must be element indices")
    for name, e in ws.entries["matrices"].items():
        q = _require(e, "quantale", "matrix")
        if q not in qsize:
            raise ParseError(f"matrix {name!r} refers to unknown quantale {q!r}")
        rows, cols = _require(e, "rows", "matrix"), _require(e, "cols", "matrix")
        if not isinstance(rows, list) or not isinstance(cols, list):
            raise ParseError(f"matrix {name!r}: rows and cols must be lists")
        entries = _int_table(_require(e, "entries", "matrix"), "matrix", "entries")
        if len(entries) != len(rows) or any(len(r) != len(cols) for r in entries):
            raise ParseError(f"matrix {name!r}: entries must be {len(rows)}x{len(cols)}")
    return ws


def load_workspace(path: str) -> Workspace:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_workspace(text)


# ---------------------------------------------------------------------------
# emitting

def lattice_entry(L: FiniteSupLattice, name: str) -> dict:
    return {"name": name, "elements": [L.name(x) for x in L.elements],
            "leq": [[int(v) for v in row] for row in L.leq_matrix.tolist()]}


def quantale_entry(Q: Quantale, name: str, carrier_name: str) -> dict:
    return {"name": name, "carrier": carrier_name, "mult": Q.mult_array.tolist(), "unit": Q.unit}


def module_entry(M: RightModule, name: str, quantale_name: str, carrier_name: str) -> dict:
    return {"name": name, "quantale": quantale_name, "carrier": carrier_name, "action": M.action_array.tolist()}


def matrix_entry(m: Matrix, name: str, quantale_name: str) -> dict:
    return {"name": name, "quantale": quantale_name, "rows": [str(r) for r in m.rows],
            "cols": [str(c) for c in m.cols], "entries": [list(r) for r in m.entries]}


class Document:
    """Accumulates entries and renders them deterministically."""

    def __init__(self):
        self.parts: dict[str, list] = {k: [] for k in KINDS}

    def add_lattice(self, L: FiniteSupLattice, name: str) -> str:
        self.parts["lattices"].append(lattice_entry(L, name))
        return name

    def add_quantale(self, Q: Quantale, name: str) -> str:
        carrier = self.add_lattice(Q.carrier, f"{name}.carrier")
        self.parts["quantales"].append(quantale_entry(Q, name, carrier))
        return name

    def add_module(self, M: RightModule, name: str, quantale_name: str | None = None) -> str:
        if quantale_name is None:
            quantale_name = self.add_quantale(M.quantale, f"{name}.quantale")
        carrier = self.add_lattice(M.carrier, f"{name}.carrier")
        self.parts["modules"].append(module_entry(M, name, quantale_name, carrier))
        return name

    def add_matrix(self, m: Matrix, name: str, quantale_name: str) -> str:
        self.parts["matrices"].append(matrix_entry(m, name, quantale_name))
        return name

    def to_json(self) -> str:
        return json.dumps({k: v for k, v in self.parts.items() if v}, indent=1, sort_keys=True) + "\n"
