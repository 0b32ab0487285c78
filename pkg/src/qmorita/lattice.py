"""Finite sup-lattices, join-preserving maps, adjoints, biproducts and
idempotent splittings.

Elements are dense integer indices ``0..n-1``; ``labels`` carry whatever
structural data a construction wants to remember (names, tuples, map
tables) and are metadata only.  The order is stored as a boolean matrix
``leq[x, y] == (x <= y)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import NoBottom, NoJoin, NotAPartialOrder, NotASupMap, NotIdempotent


@dataclass(frozen=True)
class Check:
    """Outcome of a boolean check together with a counterexample."""

    ok: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


def _join_table(leq: np.ndarray, *, dual: bool = False) -> np.ndarray:
    """Least upper bounds of all pairs; raises NoJoin on the first bad pair."""
    order = leq.T if dual else leq
    n = order.shape[0]
    below = order.sum(axis=0)
    big = n + 1
    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        cand = order[x][None, :] & order
        z = np.where(cand, below[None, :], big).argmin(axis=1)
        least = cand.any(axis=1) & ~(cand & ~order[z]).any(axis=1)
        if not least.all():
            y = int(np.flatnonzero(~least)[0])
            raise NoJoin(f"no {'meet' if dual else 'join'} for ({x}, {y})", (x, y))
        table[x] = z
    return table


class FiniteSupLattice:
    """A finite complete lattice given by its full order matrix."""

    def __init__(self, labels: Sequence, leq, *, join_table=None, validate: bool = True):
        leq = np.asarray(leq, dtype=bool)
        n = len(labels)
        if n == 0:
            raise NoBottom("empty carrier has no bottom")
        if leq.shape != (n, n):
            raise NotAPartialOrder(f"order matrix has shape {leq.shape}, expected {(n, n)}")
        self.labels = tuple(labels)
        self.leq_matrix = leq
        leq.setflags(write=False)
        if validate:
            _check_partial_order(leq)
        bottoms = np.flatnonzero(leq.all(axis=1))
        if len(bottoms) == 0:
            raise NoBottom("no element lies below every other element")
        self.bottom = int(bottoms[0])
        if join_table is None:
            join_table = _join_table(leq)
        self.join_array = np.asarray(join_table, dtype=np.int64)
        self.join_array.setflags(write=False)
        self._join = self.join_array.tolist()
        self._leq = leq.tolist()
        self.top = int(np.flatnonzero(leq.all(axis=0))[0])

    # -- basic access -------------------------------------------------
    def __len__(self) -> int:
        return len(self.labels)

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    def __repr__(self) -> str:
        return f"FiniteSupLattice(size={len(self)})"

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteSupLattice):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.leq_matrix, other.leq_matrix)

    def __hash__(self) -> int:
        return hash((len(self.labels), self.labels[:8]))

    def name(self, x: int) -> str:
        return str(self.labels[x])

    @cached_property
    def names(self) -> tuple[str, ...]:
        return tuple(str(label) for label in self.labels)

    @cached_property
    def _index(self) -> dict:
        return {label: i for i, label in enumerate(self.labels)}

    def index(self, label) -> int:
        return self._index[label]

    # -- order and lattice operations ------------------------------
    def leq(self, x: int, y: int) -> bool:
        return self._leq[x][y]

    def join2(self, x: int, y: int) -> int:
        return self._join[x][y]

    def join(self, subset: Iterable[int]) -> int:
        j = self._join
        out = self.bottom
        for x in subset:
            out = j[out][x]
        return out

    @cached_property
    def meet_array(self) -> np.ndarray:
        table = _join_table(self.leq_matrix, dual=True)
        table.setflags(write=False)
        return table

    @cached_property
    def _meet(self) -> list:
        return self.meet_array.tolist()

    def meet2(self, x: int, y: int) -> int:
        return self._meet[x][y]

    def meet(self, subset: Iterable[int]) -> int:
        """Greatest lower bound, computed as the join of all lower bounds."""
        mask = np.ones(len(self), dtype=bool)
        for s in subset:
            mask &= self.leq_matrix[:, s]
        return self.join(int(z) for z in np.flatnonzero(mask))

    def up_set(self, x: int) -> tuple[int, ...]:
        return tuple(int(z) for z in np.flatnonzero(self.leq_matrix[x]))

    def down_set(self, x: int) -> tuple[int, ...]:
        return tuple(int(z) for z in np.flatnonzero(self.leq_matrix[:, x]))

    @cached_property
    def down_sizes(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.leq_matrix.sum(axis=0))

    @cached_property
    def up_sizes(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.leq_matrix.sum(axis=1))

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        return tuple(sorted(self.elements, key=lambda x: (self.down_sizes[x], x)))

    @cached_property
    def join_irreducibles(self) -> tuple[int, ...]:
        """Non-bottom elements that are not the join of the elements strictly below."""
        n = len(self)
        strict = self.leq_matrix & ~np.eye(n, dtype=bool)
        acc = np.full(n, self.bottom, dtype=np.int64)
        for y in range(n):
            row = strict[y]
            acc[row] = self.join_array[acc[row], y]
        irreducible = acc != np.arange(n)
        return tuple(x for x in self.linear_extension if irreducible[x])

    @cached_property
    def is_distributive(self) -> bool:
        m, j = self.meet_array, self.join_array
        n = len(self)
        for x in range(n):
            lhs = m[x][j]  # x ^ (y v z)
            rhs = j[m[x][:, None], m[x][None, :]]
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def dual(self) -> "FiniteSupLattice":
        return FiniteSupLattice(self.labels, self.leq_matrix.T.copy(), join_table=self.meet_array, validate=False)


def _check_partial_order(leq: np.ndarray) -> None:
    diag = np.flatnonzero(~leq.diagonal())
    if len(diag):
        x = int(diag[0])
        raise NotAPartialOrder(f"not reflexive at {x}", ("reflexive", x))
    both = leq & leq.T
    np.fill_diagonal(both, False)
    if both.any():
        x, y = (int(v) for v in np.argwhere(both)[0])
        raise NotAPartialOrder(f"not antisymmetric at ({x}, {y})", ("antisymmetric", x, y))
    li = leq.astype(np.int64)
    bad = ((li @ li) > 0) & ~leq
    if bad.any():
        x, z = (int(v) for v in np.argwhere(bad)[0])
        y = int(np.flatnonzero(leq[x] & leq[:, z])[0])
        raise NotAPartialOrder(f"not transitive: {x}<={y}<={z}", ("transitive", x, y, z))


def validate_lattice(elements: Sequence, leq) -> FiniteSupLattice:
    """Validate a full order matrix and return the lattice with join tables."""
    if len(elements) == 0:
        raise NoBottom("empty carrier has no bottom")
    matrix = np.array([[bool(v) for v in row] for row in leq], dtype=bool) if not isinstance(leq, np.ndarray) else leq.astype(bool)
    return FiniteSupLattice(tuple(elements), matrix)


def from_order(labels: Sequence, leq_fn, *, validate: bool = False, join_table=None) -> FiniteSupLattice:
    """Build a lattice from a comparison predicate on labels."""
    n = len(labels)
    matrix = np.zeros((n, n), dtype=bool)
    for i, a in enumerate(labels):
        for k, b in enumerate(labels):
            matrix[i, k] = leq_fn(a, b)
    return FiniteSupLattice(labels, matrix, join_table=join_table, validate=validate)


# ---------------------------------------------------------------------------
# maps

@dataclass(frozen=True, eq=False)
class MonotoneMap:
    source: FiniteSupLattice
    target: FiniteSupLattice
    table: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonotoneMap):
            return NotImplemented
        return self.table == other.table and self.source == other.source and self.target == other.target

    def __hash__(self) -> int:
        return hash(self.table)

    def compose(self, other: "MonotoneMap") -> "MonotoneMap":
        """``self`` after ``other``."""
        cls = SupMap if isinstance(self, SupMap) and isinstance(other, SupMap) else MonotoneMap
        return cls(other.source, self.target, tuple(self.table[y] for y in other.table))


class SupMap(MonotoneMap):
    """A join-preserving map; construct through :func:`sup_map` to validate."""

    @classmethod
    def identity(cls, lattice: FiniteSupLattice) -> "SupMap":
        return cls(lattice, lattice, tuple(lattice.elements))

    @classmethod
    def constant_bottom(cls, source: FiniteSupLattice, target: FiniteSupLattice) -> "SupMap":
        return cls(source, target, (target.bottom,) * len(source))


def is_sup_map(source: FiniteSupLattice, target: FiniteSupLattice, table: Sequence[int]) -> Check:
    """Decide join preservation; the witness is a subset whose join is not preserved.

    Preserving the empty join and all binary joins is enough in a finite
    lattice.
    """
    if len(table) != len(source):
        raise ValueError("table is not total on the source")
    if table[source.bottom] != target.bottom:
        return Check(False, ())
    for x in source.elements:
        for y in source.elements:
            if source.leq(x, y) and not target.leq(table[x], table[y]):
                return Check(False, (x, y))
    for x in source.elements:
        for y in range(x + 1, len(source)):
            if table[source.join2(x, y)] != target.join2(table[x], table[y]):
                return Check(False, (x, y))
    return Check(True)


def sup_map(source: FiniteSupLattice, target: FiniteSupLattice, table: Sequence[int]) -> SupMap:
    table = tuple(int(t) for t in table)
    check = is_sup_map(source, target, table)
    if not check:
        raise NotASupMap(f"join of {check.witness} is not preserved", check.witness)
    return SupMap(source, target, table)


def right_adjoint(f: SupMap) -> MonotoneMap:
    """The map y -> join{x : f(x) <= y}."""
    src, tgt = f.source, f.target
    table = []
    for y in tgt.elements:
        table.append(src.join(x for x in src.elements if tgt.leq(f.table[x], y)))
    return MonotoneMap(tgt, src, tuple(table))


# ---------------------------------------------------------------------------
# biproducts

@dataclass(frozen=True)
class Biproduct:
    lattice: FiniteSupLattice
    injections: tuple[SupMap, ...]
    projections: tuple[SupMap, ...]


def product_lattice(family: Sequence[FiniteSupLattice]) -> FiniteSupLattice:
    """Cartesian product with componentwise order; labels are index tuples."""
    tuples = list(itertools.product(*(L.elements for L in family)))
    n = len(tuples)
    leq = np.ones((n, n), dtype=bool)
    join = np.zeros((n, n), dtype=np.int64)
    idx = np.array(tuples, dtype=np.int64).reshape(n, len(family))
    stride = 1
    for k in range(len(family) - 1, -1, -1):
        L = family[k]
        col = idx[:, k]
        leq &= L.leq_matrix[col[:, None], col[None, :]]
        join += L.join_array[col[:, None], col[None, :]] * stride
        stride *= len(L)
    return FiniteSupLattice(tuples, leq, join_table=join, validate=False)


def biproduct(family: Sequence[FiniteSupLattice]) -> Biproduct:
    family = list(family)
    if len(family) == 1:
        L = family[0]
        return Biproduct(L, (SupMap.identity(L),), (SupMap.identity(L),))
    P = product_lattice(family)
    injections, projections = [], []
    for i, L in enumerate(family):
        inj = []
        for x in L.elements:
            t = tuple(x if k == i else M.bottom for k, M in enumerate(family))
            inj.append(P.index(t))
        injections.append(SupMap(L, P, tuple(inj)))
        projections.append(SupMap(P, L, tuple(t[i] for t in P.labels)))
    return Biproduct(P, tuple(injections), tuple(projections))


# ---------------------------------------------------------------------------
# idempotents

@dataclass(frozen=True)
class Splitting:
    """``inclusion . projection == e`` and ``projection . inclusion == id``."""

    obj: FiniteSupLattice
    projection: SupMap
    inclusion: SupMap


def split_idempotent(e: MonotoneMap) -> Splitting:
    L = e.source
    if e.target != L:
        raise NotIdempotent("idempotent must be an endomap")
    for x in L.elements:
        if e.table[e.table[x]] != e.table[x]:
            raise NotIdempotent(f"e(e({x})) != e({x})", x)
    fixed = [x for x in L.elements if e.table[x] == x]
    pos = {x: i for i, x in enumerate(fixed)}
    sub = L.leq_matrix[np.ix_(fixed, fixed)]
    join = [[pos[e.table[L.join2(x, y)]] for y in fixed] for x in fixed]
    S = FiniteSupLattice([L.labels[x] for x in fixed], sub, join_table=join, validate=False)
    p = SupMap(L, S, tuple(pos[e.table[x]] for x in L.elements))
    i = SupMap(S, L, tuple(fixed))
    return Splitting(S, p, i)


# ---------------------------------------------------------------------------
# enumeration of sup-maps and isomorphisms

def sup_maps(source: FiniteSupLattice, target: FiniteSupLattice) -> list[tuple[int, ...]]:
    """All join-preserving maps as tables, in lexicographic order.

    Values are chosen on join-irreducibles along a linear extension, kept
    monotone, then extended by joins and checked against each irreducible.
    """
    J = source.join_irreducibles
    below = [[k for k in range(i) if source.leq(J[k], J[i])] for i in range(len(J))]
    under = [[i for i, j in enumerate(J) if source.leq(j, x)] for x in source.elements]
    results = []
    values = [0] * len(J)
    tgt = target

    def extend() -> tuple[int, ...] | None:
        table = [tgt.join(values[i] for i in under[x]) for x in source.elements]
        for x in source.elements:
            for i, j in enumerate(J):
                if table[source.join2(x, j)] != tgt.join2(table[x], values[i]):
                    return None
        return tuple(table)

    def go(i: int) -> None:
        if i == len(J):
            table = extend()
            if table is not None:
                results.append(table)
            return
        floor = tgt.join(values[k] for k in below[i])
        for v in tgt.up_set(floor):
            values[i] = v
            go(i + 1)

    go(0)
    results.sort()
    return results


def _signature(L: FiniteSupLattice, x: int) -> tuple:
    return (L.down_sizes[x], L.up_sizes[x], x in L.join_irreducibles)


def lattice_isomorphisms(A: FiniteSupLattice, B: FiniteSupLattice, *, extra_a=None, extra_b=None) -> Iterator[tuple[int, ...]]:
    """Order isomorphisms A -> B as tables.

    A candidate is fixed by the images of the join-irreducibles, tried in
    index order; ``extra_a``/``extra_b`` add per-element invariants that an
    isomorphism must respect (used for pruning only).
    """
    if len(A) != len(B):
        return
    JA, JB = A.join_irreducibles, B.join_irreducibles
    if len(JA) != len(JB):
        return

    def sig_a(x):
        return _signature(A, x) + ((extra_a(x),) if extra_a else ())

    def sig_b(x):
        return _signature(B, x) + ((extra_b(x),) if extra_b else ())

    if sorted(sig_a(x) for x in A.elements) != sorted(sig_b(x) for x in B.elements):
        return
    sigs_b = {y: sig_b(y) for y in JB}
    under = [[i for i, j in enumerate(JA) if A.leq(j, x)] for x in A.elements]
    image = [0] * len(JA)
    used: set[int] = set()

    def go(i: int) -> Iterator[tuple[int, ...]]:
        if i == len(JA):
            table = tuple(B.join(image[k] for k in under[x]) for x in A.elements)
            if len(set(table)) != len(B):
                return
            t = np.asarray(table)
            if np.array_equal(A.leq_matrix, B.leq_matrix[t[:, None], t[None, :]]):
                yield table
            return
        sig = sig_a(JA[i])
        for cand in JB:
            if cand in used or sigs_b[cand] != sig:
                continue
            if any(A.leq(JA[k], JA[i]) != B.leq(image[k], cand) or A.leq(JA[i], JA[k]) != B.leq(cand, image[k])
                   for k in range(i)):
                continue
            image[i] = cand
            used.add(cand)
            yield from go(i + 1)
            used.discard(cand)

    yield from go(0)


def find_lattice_isomorphism(A: FiniteSupLattice, B: FiniteSupLattice) -> tuple[int, ...] | None:
    return next(lattice_isomorphisms(A, B), None)


# ---------------------------------------------------------------------------
# named lattices

def chain(n: int) -> FiniteSupLattice:
    """The chain 0 < 1 < ... < n-1 (labels '0', 'a', 'b', ..., '1')."""
    if n == 1:
        labels = ["0"]
    else:
        inner = [chr(ord("a") + k) for k in range(n - 2)]
        labels = ["0", *inner, "1"]
    leq = np.triu(np.ones((n, n), dtype=bool))
    return FiniteSupLattice(labels, leq)


def one() -> FiniteSupLattice:
    return chain(1)


def two() -> FiniteSupLattice:
    return chain(2)


def diamond() -> FiniteSupLattice:
    """M2 = 2 x 2: 0 < x, y < 1."""
    leq = [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]]
    return validate_lattice(["0", "x", "y", "1"], leq)


def pentagon() -> FiniteSupLattice:
    """N5: 0 < a < b < 1, 0 < c < 1."""
    leq = [
        [1, 1, 1, 1, 1],
        [0, 1, 1, 0, 1],
        [0, 0, 1, 0, 1],
        [0, 0, 0, 1, 1],
        [0, 0, 0, 0, 1],
    ]
    return validate_lattice(["0", "a", "b", "c", "1"], leq)


def powerset_lattice(nbits: int, labels: Sequence | None = None) -> FiniteSupLattice:
    """Subsets of an ``nbits``-element set, element i being the bitmask i."""
    n = 1 << nbits
    masks = np.arange(n, dtype=np.int64)
    leq = (masks[:, None] & ~masks[None, :]) == 0
    join = masks[:, None] | masks[None, :]
    return FiniteSupLattice(list(labels) if labels is not None else list(range(n)), leq, join_table=join, validate=False)


def lattices_up_to(n: int) -> list[FiniteSupLattice]:
    """Every lattice with at most ``n`` elements, one per isomorphism class.

    Brute force over orders on the elements strictly between bottom and
    top, deduplicated by a canonical form; practical for ``n <= 6``.
    """
    if n > 6:
        raise ValueError("lattice census is only supported up to 6 elements")
    out: list[FiniteSupLattice] = []
    for size in range(1, n + 1):
        out.extend(_lattices_of_size(size))
    return out


def _lattices_of_size(size: int) -> list[FiniteSupLattice]:
    if size <= 2:
        return [chain(size)]
    k = size - 2
    pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
    seen: dict[bytes, np.ndarray] = {}
    for bits in range(1 << len(pairs)):
        rel = np.eye(k, dtype=bool)
        for b, (i, j) in enumerate(pairs):
            if bits >> b & 1:
                rel[i, j] = True
        if (rel & rel.T & ~np.eye(k, dtype=bool)).any():
            continue
        ri = rel.astype(np.int64)
        if (((ri @ ri) > 0) & ~rel).any():
            continue
        full = np.zeros((size, size), dtype=bool)
        full[0, :] = True
        full[:, size - 1] = True
        full[1:size - 1, 1:size - 1] = rel
        try:
            _join_table(full)
        except NoJoin:
            continue
        key = min(
            _perm_key(full, perm) for perm in itertools.permutations(range(1, size - 1))
        )
        if key not in seen:
            seen[key] = full
    lattices = []
    for key in sorted(seen, key=lambda b: (-int(seen[b].sum()), b)):
        full = seen[key]
        perm = min(itertools.permutations(range(1, size - 1)), key=lambda p: _perm_key(full, p))
        order = [0, *perm, size - 1]
        canon = full[np.ix_(order, order)]
        inner = [chr(ord("a") + i) for i in range(size - 2)]
        lattices.append(FiniteSupLattice(["0", *inner, "1"], canon.copy()))
    return lattices


def _perm_key(full: np.ndarray, perm) -> bytes:
    order = [0, *perm, full.shape[0] - 1]
    return np.packbits(full[np.ix_(order, order)]).tobytes()


# ---------------------------------------------------------------------------
# lattices of maps ordered pointwise

class MapLattice(FiniteSupLattice):
    """Maps ``source -> target`` (labels are tables) ordered pointwise."""

    source: object
    target: FiniteSupLattice

    def map(self, i: int) -> SupMap:
        src = self.source.carrier if hasattr(self.source, "carrier") else self.source
        return SupMap(src, self.target, self.labels[i])


def _row_codes(rows: np.ndarray, base: int) -> np.ndarray | None:
    if rows.shape[-1] * max(base, 2).bit_length() > 62:
        return None
    weights = base ** np.arange(rows.shape[-1] - 1, -1, -1, dtype=np.int64)
    return rows @ weights


def lookup_rows(tables: Sequence[tuple], base: int, rows: np.ndarray) -> np.ndarray:
    """Index into ``tables`` of every row of ``rows`` (last axis); KeyError if absent."""
    T = np.array(tables, dtype=np.int64).reshape(len(tables), -1)
    shape = rows.shape[:-1]
    flat_rows = rows.reshape(-1, T.shape[1])
    codes = _row_codes(T, base)
    if codes is not None and T.shape[1] > 0:
        order = np.argsort(codes)
        sorted_codes = codes[order]
        flat = _row_codes(flat_rows, base)
        pos = np.minimum(np.searchsorted(sorted_codes, flat), len(T) - 1)
        if not (sorted_codes[pos] == flat).all():
            bad = int(np.flatnonzero(sorted_codes[pos] != flat)[0])
            raise KeyError(tuple(flat_rows[bad].tolist()))
        return order[pos].reshape(shape)
    index = {tuple(t): i for i, t in enumerate(tables)}
    out = np.array([index[tuple(r)] for r in flat_rows.tolist()], dtype=np.int64)
    return out.reshape(shape)


def map_lattice(source, target: FiniteSupLattice, tables: Sequence[Sequence[int]]) -> MapLattice:
    """Pointwise-ordered lattice on ``tables``; pointwise joins must stay inside."""
    tables = [tuple(t) for t in tables]
    n = len(tables)
    T = np.array(tables, dtype=np.int64).reshape(n, -1)
    if T.shape[1] == 0:
        leq = np.ones((n, n), dtype=bool)
        join = np.zeros((n, n), dtype=np.int64)
    else:
        leq = np.ones((n, n), dtype=bool)
        join_rows = np.empty((n, n, T.shape[1]), dtype=np.int64)
        for x in range(T.shape[1]):
            col = T[:, x]
            leq &= target.leq_matrix[col[:, None], col[None, :]]
            join_rows[:, :, x] = target.join_array[col[:, None], col[None, :]]
        try:
            join = lookup_rows(tables, len(target), join_rows)
        except KeyError as exc:
            raise AssertionError(f"pointwise join {exc} left the set of maps") from None
    lattice = MapLattice(tables, leq, join_table=join, validate=False)
    lattice.source = source
    lattice.target = target
    return lattice


# ---------------------------------------------------------------------------
# closures and sublattices

def join_closure(L: FiniteSupLattice, generators: Iterable[int]) -> tuple[int, ...]:
    """All joins of subsets of ``generators`` (bottom included), sorted."""
    gens = sorted(set(generators))
    seen = {L.bottom}
    frontier = [L.bottom]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = L.join2(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


def join_generates(L: FiniteSupLattice, generators: Iterable[int]) -> bool:
    """Whether the join-closure of ``generators`` is all of ``L``."""
    gens = set(generators)
    return all(j in gens for j in L.join_irreducibles)


def join_sublattice(L: FiniteSupLattice, members: Sequence[int]) -> FiniteSupLattice:
    """The join-closed subset ``members`` with inherited order and joins."""
    members = list(members)
    pos = {x: i for i, x in enumerate(members)}
    join = [[pos[L.join2(x, y)] for y in members] for x in members]
    return FiniteSupLattice([L.labels[x] for x in members], L.leq_matrix[np.ix_(members, members)],
                            join_table=join, validate=False)
