"""Quantales: validation, morphisms, recognizers, standard constructions and
isomorphism search.

Multiplication is a full table ``mult[a][b] = a * b``.  Validation uses
binary joins plus annihilation by the bottom element, which is equivalent
to preserving all joins in a finite lattice.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .config import DEFAULT_BUDGET
from .errors import BudgetExceeded, NotAMonoid, NotAssociative, NotDistributive, QuantaleError, UnitFails
from .lattice import (
    Check,
    FiniteSupLattice,
    MapLattice,
    SupMap,
    chain,
    is_sup_map,
    lattice_isomorphisms,
    lookup_rows,
    powerset_lattice,
    two,
)
from .tensor import internal_hom


class Quantale:
    """A sup-lattice with an associative, join-distributive unital multiplication."""

    def __init__(self, carrier: FiniteSupLattice, mult, unit: int, *, validate: bool = True, name: str | None = None):
        mult = np.asarray(mult, dtype=np.int64)
        n = len(carrier)
        if mult.shape != (n, n):
            raise QuantaleError(f"multiplication table has shape {mult.shape}, expected {(n, n)}")
        if not (0 <= unit < n):
            raise UnitFails(f"unit {unit} is not an element", unit)
        if n and (mult.min() < 0 or mult.max() >= n):
            raise QuantaleError("multiplication table leaves the carrier")
        self.carrier = carrier
        self.mult_array = mult
        mult.setflags(write=False)
        self._mult = mult.tolist()
        self.unit = int(unit)
        self.name = name
        if validate:
            _validate_tables(carrier, mult, self.unit)

    def __len__(self) -> int:
        return len(self.carrier)

    def __repr__(self) -> str:
        return f"Quantale({self.name or ''}, size={len(self)})"

    @property
    def elements(self) -> range:
        return self.carrier.elements

    @property
    def bottom(self) -> int:
        return self.carrier.bottom

    @property
    def top(self) -> int:
        return self.carrier.top

    def mul(self, a: int, b: int) -> int:
        return self._mult[a][b]

    def mul_all(self, *xs: int) -> int:
        out = self.unit
        for x in xs:
            out = self._mult[out][x]
        return out

    def join(self, xs) -> int:
        return self.carrier.join(xs)

    def leq(self, a: int, b: int) -> bool:
        return self.carrier.leq(a, b)

    def name_of(self, a: int) -> str:
        return self.carrier.name(a)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Quantale):
            return NotImplemented
        return self.unit == other.unit and self.carrier == other.carrier and np.array_equal(self.mult_array, other.mult_array)

    def __hash__(self) -> int:
        return hash((len(self), self.unit))

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        return tuple(a for a in self.elements if self._mult[a][a] == a)


def _validate_tables(L: FiniteSupLattice, M: np.ndarray, unit: int) -> None:
    n = len(L)
    idx = np.arange(n)
    bad = np.flatnonzero((M[unit] != idx) | (M[:, unit] != idx))
    if len(bad):
        a = int(bad[0])
        raise UnitFails(f"unit {unit} fails at {a}", a)
    for a in range(n):
        left = M[M[a]]           # [b, c] = (a*b)*c
        right = M[a][M]          # [b, c] = a*(b*c)
        diff = left != right
        if diff.any():
            b, c = (int(v) for v in np.argwhere(diff)[0])
            raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})", (a, b, c))
    _check_distributive(L, M)


def _check_distributive(L: FiniteSupLattice, M: np.ndarray) -> None:
    # joins with join-irreducibles suffice: every element is a join of them
    J, z = L.join_array, L.bottom
    irr = np.array(L.join_irreducibles, dtype=np.int64)
    for a in range(len(L)):
        if M[a, z] != z:
            raise NotDistributive(f"{a}*0 != 0", (a, (), "left"))
        if M[z, a] != z:
            raise NotDistributive(f"0*{a} != 0", (a, (), "right"))
    if not len(irr):
        return
    for a in range(len(L)):
        row, col = M[a], M[:, a]
        diff = row[J[:, irr]] != J[row[:, None], row[irr][None, :]]
        if diff.any():
            b, k = (int(v) for v in np.argwhere(diff)[0])
            raise NotDistributive(f"{a}*({b} v {irr[k]}) is not distributed", (a, (b, int(irr[k])), "left"))
        diff = col[J[:, irr]] != J[col[:, None], col[irr][None, :]]
        if diff.any():
            b, k = (int(v) for v in np.argwhere(diff)[0])
            raise NotDistributive(f"({b} v {irr[k]})*{a} is not distributed", (a, (b, int(irr[k])), "right"))


def validate_quantale(carrier: FiniteSupLattice, mult, unit: int, *, name: str | None = None) -> Quantale:
    return Quantale(carrier, mult, unit, validate=True, name=name)


def distributes_binary(carrier: FiniteSupLattice, mult) -> Check:
    """The binary-join plus bottom-annihilation test on a bare table."""
    try:
        _check_distributive(carrier, np.asarray(mult, dtype=np.int64))
    except NotDistributive as exc:
        return Check(False, exc.witness)
    return Check(True)


# ---------------------------------------------------------------------------
# morphisms

@dataclass(frozen=True, eq=False)
class QuantaleMorphism:
    source: Quantale
    target: Quantale
    table: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.table[a]

    @property
    def sup_map(self) -> SupMap:
        return SupMap(self.source.carrier, self.target.carrier, self.table)


def is_quantale_morphism(A: Quantale, B: Quantale, table: Sequence[int]) -> Check:
    check = is_sup_map(A.carrier, B.carrier, table)
    if not check:
        return Check(False, ("sup", check.witness))
    if table[A.unit] != B.unit:
        return Check(False, ("unit", A.unit))
    t = np.asarray(table)
    diff = t[A.mult_array] != B.mult_array[t[:, None], t[None, :]]
    if diff.any():
        a, b = (int(v) for v in np.argwhere(diff)[0])
        return Check(False, ("mult", a, b))
    return Check(True)


def quantale_morphism(A: Quantale, B: Quantale, table: Sequence[int]) -> QuantaleMorphism:
    table = tuple(int(v) for v in table)
    check = is_quantale_morphism(A, B, table)
    if not check:
        raise QuantaleError(f"not a quantale morphism: {check.witness}", check.witness)
    return QuantaleMorphism(A, B, table)


# ---------------------------------------------------------------------------
# recognizers

def is_commutative(A: Quantale) -> bool:
    return bool(np.array_equal(A.mult_array, A.mult_array.T))


def is_idempotent(A: Quantale) -> bool:
    return bool(np.array_equal(A.mult_array.diagonal(), np.arange(len(A))))


def is_locale(A: Quantale) -> bool:
    """Commutative, idempotent, and every element lies below the unit."""
    return is_commutative(A) and is_idempotent(A) and A.unit == A.top


def commutation_witness(A: Quantale) -> tuple[int, int] | None:
    diff = A.mult_array != A.mult_array.T
    if not diff.any():
        return None
    a, b = np.argwhere(diff)[0]
    return int(a), int(b)


# ---------------------------------------------------------------------------
# constructions

def meet_quantale(L: FiniteSupLattice, name: str | None = None) -> Quantale:
    """``L`` with multiplication = meet and unit = top (a locale when distributive)."""
    return Quantale(L, L.meet_array, L.top, name=name)


def two_quantale() -> Quantale:
    return meet_quantale(two(), "2")


def chain_locale(n: int) -> Quantale:
    return meet_quantale(chain(n), f"C{n}")


def relation_quantale(X: int | Sequence, *, budget: int = DEFAULT_BUDGET) -> Quantale:
    """Relations on ``X`` under inclusion and composition ``(r;s)(x,z) = exists y. r(x,y) and s(y,z)``.

    Element ``i`` is the relation whose pair ``(x, y)`` is bit ``x*n + y``;
    the unit is the diagonal.
    """
    points = list(range(X)) if isinstance(X, int) else list(X)
    n = len(points)
    if n == 0:
        raise ValueError("relation quantale needs a nonempty set")
    size = 1 << (n * n)
    if size > budget:
        raise BudgetExceeded("relation quantale", size, budget)
    bits = (np.arange(size)[:, None] >> np.arange(n * n)[None, :]) & 1
    R = bits.reshape(size, n, n)
    comp = np.einsum("aij,bjk->abik", R, R) > 0
    weights = 1 << np.arange(n * n)
    mult = comp.reshape(size, size, n * n).astype(np.int64) @ weights
    labels = []
    for r in range(size):
        pairs = [f"({points[p // n]},{points[p % n]})" for p in range(n * n) if r >> p & 1]
        labels.append("{" + ",".join(pairs) + "}")
    L = powerset_lattice(n * n, labels)
    unit = sum(1 << (x * n + x) for x in range(n))
    return Quantale(L, mult, unit, validate=size <= 64, name=f"Rel({n})")


def _check_monoid(table) -> int:
    T = np.asarray(table, dtype=np.int64)
    k = T.shape[0]
    if T.shape != (k, k) or k == 0 or T.min() < 0 or T.max() >= k:
        raise NotAMonoid("monoid table must be a square table over its own elements")
    for a in range(k):
        if not np.array_equal(T[T[a]], T[a][T]):
            b, c = (int(v) for v in np.argwhere(T[T[a]] != T[a][T])[0])
            raise NotAMonoid(f"not associative at ({a},{b},{c})", (a, b, c))
    idx = np.arange(k)
    units = [e for e in range(k) if np.array_equal(T[e], idx) and np.array_equal(T[:, e], idx)]
    if not units:
        raise NotAMonoid("no two-sided identity")
    return units[0]


def powerset_monoid_quantale(table, names: Sequence[str] | None = None) -> Quantale:
    """Subsets of a finite monoid with elementwise products; unit {e}."""
    e = _check_monoid(table)
    k = len(table)
    names = list(names) if names is not None else [str(i) for i in range(k)]
    size = 1 << k
    mult = np.zeros((size, size), dtype=np.int64)
    for S in range(size):
        for T in range(size):
            out = 0
            for s in range(k):
                if S >> s & 1:
                    for t in range(k):
                        if T >> t & 1:
                            out |= 1 << table[s][t]
            mult[S, T] = out
    labels = ["{" + ",".join(names[i] for i in range(k) if S >> i & 1) + "}" for S in range(size)]
    return Quantale(powerset_lattice(k, labels), mult, 1 << e, name=f"P({k})")


def cyclic_group_table(k: int) -> list[list[int]]:
    return [[(a + b) % k for b in range(k)] for a in range(k)]


def composition_quantale(H: MapLattice, name: str | None = None, *, validate: bool = True) -> Quantale:
    """Endomaps in ``H`` under ``f * g = f . g`` with the identity as unit."""
    tables = list(H.labels)
    T = np.array(tables, dtype=np.int64).reshape(len(tables), -1)
    composed = T[:, T]  # [f, g, x] = f(g(x))
    mult = lookup_rows(tables, len(H.target), composed)
    unit = H.index(tuple(range(T.shape[1])))
    return Quantale(H, mult, unit, validate=validate, name=name)


def endo_quantale(L: FiniteSupLattice) -> Quantale:
    """Sup-endomaps of ``L`` under composition."""
    return composition_quantale(internal_hom(L, L), name="End")


def opposite(A: Quantale) -> Quantale:
    """Same lattice, reversed multiplication (left modules are right modules over this)."""
    return Quantale(A.carrier, A.mult_array.T.copy(), A.unit, validate=False, name=f"{A.name}^op" if A.name else None)


# ---------------------------------------------------------------------------
# isomorphism search

@dataclass(frozen=True)
class IsoSearch:
    """Either a witness table or exhaustion after ``explored`` order isomorphisms."""

    witness: tuple[int, ...] | None
    explored: int

    @property
    def found(self) -> bool:
        return self.witness is not None

    def __bool__(self) -> bool:
        return self.found


def _element_invariant(A: Quantale):
    def inv(x: int) -> tuple:
        sq = A.mul(x, x)
        return (A.leq(x, A.unit), A.leq(A.unit, x), x == A.unit, sq == x, A.carrier.down_sizes[sq])
    return inv


def quantale_iso_search(A: Quantale, B: Quantale) -> IsoSearch:
    """Brute-force search for an order isomorphism preserving unit and multiplication."""
    if len(A) != len(B):
        return IsoSearch(None, 0)
    explored = 0
    for table in lattice_isomorphisms(A.carrier, B.carrier, extra_a=_element_invariant(A), extra_b=_element_invariant(B)):
        explored += 1
        if table[A.unit] != B.unit:
            continue
        t = np.asarray(table)
        if np.array_equal(t[A.mult_array], B.mult_array[t[:, None], t[None, :]]):
            return IsoSearch(table, explored)
    return IsoSearch(None, explored)


def invert_table(table: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(table)
    for x, y in enumerate(table):
        inv[y] = x
    return tuple(inv)
