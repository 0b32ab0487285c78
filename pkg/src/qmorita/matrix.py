"""Matrices over a quantale, matrix quantales and their action on free modules.

A square matrix over ``A`` indexed by ``X`` is stored row-major as a tuple of
element indices.  In the matrix quantale the element index of a matrix is
its base-``|A|`` value, so labels coincide with the free-module labels on
``X x X``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import DEFAULT_BUDGET, LAZY_TABLE_THRESHOLD
from .errors import BudgetExceeded, QuantaleMismatch, ShapeMismatch
from .lattice import Check, FiniteSupLattice, product_lattice
from .modules import ModuleMorphism, RightModule, free_generator, free_module, hom_lattice
from .quantale import Quantale, QuantaleMorphism, composition_quantale


@dataclass(frozen=True)
class Matrix:
    quantale: Quantale
    rows: tuple
    cols: tuple
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != len(self.rows) or any(len(r) != len(self.cols) for r in self.entries):
            raise ShapeMismatch("entries do not match the index sets")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def __getitem__(self, xy: tuple[int, int]) -> int:
        return self.entries[xy[0]][xy[1]]

    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.entries for v in row)

    def __str__(self) -> str:
        A = self.quantale
        return "[" + "; ".join(" ".join(A.name_of(v) for v in row) for row in self.entries) + "]"


def matrix(A: Quantale, entries: Sequence[Sequence[int]], rows: Sequence | None = None, cols: Sequence | None = None) -> Matrix:
    entries = tuple(tuple(int(v) for v in row) for row in entries)
    rows = tuple(rows) if rows is not None else tuple(range(len(entries)))
    cols = tuple(cols) if cols is not None else tuple(range(len(entries[0]) if entries else 0))
    return Matrix(A, rows, cols, entries)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """``(a * b)(x, z) = join_y a(x, y) * b(y, z)``."""
    A = a.quantale
    if b.quantale is not A and b.quantale != A:
        raise QuantaleMismatch("matrices over different quantales")
    if a.cols != b.rows:
        raise ShapeMismatch(f"inner index sets differ: {a.cols} vs {b.rows}")
    out = tuple(
        tuple(A.join(A.mul(a.entries[x][y], b.entries[y][z]) for y in range(len(a.cols))) for z in range(len(b.cols)))
        for x in range(len(a.rows))
    )
    return Matrix(A, a.rows, b.cols, out)


def mat_join(a: Matrix, b: Matrix) -> Matrix:
    if a.shape != b.shape:
        raise ShapeMismatch("pointwise join needs equal shapes")
    A = a.quantale
    return Matrix(A, a.rows, a.cols, tuple(tuple(A.carrier.join2(u, v) for u, v in zip(r, s))
                                           for r, s in zip(a.entries, b.entries)))


def identity_matrix(A: Quantale, X: int | Sequence) -> Matrix:
    X = tuple(range(X)) if isinstance(X, int) else tuple(X)
    n = len(X)
    return Matrix(A, X, X, tuple(tuple(A.unit if i == j else A.bottom for j in range(n)) for i in range(n)))


def zero_matrix(A: Quantale, X: int | Sequence, Y: int | Sequence | None = None) -> Matrix:
    X = tuple(range(X)) if isinstance(X, int) else tuple(X)
    Y = X if Y is None else (tuple(range(Y)) if isinstance(Y, int) else tuple(Y))
    return Matrix(A, X, Y, tuple(tuple(A.bottom for _ in Y) for _ in X))


def elementary_matrix(A: Quantale, X: int | Sequence, x: int, y: int) -> Matrix:
    X = tuple(range(X)) if isinstance(X, int) else tuple(X)
    n = len(X)
    return Matrix(A, X, X, tuple(tuple(A.unit if (i, j) == (x, y) else A.bottom for j in range(n)) for i in range(n)))


def matrix_from_flat(A: Quantale, X: int | Sequence, flat: Sequence[int]) -> Matrix:
    X = tuple(range(X)) if isinstance(X, int) else tuple(X)
    n = len(X)
    return Matrix(A, X, X, tuple(tuple(int(v) for v in flat[i * n:(i + 1) * n]) for i in range(n)))


# ---------------------------------------------------------------------------
# the matrix quantale

class PointwiseCarrier:
    """Product of ``k`` copies of a lattice, computed arithmetically instead of
    from tables; used for matrix quantales too large to materialize."""

    def __init__(self, base: FiniteSupLattice, k: int):
        self.base = base
        self.k = k
        self._n = len(base) ** k
        self.bottom = self.index((base.bottom,) * k)
        self.top = self.index((base.top,) * k)

    def __len__(self) -> int:
        return self._n

    @property
    def elements(self) -> range:
        return range(self._n)

    def label(self, i: int) -> tuple[int, ...]:
        b = len(self.base)
        out = []
        for _ in range(self.k):
            i, r = divmod(i, b)
            out.append(r)
        return tuple(reversed(out))

    def index(self, label: Sequence[int]) -> int:
        i = 0
        for v in label:
            i = i * len(self.base) + v
        return i

    def name(self, i: int) -> str:
        return str(self.label(i))

    def leq(self, x: int, y: int) -> bool:
        return all(self.base.leq(u, v) for u, v in zip(self.label(x), self.label(y)))

    def join2(self, x: int, y: int) -> int:
        return self.index(tuple(self.base.join2(u, v) for u, v in zip(self.label(x), self.label(y))))

    def join(self, subset) -> int:
        out = self.bottom
        for s in subset:
            out = self.join2(out, s)
        return out


class MatrixQuantale(Quantale):
    """``Mat_X(A)``; above the lazy threshold products are computed on demand
    and the carrier is not materialized (reported as lazily validated)."""

    def __init__(self, A: Quantale, X: Sequence, carrier, mult, unit: int, *, lazy: bool):
        self.base = A
        self.index_set = tuple(X)
        self.lazy = lazy
        name = f"Mat{len(X)}({A.name})"
        if lazy:
            self.carrier = carrier
            self.unit = unit
            self.name = name
            self.mult_array = None
            self._mult = None
        else:
            super().__init__(carrier, mult, unit, validate=True, name=name)

    def _label(self, i: int) -> tuple[int, ...]:
        return self.carrier.label(i) if self.lazy else self.carrier.labels[i]

    def matrix(self, i: int) -> Matrix:
        return matrix_from_flat(self.base, self.index_set, self._label(i))

    def index_of(self, m: Matrix) -> int:
        return self.carrier.index(m.flat())

    def mul(self, a: int, b: int) -> int:
        if not self.lazy:
            return self._mult[a][b]
        return self.index_of(mat_mul(self.matrix(a), self.matrix(b)))

    def name_of(self, a: int) -> str:
        return str(self.matrix(a))

    def __eq__(self, other) -> bool:
        if isinstance(other, MatrixQuantale) and (self.lazy or other.lazy):
            return self is other or (self.lazy == other.lazy and self.base == other.base
                                     and self.index_set == other.index_set)
        return super().__eq__(other)

    __hash__ = Quantale.__hash__


def _matrix_product_table(A: Quantale, n: int, flats: np.ndarray) -> np.ndarray:
    """Full multiplication table of all ``n x n`` matrices given as flat rows."""
    N = len(flats)
    mats = flats.reshape(N, n, n)
    J = A.carrier.join_array
    M = A.mult_array
    stride = len(A) ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
    out = np.empty((N, N), dtype=np.int64)
    for i in range(N):
        a = mats[i]
        prod = np.empty((N, n, n), dtype=np.int64)
        for x in range(n):
            for z in range(n):
                acc = np.full(N, A.bottom, dtype=np.int64)
                for y in range(n):
                    acc = J[acc, M[a[x, y], mats[:, y, z]]]
                prod[:, x, z] = acc
        out[i] = prod.reshape(N, n * n) @ stride
    return out


def matrix_quantale(A: Quantale, X: int | Sequence, *, budget: int = DEFAULT_BUDGET) -> MatrixQuantale:
    """All ``X x X`` matrices with pointwise order, product ``*`` and unit ``i_X``."""
    X = tuple(range(X)) if isinstance(X, int) else tuple(X)
    n = len(X)
    size = len(A) ** (n * n)
    if size > budget:
        raise BudgetExceeded("matrix quantale", size, budget)
    lazy = size > LAZY_TABLE_THRESHOLD
    if lazy:
        carrier = PointwiseCarrier(A.carrier, n * n)
        return MatrixQuantale(A, X, carrier, None, carrier.index(identity_matrix(A, X).flat()), lazy=True)
    carrier = product_lattice([A.carrier] * (n * n))
    unit = carrier.index(identity_matrix(A, X).flat())
    mult = _matrix_product_table(A, n, np.array(carrier.labels, dtype=np.int64).reshape(size, n * n))
    return MatrixQuantale(A, X, carrier, mult, unit, lazy=lazy)


# ---------------------------------------------------------------------------
# matrices as endomorphisms of free modules

def apply_matrix(a: Matrix, F: RightModule, f: int) -> int:
    """``(a . f)_x = join_x' a(x, x') * f(x')`` on the free module ``F``."""
    A = a.quantale
    vec = F.carrier.labels[f]
    n = len(a.rows)
    out = tuple(A.join(A.mul(a.entries[x][y], vec[y]) for y in range(n)) for x in range(n))
    return F.carrier.index(out)


def matrix_endomorphism(a: Matrix, F: RightModule) -> ModuleMorphism:
    return ModuleMorphism(F, F, tuple(apply_matrix(a, F, f) for f in F.elements))


def matrix_of_endomorphism(phi: Sequence[int], F: RightModule, A: Quantale, X: Sequence) -> Matrix:
    """Inverse direction: ``(x, x')`` entry is ``phi(delta_x')`` at ``x``."""
    n = len(X)
    cols = [F.carrier.labels[phi[free_generator(F, y)]] for y in range(n)]
    return Matrix(A, tuple(X), tuple(X), tuple(tuple(cols[y][x] for y in range(n)) for x in range(n)))


@dataclass(frozen=True)
class JIso:
    matrices: Quantale
    endomorphisms: Quantale
    free: RightModule
    forward: QuantaleMorphism
    backward: QuantaleMorphism


def j_iso(A: Quantale, X: int | Sequence, *, budget: int = DEFAULT_BUDGET) -> tuple[JIso, Check]:
    """Build both directions between ``Mat_X(A)`` and the endomorphism quantale
    of the free module on ``X`` and verify they are inverse quantale isomorphisms.

    The check covers every element (both round trips), every product pair
    and the unit.
    """
    X = tuple(range(X)) if isinstance(X, int) else tuple(X)
    Mq = matrix_quantale(A, X, budget=budget)
    F = free_module(A, len(X), budget=budget)
    H = hom_lattice(F, F)
    E = composition_quantale(H, name=f"End({A.name}^{len(X)})")
    fwd = tuple(H.index(matrix_endomorphism(Mq.matrix(i), F).table) for i in Mq.elements)
    bwd = tuple(Mq.index_of(matrix_of_endomorphism(H.labels[k], F, A, X)) for k in E.elements)
    forward = QuantaleMorphism(Mq, E, fwd)
    backward = QuantaleMorphism(E, Mq, bwd)
    iso = JIso(Mq, E, F, forward, backward)
    return iso, verify_j_iso(iso)


def verify_j_iso(iso: JIso) -> Check:
    Mq, E = iso.matrices, iso.endomorphisms
    fwd, bwd = iso.forward.table, iso.backward.table
    if len(Mq) != len(E):
        return Check(False, ("cardinality", len(Mq), len(E)))
    for i in Mq.elements:
        if bwd[fwd[i]] != i:
            return Check(False, ("round trip", "matrix", i))
    for k in E.elements:
        if fwd[bwd[k]] != k:
            return Check(False, ("round trip", "endomorphism", k))
    if fwd[Mq.unit] != E.unit:
        return Check(False, ("unit",))
    if Mq.lazy:
        for a in Mq.elements:
            for b in Mq.elements:
                if fwd[Mq.mul(a, b)] != E.mul(fwd[a], fwd[b]):
                    return Check(False, ("product", a, b))
    else:
        t = np.asarray(fwd)
        diff = t[Mq.mult_array] != E.mult_array[t[:, None], t[None, :]]
        if diff.any():
            a, b = (int(v) for v in np.argwhere(diff)[0])
            return Check(False, ("product", a, b))
        diff = t[Mq.carrier.join_array] != E.carrier.join_array[t[:, None], t[None, :]]
        if diff.any():
            a, b = (int(v) for v in np.argwhere(diff)[0])
            return Check(False, ("join", a, b))
    return Check(True, {"size": len(Mq)})


def characteristic_matrix(A: Quantale, relation_index: int, n: int) -> tuple[int, ...]:
    """Flat matrix over the two-element quantale of a relation bitmask (bit ``x*n + y``)."""
    return tuple(A.top if relation_index >> p & 1 else A.bottom for p in range(n * n))
