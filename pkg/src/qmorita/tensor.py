"""Internal hom and tensor product of finite sup-lattices.

The tensor ``L (x) M`` is modelled by bi-closed subsets of ``L x M``:
down-closed sets whose every row and column section is closed under joins
(the empty join included).  A pair ``(l, m)`` is stored as bit
``l * |M| + m``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .config import DEFAULT_BUDGET
from .errors import BudgetExceeded, NotABimorphism
from .lattice import Check, FiniteSupLattice, MapLattice, SupMap, map_lattice, sup_maps


def internal_hom(L: FiniteSupLattice, M: FiniteSupLattice) -> MapLattice:
    """All join-preserving maps ``L -> M`` ordered pointwise."""
    return map_lattice(L, M, sup_maps(L, M))


# ---------------------------------------------------------------------------
# bimorphisms

@dataclass(frozen=True)
class Bimorphism:
    left: FiniteSupLattice
    right: FiniteSupLattice
    target: FiniteSupLattice
    table: tuple[tuple[int, ...], ...]

    def __call__(self, l: int, m: int) -> int:
        return self.table[l][m]


def is_bimorphism(L: FiniteSupLattice, M: FiniteSupLattice, N: FiniteSupLattice, table) -> Check:
    """Joins preserved in each variable separately, empty joins included."""
    for m in M.elements:
        if table[L.bottom][m] != N.bottom:
            return Check(False, ("left", (), m))
    for l in L.elements:
        if table[l][M.bottom] != N.bottom:
            return Check(False, ("right", l, ()))
    for m in M.elements:
        for x in L.elements:
            for y in range(x + 1, len(L)):
                if table[L.join2(x, y)][m] != N.join2(table[x][m], table[y][m]):
                    return Check(False, ("left", (x, y), m))
    for l in L.elements:
        row = table[l]
        for x in M.elements:
            for y in range(x + 1, len(M)):
                if row[M.join2(x, y)] != N.join2(row[x], row[y]):
                    return Check(False, ("right", l, (x, y)))
    return Check(True)


def bimorphism(L, M, N, table) -> Bimorphism:
    table = tuple(tuple(int(v) for v in row) for row in table)
    check = is_bimorphism(L, M, N, table)
    if not check:
        raise NotABimorphism(f"not a bimorphism: {check.witness}", check.witness)
    return Bimorphism(L, M, N, table)


def enumerate_bimorphisms(L: FiniteSupLattice, M: FiniteSupLattice, N: FiniteSupLattice) -> list[tuple]:
    """Every bimorphism ``L x M -> N`` as a table of rows.

    Values are picked on pairs of join-irreducibles, monotone in both
    coordinates, extended by joins over the rectangle below each pair, and
    the result is checked cell by cell.
    """
    JL, JM = L.join_irreducibles, M.join_irreducibles
    cells = [(a, b) for a in range(len(JL)) for b in range(len(JM))]
    below = []
    for idx, (a, b) in enumerate(cells):
        below.append([k for k, (c, d) in enumerate(cells[:idx])
                      if L.leq(JL[c], JL[a]) and M.leq(JM[d], JM[b])])
    underL = [[a for a, j in enumerate(JL) if L.leq(j, l)] for l in L.elements]
    underM = [[b for b, j in enumerate(JM) if M.leq(j, m)] for m in M.elements]
    values = [0] * len(cells)
    out = []

    def go(i: int) -> None:
        if i == len(cells):
            table = tuple(
                tuple(N.join(values[a * len(JM) + b] for a in underL[l] for b in underM[m]) for m in M.elements)
                for l in L.elements
            )
            if is_bimorphism(L, M, N, table):
                out.append(table)
            return
        floor = N.join(values[k] for k in below[i])
        for v in N.up_set(floor):
            values[i] = v
            go(i + 1)

    go(0)
    out.sort()
    return out


# ---------------------------------------------------------------------------
# tensor product

class _Closure:
    """Bi-closure on subsets of ``L x M`` encoded as bitmasks."""

    def __init__(self, L: FiniteSupLattice, M: FiniteSupLattice):
        self.L, self.M = L, M
        w = len(M)
        self.width = w
        self.down = [0] * (len(L) * w)
        for l in L.elements:
            for m in M.elements:
                mask = 0
                for l2 in L.down_set(l):
                    for m2 in M.down_set(m):
                        mask |= 1 << (l2 * w + m2)
                self.down[l * w + m] = mask
        base = 0
        for l in L.elements:
            base |= 1 << (l * w + M.bottom)
        for m in M.elements:
            base |= 1 << (L.bottom * w + m)
        self.base = base

    def __call__(self, s: int) -> int:
        L, M, w, down = self.L, self.M, self.width, self.down
        s |= self.base
        while True:
            t = 0
            bits = s
            while bits:
                low = bits & -bits
                t |= down[low.bit_length() - 1]
                bits ^= low
            for m in M.elements:
                j = L.join(l for l in L.elements if t >> (l * w + m) & 1)
                t |= down[j * w + m]
            for l in L.elements:
                j = M.join(m for m in M.elements if t >> (l * w + m) & 1)
                t |= down[l * w + j]
            if t == s:
                return s
            s = t


@dataclass(frozen=True, eq=False)
class TensorLattice:
    """``lattice`` has bi-closed bitmasks as labels; ``universal[l][m]`` indexes u(l, m)."""

    left: FiniteSupLattice
    right: FiniteSupLattice
    lattice: FiniteSupLattice
    universal: tuple[tuple[int, ...], ...]

    def pairs(self, t: int) -> list[tuple[int, int]]:
        mask, w = self.lattice.labels[t], len(self.right)
        return [(p // w, p % w) for p in range(len(self.left) * w) if mask >> p & 1]

    @cached_property
    def universal_map(self) -> Bimorphism:
        return Bimorphism(self.left, self.right, self.lattice, self.universal)


def tensor(L: FiniteSupLattice, M: FiniteSupLattice, *, budget: int = DEFAULT_BUDGET) -> TensorLattice:
    """Join-closure of the elementary tensors u(l, m) = bi-closure of {(l, m)}."""
    close = _Closure(L, M)
    w = len(M)
    gens = [[close(1 << (l * w + m)) for m in M.elements] for l in L.elements]
    distinct = sorted({g for row in gens for g in row})
    seen = {close(0)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in distinct:
                y = close(x | g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > budget:
                        raise BudgetExceeded("tensor product", len(seen), budget)
        frontier = nxt
    return _tensor_from_sets(L, M, seen, gens)


def _tensor_from_sets(L, M, sets, gens) -> TensorLattice:
    masks = sorted(sets, key=lambda s: (bin(s).count("1"), s))
    if len(L) * len(M) <= 62:
        arr = np.array(masks, dtype=np.int64)
        leq = (arr[:, None] & ~arr[None, :]) == 0
    else:
        leq = np.array([[a & ~b == 0 for b in masks] for a in masks], dtype=bool)
    lattice = FiniteSupLattice(masks, leq, validate=False)
    universal = tuple(tuple(lattice.index(g) for g in row) for row in gens)
    return TensorLattice(L, M, lattice, universal)


def factor_through_tensor(b: Bimorphism, T: TensorLattice | None = None) -> SupMap:
    """The unique sup-map h with h(u(l, m)) = b(l, m)."""
    L, M, N = b.left, b.right, b.target
    check = is_bimorphism(L, M, N, b.table)
    if not check:
        raise NotABimorphism(f"not a bimorphism: {check.witness}", check.witness)
    if T is None:
        T = tensor(L, M)
    table = tuple(N.join(b.table[l][m] for l, m in T.pairs(t)) for t in T.lattice.elements)
    h = SupMap(T.lattice, N, table)
    for l in L.elements:
        for m in M.elements:
            if table[T.universal[l][m]] != b.table[l][m]:
                raise AssertionError(f"factorization disagrees at ({l}, {m})")
    return h


def unit_isomorphism(L: FiniteSupLattice, T: TensorLattice | None = None) -> Check:
    """Check that l -> u(1, l) is an order isomorphism L -> 2 (x) L."""
    if T is None:
        from .lattice import two
        T = tensor(two(), L)
    if len(T.left) != 2:
        raise ValueError("left factor must be the lattice 2")
    table = T.universal[T.left.top]
    return _is_order_iso(L, T.lattice, table)


def swap_isomorphism(T: TensorLattice, S: TensorLattice) -> Check:
    """Transpose bi-closed sets of ``L x M`` into ``M x L`` and check it is an order isomorphism."""
    L, M = T.left, T.right
    if S.left != M or S.right != L:
        raise ValueError("second tensor must have swapped factors")
    table = []
    for t in T.lattice.elements:
        mask = 0
        for l, m in T.pairs(t):
            mask |= 1 << (m * len(L) + l)
        if mask not in S.lattice._index:
            return Check(False, ("not bi-closed after swap", t))
        table.append(S.lattice.index(mask))
    check = _is_order_iso(T.lattice, S.lattice, table)
    if check:
        for l in L.elements:
            for m in M.elements:
                if table[T.universal[l][m]] != S.universal[m][l]:
                    return Check(False, ("generator mismatch", l, m))
    return check


def _is_order_iso(A: FiniteSupLattice, B: FiniteSupLattice, table: Sequence[int]) -> Check:
    if len(A) != len(B) or len(set(table)) != len(B):
        return Check(False, ("not bijective", len(A), len(B)))
    t = np.asarray(table)
    same = A.leq_matrix == B.leq_matrix[t[:, None], t[None, :]]
    if not same.all():
        x, y = (int(v) for v in np.argwhere(~same)[0])
        return Check(False, ("order", x, y))
    return Check(True, tuple(table))


def curry_bijection_check(L: FiniteSupLattice, M: FiniteSupLattice, N: FiniteSupLattice) -> Check:
    """Build bimorphisms, maps ``L -> [M, N]`` and maps ``L (x) M -> N`` and
    check the explicit bijections between them both ways.

    The witness is a dict of counts (or the first failing item).
    """
    H = internal_hom(M, N)
    curried = sup_maps(L, H)
    direct = enumerate_bimorphisms(L, M, N)
    T = tensor(L, M)
    tensored = sup_maps(T.lattice, N)
    counts = {"bimorphisms": len(direct), "curried": len(curried), "tensored": len(tensored)}

    uncurried = []
    for phi in curried:
        uncurried.append(tuple(tuple(H.labels[phi[l]][m] for m in M.elements) for l in L.elements))
    if sorted(uncurried) != direct:
        return Check(False, {"stage": "uncurry", **counts})
    for b, phi in zip(uncurried, curried):
        recurried = tuple(H.index(tuple(b[l][m] for m in M.elements)) for l in L.elements)
        if recurried != phi:
            return Check(False, {"stage": "recurry", "map": phi, **counts})

    factored = []
    for b in direct:
        h = factor_through_tensor(Bimorphism(L, M, N, b), T)
        factored.append(h.table)
        back = tuple(tuple(h.table[T.universal[l][m]] for m in M.elements) for l in L.elements)
        if back != b:
            return Check(False, {"stage": "restrict", "bimorphism": b, **counts})
    if sorted(factored) != tensored:
        return Check(False, {"stage": "factor", **counts})
    return Check(True, counts)
