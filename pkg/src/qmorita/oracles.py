"""Brute-force reference computations.

Each function here recomputes something the library derives more cleverly,
by scanning subsets, tables or modules directly, so the two can be
compared.  Nothing here is used by the constructions themselves.
"""
from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from .lattice import FiniteSupLattice, join_closure, lattice_isomorphisms
from .modules import RightModule, _validate_action, evaluation_is_epi
from .errors import QuantaleError
from .quantale import Quantale
from .tensor import internal_hom


def subset_join(L: FiniteSupLattice, mask: int) -> int:
    return L.join(x for x in L.elements if mask >> x & 1)


def check_all_joins(L: FiniteSupLattice) -> bool:
    """Every subset's join is an upper bound below every other upper bound."""
    for mask in range(1 << len(L)):
        S = [x for x in L.elements if mask >> x & 1]
        j = subset_join(L, mask)
        if not all(L.leq(s, j) for s in S):
            return False
        for u in L.elements:
            if all(L.leq(s, u) for s in S) and not L.leq(j, u):
                return False
    return True


def preserves_all_joins(source: FiniteSupLattice, target: FiniteSupLattice, table: Sequence[int]) -> bool:
    for mask in range(1 << len(source)):
        image = target.join(table[x] for x in source.elements if mask >> x & 1)
        if table[subset_join(source, mask)] != image:
            return False
    return True


def all_maps(source: FiniteSupLattice, target: FiniteSupLattice):
    return itertools.product(target.elements, repeat=len(source))


def sup_maps_by_scan(source: FiniteSupLattice, target: FiniteSupLattice) -> list[tuple[int, ...]]:
    return [t for t in all_maps(source, target) if preserves_all_joins(source, target, t)]


# ---------------------------------------------------------------------------
# tensor products

def _down_sets(L: FiniteSupLattice, M: FiniteSupLattice) -> list[int]:
    """All down-closed subsets of ``L x M`` as bitmasks (bit ``l*|M| + m``)."""
    w = len(M)
    cells = sorted(((l, m) for l in L.elements for m in M.elements),
                   key=lambda p: (L.down_sizes[p[0]] + M.down_sizes[p[1]], p))
    below = {}
    for l, m in cells:
        mask = 0
        for l2 in L.down_set(l):
            for m2 in M.down_set(m):
                if (l2, m2) != (l, m):
                    mask |= 1 << (l2 * w + m2)
        below[(l, m)] = mask
    # cells come in increasing rank, so everything below a cell is decided first
    out = []

    def go(i: int, s: int) -> None:
        if i == len(cells):
            out.append(s)
            return
        l, m = cells[i]
        go(i + 1, s)
        if s & below[(l, m)] == below[(l, m)]:
            go(i + 1, s | 1 << (l * w + m))

    go(0, 0)
    return out


def is_biclosed(L: FiniteSupLattice, M: FiniteSupLattice, s: int) -> bool:
    w = len(M)

    def has(l, m):
        return s >> (l * w + m) & 1

    for l in L.elements:
        if not has(l, M.bottom):
            return False
        cols = [m for m in M.elements if has(l, m)]
        if not has(l, M.join(cols)):
            return False
    for m in M.elements:
        if not has(L.bottom, m):
            return False
        rows = [l for l in L.elements if has(l, m)]
        if not has(L.join(rows), m):
            return False
    return True


def biclosed_sets(L: FiniteSupLattice, M: FiniteSupLattice) -> list[int]:
    """Every bi-closed subset of ``L x M``: scan all down-closed subsets and filter."""
    return sorted((s for s in _down_sets(L, M) if is_biclosed(L, M, s)), key=lambda s: (bin(s).count("1"), s))


def inclusion_lattice(sets: Sequence[int]) -> FiniteSupLattice:
    leq = [[a & ~b == 0 for b in sets] for a in sets]
    return FiniteSupLattice(list(sets), leq)


# ---------------------------------------------------------------------------
# quantale distributivity over every subset

def distributive_all_subsets(A: Quantale) -> bool:
    """``a * (join S) = join(a * S)`` and the mirror law for every subset ``S``.

    Small carriers are scanned subset by subset.  For larger ones the set of
    pairs ``(join S, join a*S)`` over all ``S`` is generated by adding one
    element at a time; the law holds iff every such pair is ``(x, a*x)``.
    """
    L = A.carrier
    n = len(L)
    if n <= 16:
        return _literal_subsets(A)
    J = L.join_array
    for side in ("left", "right"):
        for a in A.elements:
            prod = A.mult_array[a] if side == "left" else A.mult_array[:, a]
            seen = np.zeros((n, n), dtype=bool)
            seen[L.bottom, L.bottom] = True
            frontier = [(L.bottom, L.bottom)]
            while frontier:
                xs = np.array([p[0] for p in frontier])
                ys = np.array([p[1] for p in frontier])
                nx = J[xs[:, None], np.arange(n)[None, :]].reshape(-1)
                ny = J[ys[:, None], prod[None, :]].reshape(-1)
                fresh = ~seen[nx, ny]
                pairs = set(zip(nx[fresh].tolist(), ny[fresh].tolist()))
                for x, y in pairs:
                    seen[x, y] = True
                frontier = list(pairs)
            xs, ys = np.nonzero(seen)
            if not (prod[xs] == ys).all():
                return False
    return True


def _literal_subsets(A: Quantale) -> bool:
    L = A.carrier
    n = len(L)
    J = L.join_array
    size = 1 << n
    joins = np.full(size, L.bottom, dtype=np.int64)
    left = np.full((size, n), L.bottom, dtype=np.int64)
    right = np.full((size, n), L.bottom, dtype=np.int64)
    for mask in range(1, size):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        joins[mask] = J[joins[rest], low]
        left[mask] = J[left[rest], A.mult_array[:, low]]     # [a] = join a*s
        right[mask] = J[right[rest], A.mult_array[low, :]]   # [a] = join s*a
    ok_left = (A.mult_array[:, joins].T == left).all()
    ok_right = (A.mult_array[joins, :] == right).all()
    return bool(ok_left and ok_right)


# ---------------------------------------------------------------------------
# modules

def modules_by_scan(A: Quantale, L: FiniteSupLattice) -> list[np.ndarray]:
    """Every valid action of ``A`` on ``L`` up to isomorphism, by scanning all
    assignments ``a -> End(L)`` and validating each table."""
    E = internal_hom(L, L)
    tables = np.array(E.labels, dtype=np.int64).reshape(len(E), len(L))
    autos = list(lattice_isomorphisms(L, L))
    found = {}
    for choice in itertools.product(range(len(E)), repeat=len(A)):
        act = tables[list(choice)].T
        try:
            _validate_action(A, L, act)
        except QuantaleError:
            continue
        keys = []
        for p in autos:
            p = np.asarray(p)
            inv = np.empty_like(p)
            inv[p] = np.arange(len(p))
            keys.append(tuple(p[act[inv]].reshape(-1).tolist()))
        found.setdefault(min(keys), act)
    return [found[k] for k in sorted(found)]


def full_by_closure(A: Quantale, e: int) -> bool:
    """Literal join-closure of all products ``a*e*b`` compared with ``A``."""
    products = {A.mul(A.mul(a, e), b) for a in A.elements for b in A.elements}
    return len(join_closure(A.carrier, products)) == len(A)


def generator_by_sweep(Q: RightModule, modules: Sequence[RightModule]) -> bool:
    """Bounded definition: the evaluation ``Hom(Q, M) x Q -> M`` is onto for every sampled ``M``."""
    return all(evaluation_is_epi(Q, M) for M in modules)
