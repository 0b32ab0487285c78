"""Right modules over a quantale and their morphisms.

An action is a table ``act[m, a] = m . a`` of shape ``(|M|, |A|)``.  Left
modules are handled as right modules over the opposite quantale.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .config import DEFAULT_BUDGET
from .errors import (
    AssociativityFails,
    BudgetExceeded,
    NotBimorphism,
    NotEquivariant,
    QuantaleError,
    QuantaleMismatch,
    UnitActionFails,
)
from .lattice import (
    Check,
    FiniteSupLattice,
    MapLattice,
    SupMap,
    is_sup_map,
    join_closure,
    join_generates,
    join_sublattice,
    lattice_isomorphisms,
    map_lattice,
    product_lattice,
)
from .quantale import Quantale, composition_quantale, opposite
from .tensor import internal_hom


class RightModule:
    """A sup-lattice with a right action of ``quantale``."""

    def __init__(self, quantale: Quantale, carrier: FiniteSupLattice, action, *, validate: bool = True,
                 name: str | None = None):
        action = np.asarray(action, dtype=np.int64).reshape(len(carrier), len(quantale))
        if action.size and (action.min() < 0 or action.max() >= len(carrier)):
            raise QuantaleError("action table leaves the carrier")
        self.quantale = quantale
        self.carrier = carrier
        self.action_array = action
        action.setflags(write=False)
        self._act = action.tolist()
        self.name = name
        if validate:
            _validate_action(quantale, carrier, action)

    def __len__(self) -> int:
        return len(self.carrier)

    def __repr__(self) -> str:
        return f"RightModule({self.name or ''}, size={len(self)})"

    @property
    def elements(self) -> range:
        return self.carrier.elements

    def act(self, m: int, a: int) -> int:
        return self._act[m][a]

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, RightModule):
            return NotImplemented
        return (self.quantale == other.quantale and self.carrier == other.carrier
                and np.array_equal(self.action_array, other.action_array))

    def __hash__(self) -> int:
        return hash((len(self), len(self.quantale)))

    def orbit(self, m: int) -> tuple[int, ...]:
        return tuple(self._act[m])

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small module-generating set chosen greedily among join-irreducibles."""
        gens: list[int] = []
        span: set[int] = {self.carrier.bottom}
        for j in self.carrier.join_irreducibles:
            if j not in span:
                gens.append(j)
                span = set(join_closure(self.carrier, [self._act[g][a] for g in gens for a in self.quantale.elements]))
        return tuple(gens)


def _validate_action(A: Quantale, L: FiniteSupLattice, act: np.ndarray) -> None:
    idx = np.arange(len(L))
    bad = np.flatnonzero(act[:, A.unit] != idx)
    if len(bad):
        m = int(bad[0])
        raise UnitActionFails(f"{m} . 1 != {m}", m)
    lhs = act[act]              # [m, a, b] = (m.a).b
    rhs = act[:, A.mult_array]  # [m, a, b] = m.(a*b)
    diff = lhs != rhs
    if diff.any():
        m, a, b = (int(v) for v in np.argwhere(diff)[0])
        raise AssociativityFails(f"({m}.{a}).{b} != {m}.({a}*{b})", (m, a, b))
    if (act[L.bottom] != L.bottom).any():
        a = int(np.flatnonzero(act[L.bottom] != L.bottom)[0])
        raise NotBimorphism(f"0 . {a} != 0", ("module", ((), a)))
    if (act[:, A.bottom] != L.bottom).any():
        m = int(np.flatnonzero(act[:, A.bottom] != L.bottom)[0])
        raise NotBimorphism(f"{m} . 0 != 0", ("quantale", (m, ())))
    J = L.join_array
    for a in A.elements:
        col = act[:, a]
        diff = col[J] != J[col[:, None], col[None, :]]
        if diff.any():
            x, y = (int(v) for v in np.argwhere(diff)[0])
            raise NotBimorphism(f"({x} v {y}) . {a} is not distributed", ("module", ((x, y), a)))
    JA = A.carrier.join_array
    for m in L.elements:
        row = act[m]
        diff = row[JA] != J[row[:, None], row[None, :]]
        if diff.any():
            a, b = (int(v) for v in np.argwhere(diff)[0])
            raise NotBimorphism(f"{m} . ({a} v {b}) is not distributed", ("quantale", (m, (a, b))))


def validate_module(A: Quantale, carrier: FiniteSupLattice, action, *, name: str | None = None) -> RightModule:
    return RightModule(A, carrier, action, validate=True, name=name)


def regular_module(A: Quantale) -> RightModule:
    """``A`` acting on itself by right multiplication."""
    return RightModule(A, A.carrier, A.mult_array, validate=False, name=A.name)


def trivial_module(A: Quantale) -> RightModule:
    from .lattice import one
    return RightModule(A, one(), np.zeros((1, len(A)), dtype=np.int64), validate=False, name="0")


def _same_quantale(M: RightModule, N: RightModule) -> None:
    if M.quantale is not N.quantale and M.quantale != N.quantale:
        raise QuantaleMismatch("modules live over different quantales")


# ---------------------------------------------------------------------------
# morphisms

@dataclass(frozen=True, eq=False)
class ModuleMorphism:
    source: RightModule
    target: RightModule
    table: tuple[int, ...]

    def __call__(self, m: int) -> int:
        return self.table[m]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleMorphism):
            return NotImplemented
        return self.table == other.table and self.source == other.source and self.target == other.target

    def __hash__(self) -> int:
        return hash(self.table)

    @property
    def sup_map(self) -> SupMap:
        return SupMap(self.source.carrier, self.target.carrier, self.table)

    def compose(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """``self . other``."""
        return ModuleMorphism(other.source, self.target, tuple(self.table[x] for x in other.table))

    @classmethod
    def identity(cls, M: RightModule) -> "ModuleMorphism":
        return cls(M, M, tuple(M.elements))


def is_equivariant(M: RightModule, N: RightModule, table: Sequence[int]) -> Check:
    t = np.asarray(table, dtype=np.int64)
    diff = t[M.action_array] != N.action_array[t]
    if diff.any():
        m, a = (int(v) for v in np.argwhere(diff)[0])
        return Check(False, (m, a))
    return Check(True)


def is_module_morphism(M: RightModule, N: RightModule, table: Sequence[int]) -> Check:
    check = is_sup_map(M.carrier, N.carrier, table)
    if not check:
        return Check(False, ("sup", check.witness))
    check = is_equivariant(M, N, table)
    if not check:
        return Check(False, ("equivariance", check.witness))
    return Check(True)


def module_morphism(M: RightModule, N: RightModule, table: Sequence[int]) -> ModuleMorphism:
    _same_quantale(M, N)
    table = tuple(int(v) for v in table)
    check = is_module_morphism(M, N, table)
    if not check:
        raise NotEquivariant(f"not a module morphism: {check.witness}", check.witness)
    return ModuleMorphism(M, N, table)


def is_epi(f: ModuleMorphism) -> bool:
    """Epimorphisms of modules are exactly the surjections."""
    return len(set(f.table)) == len(f.target)


# ---------------------------------------------------------------------------
# hom lattices

def module_hom_tables(M: RightModule, N: RightModule, allowed: dict[int, Sequence[int]] | None = None) -> list[tuple[int, ...]]:
    """All equivariant sup-maps ``M -> N`` as sorted tables.

    A morphism is fixed by its values on ``M.generators``: with ``v_g = f(g)``
    we get ``f(m) = join{v_g . a : g . a <= m}``.  Values are backtracked
    with the order relations between the ``g . a`` as pruning; every
    candidate is checked in full.  ``allowed`` restricts generator images.
    """
    _same_quantale(M, N)
    A = M.quantale
    gens = M.generators
    L, T = M.carrier, N.carrier
    actM, actN = M.action_array, N.action_array
    # orbit order relations between generator g and earlier ones
    cand: list[list[int]] = []
    for k, g in enumerate(gens):
        og = actM[g]
        leq_same = L.leq_matrix[og[:, None], og[None, :]]
        pool = allowed.get(g, T.elements) if allowed else T.elements
        ok = []
        for v in pool:
            ov = actN[v]
            if (leq_same & ~T.leq_matrix[ov[:, None], ov[None, :]]).any():
                continue
            ok.append(v)
        cand.append(ok)
    cross = []
    for k, g in enumerate(gens):
        rel = []
        for h_idx in range(k):
            h = gens[h_idx]
            rel.append((h_idx, L.leq_matrix[actM[g][:, None], actM[h][None, :]],
                        L.leq_matrix[actM[h][:, None], actM[g][None, :]]))
        cross.append(rel)
    below = [[(k, a) for k, g in enumerate(gens) for a in A.elements if L.leq(actM[g][a], m)] for m in L.elements]
    values = [0] * len(gens)
    out: list[tuple[int, ...]] = []
    Tleq = T.leq_matrix

    def go(k: int) -> None:
        if k == len(gens):
            table = tuple(T.join(actN[values[i]][a] for i, a in below[m]) for m in L.elements)
            if is_module_morphism(M, N, table) and all(table[g] == values[i] for i, g in enumerate(gens)):
                out.append(table)
            return
        for v in cand[k]:
            ov = actN[v]
            fine = True
            for h_idx, g_le_h, h_le_g in cross[k]:
                oh = actN[values[h_idx]]
                if (g_le_h & ~Tleq[ov[:, None], oh[None, :]]).any() or (h_le_g & ~Tleq[oh[:, None], ov[None, :]]).any():
                    fine = False
                    break
            if fine:
                values[k] = v
                go(k + 1)

    go(0)
    out.sort()
    return out


def hom_lattice(M: RightModule, N: RightModule) -> MapLattice:
    """Module morphisms ``M -> N`` ordered pointwise."""
    return map_lattice(M, N.carrier, module_hom_tables(M, N))


def endo_module_quantale(M: RightModule) -> Quantale:
    """Module endomorphisms under composition, unit the identity."""
    return composition_quantale(hom_lattice(M, M), name=f"End({M.name})" if M.name else "End")


# ---------------------------------------------------------------------------
# free modules and submodules

def power_module(M: RightModule, k: int, *, budget: int = DEFAULT_BUDGET) -> RightModule:
    """``M^k`` (equally the k-fold coproduct) with pointwise order and action."""
    size = len(M) ** k
    if size > budget:
        raise BudgetExceeded("power module", size, budget)
    carrier = product_lattice([M.carrier] * k)
    if k == 0:
        action = np.zeros((1, len(M.quantale)), dtype=np.int64)
    else:
        idx = np.array(carrier.labels, dtype=np.int64)              # [f, x]
        stride = len(M) ** np.arange(k - 1, -1, -1, dtype=np.int64)
        action = np.einsum("fxa,x->fa", M.action_array[idx], stride)
    name = f"{M.name}^{k}" if M.name else None
    return RightModule(M.quantale, carrier, action, validate=False, name=name)


def free_module(A: Quantale, X: int | Sequence, *, budget: int = DEFAULT_BUDGET) -> RightModule:
    """Functions ``X -> A`` with pointwise order and action; labels are value tuples."""
    k = X if isinstance(X, int) else len(X)
    size = len(A) ** k
    if size > budget:
        raise BudgetExceeded("free module", size, budget)
    return power_module(regular_module(A), k, budget=budget)


def free_generator(F: RightModule, x: int) -> int:
    """The function supported at ``x`` with value the unit."""
    A = F.quantale
    k = len(F.carrier.labels[0])
    return F.carrier.index(tuple(A.unit if y == x else A.bottom for y in range(k)))


def submodule_on(M: RightModule, members: Sequence[int], *, name: str | None = None) -> RightModule:
    """Restrict ``M`` to a join-closed, action-closed subset; labels are kept."""
    members = list(members)
    pos = {x: i for i, x in enumerate(members)}
    sub = join_sublattice(M.carrier, members)
    action = [[pos[M.act(x, a)] for a in M.quantale.elements] for x in members]
    return RightModule(M.quantale, sub, action, validate=False, name=name)


def submodule_generated(M: RightModule, gens: Sequence[int], *, name: str | None = None) -> RightModule:
    """Join-closure of ``{m . a : m in gens, a in A}``."""
    members = join_closure(M.carrier, [M.act(m, a) for m in gens for a in M.quantale.elements])
    return submodule_on(M, members, name=name)


def inclusion(sub: RightModule, M: RightModule) -> ModuleMorphism:
    """Inclusion of a submodule built by :func:`submodule_on` (matched by label)."""
    return ModuleMorphism(sub, M, tuple(M.carrier.index(lab) for lab in sub.carrier.labels))


# ---------------------------------------------------------------------------
# generators and projectives

def is_generator(Q: RightModule) -> bool:
    """Whether the images ``f(q)`` of all morphisms ``Q -> A`` join-generate ``A``."""
    A = Q.quantale
    images = {t[q] for t in module_hom_tables(Q, regular_module(A)) for q in Q.elements}
    return join_generates(A.carrier, images)


def evaluation_is_epi(Q: RightModule, M: RightModule) -> bool:
    """Whether ``{f(q) : f: Q -> M}`` join-generates ``M``."""
    images = {t[q] for t in module_hom_tables(Q, M) for q in Q.elements}
    return join_generates(M.carrier, images)


def free_cover(Q: RightModule, *, budget: int = DEFAULT_BUDGET) -> tuple[RightModule, ModuleMorphism]:
    """The epi ``A^(G) -> Q`` sending the g-th free generator to the g-th module generator of ``Q``.

    Any epi from a free module works for deciding projectivity, and covering
    only a generating set keeps the free module small.
    """
    gens = Q.generators
    F = free_module(Q.quantale, len(gens), budget=budget)
    table = tuple(Q.carrier.join(Q.act(g, f[k]) for k, g in enumerate(gens)) for f in F.carrier.labels)
    return F, ModuleMorphism(F, Q, table)


def projective_splitting(Q: RightModule, *, budget: int = DEFAULT_BUDGET) -> ModuleMorphism | None:
    """A section of the free cover, or None when it does not split."""
    F, eps = free_cover(Q, budget=budget)
    pre: dict[int, list[int]] = {}
    for f, q in enumerate(eps.table):
        pre.setdefault(q, []).append(f)
    allowed = {g: pre.get(g, []) for g in Q.generators}
    for table in module_hom_tables(Q, F, allowed):
        if all(eps.table[table[q]] == q for q in Q.elements):
            return ModuleMorphism(Q, F, table)
    return None


def is_projective(Q: RightModule, *, budget: int = DEFAULT_BUDGET) -> bool:
    return projective_splitting(Q, budget=budget) is not None


# ---------------------------------------------------------------------------
# enumeration and isomorphism

def _action_key(act: np.ndarray, perm: Sequence[int]) -> tuple:
    """Action table transported along the lattice automorphism ``perm``."""
    p = np.asarray(perm)
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p))
    return tuple(p[act[inv]].reshape(-1).tolist())


def enumerate_modules(A: Quantale, carrier: FiniteSupLattice, *, budget: int = DEFAULT_BUDGET) -> list[RightModule]:
    """Every right ``A``-action on ``carrier`` up to isomorphism.

    An action is a join-preserving ``rho: A -> End(carrier)`` with
    ``rho(1) = id`` and ``rho(a * b) = rho(b) . rho(a)``.  It is chosen on
    the join-irreducibles of ``A``; each product and unit constraint is
    checked as soon as every irreducible below it is assigned.
    """
    E = internal_hom(carrier, carrier)
    EQ = composition_quantale(E, validate=False)
    comp = EQ.mult_array                       # [f, g] = f . g
    JE = E.join_array
    L = A.carrier
    J = list(L.join_irreducibles)
    if len(E) ** len(J) > budget ** 2 and len(J) > 12:
        raise BudgetExceeded("module enumeration", len(E) ** len(J), budget ** 2)
    under = [[i for i, j in enumerate(J) if L.leq(j, x)] for x in L.elements]
    stage_of = [max(u) if u else -1 for u in under]
    below = [[k for k in range(i) if L.leq(J[k], J[i])] for i in range(len(J))]
    checks: list[list[tuple]] = [[] for _ in J]
    for p in range(len(J)):
        for q in range(len(J)):
            x = A.mul(J[p], J[q])
            checks[max(p, q, stage_of[x])].append((p, q, x))
    unit_stage = max(stage_of[A.unit], 0) if J else -1
    id_map = EQ.unit
    rho = [0] * len(J)
    results: dict[tuple, np.ndarray] = {}
    autos = list(lattice_isomorphisms(carrier, carrier))
    zero_map = E.bottom

    def value(x: int) -> int:
        out = zero_map
        for i in under[x]:
            out = JE[out, rho[i]]
        return int(out)

    def finish() -> None:
        R = np.array([value(x) for x in L.elements], dtype=np.int64)
        if not (R[L.join_array] == JE[R[:, None], R[None, :]]).all():
            return
        if not (R[A.mult_array] == comp[R[None, :], R[:, None]]).all():
            return
        if R[A.unit] != id_map:
            return
        tables = np.array(E.labels, dtype=np.int64).reshape(len(E), -1)
        act = tables[R].T.copy()               # [m, a]
        key = min(_action_key(act, p) for p in autos)
        if key not in results:
            results[key] = np.array(key, dtype=np.int64).reshape(len(carrier), len(A))

    def go(i: int) -> None:
        if i == len(J):
            finish()
            return
        floor = zero_map
        for k in below[i]:
            floor = JE[floor, rho[k]]
        for v in E.up_set(int(floor)):
            rho[i] = v
            if i == unit_stage and value(A.unit) != id_map:
                continue
            if all(value(x) == comp[rho[q], rho[p]] for p, q, x in checks[i]):
                go(i + 1)

    if not J:
        # A is the one-element quantale: only the one-element carrier admits an action
        if len(carrier) == 1:
            results[(0,)] = np.zeros((1, 1), dtype=np.int64)
    else:
        go(0)
    return [RightModule(A, carrier, results[k], validate=False) for k in sorted(results)]


def enumerate_all_modules(A: Quantale, carriers: Sequence[FiniteSupLattice], *, budget: int = DEFAULT_BUDGET) -> list[RightModule]:
    out = []
    for L in carriers:
        out.extend(enumerate_modules(A, L, budget=budget))
    return out


def module_isomorphisms(M: RightModule, N: RightModule):
    """Equivariant order isomorphisms ``M -> N``."""
    if len(M) != len(N):
        return
    for table in lattice_isomorphisms(M.carrier, N.carrier):
        if is_equivariant(M, N, table):
            yield table


def module_iso_search(M: RightModule, N: RightModule) -> tuple[int, ...] | None:
    return next(module_isomorphisms(M, N), None)


# ---------------------------------------------------------------------------
# bimodules

class Bimodule:
    """Left ``B``-action ``left[b, m]`` and right ``A``-action ``right[m, a]`` that commute."""

    def __init__(self, left_quantale: Quantale, right_quantale: Quantale, carrier: FiniteSupLattice,
                 left_action, right_action, *, validate: bool = True):
        left_action = np.asarray(left_action, dtype=np.int64)
        self.left_quantale = left_quantale
        self.right_quantale = right_quantale
        self.carrier = carrier
        self.as_left = RightModule(opposite(left_quantale), carrier, left_action.T, validate=validate)
        self.as_right = RightModule(right_quantale, carrier, right_action, validate=validate)
        self.left_action = left_action
        self.right_action = self.as_right.action_array
        if validate:
            lhs = self.right_action[left_action]           # [b, m, a] = (b.m).a
            rhs = left_action[:, self.right_action]        # [b, m, a] = b.(m.a)
            diff = lhs != rhs
            if diff.any():
                b, m, a = (int(v) for v in np.argwhere(diff)[0])
                raise AssociativityFails(f"({b}.{m}).{a} != {b}.({m}.{a})", (b, m, a))
