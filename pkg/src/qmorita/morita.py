"""Idempotent constructions, the comparison functor and Morita equivalence checks.

For an idempotent ``e`` of ``A``: ``eA`` is the right ideal ``{e*a}``, ``Me``
the fixed points ``{m : m.e = m}`` of a module and ``eAe`` the corner
quantale with unit ``e``.  The comparison functor of a module ``Q`` sends
``M`` to ``Hom(Q, M)`` acted on by ``End(Q)`` through precomposition.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .config import DEFAULT_BUDGET
from .errors import BudgetExceeded, NotIdempotent
from .lattice import (
    Check,
    FiniteSupLattice,
    join_closure,
    join_generates,
    join_sublattice,
    lattices_up_to,
    lookup_rows,
    map_lattice,
)
from .modules import (
    ModuleMorphism,
    RightModule,
    endo_module_quantale,
    enumerate_all_modules,
    free_module,
    hom_lattice,
    is_generator,
    is_projective,
    module_hom_tables,
    module_iso_search,
    power_module,
    regular_module,
    submodule_generated,
    submodule_on,
)
from .quantale import Quantale, composition_quantale, is_quantale_morphism, quantale_iso_search
from .tensor import Bimorphism, factor_through_tensor, tensor


def check_idempotent(A: Quantale, e: int) -> None:
    if A.mul(e, e) != e:
        raise NotIdempotent(f"{A.name_of(e)} * {A.name_of(e)} != {A.name_of(e)}", e)


def idempotents(A: Quantale) -> tuple[int, ...]:
    return tuple(a for a in A.elements if A.mul(a, a) == a)


# ---------------------------------------------------------------------------
# corners and ideals

def corner_members(A: Quantale, e: int) -> tuple[int, ...]:
    """``{e*a*e : a in A}`` as sorted element indices of ``A``."""
    check_idempotent(A, e)
    if A.mult_array is not None:
        return tuple(int(x) for x in np.unique(A.mult_array[A.mult_array[e], e]))
    return tuple(sorted({A.mul(A.mul(e, a), e) for a in A.elements}))


def _sub_carrier(L, members: Sequence[int]) -> FiniteSupLattice:
    if hasattr(L, "leq_matrix"):
        return join_sublattice(L, members)
    # carriers computed on demand: build the order among the members only
    pos = {x: i for i, x in enumerate(members)}
    leq = [[L.leq(x, y) for y in members] for x in members]
    join = [[pos[L.join2(x, y)] for y in members] for x in members]
    labels = [L.label(x) for x in members]
    return FiniteSupLattice(labels, leq, join_table=join, validate=False)


def eAe_quantale(A: Quantale, e: int) -> Quantale:
    """The corner ``eAe`` with inherited order and product and unit ``e``.

    Carrier labels are the labels of ``A`` so elements can be traced back.
    """
    members = corner_members(A, e)
    pos = {x: i for i, x in enumerate(members)}
    carrier = _sub_carrier(A.carrier, members)
    mult = [[pos[A.mul(x, y)] for y in members] for x in members]
    name = f"{A.name}[{A.name_of(e)}]" if A.name else None
    return Quantale(carrier, mult, pos[e], name=name)


def right_ideal(A: Quantale, e: int) -> RightModule:
    """``eA = {e*a}`` as a right ``A``-module."""
    check_idempotent(A, e)
    return submodule_generated(regular_module(A), [e], name="eA")


def ideal_projection(A: Quantale, e: int) -> ModuleMorphism:
    """``A -> eA``, ``a -> e*a``."""
    eA = right_ideal(A, e)
    R = regular_module(A)
    return ModuleMorphism(R, eA, tuple(eA.carrier.index(A.carrier.labels[A.mul(e, a)]) for a in A.elements))


def fixed_members(M: RightModule, e: int) -> tuple[int, ...]:
    """``Me = {m : m.e = m}``."""
    check_idempotent(M.quantale, e)
    return tuple(m for m in M.elements if M.act(m, e) == m)


def is_full_idempotent(A: Quantale, e: int) -> bool:
    """Whether the join-closure of ``{a*e*a'}`` is all of ``A``."""
    check_idempotent(A, e)
    if A.mult_array is None:
        raise BudgetExceeded("fullness scan over a lazily validated quantale", len(A), len(A))
    products = A.mult_array[A.mult_array[:, e]]    # [a, a'] = (a*e)*a'
    return join_generates(A.carrier, np.unique(products).tolist())


def two_sided_ideal(A: Quantale, e: int) -> tuple[int, ...]:
    check_idempotent(A, e)
    products = A.mult_array[A.mult_array[:, e]]
    return join_closure(A.carrier, np.unique(products).tolist())


# ---------------------------------------------------------------------------
# Hom(eA, M) and Me

@dataclass
class AlphaIso:
    module: RightModule
    idempotent: int
    hom: FiniteSupLattice          # Hom_A(eA, M), labels are tables on eA
    fixed: tuple[int, ...]         # Me as indices of M
    forward: tuple[int, ...]       # hom index -> index of M
    backward: dict[int, int]       # index of M in Me -> hom index
    check: Check


def alpha_iso(A: Quantale, e: int, M: RightModule) -> AlphaIso:
    """``Hom(eA, M) -> Me``, ``f -> f(e)``, with inverse ``m -> (e*a -> m.a)``.

    Verifies that both directions are inverse bijections and that the
    forward map preserves joins.
    """
    eA = right_ideal(A, e)
    H = hom_lattice(eA, M)
    e_pos = eA.carrier.index(A.carrier.labels[e])
    fixed = fixed_members(M, e)
    forward = tuple(t[e_pos] for t in H.labels)
    # a representative a with e*a = x for each element x of eA
    rep: dict[int, int] = {}
    for a in A.elements:
        rep.setdefault(eA.carrier.index(A.carrier.labels[A.mul(e, a)]), a)
    backward: dict[int, int] = {}
    witness = None
    for m in fixed:
        table = tuple(M.act(m, rep[x]) for x in eA.elements)
        if table not in H._index:
            witness = ("inverse not a morphism", m)
            break
        backward[m] = H.index(table)
    if witness is None:
        witness = _alpha_verdict(H, M, fixed, forward, backward)
    return AlphaIso(M, e, H, fixed, forward, backward, Check(witness is None, witness or {"size": len(fixed)}))


def _alpha_verdict(H, M, fixed, forward, backward):
    fixed_set = set(fixed)
    for k, m in enumerate(forward):
        if m not in fixed_set:
            return ("image outside Me", k)
        if backward[m] != k:
            return ("round trip", "hom", k)
    for m in fixed:
        if forward[backward[m]] != m:
            return ("round trip", "fixed", m)
    for k in H.elements:
        for l in H.elements:
            if forward[H.join2(k, l)] != M.carrier.join2(forward[k], forward[l]):
                return ("join", k, l)
    if forward[H.bottom] != M.carrier.bottom:
        return ("bottom",)
    return None


def alpha_naturality(g: ModuleMorphism, alpha_M: AlphaIso, alpha_N: AlphaIso) -> Check:
    """``alpha_N(g . f) = g(alpha_M(f))`` for every ``f: eA -> M``."""
    for k, f in enumerate(alpha_M.hom.labels):
        gf = tuple(g.table[v] for v in f)
        lhs = alpha_N.forward[alpha_N.hom.index(gf)]
        rhs = g.table[alpha_M.forward[k]]
        if lhs != rhs:
            return Check(False, k)
    return Check(True)


@dataclass
class EndIso:
    endomorphisms: Quantale
    corner: Quantale
    table: tuple[int, ...]
    check: Check


def eAe_end_iso(A: Quantale, e: int) -> EndIso:
    """``End(eA) -> eAe``, ``f -> f(e)``, checked to be a quantale isomorphism."""
    eA = right_ideal(A, e)
    H = hom_lattice(eA, eA)
    E = composition_quantale(H)
    C = eAe_quantale(A, e)
    e_pos = eA.carrier.index(A.carrier.labels[e])
    table = tuple(C.carrier.index(eA.carrier.labels[t[e_pos]]) if eA.carrier.labels[t[e_pos]] in C.carrier._index
                  else -1 for t in H.labels)
    if -1 in table:
        check = Check(False, ("outside eAe", table.index(-1)))
    elif len(set(table)) != len(C):
        check = Check(False, ("not bijective", len(set(table)), len(C)))
    else:
        check = is_quantale_morphism(E, C, table)
        if check:
            check = Check(True, {"size": len(C)})
    return EndIso(E, C, table, check)


# ---------------------------------------------------------------------------
# kappa

@dataclass
class Kappa:
    module: RightModule
    idempotent: int
    images: tuple[int, ...]
    epi: bool


def kappa_map(A: Quantale, e: int, M: RightModule) -> Kappa:
    """Images ``m.(e*a)`` for ``m`` in ``Me``; epi iff they join-generate ``M``."""
    fixed = fixed_members(M, e)
    images = sorted({M.act(m, A.mul(e, a)) for m in fixed for a in A.elements})
    return Kappa(M, e, tuple(images), join_generates(M.carrier, images))


def kappa_tensor_image(A: Quantale, e: int, M: RightModule) -> bool:
    """Epi flag of kappa computed through the tensor of ``Me`` and ``eA``."""
    fixed = fixed_members(M, e)
    Me = join_sublattice(M.carrier, fixed)
    eA = right_ideal(A, e)
    ideal_elems = [A.carrier.index(lab) for lab in eA.carrier.labels]
    table = tuple(tuple(M.act(m, x) for x in ideal_elems) for m in fixed)
    h = factor_through_tensor(Bimorphism(Me, eA.carrier, M.carrier, table), tensor(Me, eA.carrier))
    return len(set(h.table)) == len(M)


# ---------------------------------------------------------------------------
# the comparison functor

class ComparisonFunctor:
    """``M -> Hom(Q, M)`` as right modules over ``End(Q)`` (precomposition)."""

    def __init__(self, Q: RightModule, endo: Quantale | None = None):
        self.Q = Q
        self.endo = endo if endo is not None else endo_module_quantale(Q)
        self._cache: dict[int, tuple[RightModule, RightModule]] = {}

    def obj(self, M: RightModule) -> RightModule:
        hit = self._cache.get(id(M))
        if hit is not None and hit[0] is M:
            return hit[1]
        E = self.endo
        H = hom_lattice(self.Q, M)
        tables = np.array(H.labels, dtype=np.int64).reshape(len(H), len(self.Q))
        ends = np.array(E.carrier.labels, dtype=np.int64).reshape(len(E), len(self.Q))
        composed = tables[:, ends]                 # [f, phi, q] = f(phi(q))
        action = lookup_rows(H.labels, len(M), composed)
        KM = RightModule(E, H, action, validate=False, name=f"K({M.name})" if M.name else None)
        self._cache[id(M)] = (M, KM)
        return KM

    def arr(self, g: ModuleMorphism) -> ModuleMorphism:
        """Postcomposition with ``g``."""
        KM, KN = self.obj(g.source), self.obj(g.target)
        return ModuleMorphism(KM, KN, tuple(KN.carrier.index(tuple(g.table[v] for v in f)) for f in KM.carrier.labels))

    def check_functor(self, pairs: Sequence[tuple[ModuleMorphism, ModuleMorphism]]) -> Check:
        """Identities and composites ``K(g . f) = K(g) . K(f)`` on the given pairs."""
        for f, g in pairs:
            for h in (f, g):
                ident = ModuleMorphism.identity(h.source)
                if self.arr(ident).table != tuple(self.obj(h.source).elements):
                    return Check(False, ("identity", h.source.name))
            if self.arr(g.compose(f)).table != self.arr(g).compose(self.arr(f)).table:
                return Check(False, ("composition", f.table, g.table))
        return Check(True)


def comparison_functor(Q: RightModule) -> ComparisonFunctor:
    return ComparisonFunctor(Q)


def galois_check(Q: RightModule, k: int, *, budget: int = DEFAULT_BUDGET) -> Check:
    """The comparison ``End(Q)^k -> Hom(Q, Q^k)``, ``(f_x) -> (q -> (f_x(q))_x)``,
    is a join-preserving bijection.

    Works on raw tables: the domain is not materialized as a lattice; join
    preservation is checked against its join-irreducibles (one nonzero slot).
    """
    ends = module_hom_tables(Q, Q)
    if len(ends) ** k > budget:
        raise BudgetExceeded("self-smallness check", len(ends) ** k, budget)
    P = power_module(Q, k, budget=budget)
    targets = module_hom_tables(Q, P)
    index = {t: i for i, t in enumerate(targets)}

    def image(family) -> tuple[int, ...]:
        return tuple(P.carrier.index(tuple(ends[f][q] for f in family)) for q in Q.elements)

    hits: dict[int, tuple] = {}
    for family in itertools.product(range(len(ends)), repeat=k):
        t = image(family)
        if t not in index:
            return Check(False, ("not a morphism", family))
        i = index[t]
        if i in hits:
            return Check(False, ("not injective", hits[i], family))
        hits[i] = family
    if len(hits) != len(targets):
        return Check(False, ("not surjective", len(hits), len(targets)))
    Hq = map_lattice(Q, Q.carrier, ends)
    irr = [(slot, j) for slot in range(k) for j in Hq.join_irreducibles]
    for family in itertools.product(range(len(ends)), repeat=k):
        for slot, j in irr:
            other = list(family)
            other[slot] = Hq.join2(family[slot], j)
            lhs = targets[index[image(other)]]
            a, b = image(family), image([j if s == slot else Hq.bottom for s in range(k)])
            if lhs != tuple(P.carrier.join2(x, y) for x, y in zip(a, b)):
                return Check(False, ("join", family, slot, j))
    return Check(True, {"domain": len(ends) ** k, "codomain": len(targets)})


# ---------------------------------------------------------------------------
# equivalence verification

@dataclass
class EquivalenceReport:
    fully_faithful: list = field(default_factory=list)        # (M name, N name, ok, witness)
    essentially_surjective: list = field(default_factory=list)  # (P index, ok, how)
    budget: int = 0
    derived_budget: int = 0

    @property
    def ok(self) -> bool:
        return all(r[2] for r in self.fully_faithful) and all(r[1] for r in self.essentially_surjective)

    @property
    def failures(self) -> list:
        return [r for r in self.fully_faithful if not r[2]] + [r for r in self.essentially_surjective if not r[1]]


def quasi_inverse_candidate(K: ComparisonFunctor, P: RightModule) -> RightModule:
    """``Hom_E(K(A), P)`` with ``A`` acting through ``(phi . a)(f) = phi(a . f)``,
    where ``(a . f)(q) = a * f(q)``."""
    A = K.Q.quantale
    KA = K.obj(regular_module(A))
    H = module_hom_tables(KA, P)
    lattice = map_lattice(KA, P.carrier, H)
    left = [[KA.carrier.index(tuple(A.mul(a, v) for v in f)) for f in KA.carrier.labels] for a in A.elements]
    action = [[lattice.index(tuple(phi[left[a][f]] for f in KA.elements)) for a in A.elements] for phi in H]
    return RightModule(A, lattice, action, validate=True, name="Hom(K(A),P)")


def verify_equivalence(K: ComparisonFunctor, a_modules: Sequence[RightModule], e_modules: Sequence[RightModule],
                       *, budget: int = 4) -> EquivalenceReport:
    """Full faithfulness on all pairs of ``a_modules`` and bounded essential
    surjectivity for ``e_modules``.

    An ``E``-module is matched against ``K(M)`` for the sampled ``M`` and for
    the constructed candidate ``Hom_E(K(A), P)``; the report records the
    largest carrier among the matching preimages as the derived budget.
    """
    report = EquivalenceReport(budget=budget)
    for i, M in enumerate(a_modules):
        for j, N in enumerate(a_modules):
            report.fully_faithful.append((i, j, *_faithful(K, M, N)))
    images = [K.obj(M) for M in a_modules]
    derived = 0
    for p, P in enumerate(e_modules):
        how = None
        for i, KM in enumerate(images):
            if len(KM) == len(P) and module_iso_search(KM, P) is not None:
                how = ("sample", i)
                derived = max(derived, len(a_modules[i]))
                break
        if how is None:
            cand = quasi_inverse_candidate(K, P)
            if module_iso_search(K.obj(cand), P) is not None:
                how = ("constructed", len(cand))
                derived = max(derived, len(cand))
        report.essentially_surjective.append((p, how is not None, how))
    report.derived_budget = derived
    return report


def _faithful(K: ComparisonFunctor, M: RightModule, N: RightModule) -> tuple[bool, object]:
    homs = module_hom_tables(M, N)
    KM, KN = K.obj(M), K.obj(N)
    images = [K.arr(ModuleMorphism(M, N, g)).table for g in homs]
    if len(set(images)) != len(images):
        first = next(i for i, t in enumerate(images) if images.index(t) != i)
        return False, ("not faithful", homs[images.index(images[first])], homs[first])
    targets = module_hom_tables(KM, KN)
    if sorted(images) != targets:
        missing = sorted(set(targets) - set(images))
        return False, ("not full", missing[0] if missing else None)
    return True, {"maps": len(homs)}


def modules_up_to(A: Quantale, size: int) -> list[RightModule]:
    """All ``A``-modules (up to isomorphism) on lattices with at most ``size`` elements."""
    carriers = [L for n in range(1, size + 1) for L in lattices_up_to(n) if len(L) == n]
    return enumerate_all_modules(A, carriers)


# ---------------------------------------------------------------------------
# Morita witnesses from matrices

@dataclass
class MoritaWitnessReport:
    idempotent: bool
    full: bool
    generator: bool
    corner: Quantale
    generator_module: RightModule
    endomorphisms: Quantale
    columns_transport: Check
    corner_transport: Check
    corner_iso: Check
    equivalence: EquivalenceReport | None
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        base = self.idempotent and bool(self.columns_transport) and bool(self.corner_transport) and bool(self.corner_iso)
        if not self.full:
            return base and not self.generator
        return base and self.generator and (self.equivalence is None or self.equivalence.ok)


def morita_witness_check(A: Quantale, X: int | Sequence, a_flat: Sequence[int], *, budget: int = 4,
                         size_budget: int = DEFAULT_BUDGET) -> MoritaWitnessReport:
    """Build ``Q = a . A^(X)``, the corner ``B = a * Mat * a`` and check the
    two transport isomorphisms, fullness and (when full) the equivalence."""
    from .matrix import mat_mul, matrix_endomorphism, matrix_from_flat, matrix_of_endomorphism, matrix_quantale
    X = tuple(range(X)) if isinstance(X, int) else tuple(X)
    Mq = matrix_quantale(A, X, budget=size_budget)
    a = matrix_from_flat(A, X, a_flat)
    if mat_mul(a, a) != a:
        raise NotIdempotent(f"matrix {a} is not idempotent", tuple(a_flat))
    ai = Mq.index_of(a)
    full = is_full_idempotent(Mq, ai)
    B = eAe_quantale(Mq, ai)
    F = free_module(A, len(X), budget=size_budget)
    phi = matrix_endomorphism(a, F)
    fixed = tuple(f for f in F.elements if phi.table[f] == f)
    Q = submodule_on(F, fixed, name="aA^X")
    incl = tuple(F.carrier.index(lab) for lab in Q.carrier.labels)
    proj = tuple(Q.carrier.index(F.carrier.labels[phi.table[f]]) for f in F.elements)

    def j_inv(table) -> int:
        return Mq.index_of(matrix_of_endomorphism(table, F, A, X))

    def j_of(c: int) -> tuple[int, ...]:
        return matrix_endomorphism(Mq.matrix(c), F).table

    # Hom(Q, F) against Mat * a
    to_f = module_hom_tables(Q, F)
    right = sorted({Mq.mul(b, ai) for b in Mq.elements})
    fwd = [j_inv(tuple(psi[proj[f]] for f in F.elements)) for psi in to_f]
    columns_transport = _transport_check(to_f, right, fwd, lambda c: tuple(j_of(c)[x] for x in incl))
    # End(Q) against a * Mat * a
    ends = module_hom_tables(Q, Q)
    corner = corner_members(Mq, ai)
    fwd2 = [j_inv(tuple(incl[psi[proj[f]]] for f in F.elements)) for psi in ends]
    back2 = lambda c: tuple(proj[j_of(c)[x]] for x in incl)
    corner_transport = _transport_check(ends, list(corner), fwd2, back2)
    E = composition_quantale(map_lattice(Q, Q.carrier, ends), name="End(Q)")
    corner_iso = Check(False, "transport failed")
    if corner_transport:
        table = tuple(B.carrier.index(Mq.carrier.labels[c]) for c in fwd2)
        corner_iso = is_quantale_morphism(E, B, table)
    generator = is_generator(Q)
    notes = []
    equivalence = None
    if full:
        K = ComparisonFunctor(Q, E)
        equivalence = verify_equivalence(K, modules_up_to(A, budget), modules_up_to(E, budget), budget=budget)
    else:
        notes.append("idempotent is not full: the generator test is expected to fail")
    return MoritaWitnessReport(True, full, generator, B, Q, E, columns_transport, corner_transport, corner_iso,
                               equivalence, notes)


def _transport_check(homs, targets, fwd, back) -> Check:
    """``fwd`` maps hom tables onto ``targets`` bijectively and ``back`` inverts it."""
    if sorted(fwd) != sorted(targets) or len(set(fwd)) != len(fwd):
        return Check(False, ("not a bijection", len(set(fwd)), len(targets)))
    for psi, c in zip(homs, fwd):
        if back(c) != psi:
            return Check(False, ("round trip", c))
    return Check(True, {"size": len(targets)})


def find_full_idempotents(A: Quantale, X: int | Sequence, *, budget: int = DEFAULT_BUDGET) -> list[int]:
    """Indices in ``Mat_X(A)`` of the idempotent matrices that are full."""
    from .matrix import matrix_quantale
    Mq = matrix_quantale(A, X, budget=budget)
    if Mq.lazy:
        raise BudgetExceeded("full idempotent scan", len(Mq), len(Mq))
    return [e for e in idempotents(Mq) if is_full_idempotent(Mq, e)]


# ---------------------------------------------------------------------------
# census of projective generators

@dataclass
class CensusEntry:
    module: RightModule
    endomorphisms: Quantale


def projective_generator_census(A: Quantale, budget: int = 4) -> list[CensusEntry]:
    """Projective generators among the enumerated modules with carrier at most ``budget``."""
    out = []
    for M in modules_up_to(A, budget):
        if is_generator(M) and is_projective(M):
            out.append(CensusEntry(M, endo_module_quantale(M)))
    return out


@dataclass
class CommutativeVerdict:
    isomorphic: bool
    search_explored: int
    census_a: list
    census_b: list

    @property
    def equivalent_at_budget(self) -> bool:
        return self.isomorphic or any(self.census_b) or any(self.census_a)


def commutative_check(A: Quantale, B: Quantale, budget: int = 4) -> CommutativeVerdict:
    """For commutative ``A`` and ``B``: direct isomorphism search plus, for each
    census entry over one side, whether its endomorphism quantale is the other."""
    search = quantale_iso_search(A, B)
    census_a = [bool(quantale_iso_search(c.endomorphisms, B)) for c in projective_generator_census(A, budget)]
    census_b = [bool(quantale_iso_search(c.endomorphisms, A)) for c in projective_generator_census(B, budget)]
    return CommutativeVerdict(search.found, search.explored, census_a, census_b)
