"""Named end-to-end check suites run by ``qmorita suite`` and the acceptance tests."""
from __future__ import annotations

import itertools
from typing import Callable

from .catalog import COMMUTATIVE_NAMES, catalog_lattices, catalog_quantales, quantale
from .errors import QuantaleError, UnknownSuite
from .lattice import SupMap, biproduct, chain, is_sup_map
from .matrix import characteristic_matrix, j_iso, matrix_quantale
from .modules import (
    ModuleMorphism,
    enumerate_modules,
    free_module,
    is_generator,
    module_hom_tables,
    regular_module,
)
from .morita import (
    alpha_iso,
    alpha_naturality,
    eAe_end_iso,
    find_full_idempotents,
    galois_check,
    idempotents,
    is_full_idempotent,
    kappa_map,
    modules_up_to,
    morita_witness_check,
    projective_generator_census,
    right_ideal,
)
from .oracles import biclosed_sets, distributive_all_subsets, full_by_closure, generator_by_sweep
from .quantale import Quantale, distributes_binary, is_commutative, is_quantale_morphism, quantale_iso_search, validate_quantale
from .report import Report
from .tensor import curry_bijection_check, swap_isomorphism, tensor, unit_isomorphism, sup_maps

MODULE_BUDGET = 4


def monoidal(report: Report) -> None:
    """Tensor against the bi-closed-set oracle, unit and swap isomorphisms,
    and the curry/tensor bijections for every triple of catalog lattices."""
    lats = catalog_lattices()
    tensors = {}
    for (a, L), (b, M) in itertools.product(lats, lats):
        T = tensor(L, M)
        tensors[a, b] = T
        oracle = biclosed_sets(L, M)
        report.add(f"tensor-oracle {a}x{b}", list(oracle) == list(T.lattice.labels), {"size": len(T.lattice)})
    for a, L in lats:
        report.add(f"unit-left 2x{a}", bool(unit_isomorphism(L, tensors["2", a])))
        report.add(f"unit-right {a}x2", bool(swap_isomorphism(tensors[a, "2"], tensors["2", a]))
                   and bool(unit_isomorphism(L, tensors["2", a])))
    for (a, _), (b, _) in itertools.product(lats, lats):
        report.add(f"symmetry {a}x{b}", bool(swap_isomorphism(tensors[a, b], tensors[b, a])))
    for (a, L), (b, M), (c, N) in itertools.product(lats, lats, lats):
        check = curry_bijection_check(L, M, N)
        report.add(f"curry {a},{b},{c}", bool(check), check.witness)


def biproducts(report: Report) -> None:
    lats = catalog_lattices()
    for k in range(4):
        for family in itertools.product(lats, repeat=k):
            names = ",".join(n for n, _ in family) or "empty"
            B = biproduct([L for _, L in family])
            ok, witness = True, None
            for i, (_, L) in enumerate(family):
                for j, (_, M) in enumerate(family):
                    comp = B.projections[j].compose(B.injections[i])
                    want = SupMap.identity(L).table if i == j else SupMap.constant_bottom(L, M).table
                    if comp.table != want:
                        ok, witness = False, (i, j)
            maps = list(B.injections) + list(B.projections)
            if ok and not all(is_sup_map(f.source, f.target, f.table) for f in maps):
                ok, witness = False, "structure map not join-preserving"
            if ok:
                # the comparison map join_i inj_i proj_i is the identity
                P = B.lattice
                total = tuple(P.join(B.injections[i].table[B.projections[i].table[x]] for i in range(len(family)))
                              for x in P.elements)
                if len(family) and total != tuple(P.elements):
                    ok, witness = False, "comparison map"
                if not len(family) and len(P) != 1:
                    ok, witness = False, "empty family"
            report.add(f"biproduct {names}", ok, witness)


def _bad_tables() -> list[tuple[str, object, list, int]]:
    """Tables that fail some law, to compare both distributivity checks on."""
    C3, C4 = chain(3), chain(4)
    return [
        ("C3 join unit 0", C3, C3.join_array.tolist(), 0),
        ("C3 a*a=1", C3, [[0, 0, 0], [0, 2, 1], [0, 1, 2]], 2),
        ("C4 nonassociative", C4, [[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 3, 2], [0, 1, 2, 3]], 3),
    ]


def quantale_validation(report: Report) -> None:
    for name, A in catalog_quantales():
        try:
            validate_quantale(A.carrier, A.mult_array, A.unit)
            valid = True
        except QuantaleError:
            valid = False
        shortcut = bool(distributes_binary(A.carrier, A.mult_array))
        oracle = distributive_all_subsets(A)
        report.add(f"distributivity {name}", valid and shortcut == oracle, {"shortcut": shortcut, "oracle": oracle})
    for name, L, mult, unit in _bad_tables():
        try:
            validate_quantale(L, mult, unit)
            error = None
        except QuantaleError as exc:
            error = [type(exc).__name__, exc.witness]
        shortcut = bool(distributes_binary(L, mult))
        oracle = distributive_all_subsets(Quantale(L, mult, unit, validate=False))
        report.add(f"distributivity {name}", error is not None and shortcut == oracle,
                   {"shortcut": shortcut, "oracle": oracle, "rejected": error})


def matrix_iso(report: Report) -> None:
    for base, n in (("2", 2), ("2", 3), ("C3", 2)):
        _, check = j_iso(quantale(base), n)
        report.add(f"j-iso {base} X={n}", bool(check), check.witness)


def rel_mat(report: Report) -> None:
    R, M = quantale("Rel2"), matrix_quantale(quantale("2"), 2)
    search = quantale_iso_search(R, M)
    witness = None
    if search.found:
        witness = [[R.name_of(x), M.name_of(y)] for x, y in enumerate(search.witness)]
    report.add("iso-search Rel2 ~ Mat2(2)", search.found, witness)
    chi = tuple(M.carrier.index(characteristic_matrix(quantale("2"), r, 2)) for r in R.elements)
    check = is_quantale_morphism(R, M, chi) if len(set(chi)) == len(M) else None
    report.add("characteristic-matrix map", bool(check), None if check else "not bijective")
    report.data["rel_mat_explored"] = search.explored


def idempotent_hom(report: Report) -> None:
    for name, A in catalog_quantales():
        if len(A) > 16:
            continue
        mods = modules_up_to(A, MODULE_BUDGET) + [regular_module(A)]
        for e in idempotents(A):
            alphas = [alpha_iso(A, e, M) for M in mods]
            bad = [i for i, al in enumerate(alphas) if not al.check]
            report.add(f"alpha {name} e={A.name_of(e)}", not bad,
                       {"modules": len(mods), "failed": bad} if bad else {"modules": len(mods)})
            natural, witness, squares = True, None, 0
            for (i, M), (j, N) in itertools.product(enumerate(mods), repeat=2):
                for g in module_hom_tables(M, N):
                    squares += 1
                    if not alpha_naturality(ModuleMorphism(M, N, g), alphas[i], alphas[j]):
                        natural, witness = False, (i, j, g)
                        break
                if not natural:
                    break
            report.add(f"alpha-natural {name} e={A.name_of(e)}", natural, witness or {"squares": squares})
            end = eAe_end_iso(A, e)
            report.add(f"end-corner {name} e={A.name_of(e)}", bool(end.check), end.check.witness)


def full_idempotents(report: Report) -> None:
    for name, A in catalog_quantales():
        mods = modules_up_to(A, MODULE_BUDGET)
        for e in idempotents(A):
            full = is_full_idempotent(A, e)
            closure = full_by_closure(A, e)
            eA = right_ideal(A, e)
            gen = is_generator(eA)
            sweep = generator_by_sweep(eA, mods)
            kappa = all(kappa_map(A, e, M).epi for M in mods)
            agree = full == closure == gen == sweep == kappa
            report.add(f"full<->generator {name} e={A.name_of(e)}", agree,
                       {"full": full, "closure": closure, "generator": gen, "sweep": sweep, "kappa": kappa})


def morita_witness(report: Report) -> None:
    A = quantale("2")
    M = matrix_quantale(A, 2)
    fulls = find_full_idempotents(A, 2)
    report.data["full_idempotents"] = [M.name_of(f) for f in fulls]
    for f in fulls:
        r = morita_witness_check(A, 2, M.carrier.labels[f], budget=MODULE_BUDGET)
        label = M.name_of(f)
        report.add(f"columns-transport {label}", bool(r.columns_transport), r.columns_transport.witness)
        report.add(f"corner-transport {label}", bool(r.corner_transport), r.corner_transport.witness)
        report.add(f"corner-unit {label}", r.corner.unit == r.corner.carrier.index(M.carrier.labels[f]))
        report.add(f"end-corner {label}", bool(r.corner_iso), r.corner_iso.witness)
        report.add(f"generator {label}", r.full and r.generator)
        eq = r.equivalence
        ff_ok = all(x[2] for x in eq.fully_faithful)
        es_ok = all(x[1] for x in eq.essentially_surjective)
        report.add(f"fully-faithful {label}", ff_ok, {"pairs": len(eq.fully_faithful)} if ff_ok else eq.failures)
        report.add(f"essentially-surjective {label}", es_ok,
                   {"modules": len(eq.essentially_surjective), "budget": eq.budget,
                    "derived_budget": eq.derived_budget} if es_ok else eq.failures)


def commutative_census(report: Report) -> None:
    for name in COMMUTATIVE_NAMES:
        A = quantale(name)
        census = projective_generator_census(A, MODULE_BUDGET)
        report.add(f"census {name} contains A", any(len(c.module) == len(A) and quantale_iso_search(c.endomorphisms, A)
                                                     for c in census), {"entries": len(census)})
        for k, c in enumerate(census):
            if is_commutative(c.endomorphisms):
                found = quantale_iso_search(c.endomorphisms, A)
                report.add(f"commutative End ~ A {name} #{k}", found.found, {"size": len(c.module)})
            else:
                report.skip(f"commutative End ~ A {name} #{k}", "End not commutative")


def mod_two(report: Report) -> None:
    two = quantale("2")
    lats = catalog_lattices()
    mods = {}
    for name, L in lats:
        found = enumerate_modules(two, L)
        mods[name] = found
        report.add(f"unique 2-action {name}", len(found) == 1, {"count": len(found)})
    for (a, L), (b, M) in itertools.product(lats, lats):
        if len(mods[a]) != 1 or len(mods[b]) != 1:
            report.add(f"hom = sup-maps {a},{b}", False, "module missing")
            continue
        same = module_hom_tables(mods[a][0], mods[b][0]) == sup_maps(L, M)
        report.add(f"hom = sup-maps {a},{b}", same)


def self_small(report: Report) -> None:
    two = quantale("2")
    for qname, Q in (("2", regular_module(two)), ("2^2", free_module(two, 2))):
        for k in range(4):
            check = galois_check(Q, k)
            report.add(f"galois {qname} X={k}", bool(check), check.witness)


SUITES: dict[str, Callable[[Report], None]] = {
    "monoidal": monoidal,
    "biproducts": biproducts,
    "quantale-validation": quantale_validation,
    "matrix-iso": matrix_iso,
    "rel-mat": rel_mat,
    "idempotent-hom": idempotent_hom,
    "full-idempotents": full_idempotents,
    "morita-witness": morita_witness,
    "commutative-census": commutative_census,
    "mod-2": mod_two,
    "self-small": self_small,
}

ALIASES = {"tensor-universal": "monoidal", "prop-6-4": "full-idempotents"}


def suite_names() -> list[str]:
    return sorted(SUITES) + sorted(ALIASES)


def run_suite(name: str) -> Report:
    key = ALIASES.get(name, name)
    if key not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(suite_names())}", name)
    report = Report(command=["suite", name], budgets={"module_carrier": MODULE_BUDGET})
    SUITES[key](report)
    return report
