import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qmorita.catalog import catalog_lattices, lattice, quantale
from qmorita.errors import (
    AssociativityFails,
    BudgetExceeded,
    NotBimorphism,
    NotEquivariant,
    QuantaleMismatch,
    UnitActionFails,
)
from qmorita.lattice import chain, sup_maps
from qmorita.modules import (
    Bimodule,
    ModuleMorphism,
    endo_module_quantale,
    enumerate_modules,
    free_cover,
    free_generator,
    free_module,
    hom_lattice,
    inclusion,
    is_epi,
    is_generator,
    is_module_morphism,
    is_projective,
    module_hom_tables,
    module_iso_search,
    module_morphism,
    regular_module,
    submodule_generated,
    trivial_module,
    validate_module,
)
from qmorita.morita import modules_up_to
from qmorita.oracles import modules_by_scan
from qmorita.quantale import opposite, quantale_iso_search
from qmorita.tensor import internal_hom


def _scan_homs(M, N):
    out = []
    for t in sup_maps(M.carrier, N.carrier):
        if all(t[M.act(m, a)] == N.act(t[m], a) for m in M.elements for a in M.quantale.elements):
            out.append(t)
    return out


SMALL = [(q, l) for q in ("2", "C3", "C4", "PZ2") for l in ("1", "2", "C3", "C4", "M2", "N5")
         if len(internal_hom(lattice(l), lattice(l))) ** len(quantale(q)) <= 30000]


@pytest.mark.parametrize("q,l", SMALL)
def test_enumeration_matches_scan(q, l):
    A, L = quantale(q), lattice(l)
    found = [M.action_array for M in enumerate_modules(A, L)]
    scanned = modules_by_scan(A, L)
    assert len(found) == len(scanned)
    assert all(np.array_equal(x, y) for x, y in zip(found, scanned))


def test_module_counts_over_two():
    # a 2-module is exactly a sup-lattice
    for _, L in catalog_lattices():
        assert len(enumerate_modules(quantale("2"), L)) == 1


def test_regular_module_is_projective_generator():
    for name in ("2", "C3", "PZ2", "Rel2"):
        R = regular_module(quantale(name))
        assert is_generator(R) and is_projective(R)


def test_trivial_module_is_projective_not_generator():
    Z = trivial_module(quantale("C3"))
    assert is_projective(Z) and not is_generator(Z)


def test_chain_locale_quotient_not_projective():
    # 2 as a C3-module where the middle element acts as bottom
    A = quantale("C3")
    M = validate_module(A, chain(2), [[0, 0, 0], [0, 0, 1]])
    assert not is_projective(M)


def test_action_validation_errors():
    A, L = quantale("C3"), chain(2)
    with pytest.raises(UnitActionFails):
        validate_module(A, L, [[0, 0, 0], [0, 0, 0]])
    with pytest.raises(AssociativityFails):
        validate_module(A, L, [[0, 1, 0], [0, 1, 1]])
    with pytest.raises(NotBimorphism) as info:
        validate_module(A, L, [[0, 0, 0], [1, 1, 1]])  # 1 . 0 should be bottom
    assert info.value.witness[0] == "quantale"
    P = quantale("PZ2")
    # {1} acting as identity breaks {1}*{1} = {0}: must be the swap, which does not exist on a chain
    with pytest.raises((AssociativityFails, NotBimorphism, UnitActionFails)):
        validate_module(P, chain(2), [[0, 0, 0, 0], [0, 1, 0, 1]])


def test_hom_tables_match_scan():
    for q in ("2", "C3", "PZ2"):
        mods = modules_up_to(quantale(q), 3)
        for M, N in itertools.product(mods, repeat=2):
            assert module_hom_tables(M, N) == _scan_homs(M, N)


def test_hom_lattice_over_two_is_internal_hom():
    two = quantale("2")
    for (_, L), (_, M) in itertools.product(catalog_lattices(), repeat=2):
        ML, MM = enumerate_modules(two, L)[0], enumerate_modules(two, M)[0]
        assert hom_lattice(ML, MM).labels == internal_hom(L, M).labels


def test_equivariance_error():
    A = quantale("C3")
    M = regular_module(A)
    with pytest.raises(NotEquivariant):
        module_morphism(M, M, (0, 2, 2))


def test_composition_and_epi():
    R = regular_module(quantale("C3"))
    tables = module_hom_tables(R, R)
    homs = [ModuleMorphism(R, R, t) for t in tables]
    for f, g in itertools.product(homs, repeat=2):
        assert is_module_morphism(R, R, f.compose(g).table)
    assert is_epi(ModuleMorphism.identity(R))


def test_endomorphisms_of_regular_module_recover_quantale():
    for name in ("2", "C3", "PZ2", "Rel2"):
        A = quantale(name)
        E = endo_module_quantale(regular_module(A))
        assert quantale_iso_search(E, A).found


def test_free_module_shape():
    A = quantale("C3")
    F = free_module(A, 2)
    assert len(F) == 9
    g = free_generator(F, 1)
    assert F.carrier.labels[g] == (0, 2)
    assert is_projective(F) and is_generator(F)
    with pytest.raises(BudgetExceeded):
        free_module(A, 10, budget=1000)


def test_free_cover_is_epi():
    M = validate_module(quantale("C3"), chain(2), [[0, 0, 0], [0, 0, 1]])
    F, eps = free_cover(M)
    assert is_module_morphism(F, M, eps.table) and is_epi(eps)


def test_submodule_and_inclusion():
    F = free_module(quantale("C3"), 2)
    S = submodule_generated(F, [free_generator(F, 0)])
    assert len(S) == 3
    assert is_module_morphism(S, F, inclusion(S, F).table)


def test_mismatched_quantales():
    with pytest.raises(QuantaleMismatch):
        module_hom_tables(regular_module(quantale("2")), regular_module(quantale("C3")))


def test_module_isomorphism_search():
    A = quantale("C3")
    mods = enumerate_modules(A, chain(3))
    for i, M in enumerate(mods):
        for j, N in enumerate(mods):
            assert (module_iso_search(M, N) is not None) == (i == j)


def test_relations_as_bimodule():
    R = quantale("Rel2")
    act = R.mult_array
    B = Bimodule(R, R, R.carrier, act, act)
    assert B is not None
    assert opposite(opposite(R)).mult_array.tolist() == act.tolist()


@settings(max_examples=40)
@given(st.sampled_from(["2", "C3", "C4", "PZ2"]), st.data())
def test_random_homs_compose(name, data):
    mods = modules_up_to(quantale(name), 3)
    M, N, P = (data.draw(st.sampled_from(mods)) for _ in range(3))
    fs, gs = module_hom_tables(M, N), module_hom_tables(N, P)
    f = ModuleMorphism(M, N, data.draw(st.sampled_from(fs)))
    g = ModuleMorphism(N, P, data.draw(st.sampled_from(gs)))
    assert g.compose(f).table in module_hom_tables(M, P)
