import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qmorita.catalog import catalog_lattices, lattice
from qmorita.errors import NoJoin, NotAPartialOrder, NotASupMap, NotIdempotent
from qmorita.lattice import (
    MonotoneMap,
    SupMap,
    biproduct,
    chain,
    diamond,
    find_lattice_isomorphism,
    is_sup_map,
    join_closure,
    join_generates,
    lattices_up_to,
    pentagon,
    powerset_lattice,
    right_adjoint,
    split_idempotent,
    sup_map,
    sup_maps,
    validate_lattice,
)
from qmorita.oracles import check_all_joins, preserves_all_joins, subset_join, sup_maps_by_scan

from strategies import sup_map_tables, union_closed_lattices


def test_chain_basics():
    C = chain(4)
    assert len(C) == 4 and C.bottom == 0 and C.top == 3
    assert C.join([1, 2]) == 2 and C.join([]) == 0
    assert C.join_irreducibles == (1, 2, 3)
    assert C.is_distributive


def test_diamond_and_pentagon():
    M, N = diamond(), pentagon()
    assert len(M) == 4 and len(M.join_irreducibles) == 2 and M.is_distributive
    assert len(N) == 5 and len(N.join_irreducibles) == 3 and not N.is_distributive
    assert find_lattice_isomorphism(M, N) is None


def test_reflexivity_failure_has_witness():
    with pytest.raises(NotAPartialOrder) as info:
        validate_lattice(["a", "b"], [[1, 1], [0, 0]])
    assert info.value.witness == ("reflexive", 1)


def test_antisymmetry_failure():
    with pytest.raises(NotAPartialOrder) as info:
        validate_lattice(["a", "b"], [[1, 1], [1, 1]])
    assert info.value.witness[0] == "antisymmetric"


def test_missing_join_reported():
    # two maximal elements above a bottom: no join for the pair
    with pytest.raises(NoJoin):
        validate_lattice(["0", "a", "b"], [[1, 1, 1], [0, 1, 0], [0, 0, 1]])


def test_lattice_census_counts():
    # lattices with 1..6 elements up to isomorphism: 1, 1, 1, 2, 5, 15
    sizes = [len(L) for L in lattices_up_to(6)]
    assert [sizes.count(k) for k in range(1, 7)] == [1, 1, 1, 2, 5, 15]


@pytest.mark.parametrize("name", [n for n, _ in catalog_lattices()])
def test_catalog_joins_against_subset_oracle(name):
    assert check_all_joins(lattice(name))


@pytest.mark.parametrize("pair", list(itertools.product([n for n, _ in catalog_lattices()], repeat=2)))
def test_sup_maps_match_scan(pair):
    L, M = lattice(pair[0]), lattice(pair[1])
    if len(M) ** len(L) > 50000:
        pytest.skip("scan too large")
    assert sup_maps(L, M) == sup_maps_by_scan(L, M)


def test_not_a_sup_map():
    C = chain(3)
    assert not is_sup_map(C, C, (0, 2, 1))
    assert not is_sup_map(C, C, (1, 1, 2))  # bottom not preserved
    with pytest.raises(NotASupMap):
        sup_map(C, C, (1, 1, 2))


def test_right_adjoint_galois():
    for (_, L), (_, M) in itertools.product(catalog_lattices()[:5], repeat=2):
        for table in sup_maps(L, M):
            g = right_adjoint(SupMap(L, M, table))
            for x in L.elements:
                for y in M.elements:
                    assert M.leq(table[x], y) == L.leq(x, g.table[y])


def test_biproduct_laws():
    family = [chain(3), diamond()]
    B = biproduct(family)
    assert len(B.lattice) == 12
    for i, j in itertools.product(range(2), repeat=2):
        comp = B.projections[j].compose(B.injections[i])
        if i == j:
            assert comp.table == tuple(family[i].elements)
        else:
            assert set(comp.table) == {family[j].bottom}


def test_empty_biproduct_is_trivial():
    assert len(biproduct([]).lattice) == 1


def test_split_idempotent():
    P = powerset_lattice(2)
    e = MonotoneMap(P, P, (0, 1, 0, 1))  # keep the first bit
    s = split_idempotent(e)
    assert len(s.obj) == 2
    assert s.projection.compose(s.inclusion).table == (0, 1)
    assert s.inclusion.compose(s.projection).table == e.table


def test_split_rejects_non_idempotent():
    C = chain(3)
    with pytest.raises(NotIdempotent):
        split_idempotent(MonotoneMap(C, C, (1, 2, 2)))


def test_join_generation():
    M = diamond()
    assert join_generates(M, M.join_irreducibles)
    assert not join_generates(M, M.join_irreducibles[:1])
    assert len(join_closure(M, M.join_irreducibles[:1])) == 2
    N = pentagon()
    assert not join_generates(N, N.join_irreducibles[:2])


@given(union_closed_lattices())
def test_generated_lattice_joins(L):
    assert check_all_joins(L)
    # join of every subset of the carrier agrees with the oracle
    for mask in range(min(1 << len(L), 256)):
        assert L.join(x for x in L.elements if mask >> x & 1) == subset_join(L, mask)


@given(union_closed_lattices())
def test_join_irreducibles_by_definition(L):
    expected = []
    for x in L.elements:
        below = [y for y in L.elements if y != x and L.leq(y, x)]
        if L.join(below) != x:
            expected.append(x)
    assert sorted(L.join_irreducibles) == expected


@given(union_closed_lattices(bits=3, max_sets=4), st.data())
def test_sup_map_strategy_preserves_joins(L, data):
    M = chain(3)
    table = data.draw(sup_map_tables(L, M))
    assert bool(is_sup_map(L, M, table)) and preserves_all_joins(L, M, table)


@given(union_closed_lattices(bits=3, max_sets=3), union_closed_lattices(bits=2, max_sets=3))
def test_sup_map_enumeration_matches_scan(L, M):
    if len(M) ** len(L) <= 20000:
        assert sup_maps(L, M) == sup_maps_by_scan(L, M)


def test_leq_matrix_transitive_for_catalog():
    for _, L in catalog_lattices():
        li = L.leq_matrix.astype(int)
        assert np.array_equal((li @ li) > 0, L.leq_matrix)
