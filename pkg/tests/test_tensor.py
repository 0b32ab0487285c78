import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qmorita.catalog import catalog_lattices, lattice
from qmorita.errors import BudgetExceeded, NotABimorphism
from qmorita.lattice import chain, find_lattice_isomorphism, powerset_lattice, sup_maps, two
from qmorita.oracles import biclosed_sets
from qmorita.tensor import (
    Bimorphism,
    curry_bijection_check,
    enumerate_bimorphisms,
    factor_through_tensor,
    internal_hom,
    is_bimorphism,
    swap_isomorphism,
    tensor,
    unit_isomorphism,
)

from strategies import union_closed_lattices

NAMES = [n for n, _ in catalog_lattices()]


def _binom(n, k):
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


@pytest.mark.parametrize("m,n", [(2, 2), (3, 3), (3, 4), (4, 4), (2, 5)])
def test_tensor_of_chains_counts_lattice_paths(m, n):
    # chains are down-set lattices of chains; their tensor is the down-set
    # lattice of a grid, counted by lattice paths
    T = tensor(chain(m), chain(n))
    assert len(T.lattice) == _binom(m + n - 2, m - 1)


def test_tensor_of_boolean_algebras_multiplies_atoms():
    T = tensor(powerset_lattice(2), powerset_lattice(2))
    assert find_lattice_isomorphism(T.lattice, powerset_lattice(4)) is not None


@pytest.mark.parametrize("a,b", list(itertools.product(NAMES, repeat=2)))
def test_tensor_matches_biclosed_oracle(a, b):
    L, M = lattice(a), lattice(b)
    assert list(tensor(L, M).lattice.labels) == biclosed_sets(L, M)


@pytest.mark.parametrize("name", NAMES)
def test_unit_and_symmetry(name):
    L = lattice(name)
    assert unit_isomorphism(L)
    assert swap_isomorphism(tensor(L, lattice("N5")), tensor(lattice("N5"), L))


def test_universal_map_is_bimorphism():
    T = tensor(lattice("M2"), lattice("N5"))
    assert is_bimorphism(T.left, T.right, T.lattice, T.universal)


def test_factor_rejects_non_bimorphism():
    C = chain(3)
    bad = tuple(tuple(max(l, m) for m in C.elements) for l in C.elements)  # join is not bilinear
    with pytest.raises(NotABimorphism):
        factor_through_tensor(Bimorphism(C, C, C, bad))


def test_hom_size_matches_enumeration():
    for a, b in itertools.product(NAMES, repeat=2):
        L, M = lattice(a), lattice(b)
        assert len(internal_hom(L, M)) == len(sup_maps(L, M))


def test_hom_into_two_is_dual_size():
    # sup-maps L -> 2 correspond to elements of L
    for _, L in catalog_lattices():
        assert len(internal_hom(L, two())) == len(L)


def test_curry_counts_example():
    check = curry_bijection_check(chain(3), chain(3), chain(3))
    assert check
    counts = check.witness
    assert counts["bimorphisms"] == counts["curried"] == counts["tensored"]


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        tensor(lattice("N5"), lattice("N5"), budget=5)


@settings(max_examples=25)
@given(union_closed_lattices(bits=3, max_sets=4), union_closed_lattices(bits=2, max_sets=3))
def test_random_tensor_matches_oracle(L, M):
    assert list(tensor(L, M).lattice.labels) == biclosed_sets(L, M)


@settings(max_examples=15)
@given(union_closed_lattices(bits=2, max_sets=3), union_closed_lattices(bits=2, max_sets=3), st.integers(2, 3))
def test_random_curry_bijection(L, M, n):
    assert curry_bijection_check(L, M, chain(n))


@settings(max_examples=15)
@given(union_closed_lattices(bits=2, max_sets=3), union_closed_lattices(bits=2, max_sets=3))
def test_bimorphisms_into_two_match_tensor_dual(L, M):
    # bimorphisms L x M -> 2 are sup-maps out of the tensor, i.e. its elements
    assert len(enumerate_bimorphisms(L, M, two())) == len(tensor(L, M).lattice)
