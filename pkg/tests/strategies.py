"""Hypothesis strategies for small finite lattices and maps."""
from hypothesis import strategies as st

from qmorita.lattice import from_order, sup_maps


@st.composite
def union_closed_lattices(draw, bits: int = 3, max_sets: int = 7):
    """A union-closed family of subsets containing the empty set, ordered by inclusion.

    Every finite lattice arises this way, so the family is a fair source of
    small test lattices.
    """
    masks = draw(st.sets(st.integers(1, (1 << bits) - 1), max_size=max_sets))
    family = {0}
    frontier = set(masks)
    while frontier:
        family |= frontier
        frontier = {a | b for a in family for b in family} - family
    labels = sorted(family, key=lambda m: (bin(m).count("1"), m))
    return from_order(labels, lambda a, b: a & ~b == 0, validate=True)


def sup_map_tables(L, M):
    """Strategy drawing from the full list of join-preserving maps ``L -> M``."""
    return st.sampled_from(sup_maps(L, M))
