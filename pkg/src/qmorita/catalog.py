"""Named lattices and quantales used by the suites and the command line."""
from __future__ import annotations

import re
from functools import lru_cache

from .errors import ParseError
from .lattice import FiniteSupLattice, chain, diamond, one, pentagon, two
from .quantale import (
    Quantale,
    chain_locale,
    cyclic_group_table,
    endo_quantale,
    powerset_monoid_quantale,
    relation_quantale,
    two_quantale,
)

LATTICE_NAMES = ("1", "2", "C3", "C4", "M2", "N5")
QUANTALE_NAMES = ("2", "C3", "C4", "PZ2", "Rel2", "Mat2_2", "Mat2_C3", "End_C3")
COMMUTATIVE_NAMES = ("2", "C3", "PZ2")


@lru_cache(maxsize=None)
def lattice(name: str) -> FiniteSupLattice:
    """``1``, ``2``, ``Cn`` (chain with n elements), ``M2`` (diamond) or ``N5`` (pentagon)."""
    fixed = {"1": one, "2": two, "M2": diamond, "N5": pentagon}
    if name in fixed:
        return fixed[name]()
    m = re.fullmatch(r"C(\d+)", name)
    if m and int(m.group(1)) >= 1:
        return chain(int(m.group(1)))
    raise ParseError(f"unknown lattice {name!r}")


@lru_cache(maxsize=None)
def quantale(name: str) -> Quantale:
    """``2``, ``Cn`` (chain locale), ``PZn`` (subsets of the cyclic group),
    ``Reln``, ``Matn_<base>`` or ``End_<lattice>``."""
    if name == "2":
        return two_quantale()
    m = re.fullmatch(r"C(\d+)", name)
    if m and int(m.group(1)) >= 1:
        return chain_locale(int(m.group(1)))
    m = re.fullmatch(r"PZ(\d+)", name)
    if m and int(m.group(1)) >= 1:
        Q = powerset_monoid_quantale(cyclic_group_table(int(m.group(1))))
        Q.name = name
        return Q
    m = re.fullmatch(r"Rel(\d+)", name)
    if m and int(m.group(1)) >= 1:
        Q = relation_quantale(int(m.group(1)))
        Q.name = name
        return Q
    m = re.fullmatch(r"Mat(\d+)_(.+)", name)
    if m:
        from .matrix import matrix_quantale
        Q = matrix_quantale(quantale(m.group(2)), int(m.group(1)))
        Q.name = name
        return Q
    m = re.fullmatch(r"End_(.+)", name)
    if m:
        Q = endo_quantale(lattice(m.group(1)))
        Q.name = name
        return Q
    raise ParseError(f"unknown quantale {name!r}")


def catalog_lattices() -> list[tuple[str, FiniteSupLattice]]:
    return [(n, lattice(n)) for n in LATTICE_NAMES]


def catalog_quantales() -> list[tuple[str, Quantale]]:
    return [(n, quantale(n)) for n in QUANTALE_NAMES]
