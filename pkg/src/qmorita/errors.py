"""Exception types raised by validators and constructions.

Every validation error carries a ``witness`` so callers (and the CLI) can
report the offending elements instead of a bare message.
"""
from __future__ import annotations


class QuantaleError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAPartialOrder(QuantaleError):
    pass


class NoJoin(QuantaleError):
    pass


class NoBottom(QuantaleError):
    pass


class NotASupMap(QuantaleError):
    pass


class NotIdempotent(QuantaleError):
    pass


class NotABimorphism(QuantaleError):
    pass


class NotAssociative(QuantaleError):
    pass


class UnitFails(QuantaleError):
    pass


class NotDistributive(QuantaleError):
    pass


class NotAMonoid(QuantaleError):
    pass


class UnitActionFails(QuantaleError):
    pass


class AssociativityFails(QuantaleError):
    pass


class NotBimorphism(QuantaleError):
    pass


class NotEquivariant(QuantaleError):
    pass


class ShapeMismatch(QuantaleError):
    pass


class QuantaleMismatch(QuantaleError):
    pass


class BudgetExceeded(QuantaleError):
    def __init__(self, what: str, size: int, budget: int):
        super().__init__(f"{what}: {size} elements exceeds budget {budget}", (size, budget))
        self.size = size
        self.budget = budget


class ParseError(QuantaleError):
    pass


class UnknownSuite(QuantaleError):
    pass
