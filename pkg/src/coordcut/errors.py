"""Exception types shared by every coordcut module."""

from __future__ import annotations


class CoordCutError(Exception):
    """Base class for all solver-level errors raised by this package."""


class NoFiniteCut(CoordCutError):
    """Every s-t cut of a flow network crosses an infinite-capacity arc."""


class NotPropertyA(CoordCutError):
    """A matrix violates m11 + m22 >= m12 + m21, so the cut network
    construction would produce a negative central edge weight."""


class BudgetExceeded(CoordCutError):
    """An exhaustive scan was requested for more vertices than the budget
    allows."""

    def __init__(self, n: int, budget: int):
        super().__init__(f"instance has {n} vertices, exhaustive budget is {budget}")
        self.n = n
        self.budget = budget


class NotPotential(CoordCutError):
    """A two-player game (or some edge of a larger game) admits no pairwise
    potential: the deviation increments around the four pure profiles do not
    close."""

    def __init__(self, message: str, edges: tuple[tuple[int, int], ...] = ()):
        super().__init__(message)
        self.edges = edges


class NotATraversal(CoordCutError):
    """A vertex set misses at least one hyperedge."""


class NoValidXA(CoordCutError):
    """The open interval for the x_A gadget constant contains no integer.
    Cannot happen for thresholds with 1/gamma_B > 2; raised as an internal
    consistency failure otherwise."""


class ParseError(CoordCutError):
    """Malformed input document. ``field`` names the offending location."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
