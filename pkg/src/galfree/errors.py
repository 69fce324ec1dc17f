"""Exception types shared across the package."""

from __future__ import annotations


class GalfreeError(Exception):
    """Base class for all errors raised by galfree."""


class NotAGroup(GalfreeError):
    """A table fails one of the group axioms.

    ``witness`` holds the offending indices (a triple for associativity,
    a single element for the identity/inverse laws, a cell for range errors).
    """

    def __init__(self, reason: str, witness: tuple = ()):
        super().__init__(f"{reason} (witness {witness})" if witness else reason)
        self.reason = reason
        self.witness = witness


class NotABijection(GalfreeError):
    pass


class OrderLimitExceeded(GalfreeError):
    pass


class NotNormal(GalfreeError):
    def __init__(self, message: str, witness: int | None = None):
        super().__init__(message)
        self.witness = witness


class NotAHomomorphism(GalfreeError):
    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = witness


class DomainMismatch(GalfreeError):
    pass


class SearchBudgetExceeded(GalfreeError):
    def __init__(self, nodes: int, budget: int):
        super().__init__(f"search budget of {budget} nodes exceeded")
        self.nodes = nodes
        self.budget = budget


class Unsupported(GalfreeError):
    pass


class NotEpi(GalfreeError):
    pass


class InvalidProblem(GalfreeError):
    def __init__(self, violations):
        super().__init__("invalid embedding problem: " + "; ".join(str(v) for v in violations))
        self.violations = list(violations)


class EqualWords(GalfreeError):
    pass


class MarksNotPGroups(GalfreeError):
    pass


class NoConjugatorFound(GalfreeError):
    pass


class NonUniqueSylow(GalfreeError):
    pass


class InvalidDatum(GalfreeError):
    pass


class NotIntegral(GalfreeError):
    pass


class IllegalDefect(GalfreeError):
    pass


class SingularMatrix(GalfreeError):
    pass


class InvalidSetup(GalfreeError):
    pass
