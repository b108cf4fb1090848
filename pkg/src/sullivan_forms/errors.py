"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class SullivanFormsError(Exception):
    """Base class for all errors raised by this package."""


# polynomial kernel
class VarSpaceMismatch(SullivanFormsError):
    pass


class ZeroPolynomial(SullivanFormsError):
    pass


class NonHomogeneous(SullivanFormsError):
    pass


class DimensionMismatch(SullivanFormsError):
    pass


class PolySyntaxError(SullivanFormsError, ValueError):
    """Malformed polynomial/element text.  ``position`` is a 0-based column."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariable(SullivanFormsError, ValueError):
    pass


# groups and forms
class NotInvertible(SullivanFormsError):
    pass


class OrderBoundExceeded(SullivanFormsError):
    pass


class Degenerate(SullivanFormsError):
    pass


class NotQuadratic(SullivanFormsError):
    pass


# realizable families
class DegreeTooSmall(SullivanFormsError):
    pass


class BadS(SullivanFormsError):
    pass


class NotRealizable(SullivanFormsError):
    pass


# graded algebras
class AlgebraMismatch(SullivanFormsError):
    pass


# the model and its automorphisms
class DegreeBoundViolated(SullivanFormsError):
    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class NotOrthogonal(SullivanFormsError):
    pass


class WrongDegree(SullivanFormsError):
    pass


class DivisibilityFailure(SullivanFormsError):
    pass


class NotClosed(SullivanFormsError):
    pass


class WrongShape(SullivanFormsError):
    pass


class NotChainMap(SullivanFormsError):
    def __init__(self, message: str, generator: str | None = None, residue=None):
        super().__init__(message)
        self.generator = generator
        self.residue = residue
