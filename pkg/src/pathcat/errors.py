"""Exception hierarchy.

Every failure carries a short ``code`` (the class name) and a ``location``
tuple naming the offending objects, arrows, cells or chains.  The CLI prints
these as ``FAIL <code> <location>``.
"""

from __future__ import annotations

from typing import Any


class PathcatError(Exception):
    """Base class; ``where`` holds the offending items in a stable order."""

    def __init__(self, *where: Any, detail: str = "") -> None:
        self.where = where
        self.detail = detail
        msg = self.code
        if where:
            msg += " " + self.location
        if detail:
            msg += ": " + detail
        super().__init__(msg)

    @property
    def code(self) -> str:
        return type(self).__name__

    @property
    def location(self) -> str:
        return ",".join(_fmt(w) for w in self.where)


def _fmt(x: Any) -> str:
    from ._util import fmt

    return fmt(x)


class InputError(PathcatError):
    """Malformed or unresolvable input (CLI exit code 2)."""


class VerificationFailure(PathcatError):
    """A checked law does not hold (CLI exit code 1)."""


# fincat
class UnknownObject(InputError): pass
class UnknownArrow(InputError): pass
class EmptySet(InputError): pass
class MissingComposite(VerificationFailure): pass
class BadComposite(VerificationFailure): pass
class AssociativityViolation(VerificationFailure): pass
class IdentityViolation(VerificationFailure): pass
class CompositionNotPreserved(VerificationFailure): pass
class IdentityNotPreserved(VerificationFailure): pass
class EndpointNotPreserved(VerificationFailure): pass
class NonFunctorialAction(VerificationFailure): pass
class NotComposable(InputError): pass

# simplex
class DomainMismatch(InputError): pass
class NotMonotone(InputError): pass

# bicat
class PentagonViolation(VerificationFailure): pass
class TriangleViolation(VerificationFailure): pass
class NonNaturalAssociator(VerificationFailure): pass
class NonInvertibleStructureCell(VerificationFailure): pass
class AmbiguousCell(InputError): pass
class MonoidalAxiomViolation(VerificationFailure): pass
class M1Violation(VerificationFailure): pass
class M2Violation(VerificationFailure): pass
class NonNaturalColaxity(VerificationFailure): pass
class MissingCellImage(InputError): pass
class CellTypeMismatch(VerificationFailure): pass
class TransformationAxiomViolation(VerificationFailure): pass
class UnitAxiomViolation(VerificationFailure): pass
class NonNaturalComponent(VerificationFailure): pass
class ModificationAxiomViolation(VerificationFailure): pass
class MissingInvertible(VerificationFailure): pass
class ThreeForTwoViolation(VerificationFailure): pass
class HorizontalClosureViolation(VerificationFailure): pass

# pathcat
class EndpointMismatch(InputError): pass
class TruncationExceeded(InputError): pass
class BaseNotTerminal(InputError): pass
class NonComposableImage(VerificationFailure): pass
class IsoFailure(VerificationFailure): pass

# enrichment
class ShapeMismatch(InputError): pass
class NonSegalCell(VerificationFailure): pass
class NonInvertibleColaxity(VerificationFailure): pass
class EnrichedAxiomViolation(VerificationFailure): pass
class ShapeNotTerminal(InputError): pass
class NotCartesianTarget(InputError): pass
class SimplicialViolation(VerificationFailure): pass
class ObjectNotOverSameBase(VerificationFailure): pass
class WNotPreserved(VerificationFailure): pass
class EmptyLeaf(InputError): pass
class CocycleViolation(VerificationFailure): pass
class UnitViolation(VerificationFailure): pass
class ZeroDiagonalViolation(VerificationFailure): pass
class GroupAxiomViolation(InputError): pass

# bridge
class NotRigid(InputError): pass
class OrientationViolation(VerificationFailure): pass
class ActionAssociativityViolation(VerificationFailure): pass
class BoundaryMismatch(VerificationFailure): pass

# localize
class OreViolation(VerificationFailure): pass
class SaturationBoundExceeded(VerificationFailure): pass
class FactorizationMissing(VerificationFailure): pass
class FactorizationNotUnique(VerificationFailure): pass
class HomNotLocalizable(VerificationFailure): pass
class NotSegal(InputError): pass

# cli
class ParseError(InputError): pass
class UnresolvedReference(InputError): pass
class DuplicateName(InputError): pass
class UnknownCommand(InputError): pass
class MissingArgument(InputError): pass
