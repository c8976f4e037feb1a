"""Exception hierarchy shared by all validators.

Every error carries a ``witness`` dict naming the offending labels or basis
indices; the CLI copies it verbatim into report findings.
"""

from __future__ import annotations


class ModcatError(Exception):
    """Base class; ``kind`` is the class name used in reports."""

    def __init__(self, message: str = "", **witness):
        super().__init__(message or self.__class__.__name__)
        self.witness = witness

    @property
    def kind(self) -> str:
        return type(self).__name__


# categories
class CategoryError(ModcatError):
    pass


class MissingComposite(CategoryError):
    pass


class NonAssociative(CategoryError):
    pass


class IdentityLawViolation(CategoryError):
    pass


class DomCodMismatch(CategoryError):
    pass


class UnknownObject(CategoryError):
    pass


class CyclicQuiver(CategoryError):
    pass


# algebras and bimodules
class AlgebraError(ModcatError):
    pass


class NonAssociativeAlgebra(AlgebraError):
    pass


class UnitLawViolation(AlgebraError):
    pass


class NotAlgebraHom(AlgebraError):
    pass


class LeftActionNotRepresentation(AlgebraError):
    pass


class RightActionNotRepresentation(AlgebraError):
    pass


class ActionsDoNotCommute(AlgebraError):
    pass


class AlgebraMismatch(AlgebraError):
    pass


class NotBalanced(AlgebraError):
    pass


class NotBimoduleMap(AlgebraError):
    pass


class ClosedFormMismatch(AlgebraError):
    pass


# modulations
class ModulationError(ModcatError):
    pass


class StrictUnitViolation(ModulationError):
    pass


class CompositorNotBalanced(ModulationError):
    pass


class CompositorNotInvertible(ModulationError):
    pass


class CoherenceFailure(ModulationError):
    pass


class PresheafError(ModulationError):
    pass


# representations
class RepresentationError(ModcatError):
    pass


class LaxUnityViolation(RepresentationError):
    pass


class LaxSquareFailure(RepresentationError):
    pass


class ModulationMismatch(RepresentationError):
    pass


class RoundtripMismatch(RepresentationError):
    pass


class IncompatiblePair(RepresentationError):
    pass


class SquareFailure(RepresentationError):
    pass


# presheaf modules
class NotPresheafBacked(RepresentationError):
    pass


class BaseMismatch(RepresentationError):
    pass


class PresheafModuleError(RepresentationError):
    pass


# input files
class InputError(ModcatError):
    pass


class ParseError(InputError):
    pass


class UnresolvedReference(InputError):
    pass


class UnknownDemo(InputError):
    pass
