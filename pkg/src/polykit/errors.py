"""Exception types raised across polykit."""


class PolykitError(Exception):
    """Base class for every error raised by the library."""


class DegenerateInput(PolykitError):
    pass


class UnknownName(PolykitError):
    pass


class ResourceBound(PolykitError):
    pass


class NotBalanced(PolykitError):
    pass


class BalancedRequired(NotBalanced):
    pass


class NotColDivisible(PolykitError):
    pass


class ValidationFailure(PolykitError):
    pass


class NotLiftable(PolykitError):
    pass


class EmptyColumnSet(PolykitError):
    pass


class RigidityFailure(PolykitError):
    pass


class CaseNotCovered(PolykitError):
    pass


class SingularMatrix(PolykitError):
    pass


class StageMismatch(PolykitError):
    pass


class NotInvariant(PolykitError):
    pass


class BaseFacetMismatch(PolykitError):
    pass


class LetterOutsideSystem(PolykitError):
    pass


class NotIsomorphic(PolykitError):
    pass


class StageTooSmall(PolykitError):
    pass


class DimensionMismatch(PolykitError):
    pass


class NoColumns(PolykitError):
    pass


class Unclassifiable(PolykitError):
    pass


class SchemaError(PolykitError):
    pass
