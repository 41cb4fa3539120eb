"""Exception hierarchy.

Every error raised by the library derives from :class:`TropError`; the CLI maps
:class:`InputError` subclasses to exit code 2 and :class:`PreconditionError`
subclasses to exit code 3.
"""


class TropError(Exception):
    pass


class InputError(TropError, ValueError):
    pass


class PreconditionError(TropError):
    pass


class DimensionMismatch(InputError):
    pass


class ZeroVector(InputError):
    pass


class NotSublattice(InputError):
    pass


class InfiniteIndex(InputError):
    pass


class NotRationalSubspace(InputError):
    pass


class EmptyPolyhedron(InputError):
    pass


class NotPureDimensional(InputError):
    pass


class NoCommonRefinement(TropError):
    pass


class PointNotOnSupport(InputError):
    pass


class NoFanStructure(PreconditionError):
    pass


class NotAComponentUnion(PreconditionError):
    pass


class NotMultiplicityOneFace(PreconditionError):
    pass


class PointNotInterior(PreconditionError):
    pass


class InvalidFan(InputError):
    pass


class ConeNotInFan(InputError):
    pass


class DirectionOutsideSupport(InputError):
    pass


class NotCompatible(PreconditionError):
    def __init__(self, message, cone=None, polyhedron=None):
        super().__init__(message)
        self.cone = cone
        self.polyhedron = polyhedron


class NotCompactifying(PreconditionError):
    pass


class FrameMismatch(InputError):
    pass


class NotComplete(PreconditionError):
    pass


class NotCartier(PreconditionError):
    pass


class NotFullDimensional(InputError):
    pass


class Unbounded(InputError):
    pass


class SingleTerm(InputError):
    pass


class FanMismatch(InputError):
    pass


class WrongCodim(InputError):
    pass


class NotCartierOnCycle(PreconditionError):
    pass


class ChartCoverGap(PreconditionError):
    pass


class NotPlanar(InputError):
    pass


class UnknownFixture(InputError):
    pass


class ParseError(InputError):
    pass
