"""Exception hierarchy shared by every module of the package."""


class LieOscError(Exception):
    """Base class for all errors raised by lieosc."""


class InvalidScalarError(LieOscError, ValueError):
    pass


class InvalidRankError(LieOscError, ValueError):
    pass


class ConstructionError(LieOscError):
    """A constructed object violates one of its defining invariants."""

    def __init__(self, message: str, index=None):
        super().__init__(message if index is None else f"{message} (at {index})")
        self.index = index


class ConsistencyError(LieOscError):
    pass


class StructureError(LieOscError):
    pass


class CutoffTooSmallError(LieOscError, ValueError):
    pass


class FamilyMismatchError(LieOscError, ValueError):
    pass


class PoleError(LieOscError, ZeroDivisionError):
    pass
