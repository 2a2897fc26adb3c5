"""Domain errors. The class name doubles as the machine-readable error code."""


class LadderError(ValueError):
    @property
    def code(self):
        return type(self).__name__


class NotALadder(LadderError):
    pass


class NonStandardShape(LadderError):
    pass


class ConventionViolation(LadderError):
    pass


class TooManyComponents(LadderError):
    pass


class NoTMinor(LadderError):
    pass


class MissingCorner(LadderError):
    pass


class Not2Connected(LadderError):
    pass


class OutOfScope(LadderError):
    pass


class NotThin(LadderError):
    pass


class NotTwoSided(LadderError):
    pass


class CellOutsideLadder(LadderError):
    pass


class DimensionMismatch(LadderError):
    pass


class NotSupported(LadderError):
    pass
