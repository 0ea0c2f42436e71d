"""Exception and warning classes shared across the package."""


class HolospecError(Exception):
    pass


class NonUnitDeterminant(HolospecError, ValueError):
    pass


class SingularMatrix(HolospecError, ValueError):
    pass


class NotLoxodromic(HolospecError, ValueError):
    pass


class DegenerateLength(HolospecError, ValueError):
    pass


class ExplosionLimit(HolospecError, RuntimeError):
    pass


class InvalidDescriptor(HolospecError, ValueError):
    pass


class UnsupportedKind(HolospecError, ValueError):
    pass


class DomainError(HolospecError, ValueError):
    pass


class OddKind(HolospecError, ValueError):
    pass


class EvenKind(HolospecError, ValueError):
    pass


class EmptySample(HolospecError, ValueError):
    pass


class ParseError(HolospecError, ValueError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append("line %d" % line)
        if field is not None:
            where.append("field %r" % field)
        if where:
            message = "%s (%s)" % (message, ", ".join(where))
        super().__init__(message)


class InvariantViolation(HolospecError, ValueError):
    def __init__(self, message, row=None, invariant=None):
        self.row = row
        self.invariant = invariant
        if row is not None:
            message = "row %d: %s" % (row, message)
        super().__init__(message)


class IncompleteSpectrumWarning(UserWarning):
    """A sum or count reached past the horizon of the spectrum table."""
