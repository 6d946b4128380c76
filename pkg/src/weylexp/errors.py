"""Exception types. ``exit_code`` is what the command-line front end returns."""


class WeylExpError(Exception):
    exit_code = 1


class DimensionMismatch(WeylExpError, ValueError):
    pass


class SingularMatrix(WeylExpError, ValueError):
    pass


class InputError(WeylExpError):
    """Invalid user input: the system violates an assumption or a file is malformed."""

    exit_code = 2


class HomogeneityViolation(InputError):
    pass


class LinearDependence(InputError):
    pass


class HoermanderViolation(InputError):
    pass


class ParseError(InputError):
    def __init__(self, msg, line=None, col=None):
        self.line, self.col = line, col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + msg)


class ResourceLimit(WeylExpError):
    exit_code = 2


class InconsistentInput(WeylExpError, ValueError):
    pass


class ImpossibleProfile(WeylExpError, AssertionError):
    """Internal inconsistency; never caused by user input."""


class NoFullDimensionalPair(WeylExpError):
    """Every index pair was skipped as lower dimensional."""


class NeedsResolution(WeylExpError):
    """Some reduced polynomial is not a monomial; a change of variables is needed."""

    exit_code = 3

    def __init__(self, offending):
        self.offending = list(offending)
        super().__init__("non-monomial polynomials: " + ", ".join(str(p) for p in self.offending))


class Divergent(WeylExpError):
    """The monomial integral is infinite for every r; ``pair`` is the witness."""

    exit_code = 4

    def __init__(self, pair, contributions=()):
        self.pair = pair
        self.contributions = list(contributions)
        super().__init__(f"integral diverges: witness pair {pair}")


class DomainError(WeylExpError, ValueError):
    pass


class DegenerateDesign(WeylExpError, ValueError):
    pass
