"""Exception hierarchy shared by every module of the package."""


class HereditaryError(Exception):
    """Base class for all errors raised by this package."""


class TooFewPoints(HereditaryError, ValueError):
    pass


class DuplicatePoint(HereditaryError, ValueError):
    def __init__(self, first, second, point=None):
        self.indices = (first, second)
        self.point = point
        super().__init__(f"points {first} and {second} coincide" + (f" at {point}" if point else ""))


class ParseError(HereditaryError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class InconsistentArray(HereditaryError, ValueError):
    def __init__(self, triple, other, message="orientation array violates antisymmetry"):
        self.triple = triple
        self.other = other
        super().__init__(f"{message}: {triple} vs {other}")


class UnrealizedInput(HereditaryError, TypeError):
    """A geometric operation was requested on an abstract order type."""


class ClassMismatch(HereditaryError, ValueError):
    pass


class BadQ(HereditaryError, ValueError):
    pass


class UnsupportedQ(HereditaryError, ValueError):
    pass


class DegreeTooLow(HereditaryError, ValueError):
    pass


class NotCubic(HereditaryError, ValueError):
    pass


class YardConstructionError(HereditaryError, RuntimeError):
    """A construction sub-step failed; ``step`` names it."""

    def __init__(self, message, step=None):
        self.step = step
        super().__init__(message if step is None else f"{step}: {message}")


class NoValidMiddleInterval(YardConstructionError):
    def __init__(self, message="no middle interval avoids the crossing set"):
        super().__init__(message, step="choose_intervals")


class NoAvailablePosition(YardConstructionError):
    def __init__(self, message, step="place"):
        super().__init__(message, step=step)


class InvalidYard(HereditaryError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("yard fails verification: " + ", ".join(self.violations))
