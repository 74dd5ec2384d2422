"""Exception hierarchy shared by all modules."""


class LinsatError(Exception):
    """Base class for every error raised by this package."""


class NotAPrimePower(LinsatError, ValueError):
    pass


class RangeError(LinsatError, ValueError):
    pass


class DimensionMismatch(LinsatError, ValueError):
    pass


class InvariantViolation(LinsatError, ValueError):
    """An object breaks a structural rule, e.g. an acceptance set equal to the whole field."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class InstanceSyntaxError(LinsatError, ValueError):
    """Malformed instance or assignment text. ``lineno`` is 1-based."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class ConfigError(LinsatError, ValueError):
    pass


class NotSingleton(LinsatError, ValueError):
    pass


class MismatchedInstances(LinsatError, ValueError):
    pass


class TooLarge(LinsatError, ValueError):
    pass
