"""Exception types shared across the package."""


class RWPSError(Exception):
    """Base class for all errors raised by this package."""


class FieldMismatchError(RWPSError, ValueError):
    """Arithmetic between elements of two different fields Q(cos(pi/k))."""


class InvalidCoefficientError(RWPSError, ValueError):
    """A recurrence coefficient c_n lies outside the open interval (0, 1)."""

    def __init__(self, n, value):
        self.n = n
        self.value = value
        super().__init__(f"c_{n} = {value} is not in (0, 1)")


class CoefficientRangeError(RWPSError, IndexError):
    """A tabulated family was asked for a coefficient beyond its table."""

    def __init__(self, n, length):
        self.n = n
        self.length = length
        super().__init__(f"c_{n} requested but the table only defines c_1..c_{length}")


class InternalConsistencyError(RWPSError, RuntimeError):
    """Two computations that must agree exactly did not."""


class ConfigError(RWPSError, ValueError):
    """Invalid run configuration; ``path`` names the offending field."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
