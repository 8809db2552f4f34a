"""Exception types shared across the package."""


class FreqspecError(Exception):
    """Base class for all errors raised by this package."""


class FimiParseError(FreqspecError, ValueError):
    """Raised when FIMI input text cannot be parsed.

    ``line`` is the 1-based line number of the offending input line, or
    None when the problem is not tied to a single line (e.g. empty input).
    """

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class InvalidQueryError(FreqspecError, ValueError):
    """Raised when run parameters violate a precondition."""


class EnumerationCapExceeded(FreqspecError, RuntimeError):
    """Raised when exact enumeration exceeds its itemset cap.

    ``cap`` is the configured limit, ``count`` the number of itemsets
    enumerated before aborting.
    """

    def __init__(self, cap, count):
        super().__init__(f"exact enumeration exceeded cap of {cap} itemsets")
        self.cap = cap
        self.count = count
