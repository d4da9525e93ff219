"""Exception hierarchy. The CLI maps each class to its own exit code."""


class HopsetError(Exception):
    pass


class UsageError(HopsetError, ValueError):
    """Bad arguments or violated preconditions."""


class GraphParseError(HopsetError):
    def __init__(self, message, path=None, lineno=None):
        where = ""
        if path is not None:
            where = f"{path}:"
        if lineno is not None:
            where += f"{lineno}: "
        elif where:
            where += " "
        super().__init__(f"{where}{message}")
        self.path = path
        self.lineno = lineno


class NegativeWeightError(GraphParseError):
    pass


class OracleCapError(HopsetError):
    """Refusal to run a quadratic-memory oracle on a graph that is too large."""


class CapacityError(HopsetError, OverflowError):
    """A derived integer (the hop budget) does not fit in 64 bits."""


class FingerprintMismatch(UsageError):
    """A hopset is being checked against a graph it was not built from.

    A usage error for library callers; the CLI still gives it its own exit code.
    """
