"""
Exceptions raised by the kernelization engine and the command handlers
"""


class WtdsError(Exception):
    """Base class for every error raised by this package"""


class InstanceParseError(WtdsError):
    """Malformed instance file"""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        self.message = message
        super().__init__(f"line {line_no}: {message}")


class GraphError(WtdsError):
    """Misuse of the in-memory graph API (unknown vertex, self-loop, bad contraction)"""


class InvariantViolation(WtdsError):
    """A proven bound or structural claim failed at runtime"""

    def __init__(self, bound: str, lhs=None, rhs=None):
        self.bound = bound
        self.lhs = lhs
        self.rhs = rhs
        if lhs is None and rhs is None:
            super().__init__(f"invariant violated: {bound}")
        else:
            super().__init__(f"invariant violated: {bound} ({lhs} > {rhs})")


class OracleLimitError(WtdsError):
    """Exhaustive solver refused an instance above its size limit"""

    def __init__(self, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(f"instance has {n} vertices, oracle limit is {limit}")


class ConfigurationError(WtdsError):
    """Bad flag or environment combination"""
