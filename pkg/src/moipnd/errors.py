"""Exception types shared across the package."""


class ContractError(ValueError):
    """An operation was called outside its preconditions."""


class ResourceError(RuntimeError):
    """A solver hit an iteration, node or enumeration limit before finishing."""


class BudgetExceeded(ResourceError):
    """The brute-force oracle refused a box larger than its budget."""


class ParseError(ValueError):
    """Malformed problem file. ``line`` is 1-based, or None when unknown."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
