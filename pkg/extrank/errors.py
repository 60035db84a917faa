"""Exception hierarchy for extrank; each error carries the CLI exit code it maps to."""

from typing import Optional


class ExtRankError(Exception):
    """Base class for all library errors"""

    exit_code = 2


class UnknownArgument(ExtRankError):
    """An attack or set mentions an argument that was never declared"""

    def __init__(self, name: str, where: str = ""):
        self.name = name
        suffix = f" ({where})" if where else ""
        super().__init__(f"unknown argument '{name}'{suffix}")


class DuplicateArgument(ExtRankError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"argument '{name}' declared twice")


class FrameworkMismatch(ExtRankError):
    """Two argument sets (or a set and a framework) belong to different frameworks"""


class NotUnary(ExtRankError):
    """A pairwise base relation was asked for a single-set value"""


class NotDisjoint(ExtRankError):
    pass


class NotAPartition(ExtRankError):
    pass


class SpecSyntaxError(ExtRankError):
    pass


class ConfigError(ExtRankError):
    pass


class ApxSyntaxError(ExtRankError):
    """Malformed APX statement, with 1-based line and column"""

    def __init__(self, message: str, line: int, column: int, source: Optional[str] = None):
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")


class TooLarge(ExtRankError):
    """Resource cap exceeded (enumeration or materialization)"""

    exit_code = 3

    def __init__(self, size: int, cap: int, what: str = "enumeration"):
        self.size = size
        self.cap = cap
        super().__init__(f"{what} needs {size} arguments but the cap is {cap}")


class TooLargeForCope(TooLarge):
    def __init__(self, size: int, cap: int):
        super().__init__(size, cap, what="copeland balances")


class NoConvergence(ExtRankError):
    exit_code = 3
