"""Exception hierarchy shared by every module."""


class SecdomError(Exception):
    """Base class for all errors raised by this package."""


class InvalidSizeError(SecdomError, ValueError):
    """A graph or family size outside its valid range."""


class ContractError(SecdomError, ValueError):
    """A caller violated an operation's precondition."""


class ParseError(SecdomError, ValueError):
    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class NotApplicableError(SecdomError, ValueError):
    """A bound or construction does not cover the requested residue."""


class UnsupportedFamilyError(SecdomError, ValueError):
    pass
