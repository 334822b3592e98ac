"""Exceptions raised by the bitbranch library."""


class BitbranchError(Exception):
    """Root of all library errors."""


class ParseError(BitbranchError):
    """Syntax error in program or expression text."""

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class ReservedWordError(ParseError):
    """A reserved word appears where an identifier is required."""


class UndeclaredVariableError(ParseError):
    """An identifier is used without a `var` declaration."""

    def __init__(self, name: str, *, line: int | None = None, column: int | None = None):
        self.name = name
        super().__init__(f"undeclared variable '{name}'", line=line, column=column)


class NotNormalizedError(BitbranchError):
    """A CFA was requested for a program that still contains conditional branching."""


class UnknownRuleError(BitbranchError):
    """A rule id is not part of the active catalog."""
