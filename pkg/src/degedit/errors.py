"""Shared exception types."""


class CapacityError(Exception):
    """An operation was refused because an instance exceeds a size cap."""


class ParseError(Exception):
    """Malformed instance file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
