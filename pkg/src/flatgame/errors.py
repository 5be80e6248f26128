"""Exception hierarchy.

Everything raised on purpose by the package derives from :class:`GameError`,
so callers (the CLI in particular) can catch a single type.  ``UsageError``
subclasses are mapped to exit code 2 by the CLI, everything else to 3.
"""


class GameError(ValueError):
    pass


class UsageError(GameError):
    pass


class ShapeMismatch(GameError):
    pass


class EmptyGame(GameError):
    pass


class UnknownBuiltin(UsageError):
    pass


class BadParams(UsageError):
    pass


class NotOrderPreserving(GameError):
    pass


class MissingValue(GameError):
    pass


class PreconditionFailed(GameError):
    pass


class NotEquilibrium(PreconditionFailed):
    pass


class DimensionMismatch(GameError):
    pass


class GameTooLarge(GameError):
    pass


class EmptySet(GameError):
    pass


class DomainError(GameError):
    pass


class BudgetExceeded(GameError):
    pass


class ParseError(GameError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class BadRational(ParseError):
    pass
