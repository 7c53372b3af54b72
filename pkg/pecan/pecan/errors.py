"""Errors reported to Pecan users"""

from dataclasses import dataclass


@dataclass(frozen=True)
class SourceLocation:
    """Position in a source file, lines and columns start at 1"""

    path: str | None = None
    line: int | None = None
    column: int | None = None

    def __str__(self) -> str:
        place = self.path or "<input>"
        if self.line is not None:
            place += f":{self.line}"
            if self.column is not None:
                place += f":{self.column}"
        return place


class PecanError(Exception):
    """Base class of the errors a program can trigger"""

    def __init__(self, message: str, location: SourceLocation | None = None) -> None:
        super().__init__(message)
        self.message = message
        self.location = location

    def located(self, location: SourceLocation) -> "PecanError":
        """Attaches a location unless one is known already"""
        if self.location is None:
            self.location = location
        return self

    def __str__(self) -> str:
        if self.location is None:
            return self.message
        return f"{self.location}: {self.message}"


class PecanSyntaxError(PecanError):
    """The source text does not parse"""


class DesugarError(PecanError):
    """Syntactic sugar used outside of its valid forms"""


class PecanTypeError(PecanError):
    """Ill typed expression, relation or call"""


class UnknownVariableError(PecanTypeError):
    """A variable is used without being bound"""


class UnknownPredicateError(PecanTypeError):
    """A call names no defined predicate"""


class ArityError(PecanTypeError):
    """Wrong number of arguments or of propositions for a variable"""


class ResolutionError(PecanTypeError):
    """A dynamic call cannot be resolved through the structure of its arguments"""


class VariableMapConflict(PecanError):
    """Two automata assign different propositions to the same variable"""


class OpenFormulaError(PecanError):
    """A theorem has free variables"""


class DocumentError(PecanError):
    """A serialized automaton is malformed"""


class TheoremTimeout(PecanError):
    """A theorem ran past its time limit"""
