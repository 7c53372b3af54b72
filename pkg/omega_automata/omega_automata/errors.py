"""Exceptions raised by the automata kernel"""


class AutomatonError(Exception):
    """Base class of every kernel error"""


class MalformedAutomatonError(AutomatonError, ValueError):
    """An automaton violates its structural invariants"""


class UnknownApError(AutomatonError, KeyError):
    """An atomic proposition is not part of the automaton"""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown atomic proposition"


class ApCollisionError(AutomatonError, ValueError):
    """A renaming sends two distinct atomic propositions onto the same one"""


class StateBudgetExceeded(AutomatonError, RuntimeError):
    """A construction grew past the configured state budget"""

    def __init__(self, construction: str, budget: int) -> None:
        super().__init__(
            f"{construction} exceeded the state budget of {budget} states"
        )
        self.construction = construction
        self.budget = budget


class AlphabetTooLargeError(AutomatonError, RuntimeError):
    """Explicit letter enumeration was requested over too many propositions"""


class DeadlineExceeded(AutomatonError, TimeoutError):
    """A construction was still running when the deadline passed"""

    def __init__(self, construction: str) -> None:
        super().__init__(f"{construction} ran past the deadline")
        self.construction = construction
