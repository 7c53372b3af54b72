"""Names and enums shared across the prover"""

from enum import Enum, auto

ADDER_STR = "adder"
LESS_STR = "less"
EQUAL_STR = "equal"
ZERO_STR = "zero"
ONE_STR = "one"

STRUCTURE_OPS = (ADDER_STR, LESS_STR, EQUAL_STR, ZERO_STR, ONE_STR)
OPS_WITH_DEFAULTS = (EQUAL_STR, ZERO_STR, ONE_STR)

# arity of the call template behind each structure operation
OP_ARITY = {ADDER_STR: 3, LESS_STR: 2, EQUAL_STR: 2, ZERO_STR: 1, ONE_STR: 1}

STAR_SLOT_STR = "any"
TEMP_PREFIX = "@"
AP_PREFIX = "v"

TRUE_STR = "TRUE"
FALSE_STR = "FALSE"

EXISTS_SYMBOL = "∃"
FORALL_SYMBOL = "∀"
SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


class Verdict(Enum):
    """Outcome of a theorem"""

    TRUE = auto()
    FALSE = auto()


class Quantifier(Enum):
    """Quantifier kinds, used by the complexity signature"""

    EXISTS = auto()
    FORALL = auto()

    @property
    def symbol(self) -> str:
        return EXISTS_SYMBOL if self is Quantifier.EXISTS else FORALL_SYMBOL

    def flipped(self) -> "Quantifier":
        return Quantifier.FORALL if self is Quantifier.EXISTS else Quantifier.EXISTS


class OutputMode(Enum):
    """Report layouts of the command line"""

    HUMAN = auto()
    CSV = auto()
