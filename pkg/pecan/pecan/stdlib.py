"""
Built-in automata: binary naturals, least significant bit first, each number
on one track which is eventually false, and the Thue-Morse word.
"""

from itertools import product
from typing import Callable, Mapping, NamedTuple

from omega_automata.buchi import BuchiAutomaton, LassoWord
from omega_automata.guard import TRUE, Guard

from pecan.definitions import EQUAL_STR, ONE_STR, ZERO_STR
from pecan.errors import ArityError, ResolutionError
from pecan.syntax.ast import TypeTag
from pecan.typecheck import StructureDef
from pecan.var_automata import PecanAutomaton, VariableMap

DEFAULT_VARS = ("$x", "$y")

# formals of the default automata of each structure operation
DEFAULT_FORMALS = {EQUAL_STR: DEFAULT_VARS, ZERO_STR: DEFAULT_VARS[:1], ONE_STR: DEFAULT_VARS[:1]}

FormulaCompiler = Callable[[str, Mapping[str, TypeTag | None]], PecanAutomaton]


def _bits(value: int) -> list[int]:
    bits = []
    while value:
        bits.append(value & 1)
        value >>= 1
    return bits


def build_nat_type(x: str = "x") -> BuchiAutomaton:
    """Tracks with finitely many true positions"""
    zero = Guard.atom(x, False)
    return BuchiAutomaton.build([x], 2, 0, [1], [(0, 0, TRUE), (0, 1, zero), (1, 1, zero)])


def build_bin_add(x: str = "x", y: str = "y", z: str = "z") -> BuchiAutomaton:
    """
    x + y = z with a carry: state c reads bits (a, b, s) and moves to c'
    when a + b + c = s + 2c'. Accepts when the carry is 0 infinitely often.
    """
    edges = []
    for carry, a, b, s in product((0, 1), repeat=4):
        total = a + b + carry
        if total % 2 == s:
            guard = Guard.cube({x: bool(a), y: bool(b), z: bool(s)})
            edges.append((carry, total // 2, guard))
    return BuchiAutomaton.build([x, y, z], 2, 0, [0], edges)


def build_bin_less(x: str = "x", y: str = "y") -> BuchiAutomaton:
    """x < y: guesses the most significant differing bit, where x has 0 and y has 1"""
    same = Guard.cube({x: True, y: True}) | Guard.cube({x: False, y: False})
    differ = Guard.cube({x: False, y: True})
    return BuchiAutomaton.build([x, y], 2, 0, [1], [(0, 0, TRUE), (0, 1, differ), (1, 1, same)])


def build_equal(x: str = "x", y: str = "y") -> BuchiAutomaton:
    """Equal tracks"""
    same = Guard.cube({x: True, y: True}) | Guard.cube({x: False, y: False})
    return BuchiAutomaton.build([x, y], 1, 0, [0], [(0, 0, same)])


def build_zero(x: str = "x") -> BuchiAutomaton:
    """The track false forever"""
    return BuchiAutomaton.build([x], 1, 0, [0], [(0, 0, Guard.atom(x, False))])


def build_thue_morse(i: str = "i") -> BuchiAutomaton:
    """T(i) holds when i has an odd number of ones in binary"""
    one, zero = Guard.atom(i), Guard.atom(i, False)
    return BuchiAutomaton.build(
        [i], 2, 0, [1], [(0, 0, zero), (0, 1, one), (1, 1, zero), (1, 0, one)]
    )


class Builtin(NamedTuple):
    builder: Callable[..., BuchiAutomaton]
    arity: int


BUILTINS: dict[str, Builtin] = {
    "nat": Builtin(build_nat_type, 1),
    "bin_add": Builtin(build_bin_add, 3),
    "bin_less": Builtin(build_bin_less, 2),
    "equal": Builtin(build_equal, 2),
    "zero": Builtin(build_zero, 1),
    "thue_morse": Builtin(build_thue_morse, 1),
}


def builtin_automaton(
    name: str, params: tuple[str, ...], tracks: Callable[[str], tuple[str, ...]]
) -> PecanAutomaton:
    """
    Instantiates a builtin over variables.

    Input:
        name, str: key of BUILTINS
        params, tuple[str, ...]: one variable per argument
        tracks, Callable: gives the propositions of a variable
    Output:
        PecanAutomaton, the builtin with its arguments bound to the variables
    """
    if name not in BUILTINS:
        raise ResolutionError(f"No builtin automaton named {name}, known: {sorted(BUILTINS)}")
    builtin = BUILTINS[name]
    if len(params) != builtin.arity:
        raise ArityError(f"Builtin {name} takes {builtin.arity} arguments, got {len(params)}")
    varmap = VariableMap({param: tracks(param) for param in params})
    aps = [varmap[param][0] for param in params]
    return PecanAutomaton(varmap, builtin.builder(*aps))


def one_formula(tag: TypeTag) -> str:
    """The least nonzero element of a type"""
    x, y = DEFAULT_VARS
    typed = f"{tag.name}({', '.join((*tag.args, x))})"
    return f"{typed} & !({x} = 0) & (forall {y} is {tag}. {y} = 0 | {x} <= {y})"


def default_operation(
    op: str,
    tag: TypeTag | None,
    tracks: Callable[[str], tuple[str, ...]],
    compile_formula: FormulaCompiler,
) -> PecanAutomaton:
    """
    Default automaton of equal, zero or one over the variables
    DEFAULT_FORMALS[op]. Equality compares the tracks, zero is the false
    track and one is compiled from its defining formula.
    """
    formals = DEFAULT_FORMALS.get(op)
    if formals is None:
        raise ResolutionError(f"{op} has no default definition")
    varmap = VariableMap({name: tracks(name) for name in formals})
    aps = [varmap[name][0] for name in formals]
    if op == EQUAL_STR:
        return PecanAutomaton(varmap, build_equal(*aps))
    if op == ZERO_STR:
        return PecanAutomaton(varmap, build_zero(*aps))
    if tag is None:
        raise ResolutionError("one needs a numeric type")
    gamma = {arg: None for arg in tag.args} | {formals[0]: tag}
    return compile_formula(one_formula(tag), gamma)


def build_defaults(
    structure: StructureDef,
    tag: TypeTag,
    tracks: Callable[[str], tuple[str, ...]],
    compile_formula: FormulaCompiler,
) -> dict[str, PecanAutomaton]:
    """Default automata for the operations among equal, zero and one the structure leaves out"""
    return {
        op: default_operation(op, tag, tracks, compile_formula)
        for op in DEFAULT_FORMALS
        if op not in structure.defs
    }


def nat_word(values: Mapping[str, int]) -> LassoWord:
    """
    Lasso word carrying natural numbers, least significant bit first.

    Input:
        values, Mapping[str, int]: proposition to the number on its track
    Output:
        LassoWord, the bits followed by false forever
    """
    if any(value < 0 for value in values.values()):
        raise ValueError(f"Only natural numbers have an encoding, got {dict(values)}")
    bits = {ap: _bits(value) for ap, value in values.items()}
    length = max((len(row) for row in bits.values()), default=0)
    prefix = [
        [ap for ap, row in bits.items() if position < len(row) and row[position]]
        for position in range(length)
    ]
    return LassoWord.of(prefix, [[]])
