"""Abstract syntax of Pecan programs"""

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Union

if TYPE_CHECKING:
    from pecan.var_automata import PecanAutomaton


@dataclass(frozen=True)
class TypeTag:
    """A type written P or P(x1, .., xn): the values y with P(x1, .., xn, y)"""

    name: str
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.name}({', '.join(self.args)})" if self.args else self.name


# expressions


@dataclass(frozen=True)
class Var:
    name: str
    type_tag: TypeTag | None = field(default=None, compare=False)


@dataclass(frozen=True)
class IntLit:
    value: int
    type_tag: TypeTag | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError(f"Integer literals are natural numbers, got {self.value}")


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"
    type_tag: TypeTag | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"
    type_tag: TypeTag | None = field(default=None, compare=False)


@dataclass(frozen=True)
class FuncCall:
    """A predicate used as a function of all but its last argument"""

    name: str
    args: tuple["Expr", ...]
    type_tag: TypeTag | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Mul:
    """n*x, removed by desugaring"""

    factor: int
    operand: "Expr"


@dataclass(frozen=True)
class WordIndex:
    """P[i], removed by desugaring"""

    word: str
    index: "Expr"


@dataclass(frozen=True)
class Factor:
    """P[i..j], removed by desugaring"""

    word: str
    start: "Expr"
    end: "Expr"


Expr = Union[Var, IntLit, Add, Sub, FuncCall, Mul, WordIndex, Factor]


# predicates


@dataclass(frozen=True)
class TrueP:
    pass


@dataclass(frozen=True)
class FalseP:
    pass


@dataclass(frozen=True)
class And:
    left: "Pred"
    right: "Pred"


@dataclass(frozen=True)
class Or:
    left: "Pred"
    right: "Pred"


@dataclass(frozen=True)
class Not:
    operand: "Pred"


@dataclass(frozen=True)
class Exists:
    var: str
    type_tag: TypeTag | None
    body: "Pred"


@dataclass(frozen=True)
class Forall:
    var: str
    type_tag: TypeTag | None
    body: "Pred"


@dataclass(frozen=True)
class Implies:
    """P => Q and if P then Q"""

    left: "Pred"
    right: "Pred"


@dataclass(frozen=True)
class Iff:
    left: "Pred"
    right: "Pred"


@dataclass(frozen=True)
class Less:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class LessEq:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Equal:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple[Expr, ...]


@dataclass(frozen=True)
class AutLiteral:
    """An automaton given directly, loaded from a file or built in"""

    automaton: "PecanAutomaton"
    origin: str = field(default="", compare=False)


Pred = Union[
    TrueP, FalseP, And, Or, Not, Exists, Forall, Implies, Iff, Less, LessEq, Equal, Call,
    AutLiteral,
]


# top level items


@dataclass(frozen=True)
class Param:
    name: str
    type_tag: TypeTag | None = None


@dataclass(frozen=True)
class PredicateDef:
    name: str
    params: tuple[Param, ...]
    body: Pred
    line: int | None = field(default=None, compare=False)

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass(frozen=True)
class RestrictDecl:
    vars: tuple[str, ...]
    type_tag: TypeTag
    line: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class TemplateEntry:
    """Right hand side of a structure entry, e.g. bin_add(any, any, any)"""

    target: str
    slots: tuple[str, ...]


@dataclass(frozen=True)
class StructureDecl:
    type_tag: TypeTag
    entries: tuple[tuple[str, TemplateEntry], ...]
    line: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class TheoremDecl:
    name: str
    body: Pred
    line: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class LoadAutomaton:
    path: str
    name: str
    params: tuple[str, ...]
    line: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class SaveAutomaton:
    path: str
    name: str
    line: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class BuiltinDecl:
    builtin: str
    name: str
    params: tuple[str, ...]
    line: int | None = field(default=None, compare=False)


Definition = Union[PredicateDef, RestrictDecl]
Directive = Union[StructureDecl, TheoremDecl, LoadAutomaton, SaveAutomaton, BuiltinDecl]
Item = Union[Definition, Directive]


@dataclass(frozen=True)
class Program:
    items: tuple[Item, ...] = ()

    def __iter__(self):  # type: ignore[no-untyped-def]
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)


EXPR_TYPES = (Var, IntLit, Add, Sub, FuncCall, Mul, WordIndex, Factor)
PRED_TYPES = (
    TrueP, FalseP, And, Or, Not, Exists, Forall, Implies, Iff, Less, LessEq, Equal, Call,
    AutLiteral,
)


def free_vars(node: Pred | Expr) -> frozenset[str]:
    """Variables occurring outside the scope of a binder"""
    match node:
        case Var(name=name):
            return frozenset({name})
        case IntLit() | TrueP() | FalseP():
            return frozenset()
        case AutLiteral(automaton=automaton):
            return frozenset(automaton.varmap)
        case Exists(var=var, type_tag=tag, body=body) | Forall(var=var, type_tag=tag, body=body):
            inner = free_vars(body) - {var}
            return inner | frozenset(tag.args if tag else ())
        case Mul(operand=operand):
            return free_vars(operand)
        case WordIndex(index=index):
            return free_vars(index)
        case Factor(start=start, end=end):
            return free_vars(start) | free_vars(end)
        case Not(operand=operand):
            return free_vars(operand)
        case Call(args=args) | FuncCall(args=args):
            return frozenset().union(*(free_vars(arg) for arg in args))
        case (
            And(left=left, right=right)
            | Or(left=left, right=right)
            | Implies(left=left, right=right)
            | Iff(left=left, right=right)
            | Less(left=left, right=right)
            | LessEq(left=left, right=right)
            | Equal(left=left, right=right)
            | Add(left=left, right=right)
            | Sub(left=left, right=right)
        ):
            return free_vars(left) | free_vars(right)
    raise TypeError(f"Unknown syntax node {node!r}")


def names_in(node: Pred | Expr) -> frozenset[str]:
    """Every variable name, free or bound"""
    match node:
        case Exists(var=var, body=body) | Forall(var=var, body=body):
            return names_in(body) | {var}
    return free_vars(node) | _bound_below(node)


def _bound_below(node: Pred | Expr) -> frozenset[str]:
    children: tuple = ()
    match node:
        case Not(operand=operand):
            children = (operand,)
        case (
            And(left=left, right=right)
            | Or(left=left, right=right)
            | Implies(left=left, right=right)
            | Iff(left=left, right=right)
        ):
            children = (left, right)
    return frozenset().union(*(names_in(child) for child in children))
