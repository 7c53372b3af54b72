"""Size and complexity measures of theorems"""

from dataclasses import dataclass, field

from pydantic import BaseModel, ConfigDict

from pecan.definitions import SUPERSCRIPTS, Quantifier
from pecan.syntax.ast import (
    Add,
    And,
    AutLiteral,
    Call,
    Equal,
    Exists,
    Expr,
    FalseP,
    Forall,
    FuncCall,
    Iff,
    Implies,
    IntLit,
    Less,
    LessEq,
    Not,
    Or,
    Pred,
    Sub,
    TrueP,
    Var,
)


class MetricsRecord(BaseModel):
    """Measures of one decided theorem"""

    model_config = ConfigDict(validate_assignment=True)

    atoms: int = 0
    complexity: str = ""
    max_states: int = 0
    max_edges: int = 0
    final_states: int = 0
    final_edges: int = 0
    runtime_s: float = 0.0

    def record(self, states: int, edges: int) -> None:
        """Keeps the size of the largest automaton seen so far"""
        if states > self.max_states:
            self.max_states = states
            self.max_edges = edges

    def finish(self, states: int, edges: int) -> None:
        self.record(states, edges)
        self.final_states = states
        self.final_edges = edges


@dataclass
class _QuantifierNode:
    kind: Quantifier
    children: list["_QuantifierNode"] = field(default_factory=list)


def _temporaries(node: Expr) -> int:
    """Expression nodes evaluated into a fresh existential variable"""
    match node:
        case Var():
            return 0
        case IntLit():
            return 1
        case Add(left=left, right=right) | Sub(left=left, right=right):
            return 1 + _temporaries(left) + _temporaries(right)
        case FuncCall(args=args):
            return 1 + sum(_temporaries(arg) for arg in args)
    raise TypeError(f"Unknown expression {node!r}")


def _walk(node: Pred, positive: bool) -> tuple[int, list[_QuantifierNode]]:
    """
    Atoms and quantifier forest of a predicate once every expression is
    expanded into its defining atom under an existential quantifier. A
    quantifier under an odd number of negations counts with its dual kind.
    """
    exists = Quantifier.EXISTS if positive else Quantifier.FORALL
    match node:
        case TrueP() | FalseP():
            return 0, []
        case AutLiteral():
            return 1, []
        case Not(operand=operand):
            return _walk(operand, not positive)
        case And(left=left, right=right) | Or(left=left, right=right):
            left_atoms, left_forest = _walk(left, positive)
            right_atoms, right_forest = _walk(right, positive)
            return left_atoms + right_atoms, left_forest + right_forest
        case Implies(left=left, right=right):
            return _walk(Or(Not(left), right), positive)
        case Iff(left=left, right=right):
            return _walk(And(Or(Not(left), right), Or(Not(right), left)), positive)
        case Exists(type_tag=tag, body=body):
            atoms, forest = _walk(body, positive)
            return atoms + (tag is not None), [_QuantifierNode(exists, forest)]
        case Forall(type_tag=tag, body=body):
            atoms, forest = _walk(body, positive)
            return atoms + (tag is not None), [_QuantifierNode(exists.flipped(), forest)]
        case Less(left=left, right=right) | LessEq(left=left, right=right) | Equal(
            left=left, right=right
        ):
            args: tuple[Expr, ...] = (left, right)
        case Call(args=args):
            pass
        case _:
            raise TypeError(f"Unknown predicate {node!r}")
    hidden = sum(_temporaries(arg) for arg in args)
    return 1 + hidden, [_QuantifierNode(exists) for _ in range(hidden)]


def _blocks(forest: list[_QuantifierNode], first: Quantifier) -> list[tuple[Quantifier, int]]:
    """
    Prenex blocks when pulling out quantifiers of one kind at a time,
    starting with `first`. A quantifier leaves once all its ancestors have.
    """
    blocks: list[tuple[Quantifier, int]] = []
    available = list(forest)
    kind = first
    while available:
        taken = 0
        waiting = []
        while available:
            current = available.pop()
            if current.kind is kind:
                taken += 1
                available.extend(current.children)
            else:
                waiting.append(current)
        if taken:
            blocks.append((kind, taken))
        available = waiting
        kind = kind.flipped()
    return blocks


def signature(blocks: list[tuple[Quantifier, int]]) -> str:
    """Blocks written like ∃³∀"""
    return "".join(
        kind.symbol + (str(size).translate(SUPERSCRIPTS) if size > 1 else "")
        for kind, size in blocks
    )


def formula_metrics(node: Pred) -> tuple[int, str]:
    """
    Counts atoms and reads the quantifier block signature of the prenex form
    with the fewest alternations.

    Input:
        node, Pred: a desugared predicate
    Output:
        tuple[int, str], number of atoms and signature such as "∀²"
    """
    atoms, forest = _walk(node, True)
    candidates = [_blocks(forest, kind) for kind in (Quantifier.EXISTS, Quantifier.FORALL)]
    best = min(candidates, key=len)
    return atoms, signature(best)
