"""Rewrites the surface sugar into the core language"""

from dataclasses import dataclass, field, replace
from functools import reduce
from itertools import count
from typing import Mapping

from pecan.errors import DesugarError, SourceLocation
from pecan.syntax.ast import (
    Add,
    And,
    AutLiteral,
    BuiltinDecl,
    Call,
    Equal,
    Exists,
    Expr,
    Factor,
    FalseP,
    Forall,
    FuncCall,
    Iff,
    Implies,
    IntLit,
    Item,
    Less,
    LessEq,
    LoadAutomaton,
    Mul,
    Not,
    Or,
    Param,
    Pred,
    PredicateDef,
    Program,
    RestrictDecl,
    SaveAutomaton,
    StructureDecl,
    Sub,
    TheoremDecl,
    TrueP,
    TypeTag,
    Var,
    WordIndex,
    names_in,
)

_FACTOR_OFFSET = "$n"


def _binary(cls, left, right):  # type: ignore[no-untyped-def]
    return cls(left, right)


def _split_offset(node: Expr) -> tuple[Expr | None, int]:
    """e + n as (e, n), a literal n as (None, n)"""
    match node:
        case IntLit(value=value):
            return None, value
        case Add(left=base, right=IntLit(value=value)) | Add(left=IntLit(value=value), right=base):
            inner, offset = _split_offset(base)
            return inner, offset + value
    return node, 0


def _constant_length(factor: Factor) -> int | None:
    """Length of P[i+m..i+n] or P[m..n], None when it depends on a variable"""
    start_base, first = _split_offset(factor.start)
    end_base, last = _split_offset(factor.end)
    if start_base != end_base or last < first:
        return None
    return last - first


def _shift(node: Expr, offset: int) -> Expr:
    if offset == 0:
        return node
    if isinstance(node, IntLit):
        return IntLit(node.value + offset)
    return Add(node, IntLit(offset))


@dataclass
class Desugarer:
    """
    Desugars items in program order. `Restrict` declarations seen so far
    are applied to the quantifiers and untyped parameters of later items.

    restrictions: variable name to its ambient type
    arities: arities of the predicates defined so far, used to reject
        word indexing on predicates that are not unary
    push_negations: also move negations down to atoms and quantifiers
    """

    restrictions: dict[str, TypeTag] = field(default_factory=dict)
    arities: dict[str, int] = field(default_factory=dict)
    push_negations: bool = True
    _offsets: count = field(default_factory=count, repr=False)

    def item(self, item: Item) -> Item:
        match item:
            case RestrictDecl(vars=names, type_tag=tag):
                for name in names:
                    self.restrictions[name] = tag
                return item
            case PredicateDef(params=params, body=body):
                typed = tuple(
                    Param(p.name, p.type_tag or self.restrictions.get(p.name)) for p in params
                )
                scope = {p.name: p.type_tag for p in typed}
                self.arities[item.name] = item.arity
                try:
                    return replace(item, params=typed, body=self.pred(body, scope))
                except DesugarError as error:
                    raise error.located(SourceLocation(line=item.line))
            case TheoremDecl(body=body):
                try:
                    return replace(item, body=self.pred(body, {}))
                except DesugarError as error:
                    raise error.located(SourceLocation(line=item.line))
            case LoadAutomaton(name=name, params=params) | BuiltinDecl(name=name, params=params):
                self.arities[name] = len(params)
                return item
            case StructureDecl() | SaveAutomaton():
                return item
        raise TypeError(f"Unknown item {item!r}")

    def program(self, program: Program) -> Program:
        return Program(tuple(self.item(item) for item in program))

    # predicates

    def pred(self, node: Pred, scope: Mapping[str, TypeTag | None]) -> Pred:
        """Desugars a predicate, scope types the variables bound around it"""
        result = self._pred(node, dict(scope))
        return self._normalize(result, positive=True)

    def _type_of(self, name: str, scope: Mapping[str, TypeTag | None]) -> TypeTag | None:
        if name in scope:
            return scope[name]
        return self.restrictions.get(name)

    def _pred(self, node: Pred, scope: dict[str, TypeTag | None]) -> Pred:
        match node:
            case TrueP() | FalseP() | AutLiteral():
                return node
            case And(left=left, right=right) | Or(left=left, right=right):
                return _binary(type(node), self._pred(left, scope), self._pred(right, scope))
            case Not(operand=operand):
                return Not(self._pred(operand, scope))
            case Implies(left=left, right=right):
                return Or(Not(self._pred(left, scope)), self._pred(right, scope))
            case Iff(left=left, right=right):
                first, second = self._pred(left, scope), self._pred(right, scope)
                return And(Or(Not(first), second), Or(Not(second), first))
            case Exists(var=var, type_tag=tag, body=body):
                tag = tag or self.restrictions.get(var)
                inner = self._pred(body, {**scope, var: tag})
                return Exists(var, tag, inner)
            case Forall(var=var, type_tag=tag, body=body):
                tag = tag or self.restrictions.get(var)
                inner = self._pred(body, {**scope, var: tag})
                return Not(Exists(var, tag, Not(inner)))
            case Less(left=left, right=right):
                return Less(self._expr(left), self._expr(right))
            case LessEq(left=left, right=right):
                first, second = self._expr(left), self._expr(right)
                return Or(Less(first, second), Equal(first, second))
            case Equal(left=left, right=right):
                return self._equal(left, right, scope)
            case Call(name=name, args=args):
                return Call(name, tuple(self._expr(arg) for arg in args))
        raise TypeError(f"Unknown predicate {node!r}")

    def _equal(self, left: Expr, right: Expr, scope: dict[str, TypeTag | None]) -> Pred:
        match left, right:
            case WordIndex(), IntLit() | WordIndex():
                pass
            case IntLit(), WordIndex():
                left, right = right, left
            case Factor(), Factor():
                return self._pred(self._factors(left, right, scope), scope)
            case _:
                return Equal(self._expr(left), self._expr(right))
        letter = self._letter(left)
        match right:
            case IntLit(value=0):
                return Not(letter)
            case IntLit(value=1):
                return letter
            case WordIndex():
                other = self._letter(right)
                return And(Or(Not(letter), other), Or(Not(other), letter))
        raise DesugarError(f"Letters of automatic words are 0 or 1, not {right.value}")

    def _letter(self, node: WordIndex) -> Call:
        """P[i] as the call P(i)"""
        arity = self.arities.get(node.word)
        if arity is not None and arity != 1:
            raise DesugarError(
                f"Cannot index {node.word}, automatic words are unary predicates "
                f"but it takes {arity} arguments"
            )
        return Call(node.word, (self._expr(node.index),))

    def _factors(self, left: Factor, right: Factor, scope: dict[str, TypeTag | None]) -> Pred:
        """
        P[i..j] = Q[k..l] holds when both factors have the same length and
        agree letter by letter. Factors of constant length compare their
        letters one by one without a quantifier.
        """
        length = _constant_length(left)
        if length is not None and (other := _constant_length(right)) is not None:
            if length != other:
                return FalseP()
            letters = [
                Equal(
                    WordIndex(left.word, _shift(left.start, offset)),
                    WordIndex(right.word, _shift(right.start, offset)),
                )
                for offset in range(length)
            ]
            return reduce(And, letters) if letters else TrueP()
        start = left.start
        if not isinstance(start, Var):
            raise DesugarError(f"Factor start must be a variable in {left.word}[..]")
        tag = self._type_of(start.name, scope)
        if tag is None:
            raise DesugarError(
                f"Cannot compare factors starting at {start.name}, it has no restricted type"
            )
        used = names_in(Equal(left.start, left.end)) | names_in(Equal(right.start, right.end))
        offset = f"{_FACTOR_OFFSET}{next(self._offsets)}"
        while offset in used:
            offset = f"{_FACTOR_OFFSET}{next(self._offsets)}"
        n = Var(offset)
        same_length = Equal(Add(left.end, right.start), Add(left.start, right.end))
        letterwise = Forall(
            offset,
            tag,
            Implies(
                Less(Add(left.start, n), left.end),
                Equal(
                    WordIndex(left.word, Add(left.start, n)),
                    WordIndex(right.word, Add(right.start, n)),
                ),
            ),
        )
        return And(same_length, letterwise)

    # expressions

    def _expr(self, node: Expr) -> Expr:
        match node:
            case Var() | IntLit():
                return node
            case Add(left=left, right=right) | Sub(left=left, right=right):
                return type(node)(self._expr(left), self._expr(right))
            case FuncCall(name=name, args=args):
                return FuncCall(name, tuple(self._expr(arg) for arg in args))
            case Mul(factor=factor, operand=operand):
                if factor == 0:
                    return IntLit(0)
                operand = self._expr(operand)
                result: Expr = operand
                for _ in range(factor - 1):
                    result = Add(result, operand)
                return result
            case WordIndex(word=word):
                raise DesugarError(f"{word}[..] can only be compared with 0, 1 or another letter")
            case Factor(word=word):
                raise DesugarError(f"Factors of {word} can only be compared with other factors")
        raise TypeError(f"Unknown expression {node!r}")

    # negations

    def _normalize(self, node: Pred, positive: bool) -> Pred:
        """
        Removes double negations. With push_negations the negations sink
        down to atoms and existential quantifiers.
        """
        match node:
            case Not(operand=operand):
                return self._normalize(operand, not positive)
            case TrueP() | FalseP() if not positive:
                return FalseP() if isinstance(node, TrueP) else TrueP()
            case And(left=left, right=right) | Or(left=left, right=right):
                if positive or not self.push_negations:
                    rebuilt = _binary(
                        type(node), self._normalize(left, True), self._normalize(right, True)
                    )
                    return rebuilt if positive else Not(rebuilt)
                dual = Or if isinstance(node, And) else And
                return dual(self._normalize(left, False), self._normalize(right, False))
            case Exists(var=var, type_tag=tag, body=body):
                rebuilt = Exists(var, tag, self._normalize(body, True))
                return rebuilt if positive else Not(rebuilt)
        return node if positive else Not(node)


def desugar(
    program: Program,
    restrictions: Mapping[str, TypeTag] | None = None,
    push_negations: bool = True,
) -> Program:
    """
    Desugars a whole program.

    Input:
        program, Program: parsed program
        restrictions, Mapping[str, TypeTag]: restrictions in force before
            the first item
        push_negations, bool: put predicates in negation normal form
    Output:
        Program, without forall, iff, implications, word indexing or
        multiplication sugar
    """
    desugarer = Desugarer(dict(restrictions or {}), push_negations=push_negations)
    return desugarer.program(program)
