"""Types, structures, dynamic call resolution and the well-formedness checks"""

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

import networkx as nx
from loguru import logger

from pecan.definitions import ADDER_STR, EQUAL_STR, LESS_STR, OP_ARITY, STAR_SLOT_STR
from pecan.errors import (
    ArityError,
    OpenFormulaError,
    PecanTypeError,
    ResolutionError,
    UnknownPredicateError,
    UnknownVariableError,
)
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
    Param,
    Pred,
    PredicateDef,
    StructureDecl,
    Sub,
    TrueP,
    TypeTag,
    Var,
    free_vars,
)

__all__ = [
    "CallTemplate",
    "Checker",
    "Registry",
    "ResolvedCall",
    "StructureDef",
    "TypeEnv",
    "TypeTag",
    "check_definition",
    "check_prop",
    "check_theorem",
    "resolve_call",
    "template_implicits",
    "template_params",
    "type_expr",
]


@dataclass(frozen=True)
class CallTemplate:
    """f(y1, .., yn) where each slot is a structure parameter or a star"""

    target: str
    slots: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.target}({', '.join(self.slots)})"


def template_params(template: CallTemplate) -> list[int]:
    """1-based positions of the star slots, filled by the call arguments"""
    return [i for i, slot in enumerate(template.slots, start=1) if slot == STAR_SLOT_STR]


def template_implicits(template: CallTemplate) -> list[int]:
    """1-based positions of the slots filled by structure parameters"""
    return [i for i, slot in enumerate(template.slots, start=1) if slot != STAR_SLOT_STR]


@dataclass(frozen=True)
class StructureDef:
    """A structure t(x1, .., xl) and the call templates it defines"""

    name: str
    params: tuple[str, ...] = ()
    defs: Mapping[str, CallTemplate] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        for key, template in self.defs.items():
            for slot in template.slots:
                if slot != STAR_SLOT_STR and slot not in self.params:
                    raise PecanTypeError(
                        f"Template {key}: {template} of structure {self.name} uses {slot}, "
                        f"which is not one of its parameters {list(self.params)}"
                    )

    @property
    def is_numeric(self) -> bool:
        """Defines a ternary adder and a binary less"""
        return all(
            op in self.defs and len(template_params(self.defs[op])) == OP_ARITY[op]
            for op in (ADDER_STR, LESS_STR)
        )


@dataclass(frozen=True)
class TypeEnv:
    """Variables in scope and their types, later bindings shadow earlier ones"""

    bindings: tuple[tuple[str, TypeTag | None], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[str, TypeTag | None]) -> "TypeEnv":
        return cls(tuple(mapping.items()))

    def bind(self, name: str, tag: TypeTag | None) -> "TypeEnv":
        kept = tuple(binding for binding in self.bindings if binding[0] != name)
        return TypeEnv(kept + ((name, tag),))

    def lookup(self, name: str) -> TypeTag | None:
        for bound, tag in self.bindings:
            if bound == name:
                return tag
        raise UnknownVariableError(f"Variable {name} is not bound")

    def __contains__(self, name: object) -> bool:
        return any(bound == name for bound, _ in self.bindings)

    @property
    def names(self) -> frozenset[str]:
        return frozenset(name for name, _ in self.bindings)


class Registry:
    """
    Predicates and structures in definition order. A predicate may only
    call predicates defined before it, recursion is rejected.
    """

    def __init__(self) -> None:
        self.predicates: dict[str, PredicateDef] = {}
        self.structures: dict[str, StructureDef] = {}
        self.generation = 0
        self.__calls = nx.DiGraph()

    def predicate(self, name: str) -> PredicateDef:
        if name not in self.predicates:
            raise UnknownPredicateError(f"Predicate {name} is not defined")
        return self.predicates[name]

    def structure_of(self, tag: TypeTag | None) -> StructureDef | None:
        if tag is None:
            return None
        return self.structures.get(tag.name)

    def arities(self) -> dict[str, int]:
        return {name: pdef.arity for name, pdef in self.predicates.items()}

    def check_acyclic(self, name: str, calls: Iterable[str]) -> None:
        """Raises when calling `calls` from `name` would close a cycle"""
        for callee in calls:
            if callee == name or (
                callee in self.__calls
                and name in self.__calls
                and nx.has_path(self.__calls, callee, name)
            ):
                raise PecanTypeError(f"Recursive definition: {name} calls itself through {callee}")

    def define(self, pdef: PredicateDef, calls: Iterable[str] = ()) -> None:
        if pdef.name in self.predicates:
            logger.warning(f"Redefining predicate {pdef.name}")
            self.generation += 1
            self.__calls.remove_edges_from(list(self.__calls.out_edges(pdef.name)))
        self.__calls.add_node(pdef.name)
        self.__calls.add_edges_from((pdef.name, callee) for callee in calls)
        self.predicates[pdef.name] = pdef

    def add_structure(self, decl: StructureDecl) -> StructureDef:
        """Registers a structure after checking its templates against the predicates"""
        defs = {key: CallTemplate(entry.target, entry.slots) for key, entry in decl.entries}
        for key, template in defs.items():
            target = self.predicate(template.target)
            if target.arity != len(template.slots):
                raise ArityError(
                    f"Template {key}: {template} has {len(template.slots)} slots "
                    f"but {template.target} takes {target.arity} arguments"
                )
            stars = len(template_params(template))
            if key in OP_ARITY and stars != OP_ARITY[key]:
                raise ArityError(f"{key} needs {OP_ARITY[key]} star slots, {template} has {stars}")
        structure = StructureDef(decl.type_tag.name, decl.type_tag.args, defs)
        if structure.name in self.structures:
            logger.warning(f"Redefining structure {structure.name}")
            self.generation += 1
        self.structures[structure.name] = structure
        logger.debug(
            f"Structure {decl.type_tag} defines {sorted(defs)}"
            + (" (numeric)" if structure.is_numeric else "")
        )
        return structure


@dataclass(frozen=True)
class ResolvedCall:
    """Target predicate and its full argument list"""

    target: str
    args: tuple[Expr, ...]
    structure: StructureDef | None = None


def resolve_call(
    registry: Registry,
    name: str,
    arg_types: Sequence[TypeTag | None],
    args: Sequence[Expr],
) -> ResolvedCall:
    """
    Resolves a call name(args) through the structures of its arguments.

    Every typed argument whose structure defines `name` must agree on that
    structure. The template then receives the arguments in its star slots
    and the structure parameters in the other slots. When no argument's
    structure defines `name` the call resolves to itself.

    Input:
        registry, Registry: the known structures
        name, str: the called name
        arg_types, Sequence[TypeTag | None]: types of the arguments
        args, Sequence[Expr]: the arguments
    Output:
        ResolvedCall, the target and its full argument list
    """
    candidates: dict[TypeTag, tuple[StructureDef, CallTemplate]] = {}
    for tag in arg_types:
        structure = registry.structure_of(tag)
        if structure is not None and name in structure.defs:
            candidates[tag] = (structure, structure.defs[name])  # type: ignore[index]
    if not candidates:
        return ResolvedCall(name, tuple(args))
    if len(candidates) > 1:
        listed = ", ".join(str(tag) for tag in candidates)
        raise ResolutionError(f"Ambiguous call to {name}: defined by the types {listed}")
    ((tag, (structure, template)),) = candidates.items()
    if len(tag.args) != len(structure.params):
        raise ArityError(
            f"Type {tag} gives {len(tag.args)} arguments to structure {structure.name}, "
            f"which has {len(structure.params)} parameters"
        )
    stars = template_params(template)
    if len(stars) != len(args):
        raise ArityError(
            f"{name} takes {len(stars)} arguments through {template}, got {len(args)}"
        )
    binding = dict(zip(structure.params, tag.args))
    supplied = iter(args)
    full = tuple(
        next(supplied) if slot == STAR_SLOT_STR else Var(binding[slot])
        for slot in template.slots
    )
    return ResolvedCall(template.target, full, structure)


def _needs_context(node: Expr) -> bool:
    """Literals and sums of literals take their type from their surroundings"""
    match node:
        case IntLit():
            return True
        case Add(left=left, right=right) | Sub(left=left, right=right):
            return _needs_context(left) and _needs_context(right)
    return False


def _instantiate(
    tag: TypeTag | None, formals: Sequence[Param], actuals: Sequence[Expr]
) -> TypeTag | None:
    """A formal's type seen from the call site"""
    if tag is None:
        return None
    names = {
        formal.name: actual.name
        for formal, actual in zip(formals, actuals)
        if isinstance(actual, Var)
    }
    return TypeTag(tag.name, tuple(names.get(arg, arg) for arg in tag.args))


class Checker:
    """
    Typing judgments over one predicate. Expressions come back annotated
    with their types, calls come back resolved. `calls` collects every
    predicate the checked predicate depends on.
    """

    def __init__(self, registry: Registry) -> None:
        self.registry = registry
        self.calls: set[str] = set()

    def _numeric(self, tag: TypeTag | None, what: str) -> TypeTag:
        structure = self.registry.structure_of(tag)
        if tag is None or structure is None or not structure.is_numeric:
            raise PecanTypeError(f"{what} needs a numeric type, found {tag or 'no type'}")
        return tag

    def tag(self, gamma: TypeEnv, tag: TypeTag) -> None:
        """A type P(x1, .., xn) is a predicate of arity n + 1 over bound variables"""
        target = self.registry.predicate(tag.name)
        if target.arity != len(tag.args) + 1:
            raise ArityError(
                f"Type {tag} applies {tag.name} to {len(tag.args) + 1} arguments, "
                f"it takes {target.arity}"
            )
        for arg in tag.args:
            gamma.lookup(arg)
        self.calls.add(tag.name)

    # expressions

    def _operand_type(
        self, gamma: TypeEnv, sides: Sequence[Expr], expected: TypeTag | None
    ) -> TypeTag | None:
        if expected is not None:
            return expected
        for side in sides:
            if not _needs_context(side):
                return self.expr(gamma, side).type_tag  # type: ignore[union-attr]
        raise PecanTypeError("Integer literals need a variable or a typed call beside them")

    def expr(self, gamma: TypeEnv, node: Expr, expected: TypeTag | None = None) -> Expr:
        match node:
            case Var(name=name):
                tag = gamma.lookup(name)
                if expected is not None and tag is not None and tag != expected:
                    raise PecanTypeError(f"{name} has type {tag}, expected {expected}")
                return replace(node, type_tag=tag)
            case IntLit(value=value):
                if expected is None:
                    raise PecanTypeError(f"Cannot tell the type of the literal {value}")
                return replace(node, type_tag=self._numeric(expected, f"The literal {value}"))
            case Add(left=left, right=right) | Sub(left=left, right=right):
                tag = self._operand_type(gamma, (left, right), expected)
                symbol = "+" if isinstance(node, Add) else "-"
                tag = self._numeric(tag, f"The operands of {symbol}")
                self.calls.add(self.registry.structures[tag.name].defs[ADDER_STR].target)
                return type(node)(
                    self.expr(gamma, left, tag), self.expr(gamma, right, tag), type_tag=tag
                )
            case FuncCall(name=name, args=args):
                placeholder = Var(f"{name}#result")
                resolved, typed = self._call(gamma, name, (*args, placeholder), result=True)
                target = self.registry.predicate(resolved.target)
                result = _instantiate(target.params[-1].type_tag, target.params, resolved.args)
                if expected is not None and result is not None and result != expected:
                    raise PecanTypeError(f"{name}(..) has type {result}, expected {expected}")
                return FuncCall(resolved.target, typed[:-1], type_tag=result or expected)
        raise PecanTypeError(f"Cannot type {node!r}, desugar it first")

    def _call(
        self, gamma: TypeEnv, name: str, args: Sequence[Expr], result: bool = False
    ) -> tuple[ResolvedCall, tuple[Expr, ...]]:
        """Resolves then types the arguments, the last one is a placeholder when `result`"""
        known = [
            None if _needs_context(arg) or (result and i == len(args) - 1)
            else self.expr(gamma, arg).type_tag  # type: ignore[union-attr]
            for i, arg in enumerate(args)
        ]
        resolved = resolve_call(self.registry, name, known, args)
        target = self.registry.predicate(resolved.target)
        if target.arity != len(resolved.args):
            raise ArityError(
                f"{resolved.target} takes {target.arity} arguments, "
                f"got {len(resolved.args) - result}"
                + (" and a result" if result else "")
            )
        if result and resolved.args[-1] != args[-1]:
            raise ResolutionError(
                f"{name} cannot be used as a function, its result is not the last argument "
                f"of {resolved.target}"
            )
        self.calls.add(resolved.target)
        typed = []
        for position, (formal, arg) in enumerate(zip(target.params, resolved.args)):
            if result and position == len(resolved.args) - 1:
                typed.append(arg)
                continue
            formal_tag = _instantiate(formal.type_tag, target.params, resolved.args)
            checked = self.expr(gamma, arg, formal_tag if _needs_context(arg) else None)
            actual = checked.type_tag  # type: ignore[union-attr]
            if formal_tag is not None and actual is not None and actual.name != formal_tag.name:
                raise PecanTypeError(
                    f"Argument {position + 1} of {resolved.target} has type {actual}, "
                    f"expected {formal_tag}"
                )
            typed.append(checked)
        return resolved, tuple(typed)

    # predicates

    def prop(self, gamma: TypeEnv, node: Pred) -> Pred:
        match node:
            case TrueP() | FalseP() | AutLiteral():
                return node
            case Not(operand=operand):
                return Not(self.prop(gamma, operand))
            case And() | Or() | Implies() | Iff():
                return type(node)(self.prop(gamma, node.left), self.prop(gamma, node.right))
            case Exists(var=var, type_tag=tag, body=body) | Forall(
                var=var, type_tag=tag, body=body
            ):
                if tag is not None:
                    self.tag(gamma, tag)
                return type(node)(var, tag, self.prop(gamma.bind(var, tag), body))
            case Less(left=left, right=right) | LessEq(left=left, right=right):
                tag = self._numeric(self._operand_type(gamma, (left, right), None), "<")
                self.calls.add(self.registry.structures[tag.name].defs[LESS_STR].target)
                return type(node)(self.expr(gamma, left, tag), self.expr(gamma, right, tag))
            case Equal(left=left, right=right):
                tag = self._operand_type(gamma, (left, right), None)
                structure = self.registry.structure_of(tag)
                if structure is not None and EQUAL_STR in structure.defs:
                    self.calls.add(structure.defs[EQUAL_STR].target)
                return Equal(self.expr(gamma, left, tag), self.expr(gamma, right, tag))
            case Call(name=name, args=args):
                resolved, typed = self._call(gamma, name, args)
                return Call(resolved.target, typed)
        raise PecanTypeError(f"Cannot check {node!r}, desugar it first")


def type_expr(
    registry: Registry, gamma: TypeEnv, node: Expr, expected: TypeTag | None = None
) -> Expr:
    """
    Types an expression.

    Input:
        registry, Registry: predicates and structures in scope
        gamma, TypeEnv: the bound variables
        node, Expr: the expression
        expected, TypeTag: type imposed by the context, needed by literals
    Output:
        Expr, the expression annotated with its type (see `type_tag`)
    """
    return Checker(registry).expr(gamma, node, expected)


def check_prop(registry: Registry, gamma: TypeEnv, node: Pred) -> Pred:
    """Checks a predicate is well formed, returns it annotated and resolved"""
    return Checker(registry).prop(gamma, node)


def check_definition(registry: Registry, pdef: PredicateDef) -> tuple[PredicateDef, set[str]]:
    """
    Checks P(x1 : t1, .., xn : tn) := Q under the typed parameters. Returns
    the checked definition and the predicates it calls.
    """
    checker = Checker(registry)
    gamma = TypeEnv()
    for param in pdef.params:
        if param.type_tag is not None:
            checker.tag(gamma, param.type_tag)
        gamma = gamma.bind(param.name, param.type_tag)
    body = checker.prop(gamma, pdef.body)
    registry.check_acyclic(pdef.name, checker.calls)
    return replace(pdef, body=body), checker.calls


def check_theorem(registry: Registry, body: Pred) -> Pred:
    """Theorems are closed predicates"""
    free = free_vars(body)
    if free:
        raise OpenFormulaError(f"Theorem has free variables {', '.join(sorted(free))}")
    return check_prop(registry, TypeEnv(), body)
