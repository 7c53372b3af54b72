"""Big-step evaluation of predicates into automata over variables"""

from contextlib import contextmanager
from dataclasses import dataclass, field
from time import perf_counter
from typing import Iterator, Mapping, Sequence

from loguru import logger
from pydantic import BaseModel, ConfigDict

from omega_automata.errors import DeadlineExceeded
from omega_automata.finite_support import is_finitely_supported
from omega_automata.operations import is_empty
from omega_automata.settings import KernelSettings
from omega_automata.simplify import simplify

from pecan.definitions import (
    ADDER_STR,
    EQUAL_STR,
    LESS_STR,
    ONE_STR,
    TEMP_PREFIX,
    ZERO_STR,
    Verdict,
)
from pecan.errors import ArityError, OpenFormulaError, ResolutionError, TheoremTimeout
from pecan.metrics import MetricsRecord, formula_metrics
from pecan.settings import ProverSettings
from pecan.stdlib import DEFAULT_FORMALS, DEFAULT_VARS, default_operation
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
    Not,
    Or,
    Pred,
    PredicateDef,
    Sub,
    TrueP,
    TypeTag,
    Var,
)
from pecan.syntax.desugar import Desugarer
from pecan.syntax.parser import parse_formula
from pecan.typecheck import Registry, TypeEnv, check_prop, resolve_call
from pecan.var_automata import (
    FRESH_APS,
    ApAllocator,
    PecanAutomaton,
    VariableMap,
    conjoin,
    disjoin,
    negate,
    project_var,
    rename_var,
    rename_vars,
)

Evaluated = tuple[PecanAutomaton, str]

_LITERAL_VAR = DEFAULT_VARS[0]


@dataclass
class CompileCache:
    """
    Automata shared by the theorems of a session: compiled predicate
    bodies, literals and default operations per type. Emptied whenever a
    predicate or structure is redefined.
    """

    generation: int = 0
    bodies: dict[str, PecanAutomaton] = field(default_factory=dict)
    literals: dict[tuple[TypeTag | None, int], PecanAutomaton] = field(default_factory=dict)
    defaults: dict[tuple[TypeTag | None, str], PecanAutomaton] = field(default_factory=dict)

    def sync(self, registry: Registry) -> None:
        if registry.generation != self.generation:
            self.bodies.clear()
            self.literals.clear()
            self.defaults.clear()
            self.generation = registry.generation


class EvalContext:
    """
    State of one evaluation: the registries, fresh names for expression
    temporaries, the propositions of each variable and the metrics.
    """

    def __init__(
        self,
        registry: Registry,
        settings: ProverSettings | None = None,
        cache: CompileCache | None = None,
        allocator: ApAllocator = FRESH_APS,
    ) -> None:
        self.registry = registry
        self.settings = settings or ProverSettings()
        self.cache = cache if cache is not None else CompileCache(registry.generation)
        self.allocator = allocator
        self.metrics = MetricsRecord()
        self.fresh_counter = 0
        self.deadline: float | None = None
        self.__tracks: dict[str, tuple[str, ...]] = {}
        self.scope: dict[str, TypeTag | None] = {}
        self.__finite_types: dict[TypeTag, bool] = {}

    @property
    def kernel(self) -> KernelSettings:
        """Kernel limits with the deadline of the current theorem"""
        return self.settings.kernel.until(self.deadline)

    @contextmanager
    def bound(
        self, names: Mapping[str, TypeTag | None], replace: bool = False
    ) -> Iterator[None]:
        """Variables in scope with their types while evaluating a body"""
        saved = self.scope
        self.scope = dict(names) if replace else saved | dict(names)
        try:
            yield
        finally:
            self.scope = saved

    def finitely_supported(self, a: PecanAutomaton) -> bool:
        """
        Every variable of `a` is in scope with a type whose values have
        finitely many true positions, so a complement may ignore the rest.
        """
        return bool(a.variables) and all(
            self.scope.get(name) is not None and self.__finite_type(self.scope[name])
            for name in a.variables
        )

    def __finite_type(self, tag: TypeTag | None) -> bool:
        if tag is None or tag.args:
            return False
        if tag not in self.__finite_types:
            self.__finite_types[tag] = False
            pdef = self.registry.predicate(tag.name)
            self.__finite_types[tag] = pdef.arity == 1 and is_finitely_supported(
                compiled_body(self, pdef).automaton
            )
        return self.__finite_types[tag]

    def tracks(self, name: str) -> tuple[str, ...]:
        """Propositions of a variable, allocated on first use"""
        if name not in self.__tracks:
            self.__tracks[name] = self.allocator.fresh()
        return self.__tracks[name]

    def fresh_var(self) -> str:
        self.fresh_counter += 1
        return f"{TEMP_PREFIX}{self.fresh_counter}"

    def step(self, kind: str, result: PecanAutomaton) -> PecanAutomaton:
        """Bookkeeping after each evaluation step"""
        if self.deadline is not None and perf_counter() > self.deadline:
            raise TheoremTimeout(f"Gave up after {self.settings.timeout_s} s")
        if self.settings.simplify_steps:
            result = result.with_automaton(simplify(result.automaton, self.kernel))
        self.metrics.record(result.num_states, result.num_edges)
        logger.debug(f"{kind}: {result.num_states} states, {result.num_edges} edges")
        return result

    def conjoin(self, a: PecanAutomaton, b: PecanAutomaton) -> PecanAutomaton:
        return self.step("and", conjoin(a, b, self.kernel, self.allocator))

    def project(self, a: PecanAutomaton, names: Sequence[str]) -> PecanAutomaton:
        for name in names:
            if name in a.varmap:
                a = self.step(f"project {name}", project_var(a, name))
        return a


def _is_temporary(name: str) -> bool:
    return name.startswith(TEMP_PREFIX)


def _vars(names: Sequence[str]) -> tuple[Var, ...]:
    return tuple(Var(name) for name in names)


# predicates


def eval_pred(ctx: EvalContext, node: Pred) -> PecanAutomaton:
    """
    Evaluates a checked predicate.

    Input:
        ctx, EvalContext: registries and evaluation state
        node, Pred: a desugared, checked predicate
    Output:
        PecanAutomaton, over the free variables of the predicate
    """
    kernel = ctx.kernel
    match node:
        case TrueP():
            return PecanAutomaton.true()
        case FalseP():
            return PecanAutomaton.false()
        case AutLiteral(automaton=automaton):
            return automaton
        case And(left=left, right=right):
            return ctx.conjoin(eval_pred(ctx, left), eval_pred(ctx, right))
        case Or(left=left, right=right):
            result = disjoin(eval_pred(ctx, left), eval_pred(ctx, right), kernel, ctx.allocator)
            return ctx.step("or", result)
        case Not(operand=operand):
            inner = eval_pred(ctx, operand)
            negated = negate(inner, kernel, finite_support=ctx.finitely_supported(inner))
            return ctx.step("not", negated)
        case Exists(var=var, type_tag=tag, body=body):
            return eval_exists(ctx, var, tag, body)
        case Forall(var=var, type_tag=tag, body=body):
            return eval_pred(ctx, Not(Exists(var, tag, Not(body))))
        case Implies(left=left, right=right):
            return eval_pred(ctx, Or(Not(left), right))
        case Iff(left=left, right=right):
            return eval_pred(ctx, And(Or(Not(left), right), Or(Not(right), left)))
        case Less(left=left, right=right):
            return _eval_relation(ctx, LESS_STR, left, right)
        case Equal(left=left, right=right):
            return _eval_relation(ctx, EQUAL_STR, left, right)
        case Call(name=name, args=args):
            return eval_call(ctx, name, args)
    raise TypeError(f"Cannot evaluate {node!r}")


def eval_exists(
    ctx: EvalContext, var: str, tag: TypeTag | None, body: Pred
) -> PecanAutomaton:
    """exists x : t. P evaluates t(x) & P then projects x away"""
    with ctx.bound({var: tag}):
        result = eval_pred(ctx, body)
    if tag is not None:
        typed = eval_call(ctx, tag.name, _vars((*tag.args, var)))
        result = ctx.conjoin(typed, result)
    return ctx.project(result, [var])


def compiled_body(ctx: EvalContext, pdef: PredicateDef) -> PecanAutomaton:
    """
    Automaton of a predicate over its formal parameters, typed parameters
    included. Cached until the registry changes.
    """
    ctx.cache.sync(ctx.registry)
    cached = ctx.cache.bodies.get(pdef.name)
    if cached is not None:
        return cached
    logger.debug(f"Compiling {pdef.name}")
    with ctx.bound({param.name: param.type_tag for param in pdef.params}, replace=True):
        result = eval_pred(ctx, pdef.body)
    for param in pdef.params:
        if param.type_tag is not None:
            tag = param.type_tag
            result = ctx.conjoin(eval_call(ctx, tag.name, _vars((*tag.args, param.name))), result)
    unused = {p.name: ctx.tracks(p.name) for p in pdef.params if p.name not in result.varmap}
    if unused:
        result = ctx.conjoin(result, PecanAutomaton.top(VariableMap(unused)))
    ctx.cache.bodies[pdef.name] = result
    return result


def _instantiate(
    ctx: EvalContext, body: PecanAutomaton, formals: Sequence[str], actuals: Sequence[str]
) -> PecanAutomaton:
    """Replaces the formals by the actual variables, repeated actuals share a track"""
    renaming = {
        formal: (actual, ctx.tracks(actual)) for formal, actual in zip(formals, actuals)
    }
    return rename_vars(body, renaming)


def _eval_args(
    ctx: EvalContext, args: Sequence[Expr]
) -> tuple[list[str], list[PecanAutomaton], list[str]]:
    """Variables holding the arguments, automata defining them and the temporaries"""
    actuals: list[str] = []
    parts: list[PecanAutomaton] = []
    temporaries: list[str] = []
    for arg in args:
        if isinstance(arg, Var):
            actuals.append(arg.name)
            continue
        automaton, var = eval_expr(ctx, arg)
        actuals.append(var)
        parts.append(automaton)
        temporaries.append(var)
    return actuals, parts, temporaries


def eval_call(ctx: EvalContext, name: str, args: Sequence[Expr]) -> PecanAutomaton:
    """
    P(e1, .., en): each argument becomes a variable, the body of P is
    renamed onto those variables and conjoined with the automata of the
    arguments, then the temporaries are projected away.
    """
    pdef = ctx.registry.predicate(name)
    if len(args) != pdef.arity:
        raise ArityError(f"{name} takes {pdef.arity} arguments, got {len(args)}")
    actuals, parts, temporaries = _eval_args(ctx, args)
    formals = [param.name for param in pdef.params]
    result = _instantiate(ctx, compiled_body(ctx, pdef), formals, actuals)
    for part in parts:
        result = ctx.conjoin(result, part)
    return ctx.project(result, temporaries)


def _operation(
    ctx: EvalContext, op: str, tag: TypeTag | None, names: Sequence[str]
) -> PecanAutomaton:
    """adder, less, equal, zero or one of the structure of `tag` over the variables"""
    structure = ctx.registry.structure_of(tag)
    if structure is not None and op in structure.defs:
        resolved = resolve_call(ctx.registry, op, [tag] * len(names), _vars(names))
        return eval_call(ctx, resolved.target, resolved.args)
    if op not in DEFAULT_FORMALS:
        raise ResolutionError(f"No structure defines {op} for type {tag or 'none'}")
    if op == EQUAL_STR and names[0] == names[1]:
        return PecanAutomaton.top(VariableMap({names[0]: ctx.tracks(names[0])}))
    ctx.cache.sync(ctx.registry)
    key = (tag, op)
    if key not in ctx.cache.defaults:
        ctx.cache.defaults[key] = default_operation(
            op, tag, ctx.tracks, lambda text, gamma: compile_formula(ctx, text, gamma)
        )
    return _instantiate(ctx, ctx.cache.defaults[key], DEFAULT_FORMALS[op], names)


def _eval_relation(ctx: EvalContext, op: str, left: Expr, right: Expr) -> PecanAutomaton:
    """e1 < e2 and e1 = e2, through the structure of the operands"""
    tag = left.type_tag or right.type_tag  # type: ignore[union-attr]
    (first, x), (second, y) = eval_expr(ctx, left), eval_expr(ctx, right)
    result = _operation(ctx, op, tag, (x, y))
    result = ctx.conjoin(ctx.conjoin(result, first), second)
    return ctx.project(result, [name for name in (x, y) if _is_temporary(name)])


# expressions


def eval_expr(ctx: EvalContext, node: Expr) -> Evaluated:
    """
    Evaluates an expression to an automaton and the variable holding its
    value. A variable is itself with no constraint, other expressions get a
    fresh temporary.
    """
    match node:
        case Var(name=name):
            return PecanAutomaton.true(), name
        case IntLit(value=value):
            return _eval_literal(ctx, node.type_tag, value)
        case Add(left=left, right=right) | Sub(left=left, right=right):
            (first, x), (second, y) = eval_expr(ctx, left), eval_expr(ctx, right)
            z = ctx.fresh_var()
            # a - b is the z with z + b = a
            operands = (x, y, z) if isinstance(node, Add) else (z, y, x)
            result = _operation(ctx, ADDER_STR, node.type_tag, operands)
            result = ctx.conjoin(ctx.conjoin(result, first), second)
            return ctx.project(result, [name for name in (x, y) if _is_temporary(name)]), z
        case FuncCall(name=name, args=args):
            x = ctx.fresh_var()
            return eval_call(ctx, name, (*args, Var(x))), x
    raise TypeError(f"Cannot evaluate {node!r}")


def _literal(ctx: EvalContext, tag: TypeTag | None, value: int) -> PecanAutomaton:
    """The literal over the variable _LITERAL_VAR, built by doubling"""
    ctx.cache.sync(ctx.registry)
    key = (tag, value)
    if key in ctx.cache.literals:
        return ctx.cache.literals[key]
    if value <= 1:
        result = _operation(ctx, ZERO_STR if value == 0 else ONE_STR, tag, (_LITERAL_VAR,))
    else:
        half, h = _eval_literal(ctx, tag, value // 2)
        doubled = ctx.fresh_var()
        result = ctx.conjoin(_operation(ctx, ADDER_STR, tag, (h, h, doubled)), half)
        result = ctx.project(result, [h])
        if value % 2:
            one, o = _eval_literal(ctx, tag, 1)
            total = ctx.fresh_var()
            result = ctx.conjoin(_operation(ctx, ADDER_STR, tag, (doubled, o, total)), result)
            result = ctx.project(ctx.conjoin(result, one), [doubled, o])
            doubled = total
        result = rename_var(result, doubled, _LITERAL_VAR, ctx.tracks(_LITERAL_VAR))
    ctx.cache.literals[key] = result
    return result


def _eval_literal(ctx: EvalContext, tag: TypeTag | None, value: int) -> Evaluated:
    x = ctx.fresh_var()
    return rename_var(_literal(ctx, tag, value), _LITERAL_VAR, x, ctx.tracks(x)), x


def compile_formula(
    ctx: EvalContext, text: str, gamma: Mapping[str, TypeTag | None]
) -> PecanAutomaton:
    """Parses, desugars, checks and evaluates a predicate with free variables typed by gamma"""
    desugarer = Desugarer(
        arities=ctx.registry.arities(), push_negations=ctx.settings.push_negations
    )
    body = desugarer.pred(parse_formula(text), gamma)
    checked = check_prop(ctx.registry, TypeEnv.of(gamma), body)
    with ctx.bound(gamma, replace=True):
        return eval_pred(ctx, checked)


# theorems


class TheoremResult(BaseModel):
    """Verdict and measures of a theorem"""

    model_config = ConfigDict(frozen=True)

    name: str
    verdict: Verdict
    metrics: MetricsRecord


def decide_theorem(ctx: EvalContext, name: str, body: Pred) -> TheoremResult:
    """
    Decides a closed predicate: it holds when its automaton accepts the
    only word over no propositions.

    Input:
        ctx, EvalContext: a fresh context for this theorem
        name, str: name of the theorem, may be empty
        body, Pred: the desugared and checked predicate
    Output:
        TheoremResult, the verdict and the metrics
    """
    start = perf_counter()
    if ctx.settings.timeout_s is not None:
        ctx.deadline = start + ctx.settings.timeout_s
    ctx.metrics.atoms, ctx.metrics.complexity = formula_metrics(body)
    try:
        result = eval_pred(ctx, body)
        if len(result.varmap):
            raise OpenFormulaError(
                f"Theorem {name!r} depends on {', '.join(result.variables)}"
            )
        verdict = Verdict.FALSE if is_empty(result.automaton) else Verdict.TRUE
    except DeadlineExceeded as error:
        raise TheoremTimeout(
            f"Gave up after {ctx.settings.timeout_s} s in {error.construction}"
        ) from error
    ctx.metrics.finish(result.num_states, result.num_edges)
    ctx.metrics.runtime_s = perf_counter() - start
    logger.info(f"Theorem {name!r}: {verdict.name} in {ctx.metrics.runtime_s:.3f} s")
    return TheoremResult(name=name, verdict=verdict, metrics=ctx.metrics)
