"""Source text to abstract syntax"""

from functools import lru_cache
from importlib import resources

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import (
    UnexpectedCharacters,
    UnexpectedEOF,
    UnexpectedInput,
    UnexpectedToken,
    VisitError,
)

from pecan.errors import PecanError, PecanSyntaxError, SourceLocation
from pecan.syntax.ast import (
    EXPR_TYPES,
    PRED_TYPES,
    Add,
    And,
    BuiltinDecl,
    Call,
    Equal,
    Exists,
    Expr,
    FalseP,
    Factor,
    Forall,
    FuncCall,
    Iff,
    Implies,
    IntLit,
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
    TemplateEntry,
    TheoremDecl,
    TrueP,
    TypeTag,
    Var,
    WordIndex,
)

_GRAMMAR_FILE = "grammar.lark"


@lru_cache(maxsize=1)
def _parser() -> Lark:
    grammar = resources.files("pecan.syntax").joinpath(_GRAMMAR_FILE).read_text(encoding="utf-8")
    return Lark(
        grammar,
        parser="lalr",
        lexer="contextual",
        start=["start", "formula"],
        propagate_positions=True,
        maybe_placeholders=False,
    )


def as_pred(node: Pred | Expr) -> Pred:
    """A node in predicate position"""
    if isinstance(node, PRED_TYPES):
        return node
    if isinstance(node, FuncCall):
        return Call(node.name, node.args)
    raise PecanSyntaxError(f"Expected a predicate, found the expression {node!r}")


def as_expr(node: Pred | Expr) -> Expr:
    """A node in expression position, calls become function calls"""
    if isinstance(node, EXPR_TYPES):
        return node
    if isinstance(node, Call):
        return FuncCall(node.name, node.args)
    raise PecanSyntaxError(f"Expected an expression, found the predicate {node!r}")


def _string(token: Token) -> str:
    return token[1:-1].encode("latin-1", "backslashreplace").decode("unicode_escape")


def _line(meta) -> int | None:  # type: ignore[no-untyped-def]
    return getattr(meta, "line", None)


class _ToAst(Transformer):
    """Builds the syntax tree bottom up"""

    # top level

    def start(self, items):  # type: ignore[no-untyped-def]
        return Program(tuple(items))

    def name_list(self, names):  # type: ignore[no-untyped-def]
        return tuple(str(name) for name in names)

    def type_tag(self, children):  # type: ignore[no-untyped-def]
        name, *rest = children
        return TypeTag(str(name), rest[0] if rest else ())

    @v_args(meta=True)
    def restrict(self, meta, children):  # type: ignore[no-untyped-def]
        names, tag = children
        return RestrictDecl(names, tag, line=_line(meta))

    def entries(self, children):  # type: ignore[no-untyped-def]
        return tuple(children)

    def entry(self, children):  # type: ignore[no-untyped-def]
        key, target, *slots = children
        return (_string(key), TemplateEntry(str(target), slots[0] if slots else ()))

    @v_args(meta=True)
    def structure(self, meta, children):  # type: ignore[no-untyped-def]
        tag, *entries = children
        return StructureDecl(tag, entries[0] if entries else (), line=_line(meta))

    @v_args(meta=True)
    def theorem(self, meta, children):  # type: ignore[no-untyped-def]
        name, body = children
        return TheoremDecl(_string(name), as_pred(body), line=_line(meta))

    def params(self, children):  # type: ignore[no-untyped-def]
        return tuple(children)

    def param(self, children):  # type: ignore[no-untyped-def]
        name, *tag = children
        return Param(str(name), tag[0] if tag else None)

    @v_args(meta=True)
    def definition(self, meta, children):  # type: ignore[no-untyped-def]
        name, *rest = children
        params = rest[0] if len(rest) == 2 else ()
        names = [param.name for param in params]
        if len(set(names)) != len(names):
            raise PecanSyntaxError(
                f"Repeated parameter in {name}({', '.join(names)})",
                SourceLocation(line=_line(meta)),
            )
        return PredicateDef(str(name), params, as_pred(rest[-1]), line=_line(meta))

    @v_args(meta=True)
    def load_aut(self, meta, children):  # type: ignore[no-untyped-def]
        path, name, *params = children
        params = params[0] if params else ()
        return LoadAutomaton(_string(path), str(name), params, line=_line(meta))

    @v_args(meta=True)
    def save_aut(self, meta, children):  # type: ignore[no-untyped-def]
        path, name = children
        return SaveAutomaton(_string(path), str(name), line=_line(meta))

    @v_args(meta=True)
    def builtin(self, meta, children):  # type: ignore[no-untyped-def]
        builtin, name, *params = children
        params = params[0] if params else ()
        return BuiltinDecl(_string(builtin), str(name), params, line=_line(meta))

    # predicates

    def iff(self, children):  # type: ignore[no-untyped-def]
        left, right = children
        return Iff(as_pred(left), as_pred(right))

    def implies(self, children):  # type: ignore[no-untyped-def]
        left, right = children
        return Implies(as_pred(left), as_pred(right))

    def if_then(self, children):  # type: ignore[no-untyped-def]
        return self.implies(children)

    def or_(self, children):  # type: ignore[no-untyped-def]
        left, right = children
        return Or(as_pred(left), as_pred(right))

    def and_(self, children):  # type: ignore[no-untyped-def]
        left, right = children
        return And(as_pred(left), as_pred(right))

    def not_(self, children):  # type: ignore[no-untyped-def]
        (operand,) = children
        return Not(as_pred(operand))

    def binders(self, children):  # type: ignore[no-untyped-def]
        names, *tag = children
        return names, tag[0] if tag else None

    def _quantify(self, binder, children):  # type: ignore[no-untyped-def]
        (names, tag), body = children
        result = as_pred(body)
        for name in reversed(names):
            result = binder(name, tag, result)
        return result

    def exists_(self, children):  # type: ignore[no-untyped-def]
        return self._quantify(Exists, children)

    def forall_(self, children):  # type: ignore[no-untyped-def]
        return self._quantify(Forall, children)

    def true(self, _):  # type: ignore[no-untyped-def]
        return TrueP()

    def false(self, _):  # type: ignore[no-untyped-def]
        return FalseP()

    # relations

    def _sides(self, children):  # type: ignore[no-untyped-def]
        left, right = children
        return as_expr(left), as_expr(right)

    def less(self, children):  # type: ignore[no-untyped-def]
        return Less(*self._sides(children))

    def less_eq(self, children):  # type: ignore[no-untyped-def]
        return LessEq(*self._sides(children))

    def greater(self, children):  # type: ignore[no-untyped-def]
        left, right = self._sides(children)
        return Less(right, left)

    def greater_eq(self, children):  # type: ignore[no-untyped-def]
        left, right = self._sides(children)
        return LessEq(right, left)

    def equal(self, children):  # type: ignore[no-untyped-def]
        return Equal(*self._sides(children))

    def not_equal(self, children):  # type: ignore[no-untyped-def]
        return Not(Equal(*self._sides(children)))

    # expressions

    def add(self, children):  # type: ignore[no-untyped-def]
        return Add(*self._sides(children))

    def sub(self, children):  # type: ignore[no-untyped-def]
        return Sub(*self._sides(children))

    def mul(self, children):  # type: ignore[no-untyped-def]
        factor, operand = children
        return Mul(int(factor), as_expr(operand))

    def int_lit(self, children):  # type: ignore[no-untyped-def]
        (value,) = children
        return IntLit(int(value))

    def var(self, children):  # type: ignore[no-untyped-def]
        (name,) = children
        return Var(str(name))

    def args(self, children):  # type: ignore[no-untyped-def]
        return tuple(as_expr(child) for child in children)

    def call(self, children):  # type: ignore[no-untyped-def]
        name, *args = children
        return Call(str(name), args[0] if args else ())

    def word_index(self, children):  # type: ignore[no-untyped-def]
        name, index = children
        return WordIndex(str(name), as_expr(index))

    def factor(self, children):  # type: ignore[no-untyped-def]
        name, start, end = children
        return Factor(str(name), as_expr(start), as_expr(end))


def _syntax_error(error: UnexpectedInput, text: str, path: str | None) -> PecanSyntaxError:
    line, column = (
        (value if isinstance(value, int) and value > 0 else None)
        for value in (error.line, error.column)
    )
    location = SourceLocation(path, line, column)
    at_end = isinstance(error, UnexpectedToken) and error.token.type == "$END"
    if isinstance(error, UnexpectedEOF) or at_end:
        message = "unterminated block or statement at end of input"
    elif isinstance(error, UnexpectedCharacters) and text[error.pos_in_stream] == "#":
        directive = text[error.pos_in_stream :].split(maxsplit=1)[0]
        message = f"unknown directive {directive}"
    else:
        message = f"unexpected input\n{error.get_context(text)}"
    return PecanSyntaxError(message, location)


def _run(text: str, start: str, path: str | None):  # type: ignore[no-untyped-def]
    try:
        tree = _parser().parse(text, start=start)
    except UnexpectedInput as error:
        raise _syntax_error(error, text, path) from error
    try:
        return _ToAst().transform(tree)
    except VisitError as error:
        if isinstance(error.orig_exc, PecanError):
            line = getattr(error.obj, "meta", None)
            raise error.orig_exc.located(
                SourceLocation(path, getattr(line, "line", None))
            ) from error
        raise


def parse(text: str, path: str | None = None) -> Program:
    """
    Parses a whole program.

    Input:
        text, str: the source
        path, str: file name used in error locations
    Output:
        Program, the items in source order
    """
    return _run(text, "start", path)


def parse_formula(text: str) -> Pred:
    """Parses a single predicate"""
    return as_pred(_run(text, "formula", None))
