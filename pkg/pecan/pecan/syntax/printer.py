"""Concrete syntax of syntax trees, the output parses back to the same tree"""

import json

from pecan.syntax.ast import (
    Add,
    And,
    AutLiteral,
    BuiltinDecl,
    Call,
    Equal,
    Exists,
    Factor,
    FalseP,
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
)

_BINARY = {
    And: "&",
    Or: "|",
    Implies: "=>",
    Iff: "<=>",
    Less: "<",
    LessEq: "<=",
    Equal: "=",
    Add: "+",
    Sub: "-",
}


def _binder(keyword: str, var: str, tag: TypeTag | None, body: str) -> str:
    typed = f" is {tag}" if tag is not None else ""
    return f"({keyword} {var}{typed}. {body})"


def _param(param: Param) -> str:
    return param.name if param.type_tag is None else f"{param.name} is {param.type_tag}"


def show(node) -> str:  # type: ignore[no-untyped-def]
    """Source text of a predicate, expression, item or program"""
    match node:
        case Program(items=items):
            return "\n".join(show(item) for item in items)
        case TrueP():
            return "true"
        case FalseP():
            return "false"
        case Var(name=name):
            return name
        case IntLit(value=value):
            return str(value)
        case Not(operand=operand):
            return f"!{show(operand)}"
        case Exists(var=var, type_tag=tag, body=body):
            return _binder("exists", var, tag, show(body))
        case Forall(var=var, type_tag=tag, body=body):
            return _binder("forall", var, tag, show(body))
        case Call(name=name, args=args) | FuncCall(name=name, args=args):
            return f"{name}({', '.join(show(arg) for arg in args)})"
        case Mul(factor=factor, operand=operand):
            return f"{factor}*{show(operand)}"
        case WordIndex(word=word, index=index):
            return f"{word}[{show(index)}]"
        case Factor(word=word, start=start, end=end):
            return f"{word}[{show(start)}..{show(end)}]"
        case AutLiteral(origin=origin):
            raise ValueError(f"The automaton literal {origin or '?'} has no source text")
        case RestrictDecl(vars=names, type_tag=tag):
            return f"Restrict {', '.join(names)} are {tag}."
        case StructureDecl(type_tag=tag, entries=entries):
            inner = ", ".join(
                f"{json.dumps(key)}: {entry.target}({', '.join(entry.slots)})"
                for key, entry in entries
            )
            return f"Structure {tag} defining {{ {inner} }}."
        case TheoremDecl(name=name, body=body):
            return f"Theorem ({json.dumps(name)}, {{ {show(body)} }})."
        case PredicateDef(name=name, params=params, body=body):
            return f"{name}({', '.join(_param(p) for p in params)}) := {show(body)}."
        case LoadAutomaton(path=path, name=name, params=params):
            return f"#load {json.dumps(path)} as {name}({', '.join(params)})."
        case BuiltinDecl(builtin=builtin, name=name, params=params):
            return f"#builtin {json.dumps(builtin)} as {name}({', '.join(params)})."
        case SaveAutomaton(path=path, name=name):
            return f"#save_aut {json.dumps(path)} {name}."
    operator = _BINARY.get(type(node))
    if operator is None:
        raise TypeError(f"Unknown syntax node {node!r}")
    return f"({show(node.left)} {operator} {show(node.right)})"
