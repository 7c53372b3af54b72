"""
Text documents holding an automaton and its variable map, the `.aut` files
read by `#load` and written by `#save_aut`.

    aps: a b c
    states: 2 initial: 0 accepting: 1
    0 -> 0 [t]
    0 -> 1 [!0&1|2]
    var x: a
    var y: b c
    end

Guards name propositions by their position in the `aps` line and use
`!`, `&`, `|`, parentheses, `t` and `f`. Blank lines and lines starting
with `//` are skipped.
"""

import re
from collections import deque
from functools import lru_cache
from pathlib import Path

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from omega_automata.buchi import BuchiAutomaton
from omega_automata.errors import AutomatonError
from omega_automata.guard import FALSE, TRUE, Guard

from pecan.errors import DocumentError, SourceLocation
from pecan.var_automata import PecanAutomaton, VariableMap

APS_STR = "aps:"
STATES_STR = "states:"
VAR_STR = "var"
END_STR = "end"
COMMENT_STR = "//"

_APS = re.compile(r"aps:((?:\s+\S+)*)\s*$")
_HEADER = re.compile(r"states:\s*(\d+)\s+initial:\s*(\d+)\s+accepting:((?:\s+\d+)*)\s*$")
_EDGE = re.compile(r"(\d+)\s*->\s*(\d+)\s*\[(.*)\]\s*$")
_VAR = re.compile(r"var\s+([^\s:]+)\s*:((?:\s+\S+)*)\s*$")

_GUARD_GRAMMAR = r"""
?start: disjunction
?disjunction: conjunction ("|" conjunction)*
?conjunction: literal ("&" literal)*
?literal: "!" literal -> negation
        | INT -> atom
        | "t" -> true
        | "f" -> false
        | "(" disjunction ")"

%import common.INT
%import common.WS_INLINE
%ignore WS_INLINE
"""


@lru_cache(maxsize=1)
def _guard_parser() -> Lark:
    return Lark(_GUARD_GRAMMAR, parser="lalr")


class _ToGuard(Transformer):
    def __init__(self, aps: tuple[str, ...]) -> None:
        super().__init__()
        self.aps = aps

    def disjunction(self, children):  # type: ignore[no-untyped-def]
        result = FALSE
        for child in children:
            result = result | child
        return result

    def conjunction(self, children):  # type: ignore[no-untyped-def]
        result = TRUE
        for child in children:
            result = result & child
        return result

    def negation(self, children):  # type: ignore[no-untyped-def]
        (operand,) = children
        return ~operand

    def atom(self, children):  # type: ignore[no-untyped-def]
        (index,) = children
        if int(index) >= len(self.aps):
            raise DocumentError(f"Guard names proposition {index}, only {len(self.aps)} declared")
        return Guard.atom(self.aps[int(index)])

    def true(self, _):  # type: ignore[no-untyped-def]
        return TRUE

    def false(self, _):  # type: ignore[no-untyped-def]
        return FALSE


def parse_guard(text: str, aps: tuple[str, ...]) -> Guard:
    """Reads a guard whose propositions are positions in `aps`"""
    try:
        tree = _guard_parser().parse(text)
    except UnexpectedInput as error:
        raise DocumentError(f"Malformed guard [{text}]") from error
    try:
        return _ToGuard(aps).transform(tree)
    except VisitError as error:
        if isinstance(error.orig_exc, DocumentError):
            raise error.orig_exc from error
        raise


def _bfs_order(automaton: BuchiAutomaton) -> list[int]:
    """States reachable from the initial one in BFS order, then the others"""
    order = [automaton.initial]
    seen = {automaton.initial}
    queue = deque(order)
    while queue:
        state = queue.popleft()
        for edge in automaton.out_edges(state):
            if edge.target not in seen:
                seen.add(edge.target)
                order.append(edge.target)
                queue.append(edge.target)
    return order + [state for state in automaton.states if state not in seen]


def _ap_order(automaton: PecanAutomaton) -> list[str]:
    """Propositions in the order the variable map first uses them"""
    order = [ap for name in automaton.varmap for ap in automaton.varmap[name]]
    return order + sorted(set(automaton.automaton.aps) - set(order))


def serialize(automaton: PecanAutomaton) -> str:
    """
    Writes the document of an automaton.

    Input:
        automaton, PecanAutomaton: the automaton and its variables
    Output:
        str, the document; equal automata give equal documents
    """
    buchi = automaton.automaton
    aps = _ap_order(automaton)
    index = {ap: position for position, ap in enumerate(aps)}
    number = {state: position for position, state in enumerate(_bfs_order(buchi))}
    accepting = sorted(number[state] for state in buchi.accepting)
    edges = sorted(
        (number[edge.source], number[edge.target], edge.guard.render(index))
        for edge in buchi.edges
    )
    lines = [
        " ".join([APS_STR, *aps]),
        " ".join(
            [
                STATES_STR,
                str(buchi.num_states),
                "initial:",
                str(number[buchi.initial]),
                "accepting:",
                *map(str, accepting),
            ]
        ),
    ]
    lines += [f"{source} -> {target} [{guard}]" for source, target, guard in edges]
    lines += [
        " ".join([f"{VAR_STR} {name}:", *automaton.varmap[name]]) for name in automaton.varmap
    ]
    lines.append(END_STR)
    return "\n".join(lines) + "\n"


def _at(path: str | None, line: int | None) -> SourceLocation:
    return SourceLocation(path, line)


def _content(text: str) -> list[tuple[int, str]]:
    """Numbered lines left once blanks and comments are dropped"""
    return [
        (number, line.strip())
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith(COMMENT_STR)
    ]


def parse_document(text: str, path: str | None = None) -> PecanAutomaton:
    """
    Reads a document back.

    Input:
        text, str: the document
        path, str: file name used in error locations
    Output:
        PecanAutomaton, the automaton with the variables of its `var` lines
    """
    lines = _content(text)
    if len(lines) < 2:
        raise DocumentError("A document starts with an aps line and a states line", _at(path, None))
    (aps_line, aps_text), (header_line, header_text) = lines[:2]
    aps_match = _APS.match(aps_text)
    if aps_match is None:
        raise DocumentError(f"Expected '{APS_STR} ...', found {aps_text!r}", _at(path, aps_line))
    aps = tuple(aps_match.group(1).split())
    if len(set(aps)) != len(aps):
        raise DocumentError(f"Repeated proposition in {aps_text!r}", _at(path, aps_line))
    header = _HEADER.match(header_text)
    if header is None:
        raise DocumentError(f"Malformed header {header_text!r}", _at(path, header_line))
    num_states, initial = int(header.group(1)), int(header.group(2))
    accepting = [int(state) for state in header.group(3).split()]

    edges: list[tuple[int, int, Guard]] = []
    entries: dict[str, tuple[str, ...]] = {}
    ended = False
    for number, line in lines[2:]:
        if ended:
            raise DocumentError(f"Text after '{END_STR}': {line!r}", _at(path, number))
        if line == END_STR:
            ended = True
        elif edge := _EDGE.match(line):
            source, target = int(edge.group(1)), int(edge.group(2))
            if max(source, target) >= num_states:
                raise DocumentError(
                    f"Edge {source} -> {target} names a state beyond {num_states - 1}",
                    _at(path, number),
                )
            try:
                edges.append((source, target, parse_guard(edge.group(3), aps)))
            except DocumentError as error:
                raise error.located(_at(path, number))
        elif var := _VAR.match(line):
            name, tracks = var.group(1), tuple(var.group(2).split())
            unknown = [ap for ap in tracks if ap not in aps]
            if unknown:
                raise DocumentError(
                    f"Variable {name} uses undeclared propositions {unknown}", _at(path, number)
                )
            if name in entries:
                raise DocumentError(f"Variable {name} is declared twice", _at(path, number))
            entries[name] = tracks
        else:
            raise DocumentError(f"Unexpected line {line!r}", _at(path, number))
    if not ended:
        raise DocumentError(f"Missing '{END_STR}'", _at(path, lines[-1][0]))

    try:
        varmap = VariableMap(entries)
        unused = set(aps) - varmap.aps
        if unused:
            raise DocumentError(f"Propositions {sorted(unused)} belong to no variable")
        buchi = BuchiAutomaton.build(aps, num_states, initial, accepting, edges)
    except AutomatonError as error:
        raise DocumentError(str(error), _at(path, header_line)) from error
    except DocumentError as error:
        raise error.located(_at(path, aps_line))
    return PecanAutomaton(varmap, buchi)


def save_document(automaton: PecanAutomaton, path: str | Path) -> None:
    Path(path).write_text(serialize(automaton), encoding="utf-8")


def load_document(path: str | Path) -> PecanAutomaton:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as error:
        raise DocumentError(
            f"Cannot read automaton file: {error.strerror}", SourceLocation(str(path))
        ) from error
    return parse_document(text, str(path))
