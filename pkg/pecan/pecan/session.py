"""Runs programs item by item against one set of definitions"""

from importlib import resources
from pathlib import Path
from typing import Iterator

from loguru import logger

from omega_automata.errors import AutomatonError

from pecan.automata_io import load_document, save_document
from pecan.errors import ArityError, PecanError, SourceLocation
from pecan.evaluator import (
    CompileCache,
    EvalContext,
    TheoremResult,
    compiled_body,
    decide_theorem,
)
from pecan.report import RunReport
from pecan.settings import ProverSettings
from pecan.stdlib import builtin_automaton
from pecan.syntax.ast import (
    AutLiteral,
    BuiltinDecl,
    Item,
    LoadAutomaton,
    Param,
    PredicateDef,
    RestrictDecl,
    SaveAutomaton,
    StructureDecl,
    TheoremDecl,
)
from pecan.syntax.desugar import Desugarer
from pecan.syntax.parser import parse
from pecan.typecheck import Registry, check_definition, check_theorem
from pecan.var_automata import FRESH_APS, PecanAutomaton, rename_vars

PRELUDE_FILE = "prelude.pn"


def _relocate(error: PecanError, path: str | None, line: int | None) -> PecanError:
    """Fills in the file and the item line the error is missing"""
    known = error.location or SourceLocation()
    error.location = SourceLocation(
        known.path or path,
        known.line if known.line is not None else line,
        known.column,
    )
    return error


class Session:
    """
    Definitions, structures and restrictions accumulated over the programs
    run so far. Theorems are decided in their own evaluation context and
    share the compiled predicate bodies.
    """

    def __init__(self, settings: ProverSettings | None = None) -> None:
        self.settings = settings or ProverSettings()
        self.registry = Registry()
        self.desugarer = Desugarer(push_negations=self.settings.push_negations)
        self.cache = CompileCache(self.registry.generation)
        if self.settings.load_prelude:
            self.run_prelude()

    def context(self) -> EvalContext:
        return EvalContext(self.registry, self.settings, self.cache)

    def run_prelude(self) -> None:
        text = resources.files("pecan").joinpath(PRELUDE_FILE).read_text(encoding="utf-8")
        self.run_text(text, PRELUDE_FILE)
        logger.debug(f"Prelude defines {sorted(self.registry.predicates)}")

    def run_text(self, text: str, path: str | None = None) -> list[TheoremResult]:
        return list(self.results(text, path))

    def results(self, text: str, path: str | None = None) -> Iterator[TheoremResult]:
        """
        Parses a program and runs its items one by one.

        Input:
            text, str: the source
            path, str: its file name, relative `#load` and `#save_aut`
                paths start from its directory
        Output:
            Iterator[TheoremResult], each theorem once decided
        """
        program = parse(text, path)
        base = Path(path).parent if path is not None else Path.cwd()
        for item in program:
            try:
                result = self.execute(item, base)
            except PecanError as error:
                raise _relocate(error, path, getattr(item, "line", None))
            if result is not None:
                yield result

    def run_path(self, path: str | Path) -> list[TheoremResult]:
        return self.run_text(Path(path).read_text(encoding="utf-8"), str(path))

    def execute(self, item: Item, base: Path) -> TheoremResult | None:
        """Runs one item, returns the result when it is a theorem"""
        match item:
            case RestrictDecl():
                self.desugarer.item(item)
            case PredicateDef():
                self.define(self.desugarer.item(item))  # type: ignore[arg-type]
            case StructureDecl():
                self.registry.add_structure(item)
            case TheoremDecl():
                desugared = self.desugarer.item(item)
                body = check_theorem(self.registry, desugared.body)  # type: ignore[union-attr]
                return decide_theorem(self.context(), item.name, body)
            case LoadAutomaton(path=path, name=name, params=params):
                self.desugarer.item(item)
                automaton = self.bind(load_document(base / path), params)
                self.define_literal(name, params, automaton, path)
            case BuiltinDecl(builtin=builtin, name=name, params=params):
                self.desugarer.item(item)
                automaton = builtin_automaton(builtin, params, lambda _: FRESH_APS.fresh())
                self.define_literal(name, params, automaton, f"builtin {builtin}")
            case SaveAutomaton(path=path, name=name):
                self.save(name, base / path)
            case _:
                raise TypeError(f"Unknown item {item!r}")
        return None

    def define(self, pdef: PredicateDef) -> None:
        checked, calls = check_definition(self.registry, pdef)
        self.registry.define(checked, calls)

    def define_literal(
        self, name: str, params: tuple[str, ...], automaton: PecanAutomaton, origin: str
    ) -> None:
        formals = tuple(Param(param) for param in params)
        self.define(PredicateDef(name, formals, AutLiteral(automaton, origin)))
        logger.debug(f"{name}({', '.join(params)}) bound to {origin}")

    @staticmethod
    def bind(automaton: PecanAutomaton, params: tuple[str, ...]) -> PecanAutomaton:
        """
        Renames the variables of a loaded automaton onto the parameters, in
        the order of its `var` lines, with fresh propositions.
        """
        if len(params) != len(automaton.varmap):
            raise ArityError(
                f"The automaton has variables {', '.join(automaton.variables)}, "
                f"{len(params)} parameters given"
            )
        if len(set(params)) != len(params):
            raise ArityError(f"Repeated parameter in ({', '.join(params)})")
        renaming = {
            old: (new, FRESH_APS.fresh(len(automaton.varmap[old])))
            for old, new in zip(automaton.variables, params)
        }
        return rename_vars(automaton, renaming)

    def save(self, name: str, path: Path) -> None:
        """Writes the automaton of a predicate with propositions <param>_<track>"""
        pdef = self.registry.predicate(name)
        body = compiled_body(self.context(), pdef)
        renaming = {
            param.name: (
                param.name,
                tuple(f"{param.name}_{track}" for track in range(len(body.varmap[param.name]))),
            )
            for param in pdef.params
        }
        save_document(rename_vars(body, renaming), path)
        logger.info(f"Saved {name} to {path}")


def run_file(path: str | Path, settings: ProverSettings | None = None) -> RunReport:
    """
    Runs a source file in a new session.

    Input:
        path, str | Path: the `.pn` file
        settings, ProverSettings: the options of the run
    Output:
        RunReport, the theorems decided before any error, and the error
    """
    report = RunReport(path=str(path))
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as error:
        report.error = f"cannot read {path}: {error.strerror}"
        return report
    try:
        for result in Session(settings).results(text, str(path)):
            report.theorems.append(result)
    except (PecanError, AutomatonError) as error:
        report.error = str(error)
        logger.debug(f"{path} stopped: {error!r}")
    return report
