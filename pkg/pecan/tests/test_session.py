"""Tests for running programs in a session"""

import pytest

from pecan.definitions import Verdict
from pecan.errors import (
    ArityError,
    DocumentError,
    OpenFormulaError,
    ResolutionError,
    UnknownPredicateError,
)
from pecan.session import Session, run_file
from pecan.var_automata import PecanAutomaton, VariableMap

COMMUTATIVITY = """
Structure nat defining {
    "adder": bin_add(any, any, any),
    "less": bin_less(any, any)
}.
Restrict a, b are nat.
Theorem ("", { forall a,b. a < b <=> bin_less(a,b)}).
"""

ROUND_TRIP = """
lt(x, y) := x < y.
#save_aut "lt.aut" lt.
#load "lt.aut" as lt2(a, b).
Theorem ("same", { forall a, b. lt(a, b) <=> lt2(a, b) }).
"""


class TestPrelude:
    def test_prelude_definitions(self, bare_session):
        assert bare_session.registry.predicates == {}
        session = Session()
        assert {"nat", "bin_add", "bin_less", "thue_morse"} <= set(session.registry.predicates)
        assert session.registry.structures["nat"].is_numeric

    def test_bare_sessions_still_decide(self, bare_session):
        (result,) = bare_session.run_text('Theorem ("", { true & !false }).')
        assert result.verdict is Verdict.TRUE


class TestPrograms:
    def test_commutativity_example(self, session):
        (result,) = session.run_text(COMMUTATIVITY)
        assert result.verdict is Verdict.TRUE
        assert result.metrics.atoms == 6
        assert result.metrics.complexity == "∀²"

    def test_theorems_come_in_order(self, session):
        results = session.run_text(
            'Theorem ("first", { exists x. x = 2 }).\n'
            'Theorem ("second", { forall x. x < 2 }).\n'
        )
        assert [(r.name, r.verdict) for r in results] == [
            ("first", Verdict.TRUE),
            ("second", Verdict.FALSE),
        ]

    def test_builtin_words(self, session):
        results = session.run_text(
            '#builtin "thue_morse" as T(i).\n'
            'Theorem ("even", { forall i. T[2*i] = T[i] }).\n'
            'Theorem ("odd", { forall i. T[2*i+1] != T[i] }).\n'
        )
        assert all(result.verdict is Verdict.TRUE for result in results)

    def test_factors(self, session):
        results = session.run_text(
            '#builtin "thue_morse" as T(i).\n'
            'Theorem ("", { exists k. k > 0 & T[k..k+4] = T[0..4] }).\n'
        )
        assert results[0].verdict is Verdict.TRUE

    def test_unknown_builtin(self, session):
        with pytest.raises(ResolutionError):
            session.run_text('#builtin "fibonacci" as F(i).')

    def test_definitions_persist_across_runs(self, session):
        session.run_text("double(x, y) := y = x + x.")
        (result,) = session.run_text('Theorem ("", { forall x. exists y. double(x, y) }).')
        assert result.verdict is Verdict.TRUE


class TestAutomatonFiles:
    def test_save_then_load(self, session, tmp_path):
        (result,) = session.run_text(ROUND_TRIP, str(tmp_path / "main.pn"))
        assert result.verdict is Verdict.TRUE
        saved = (tmp_path / "lt.aut").read_text(encoding="utf-8")
        assert "var x: x_0" in saved and "var y: y_0" in saved

    def test_load_arity(self, session, tmp_path):
        session.run_text('lt(x, y) := x < y.\n#save_aut "lt.aut" lt.', str(tmp_path / "a.pn"))
        with pytest.raises(ArityError):
            session.run_text('#load "lt.aut" as bad(a).', str(tmp_path / "b.pn"))

    def test_load_missing(self, session, tmp_path):
        with pytest.raises(DocumentError, match="absent.aut"):
            session.run_text('#load "absent.aut" as p(a).', str(tmp_path / "main.pn"))

    def test_save_unknown(self, session, tmp_path):
        with pytest.raises(UnknownPredicateError):
            session.run_text('#save_aut "p.aut" nothing.', str(tmp_path / "main.pn"))

    def test_bind_rejects_repeated_parameters(self):
        varmap = VariableMap({"x": ("a",), "y": ("b",)})
        with pytest.raises(ArityError, match="Repeated"):
            Session.bind(PecanAutomaton.top(varmap), ("p", "p"))


class TestErrors:
    def test_errors_point_at_the_item(self, session):
        text = "Restrict x is nat.\nTheorem (\"\", { forall x. x < y }).\n"
        with pytest.raises(OpenFormulaError) as raised:
            session.run_text(text, "open.pn")
        assert str(raised.value).startswith("open.pn:2")

    def test_run_file_keeps_finished_theorems(self, tmp_path):
        path = tmp_path / "partial.pn"
        path.write_text(
            "Restrict x is nat.\n"
            'Theorem ("ok", { exists x. x = 1 }).\n'
            'Theorem ("bad", { exists x. P(x) }).\n',
            encoding="utf-8",
        )
        report = run_file(path)
        assert [result.name for result in report.theorems] == ["ok"]
        assert "P is not defined" in report.error
        assert report.exit_status == 2

    def test_run_file_unreadable(self, tmp_path):
        report = run_file(tmp_path / "absent.pn")
        assert report.error.startswith("cannot read")
        assert report.theorems == []
