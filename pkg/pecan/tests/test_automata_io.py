"""Tests for automaton documents"""

import pytest

from omega_automata.buchi import BuchiAutomaton
from omega_automata.guard import FALSE, TRUE, Guard
from omega_automata.operations import accepts

from pecan.automata_io import load_document, parse_document, parse_guard, save_document, serialize
from pecan.errors import DocumentError
from pecan.stdlib import build_bin_add, build_bin_less, nat_word
from pecan.var_automata import PecanAutomaton, VariableMap

UNIVERSAL = "aps:\nstates: 1 initial: 0 accepting: 0\n0 -> 0 [t]\nend\n"

LESS = """
// x < y, one track each
aps: a b
states: 2 initial: 0 accepting: 1
0 -> 0 [t]
0 -> 1 [!0&1]

1 -> 1 [0&1|!0&!1]
var x: a
var y: b
end
"""


def adder() -> PecanAutomaton:
    varmap = VariableMap({"x": ("p",), "y": ("q",), "z": ("r",)})
    return PecanAutomaton(varmap, build_bin_add("p", "q", "r"))


class TestGuards:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("t", TRUE),
            ("f", FALSE),
            ("0", Guard.atom("a")),
            ("!1", Guard.atom("b", False)),
            ("0&!1", Guard.cube({"a": True, "b": False})),
            ("!(0|1)", Guard.cube({"a": False, "b": False})),
        ],
    )
    def test_parse(self, text, expected):
        assert parse_guard(text, ("a", "b")) == expected

    def test_index_out_of_range(self):
        with pytest.raises(DocumentError, match="only 2 declared"):
            parse_guard("2", ("a", "b"))

    def test_malformed(self):
        with pytest.raises(DocumentError, match="Malformed guard"):
            parse_guard("0&", ("a",))


class TestSerialize:
    def test_universal(self):
        assert serialize(PecanAutomaton.true()) == UNIVERSAL
        assert parse_document(UNIVERSAL) == PecanAutomaton.true()

    def test_reading_a_hand_written_document(self):
        less = parse_document(LESS)
        assert dict(less.varmap.entries) == {"x": ("a",), "y": ("b",)}
        assert accepts(less.automaton, nat_word({"a": 2, "b": 3}))
        assert not accepts(less.automaton, nat_word({"a": 3, "b": 2}))

    def test_documents_are_stable(self):
        text = serialize(adder())
        assert serialize(parse_document(text)) == text
        assert text.startswith("aps: p q r\n")
        assert text.endswith("var x: p\nvar y: q\nvar z: r\nend\n")

    def test_language_survives(self):
        restored = parse_document(serialize(adder()))
        for x, y, z in [(3, 4, 7), (3, 4, 8), (0, 9, 9)]:
            word = nat_word({"p": x, "q": y, "r": z})
            assert accepts(restored.automaton, word) == accepts(adder().automaton, word)

    def test_initial_state_comes_first(self):
        varmap = VariableMap({"x": ("a",), "y": ("b",)})
        swapped = build_bin_less("a", "b")
        moved = BuchiAutomaton.build(
            swapped.aps,
            2,
            1,
            [0],
            [(1 - edge.source, 1 - edge.target, edge.guard) for edge in swapped.edges],
        )
        text = serialize(PecanAutomaton(varmap, moved))
        assert text == serialize(PecanAutomaton(varmap, swapped))

    def test_save_and_load(self, tmp_path):
        path = tmp_path / "adder.aut"
        save_document(adder(), path)
        assert load_document(path) == parse_document(serialize(adder()))


class TestDocumentErrors:
    @pytest.mark.parametrize(
        "text, message",
        [
            ("aps: a\n", "starts with an aps line"),
            ("props: a\nstates: 1 initial: 0 accepting: 0\nend\n", "Expected 'aps:"),
            ("aps: a a\nstates: 1 initial: 0 accepting:\nend\n", "Repeated proposition"),
            ("aps: a\nstates: one\nend\n", "Malformed header"),
            ("aps: a\nstates: 1 initial: 0 accepting: 0\n0 -> 3 [t]\nvar x: a\nend\n", "beyond"),
            ("aps: a\nstates: 1 initial: 0 accepting: 0\n0 -> 0 [0&]\nvar x: a\nend\n", "guard"),
            ("aps: a\nstates: 1 initial: 0 accepting: 0\nvar x: b\nend\n", "undeclared"),
            ("aps: a b\nstates: 1 initial: 0 accepting: 0\nvar x: a\nvar x: b\nend\n", "twice"),
            ("aps: a\nstates: 1 initial: 0 accepting: 0\nhello\nend\n", "Unexpected line"),
            ("aps: a\nstates: 1 initial: 0 accepting: 0\nvar x: a\nend\nmore\n", "after 'end'"),
            ("aps: a\nstates: 1 initial: 0 accepting: 0\nvar x: a\n", "Missing 'end'"),
            ("aps: a b\nstates: 1 initial: 0 accepting: 0\nvar x: a\nend\n", "no variable"),
            ("aps: a\nstates: 1 initial: 4 accepting: 0\nvar x: a\nend\n", "Initial state 4"),
        ],
    )
    def test_rejected(self, text, message):
        with pytest.raises(DocumentError, match=message):
            parse_document(text)

    def test_errors_name_the_line(self):
        text = "aps: a\nstates: 1 initial: 0 accepting: 0\n\n0 -> 0 [7]\nvar x: a\nend\n"
        with pytest.raises(DocumentError) as raised:
            parse_document(text, "bad.aut")
        assert str(raised.value).startswith("bad.aut:4")

    def test_missing_file(self, tmp_path):
        with pytest.raises(DocumentError, match="Cannot read"):
            load_document(tmp_path / "absent.aut")
