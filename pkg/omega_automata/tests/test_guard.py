"""Tests for guard formulas"""

import pytest

from omega_automata.guard import FALSE, TRUE, Guard

a, b = Guard.atom("a"), Guard.atom("b")
not_a, not_b = Guard.atom("a", False), Guard.atom("b", False)


class TestConstruction:
    def test_constants(self):
        assert TRUE.is_true and not TRUE.is_false
        assert FALSE.is_false and not FALSE.is_true

    def test_contradiction_is_false(self):
        assert (a & not_a).is_false

    def test_adjacent_cubes_merge(self):
        """a & b | a & !b = a"""
        assert (a & b) | (a & not_b) == a

    def test_absorption(self):
        assert a | (a & b) == a

    def test_excluded_middle_is_true(self):
        assert (a | not_a) == TRUE

    def test_validity_without_merging(self):
        guard = (a & b) | not_a | not_b
        assert guard.is_true

    def test_cube(self):
        assert Guard.cube({"a": True, "b": False}) == a & not_b


class TestAlgebra:
    def test_negation_de_morgan(self):
        assert ~(a | b) == not_a & not_b

    def test_double_negation(self):
        assert ~~(a | b) == a | b

    def test_exists_deletes_literals(self):
        assert (a & b).exists({"b"}) == a
        assert a.exists({"a"}) == TRUE
        assert FALSE.exists({"a"}) == FALSE

    def test_rename_is_simultaneous(self):
        assert (a & not_b).rename({"a": "b", "b": "a"}) == b & not_a

    def test_rename_onto_same_proposition(self):
        assert (a & not_b).rename({"b": "a"}).is_false
        assert (a & b).rename({"b": "a"}) == a

    def test_atoms(self):
        assert ((a & b) | not_a).atoms == {"a", "b"}


class TestLetters:
    @pytest.mark.parametrize(
        "letter, expected",
        [(frozenset(), False), ({"a"}, True), ({"a", "b"}, False), ({"b"}, False)],
    )
    def test_evaluate(self, letter, expected):
        assert (a & not_b).evaluate(frozenset(letter)) is expected

    def test_pick_sets_free_propositions_false(self):
        assert (a & not_b).pick() == {"a"}
        assert TRUE.pick() == frozenset()

    def test_pick_on_false_raises(self):
        with pytest.raises(ValueError):
            FALSE.pick()

    def test_from_minterms_single_literal(self):
        # bit 0 is a, bit 1 is b
        assert Guard.from_minterms(("a", "b"), {1, 3}) == a

    def test_from_minterms_equivalence(self):
        guard = Guard.from_minterms(("a", "b"), {0, 3})
        assert guard.evaluate(frozenset())
        assert guard.evaluate(frozenset({"a", "b"}))
        assert not guard.evaluate(frozenset({"a"}))
        assert not guard.evaluate(frozenset({"b"}))

    def test_from_minterms_constants(self):
        assert Guard.from_minterms(("a", "b"), range(4)) == TRUE
        assert Guard.from_minterms(("a", "b"), []) == FALSE

    def test_masks(self):
        assert (a & not_b).masks({"a": 0, "b": 1}) == [(1, 2)]


class TestRender:
    def test_indexed(self):
        assert (a & not_b).render({"a": 0, "b": 1}) == "0&!1"

    def test_named(self):
        assert str(a | not_b) == "a|!b"

    def test_constants(self):
        assert TRUE.render({}) == "t"
        assert FALSE.render({}) == "f"
