"""Tests for trimming, acceptance normalization and simulation quotients"""

from omega_automata.buchi import BuchiAutomaton
from omega_automata.guard import TRUE, Guard
from omega_automata.operations import accepts, is_weak
from omega_automata.sampling import random_automaton, random_lasso, recurrence
from omega_automata.settings import KernelSettings
from omega_automata.simplify import normalize_acceptance, simplify, trim

A = Guard.atom("a")


class TestTrim:
    def test_unreachable_states_are_dropped(self):
        automaton = BuchiAutomaton.build(["a"], 3, 0, [0, 2], [(0, 0, A), (2, 2, TRUE)])
        assert trim(automaton).num_states == 1

    def test_states_without_accepting_future_are_dropped(self):
        automaton = BuchiAutomaton.build(
            ["a"], 3, 0, [0], [(0, 0, A), (0, 1, TRUE), (1, 2, TRUE), (2, 2, TRUE)]
        )
        assert trim(automaton).num_states == 1

    def test_empty_language_has_one_state(self):
        automaton = BuchiAutomaton.build(["a"], 3, 0, [2], [(0, 1, TRUE), (1, 1, TRUE)])
        reduced = simplify(automaton)
        assert reduced.num_states == 1
        assert not reduced.accepting
        assert reduced.aps == ("a",)


class TestNormalizeAcceptance:
    def test_state_on_no_cycle_stops_accepting(self):
        automaton = BuchiAutomaton.build(["a"], 2, 0, [0, 1], [(0, 1, TRUE), (1, 1, A)])
        assert normalize_acceptance(automaton).accepting == {1}

    def test_component_with_forced_visits_becomes_accepting(self):
        automaton = BuchiAutomaton.build(
            ["a"], 2, 0, [0], [(0, 1, A), (1, 0, TRUE)]
        )
        normalized = normalize_acceptance(automaton)
        assert normalized.accepting == {0, 1}
        assert is_weak(normalized)

    def test_mixed_component_is_kept(self):
        automaton = recurrence()
        assert normalize_acceptance(automaton) == automaton


class TestSimplify:
    def test_equivalent_branches_merge(self):
        automaton = BuchiAutomaton.build(
            ["a"],
            3,
            0,
            [1, 2],
            [(0, 1, A), (0, 2, A), (1, 1, TRUE), (2, 2, TRUE)],
        )
        assert simplify(automaton).num_states == 2

    def test_never_grows(self, rng):
        for _ in range(30):
            automaton = random_automaton(rng, int(rng.integers(1, 6)), ("a", "b"), 0.3)
            assert simplify(automaton).num_states <= automaton.num_states

    def test_preserves_language(self, rng):
        for _ in range(30):
            automaton = random_automaton(rng, int(rng.integers(1, 6)), ("a", "b"), 0.3)
            reduced = simplify(automaton)
            for _ in range(20):
                word = random_lasso(rng, ("a", "b"))
                assert accepts(reduced, word) == accepts(automaton, word)

    def test_simulation_can_be_disabled(self):
        automaton = BuchiAutomaton.build(
            ["a"], 3, 0, [1, 2], [(0, 1, A), (0, 2, A), (1, 1, TRUE), (2, 2, TRUE)]
        )
        assert simplify(automaton, KernelSettings(simulation_limit=0)).num_states == 3
