"""Tests for products, projection, renaming, emptiness and membership"""

import pytest

from omega_automata.buchi import BuchiAutomaton, LassoWord, empty, universal
from omega_automata.complement import complement
from omega_automata.errors import ApCollisionError, MalformedAutomatonError, UnknownApError
from omega_automata.guard import TRUE, Guard
from omega_automata.operations import (
    accepts,
    intersect,
    is_empty,
    is_weak,
    lasso_automaton,
    project,
    substitute_aps,
    union,
)
from omega_automata.sampling import persistence, random_automaton, random_lasso, recurrence
from omega_automata.simplify import simplify

A_THEN_B = LassoWord.of([], [["a"], ["b"]])
ONLY_A = LassoWord.of([], [["a"]])
ONLY_B = LassoWord.of([], [["b"]])
NOTHING = LassoWord.of([], [[]])
AB = ("a", "b")


def always_both() -> BuchiAutomaton:
    both = Guard.atom("a") & Guard.atom("b")
    return BuchiAutomaton.build(["a", "b"], 1, 0, [0], [(0, 0, both)])


def random_pairs(rng, count, max_states=4):
    """Pairs of random automata over a and b"""
    for _ in range(count):
        left, right = (
            random_automaton(
                rng,
                int(rng.integers(1, max_states + 1)),
                AB,
                density=float(rng.uniform(0.3, 0.9)),
            )
            for _ in range(2)
        )
        yield left, right


class TestStructure:
    def test_build_merges_parallel_edges(self):
        automaton = BuchiAutomaton.build(
            ["a"], 1, 0, [0], [(0, 0, Guard.atom("a")), (0, 0, Guard.atom("a", False))]
        )
        assert automaton.num_edges == 1
        assert automaton.edges[0].guard == TRUE

    def test_initial_out_of_range(self):
        with pytest.raises(MalformedAutomatonError):
            BuchiAutomaton.build([], 1, 3, [], [])

    def test_guard_outside_alphabet(self):
        with pytest.raises(MalformedAutomatonError):
            BuchiAutomaton.build(["a"], 1, 0, [0], [(0, 0, Guard.atom("b"))])

    def test_lasso_needs_cycle(self):
        with pytest.raises(ValueError):
            LassoWord.of([["a"]], [])

    def test_weakness(self):
        assert is_weak(persistence())
        assert not is_weak(recurrence())


class TestIntersect:
    def test_two_recurrence_conditions(self):
        product = intersect(recurrence("a"), recurrence("b"))
        assert set(product.aps) == {"a", "b"}
        assert accepts(product, A_THEN_B)
        assert not accepts(product, ONLY_A)
        assert not accepts(product, ONLY_B)

    def test_state_bound(self):
        left, right = recurrence("a"), recurrence("b")
        product = intersect(left, right)
        assert product.num_states <= 2 * left.num_states * right.num_states

    def test_with_weak_operand(self):
        product = intersect(recurrence("a"), persistence("b"))
        assert accepts(product, ONLY_A)
        assert not accepts(product, A_THEN_B)

    def test_with_empty_is_empty(self):
        assert is_empty(intersect(recurrence(), empty(["a"])))

    def test_matches_membership(self, rng):
        left, right = recurrence("a"), persistence("b")
        product = intersect(left, right)
        for _ in range(50):
            word = random_lasso(rng, ("a", "b"))
            assert accepts(product, word) == (accepts(left, word) and accepts(right, word))

    def test_matches_membership_on_random_pairs(self, rng):
        for left, right in random_pairs(rng, 200):
            product = intersect(left, right)
            for _ in range(10):
                word = random_lasso(rng, AB)
                assert accepts(product, word) == (accepts(left, word) and accepts(right, word))


class TestUnion:
    def test_either_side(self):
        joined = union(recurrence("a"), recurrence("b"))
        assert accepts(joined, ONLY_A)
        assert accepts(joined, ONLY_B)
        assert not accepts(joined, NOTHING)

    def test_state_bound(self):
        left, right = recurrence("a"), persistence("a")
        assert union(left, right).num_states <= left.num_states + right.num_states + 1

    def test_matches_membership(self, rng):
        left, right = recurrence("a"), persistence("b")
        joined = union(left, right)
        for _ in range(50):
            word = random_lasso(rng, ("a", "b"))
            assert accepts(joined, word) == (accepts(left, word) or accepts(right, word))

    def test_matches_membership_on_random_pairs(self, rng):
        for left, right in random_pairs(rng, 200):
            joined = union(left, right)
            for _ in range(10):
                word = random_lasso(rng, AB)
                assert accepts(joined, word) == (accepts(left, word) or accepts(right, word))


class TestProjectAndRename:
    def test_project(self):
        projected = project(always_both(), ["b"])
        assert projected.aps == ("a",)
        assert accepts(projected, ONLY_A)
        assert not accepts(projected, NOTHING)

    def test_project_unknown(self):
        with pytest.raises(UnknownApError):
            project(always_both(), ["c"])

    def test_swap(self):
        swapped = substitute_aps(recurrence("a"), {"a": "b"})
        assert swapped.aps == ("b",)
        assert accepts(swapped, ONLY_B)
        assert not accepts(swapped, ONLY_A)

    def test_simultaneous_swap(self):
        automaton = intersect(recurrence("a"), persistence("b"))
        swapped = substitute_aps(automaton, {"a": "b", "b": "a"})
        assert accepts(swapped, ONLY_B)
        assert not accepts(swapped, ONLY_A)

    def test_collision(self):
        with pytest.raises(ApCollisionError):
            substitute_aps(always_both(), {"b": "a"})

    def test_merge_reads_one_track(self):
        merged = substitute_aps(always_both(), {"b": "a"}, merge=True)
        assert merged.aps == ("a",)
        assert accepts(merged, ONLY_A)


class TestEmptiness:
    def test_empty(self):
        assert is_empty(empty(["a"]))

    def test_accepting_state_without_cycle(self):
        automaton = BuchiAutomaton.build([], 2, 0, [1], [(0, 1, TRUE)])
        assert is_empty(automaton)

    def test_universal_witness(self):
        check = is_empty(universal())
        assert not check
        assert check.witness == LassoWord((), (frozenset(),))

    @pytest.mark.parametrize("automaton", [recurrence(), persistence()])
    def test_witness_is_accepted(self, automaton):
        check = is_empty(automaton)
        assert not check.empty
        assert accepts(automaton, check.witness)

    def test_witness_sets_free_propositions_false(self):
        check = is_empty(persistence())
        assert check.witness.cycle == (frozenset(),)


class TestAccepts:
    def test_extra_propositions_are_ignored(self):
        assert accepts(recurrence("a"), LassoWord.of([["z"]], [["a", "z"]]))

    def test_missing_propositions_are_false(self):
        assert not accepts(recurrence("a"), LassoWord.of([], [["z"]]))

    def test_lasso_automaton(self):
        word = LassoWord.of([["a"]], [[], ["a"]])
        automaton = lasso_automaton(word, ["a"])
        assert accepts(automaton, word)
        assert accepts(automaton, LassoWord.of([["a"], []], [["a"], []]))
        assert not accepts(automaton, LassoWord.of([], [[], ["a"]]))


class TestRandomCorpus:
    @staticmethod
    def corpus(rng, count=40):
        for _ in range(count):
            yield random_automaton(
                rng, int(rng.integers(1, 5)), ("a", "b"), density=float(rng.uniform(0.3, 0.9))
            )

    def test_witnesses_are_accepted(self, rng):
        for automaton in self.corpus(rng):
            check = is_empty(automaton)
            if not check:
                assert accepts(automaton, check.witness)

    @staticmethod
    def small_pairs(rng, combine, count=200, limit=5):
        """Random pairs whose combination simplifies to at most `limit` states"""
        pairs = []
        for left, right in random_pairs(rng, 20 * count, max_states=2):
            if simplify(combine(left, right)).num_states <= limit:
                pairs.append((left, right))
                if len(pairs) == count:
                    break
        assert len(pairs) == count
        return pairs

    def test_complement_of_union(self, rng):
        for left, right in self.small_pairs(rng, union):
            joined = complement(union(left, right))
            met = intersect(complement(left), complement(right))
            for _ in range(5):
                word = random_lasso(rng, AB)
                assert accepts(joined, word) == accepts(met, word)

    def test_complement_of_intersection(self, rng):
        for left, right in self.small_pairs(rng, intersect):
            met = complement(intersect(left, right))
            joined = union(complement(left), complement(right))
            for _ in range(5):
                word = random_lasso(rng, AB)
                assert accepts(met, word) == accepts(joined, word)
