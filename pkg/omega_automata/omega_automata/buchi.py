"""Büchi automata with symbolic edge guards"""

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from omega_automata.errors import MalformedAutomatonError
from omega_automata.guard import FALSE, TRUE, Guard, Valuation


@dataclass(frozen=True)
class Edge:
    """Transition from source to target taken on letters satisfying the guard"""

    source: int
    target: int
    guard: Guard


@dataclass(frozen=True)
class BuchiAutomaton:
    """
    A nondeterministic Büchi automaton over the alphabet of valuations of
    its propositions. States are the integers 0 .. num_states - 1, a run
    accepts when it visits an accepting state infinitely often.

    Build instances with `BuchiAutomaton.build`, which merges parallel edges
    and drops false guards.
    """

    aps: tuple[str, ...]
    num_states: int
    initial: int
    accepting: frozenset[int]
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self) -> None:
        if len(set(self.aps)) != len(self.aps):
            raise MalformedAutomatonError(f"Duplicated propositions in {self.aps}")
        if self.num_states < 1:
            raise MalformedAutomatonError("An automaton needs at least one state")
        if not 0 <= self.initial < self.num_states:
            raise MalformedAutomatonError(f"Initial state {self.initial} out of range")
        if any(not 0 <= state < self.num_states for state in self.accepting):
            raise MalformedAutomatonError(
                f"Accepting states {sorted(self.accepting)} out of range"
            )
        known = set(self.aps)
        for edge in self.edges:
            if not (0 <= edge.source < self.num_states and 0 <= edge.target < self.num_states):
                raise MalformedAutomatonError(
                    f"Edge {edge.source} -> {edge.target} leaves the state range"
                )
            if not edge.guard.atoms <= known:
                raise MalformedAutomatonError(
                    f"Guard {edge.guard} mentions propositions outside {self.aps}"
                )

    @classmethod
    def build(
        cls,
        aps: Sequence[str],
        num_states: int,
        initial: int,
        accepting: Iterable[int],
        edges: Iterable[tuple[int, int, Guard]],
    ) -> "BuchiAutomaton":
        """Merges parallel edges into one guard and discards false ones"""
        merged: dict[tuple[int, int], Guard] = {}
        for source, target, guard in edges:
            key = (source, target)
            merged[key] = merged.get(key, FALSE) | guard
        return cls(
            aps=tuple(aps),
            num_states=num_states,
            initial=initial,
            accepting=frozenset(accepting),
            edges=tuple(
                Edge(source, target, guard)
                for (source, target), guard in sorted(merged.items(), key=lambda item: item[0])
                if not guard.is_false
            ),
        )

    @cached_property
    def successors(self) -> dict[int, list[Edge]]:
        """Outgoing edges per state"""
        table: dict[int, list[Edge]] = defaultdict(list)
        for edge in self.edges:
            table[edge.source].append(edge)
        return dict(table)

    def out_edges(self, state: int) -> list[Edge]:
        return self.successors.get(state, [])

    @property
    def states(self) -> range:
        return range(self.num_states)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def is_accepting(self, state: int) -> bool:
        return state in self.accepting

    def __str__(self) -> str:
        lines = [
            f"aps={list(self.aps)} states={self.num_states} "
            f"initial={self.initial} accepting={sorted(self.accepting)}"
        ]
        lines += [f"  {e.source} -> {e.target} [{e.guard}]" for e in self.edges]
        return "\n".join(lines)


@dataclass(frozen=True)
class LassoWord:
    """
    Ultimately periodic word prefix . cycle^omega. Each letter lists the
    propositions that hold, every other proposition is false.
    """

    prefix: tuple[Valuation, ...]
    cycle: tuple[Valuation, ...]

    def __post_init__(self) -> None:
        if not self.cycle:
            raise ValueError("The cycle of a lasso word cannot be empty")

    @classmethod
    def of(
        cls, prefix: Iterable[Iterable[str]], cycle: Iterable[Iterable[str]]
    ) -> "LassoWord":
        return cls(
            tuple(frozenset(letter) for letter in prefix),
            tuple(frozenset(letter) for letter in cycle),
        )

    @property
    def positions(self) -> int:
        return len(self.prefix) + len(self.cycle)

    def letter(self, position: int) -> Valuation:
        """Letter at one of the lasso positions 0 .. positions - 1"""
        if position < len(self.prefix):
            return self.prefix[position]
        return self.cycle[position - len(self.prefix)]

    def next_position(self, position: int) -> int:
        following = position + 1
        return len(self.prefix) if following == self.positions else following

    def at(self, index: int) -> Valuation:
        """Letter at any index of the infinite word"""
        if index < len(self.prefix):
            return self.prefix[index]
        return self.cycle[(index - len(self.prefix)) % len(self.cycle)]

    def restrict(self, aps: Iterable[str]) -> "LassoWord":
        """Keeps only the listed propositions"""
        kept = frozenset(aps)
        return LassoWord(
            tuple(letter & kept for letter in self.prefix),
            tuple(letter & kept for letter in self.cycle),
        )

    def rename(self, mapping: dict[str, str]) -> "LassoWord":
        def convert(letter: Valuation) -> Valuation:
            return frozenset(mapping.get(ap, ap) for ap in letter)

        return LassoWord(
            tuple(convert(letter) for letter in self.prefix),
            tuple(convert(letter) for letter in self.cycle),
        )

    def __str__(self) -> str:
        def show(letters: tuple[Valuation, ...]) -> str:
            return " ".join("{" + ",".join(sorted(letter)) + "}" for letter in letters)

        return f"{show(self.prefix)} ({show(self.cycle)})^w".strip()


def universal(aps: Sequence[str] = ()) -> BuchiAutomaton:
    """One accepting state looping on every letter"""
    return BuchiAutomaton.build(aps, 1, 0, [0], [(0, 0, TRUE)])


def empty(aps: Sequence[str] = ()) -> BuchiAutomaton:
    """One rejecting state without edges"""
    return BuchiAutomaton.build(aps, 1, 0, [], [])
