"""Explicit letter tables for the constructions that work letter by letter"""

from dataclasses import dataclass
from functools import cached_property

from omega_automata.buchi import BuchiAutomaton
from omega_automata.errors import AlphabetTooLargeError
from omega_automata.guard import Guard
from omega_automata.settings import KernelSettings, resolve_settings


@dataclass(frozen=True)
class LetterClass:
    """Letters sending every state to the same set of successors"""

    minterms: tuple[int, ...]
    successors: tuple[frozenset[int], ...]

    def step(self, states: frozenset[int]) -> frozenset[int]:
        """Successors of a set of states"""
        reached: set[int] = set()
        for state in states:
            reached |= self.successors[state]
        return frozenset(reached)


@dataclass(frozen=True)
class LetterTable:
    """All letter classes of an automaton"""

    automaton: BuchiAutomaton
    classes: tuple[LetterClass, ...]

    @cached_property
    def is_deterministic(self) -> bool:
        return all(len(targets) <= 1 for cls in self.classes for targets in cls.successors)

    def is_deterministic_on(self, states: frozenset[int]) -> bool:
        return all(
            len(cls.successors[state]) <= 1 for cls in self.classes for state in states
        )

    def guard(self, minterms: set[int]) -> Guard:
        return Guard.from_minterms(self.automaton.aps, minterms)


def letter_table(
    automaton: BuchiAutomaton, settings: KernelSettings | None = None
) -> LetterTable:
    """
    Enumerates the 2^k letters over the automaton propositions and groups
    them by their successor function.

    Input:
        automaton, BuchiAutomaton: the automaton to tabulate
        settings, KernelSettings: provides the proposition limit
    Output:
        LetterTable, letter classes in order of their smallest letter
    """
    settings = resolve_settings(settings)
    width = len(automaton.aps)
    if width > settings.max_alphabet_aps:
        raise AlphabetTooLargeError(
            f"{width} propositions exceed the limit of {settings.max_alphabet_aps}"
        )
    index = {ap: bit for bit, ap in enumerate(automaton.aps)}
    compiled = [
        (edge.source, edge.target, edge.guard.masks(index)) for edge in automaton.edges
    ]
    groups: dict[tuple[frozenset[int], ...], list[int]] = {}
    for letter in range(1 << width):
        successors: list[set[int]] = [set() for _ in automaton.states]
        for source, target, cubes in compiled:
            if any(letter & pos == pos and not letter & neg for pos, neg in cubes):
                successors[source].add(target)
        key = tuple(frozenset(targets) for targets in successors)
        groups.setdefault(key, []).append(letter)
    return LetterTable(
        automaton,
        tuple(LetterClass(tuple(letters), key) for key, letters in groups.items()),
    )
