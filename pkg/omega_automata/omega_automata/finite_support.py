"""
Words that are eventually false on every proposition. Numbers written
least significant bit first with trailing zeros are such words, and the
complement restricted to them only needs a subset construction.
"""

from typing import Hashable, Iterator

import networkx as nx

from omega_automata.alphabet import letter_table
from omega_automata.buchi import BuchiAutomaton
from omega_automata.complement import complement, explore
from omega_automata.guard import Guard
from omega_automata.operations import is_nontrivial, state_graph
from omega_automata.settings import KernelSettings, resolve_settings
from omega_automata.simplify import simplify, trim

_TAIL = "tail"
_NO_LETTER: frozenset[str] = frozenset()


def finite_support(aps: tuple[str, ...] | list[str]) -> BuchiAutomaton:
    """Words in which every proposition holds only finitely often"""
    zero = Guard.cube(dict.fromkeys(aps, False))
    return BuchiAutomaton.build(
        aps, 2, 0, [1], [(0, 0, Guard.true()), (0, 1, zero), (1, 1, zero)]
    )


def zero_accepting(automaton: BuchiAutomaton) -> frozenset[int]:
    """States from which the word false forever is accepted"""
    graph = nx.DiGraph()
    graph.add_nodes_from(automaton.states)
    graph.add_edges_from(
        (edge.source, edge.target)
        for edge in automaton.edges
        if edge.guard.evaluate(_NO_LETTER)
    )
    live: set[int] = set()
    for component in nx.strongly_connected_components(graph):
        if is_nontrivial(graph, component) and component & automaton.accepting:
            live |= component
    reaching = set(live)
    for state in live:
        reaching |= nx.ancestors(graph, state)
    return frozenset(reaching)


def is_finitely_supported(automaton: BuchiAutomaton) -> bool:
    """
    Every accepted word is eventually false on every proposition: the
    cycles through accepting states only read the all false letter.
    """
    reduced = trim(automaton)
    graph = state_graph(reduced)
    for component in nx.strongly_connected_components(graph):
        if not is_nontrivial(graph, component) or not component & reduced.accepting:
            continue
        for edge in reduced.edges:
            if edge.source in component and edge.target in component:
                if any(not (edge.guard & Guard.atom(ap)).is_false for ap in reduced.aps):
                    return False
    return True


def complement_finite_support(
    automaton: BuchiAutomaton, settings: KernelSettings | None = None
) -> BuchiAutomaton:
    """
    The eventually false words the automaton rejects.

    A word u followed by false forever is accepted exactly when the states
    reached on u meet `zero_accepting`, so the result follows the subsets
    reached on u and then jumps to an accepting tail reading false forever.
    The result is weak and only nondeterministic on the all false letter.

    Input:
        automaton, BuchiAutomaton: the automaton to complement
        settings, KernelSettings: state budget, deadline and letter limit
    Output:
        BuchiAutomaton, over the same propositions
    """
    settings = resolve_settings(settings)
    reduced = simplify(automaton, settings)
    if not reduced.aps:
        return complement(reduced, settings)
    table = letter_table(reduced, settings)
    zero_class = next(
        position for position, cls in enumerate(table.classes) if 0 in cls.minterms
    )
    accepting_tails = zero_accepting(reduced)

    def successors(key: Hashable, position: int) -> Iterator[Hashable]:
        if key == _TAIL:
            if position == zero_class:
                yield _TAIL
            return
        reached: frozenset[int] = key  # type: ignore[assignment]
        yield table.classes[position].step(reached)
        if position == zero_class and not reached & accepting_tails:
            yield _TAIL

    result = explore(
        table,
        frozenset({reduced.initial}),
        successors,
        lambda key: key == _TAIL,
        "finite support complement",
        settings,
    )
    return simplify(result, settings)
