"""Boolean and structural operations on Büchi automata"""

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping

import networkx as nx
from loguru import logger

from omega_automata.buchi import BuchiAutomaton, LassoWord
from omega_automata.errors import ApCollisionError, StateBudgetExceeded, UnknownApError
from omega_automata.guard import Guard, Valuation
from omega_automata.settings import (
    KernelSettings,
    check_deadline,
    resolve_settings,
    warning_threshold,
)


def state_graph(automaton: BuchiAutomaton) -> nx.DiGraph:
    """Underlying directed graph, every edge keeps its guard"""
    graph = nx.DiGraph()
    graph.add_nodes_from(automaton.states)
    for edge in automaton.edges:
        graph.add_edge(edge.source, edge.target, guard=edge.guard)
    return graph


def is_nontrivial(graph: nx.DiGraph, component: set[Hashable]) -> bool:
    """A component carries a cycle"""
    if len(component) > 1:
        return True
    (node,) = component
    return graph.has_edge(node, node)


def is_weak(automaton: BuchiAutomaton) -> bool:
    """Every cyclic component is entirely accepting or entirely rejecting"""
    graph = state_graph(automaton)
    for component in nx.strongly_connected_components(graph):
        if not is_nontrivial(graph, component):
            continue
        flags = {state in automaton.accepting for state in component}
        if len(flags) > 1:
            return False
    return True


class _ProductBuilder:
    """Numbers product states in discovery order and enforces the budget"""

    def __init__(self, construction: str, settings: KernelSettings) -> None:
        self.__construction = construction
        self.__settings = settings
        self.__budget = settings.state_budget
        self.__warn_at = warning_threshold(settings)
        self.index: dict[Hashable, int] = {}
        self.queue: deque[Hashable] = deque()
        self.edges: list[tuple[int, int, Guard]] = []

    def state(self, key: Hashable) -> int:
        if key not in self.index:
            if len(self.index) >= self.__budget:
                raise StateBudgetExceeded(self.__construction, self.__budget)
            if len(self.index) == self.__warn_at:
                logger.warning(f"{self.__construction} reached {self.__warn_at} states")
            check_deadline(self.__settings, self.__construction)
            self.index[key] = len(self.index)
            self.queue.append(key)
        return self.index[key]


def intersect(
    left: BuchiAutomaton,
    right: BuchiAutomaton,
    settings: KernelSettings | None = None,
) -> BuchiAutomaton:
    """
    Automaton for the words both operands accept, over the union of their
    propositions.

    When one operand is weak a plain product suffices, accepting exactly the
    pairs of accepting states. Otherwise two copies of the product take
    turns waiting for each operand to accept.

    Input:
        left, right, BuchiAutomaton: the operands
        settings, KernelSettings: provides the state budget
    Output:
        BuchiAutomaton, at most 2 * |left| * |right| states
    """
    settings = resolve_settings(settings)
    aps = left.aps + tuple(ap for ap in right.aps if ap not in left.aps)
    if is_weak(right):
        return _plain_product(left, right, aps, settings)
    if is_weak(left):
        return _plain_product(right, left, aps, settings)
    return _alternating_product(left, right, aps, settings)


def _plain_product(
    left: BuchiAutomaton,
    weak: BuchiAutomaton,
    aps: tuple[str, ...],
    settings: KernelSettings,
) -> BuchiAutomaton:
    builder = _ProductBuilder("intersection", settings)
    builder.state((left.initial, weak.initial))
    while builder.queue:
        key = builder.queue.popleft()
        source = builder.index[key]
        p, q = key
        for left_edge in left.out_edges(p):
            for weak_edge in weak.out_edges(q):
                guard = left_edge.guard & weak_edge.guard
                if not guard.is_false:
                    target = builder.state((left_edge.target, weak_edge.target))
                    builder.edges.append((source, target, guard))
    accepting = [
        number
        for (p, q), number in builder.index.items()
        if p in left.accepting and q in weak.accepting
    ]
    return BuchiAutomaton.build(aps, len(builder.index), 0, accepting, builder.edges)


def _alternating_product(
    left: BuchiAutomaton,
    right: BuchiAutomaton,
    aps: tuple[str, ...],
    settings: KernelSettings,
) -> BuchiAutomaton:
    builder = _ProductBuilder("intersection", settings)
    builder.state((left.initial, right.initial, 0))
    while builder.queue:
        key = builder.queue.popleft()
        source = builder.index[key]
        p, q, copy = key
        if copy == 0 and p in left.accepting:
            following = 1
        elif copy == 1 and q in right.accepting:
            following = 0
        else:
            following = copy
        for left_edge in left.out_edges(p):
            for right_edge in right.out_edges(q):
                guard = left_edge.guard & right_edge.guard
                if not guard.is_false:
                    target = builder.state((left_edge.target, right_edge.target, following))
                    builder.edges.append((source, target, guard))
    accepting = [
        number
        for (_, q, copy), number in builder.index.items()
        if copy == 1 and q in right.accepting
    ]
    return BuchiAutomaton.build(aps, len(builder.index), 0, accepting, builder.edges)


def union(left: BuchiAutomaton, right: BuchiAutomaton) -> BuchiAutomaton:
    """
    Disjoint union below a fresh rejecting initial state copying the
    initial edges of both operands.
    """
    aps = left.aps + tuple(ap for ap in right.aps if ap not in left.aps)
    left_offset = 1
    right_offset = 1 + left.num_states
    edges: list[tuple[int, int, Guard]] = []
    for automaton, offset in ((left, left_offset), (right, right_offset)):
        for edge in automaton.edges:
            edges.append((edge.source + offset, edge.target + offset, edge.guard))
            if edge.source == automaton.initial:
                edges.append((0, edge.target + offset, edge.guard))
    accepting = [state + left_offset for state in left.accepting]
    accepting += [state + right_offset for state in right.accepting]
    return BuchiAutomaton.build(
        aps, 1 + left.num_states + right.num_states, 0, accepting, edges
    )


def project(automaton: BuchiAutomaton, aps: Iterable[str]) -> BuchiAutomaton:
    """Existentially quantifies the propositions away"""
    hidden = set(aps)
    unknown = hidden - set(automaton.aps)
    if unknown:
        raise UnknownApError(f"Cannot project unknown propositions {sorted(unknown)}")
    return BuchiAutomaton.build(
        [ap for ap in automaton.aps if ap not in hidden],
        automaton.num_states,
        automaton.initial,
        automaton.accepting,
        [(e.source, e.target, e.guard.exists(hidden)) for e in automaton.edges],
    )


def substitute_aps(
    automaton: BuchiAutomaton,
    renaming: Mapping[str, str],
    merge: bool = False,
) -> BuchiAutomaton:
    """
    Renames propositions simultaneously, so swaps are allowed. Entries
    naming propositions the automaton does not have are ignored.

    Input:
        automaton, BuchiAutomaton: the automaton to rename
        renaming, Mapping[str, str]: old name to new name
        merge, bool: allow two propositions to become one, reading both
            tracks from the same proposition
    Output:
        BuchiAutomaton, the renamed automaton
    """
    mapping = {ap: renaming.get(ap, ap) for ap in automaton.aps}
    targets = list(dict.fromkeys(mapping.values()))
    if len(targets) < len(mapping) and not merge:
        raise ApCollisionError(f"Renaming {dict(renaming)} is not injective")
    return BuchiAutomaton.build(
        targets,
        automaton.num_states,
        automaton.initial,
        automaton.accepting,
        [(e.source, e.target, e.guard.rename(mapping)) for e in automaton.edges],
    )


@dataclass(frozen=True)
class EmptinessCheck:
    """Outcome of an emptiness check, truthy when the language is empty"""

    empty: bool
    witness: LassoWord | None = None

    def __bool__(self) -> bool:
        return self.empty


def _accepting_cycle(
    graph: nx.DiGraph, start: Hashable, accepting: set[Hashable]
) -> tuple[list[Hashable], list[Hashable]] | None:
    """
    Finds a reachable accepting cycle. Returns the node path from the start
    to an accepting node and the closed node path around the cycle.
    """
    reachable = nx.descendants(graph, start) | {start}
    subgraph = graph.subgraph(reachable)
    for component in sorted(
        nx.strongly_connected_components(subgraph), key=lambda comp: min(map(str, comp))
    ):
        if not is_nontrivial(subgraph, component):
            continue
        hits = sorted((node for node in component if node in accepting), key=str)
        if not hits:
            continue
        anchor = hits[0]
        stem = nx.shortest_path(subgraph, start, anchor)
        if subgraph.has_edge(anchor, anchor):
            return stem, [anchor, anchor]
        inner = subgraph.subgraph(component)
        loops = [
            [anchor] + nx.shortest_path(inner, successor, anchor)
            for successor in inner.successors(anchor)
        ]
        return stem, min(loops, key=len)
    return None


def _letters(graph: nx.DiGraph, path: list[Hashable]) -> tuple[Valuation, ...]:
    return tuple(
        graph.edges[source, target]["guard"].pick() for source, target in zip(path, path[1:])
    )


def is_empty(automaton: BuchiAutomaton) -> EmptinessCheck:
    """
    Decides whether the language is empty. A nonempty language comes with a
    lasso witness whose unconstrained propositions are false.
    """
    graph = state_graph(automaton)
    found = _accepting_cycle(graph, automaton.initial, set(automaton.accepting))
    if found is None:
        return EmptinessCheck(True)
    stem, loop = found
    witness = LassoWord(_letters(graph, stem), _letters(graph, loop))
    logger.debug(f"Non empty language, witness {witness}")
    return EmptinessCheck(False, witness)


def accepts(automaton: BuchiAutomaton, word: LassoWord) -> bool:
    """
    Membership of a lasso word: search for an accepting cycle in the product
    of the automaton with the lasso positions. Propositions of the word
    unknown to the automaton are ignored.
    """
    graph = nx.DiGraph()
    start = (automaton.initial, 0)
    graph.add_node(start)
    queue = deque([start])
    while queue:
        state, position = node = queue.popleft()
        letter = word.letter(position)
        following = word.next_position(position)
        for edge in automaton.out_edges(state):
            if edge.guard.evaluate(letter):
                target = (edge.target, following)
                if target not in graph:
                    queue.append(target)
                graph.add_edge(node, target)
    accepting = {node for node in graph if node[0] in automaton.accepting}
    return _accepting_cycle(graph, start, accepting) is not None


def lasso_automaton(word: LassoWord, aps: Iterable[str]) -> BuchiAutomaton:
    """Deterministic automaton accepting exactly the word over the propositions"""
    aps = tuple(aps)
    edges = []
    for position in range(word.positions):
        letter = word.letter(position)
        guard = Guard.cube({ap: ap in letter for ap in aps})
        edges.append((position, word.next_position(position), guard))
    accepting = range(len(word.prefix), word.positions)
    return BuchiAutomaton.build(aps, word.positions, 0, accepting, edges)
