"""Language preserving reductions of Büchi automata"""

from collections import deque

import networkx as nx
from loguru import logger

from omega_automata.alphabet import letter_table
from omega_automata.buchi import BuchiAutomaton, empty
from omega_automata.errors import AlphabetTooLargeError
from omega_automata.guard import Guard
from omega_automata.operations import is_nontrivial, state_graph
from omega_automata.settings import KernelSettings, check_deadline, resolve_settings


def _restrict(automaton: BuchiAutomaton, keep: set[int]) -> BuchiAutomaton:
    """Sub-automaton on the kept states, renumbered in breadth first order"""
    order: dict[int, int] = {automaton.initial: 0}
    queue = deque([automaton.initial])
    while queue:
        state = queue.popleft()
        for edge in sorted(automaton.out_edges(state), key=lambda e: e.target):
            if edge.target in keep and edge.target not in order:
                order[edge.target] = len(order)
                queue.append(edge.target)
    edges = [
        (order[e.source], order[e.target], e.guard)
        for e in automaton.edges
        if e.source in order and e.target in order
    ]
    accepting = [order[state] for state in automaton.accepting if state in order]
    return BuchiAutomaton.build(automaton.aps, len(order), 0, accepting, edges)


def trim(automaton: BuchiAutomaton) -> BuchiAutomaton:
    """
    Keeps the states that are reachable and can still reach an accepting
    cycle. An automaton with an empty language becomes the one state
    empty automaton.
    """
    graph = state_graph(automaton)
    reachable = nx.descendants(graph, automaton.initial) | {automaton.initial}
    sub = graph.subgraph(reachable)
    live: set[int] = set()
    for component in nx.strongly_connected_components(sub):
        if is_nontrivial(sub, component) and component & automaton.accepting:
            live |= component
    if not live:
        return empty(automaton.aps)
    useful = set(live)
    for state in live:
        useful |= nx.ancestors(sub, state)
    return _restrict(automaton, useful)


def normalize_acceptance(automaton: BuchiAutomaton) -> BuchiAutomaton:
    """
    Rewrites the accepting set without changing the language: states on no
    cycle are rejecting, and a component whose cycles all meet an accepting
    state becomes accepting as a whole.
    """
    graph = state_graph(automaton)
    accepting: set[int] = set()
    for component in nx.strongly_connected_components(graph):
        if not is_nontrivial(graph, component):
            continue
        marked = component & automaton.accepting
        if not marked:
            continue
        rest = graph.subgraph(component - marked)
        if nx.is_directed_acyclic_graph(rest):
            accepting |= component
        else:
            accepting |= marked
    if accepting == set(automaton.accepting):
        return automaton
    return BuchiAutomaton(
        automaton.aps,
        automaton.num_states,
        automaton.initial,
        frozenset(accepting),
        automaton.edges,
    )


def direct_simulation(
    automaton: BuchiAutomaton, settings: KernelSettings | None = None
) -> set[tuple[int, int]]:
    """
    Pairs (q, p) such that p directly simulates q: p accepts whenever q
    does and p matches every move of q on the same letter.

    Input:
        automaton, BuchiAutomaton: the automaton
        settings, KernelSettings: provides the letter enumeration limit
    Output:
        set[tuple[int, int]], the simulation preorder
    """
    settings = resolve_settings(settings)
    table = letter_table(automaton, settings)
    states = list(automaton.states)
    relation = {
        (q, p)
        for q in states
        for p in states
        if (q not in automaton.accepting or p in automaton.accepting)
        and all(
            not cls.successors[q] or cls.successors[p] for cls in table.classes
        )
    }
    changed = True
    while changed:
        changed = False
        check_deadline(settings, "direct simulation")
        for q, p in sorted(relation):
            if q == p:
                continue
            matched = all(
                any((q_next, p_next) in relation for p_next in cls.successors[p])
                for cls in table.classes
                for q_next in cls.successors[q]
            )
            if not matched:
                relation.discard((q, p))
                changed = True
    return relation


def quotient(automaton: BuchiAutomaton, relation: set[tuple[int, int]]) -> BuchiAutomaton:
    """Merges mutually simulating states"""
    representative: dict[int, int] = {}
    for state in automaton.states:
        representative[state] = next(
            other
            for other in automaton.states
            if other <= state and (state, other) in relation and (other, state) in relation
        )
    if all(representative[state] == state for state in automaton.states):
        return automaton
    edges: list[tuple[int, int, Guard]] = [
        (representative[e.source], representative[e.target], e.guard)
        for e in automaton.edges
    ]
    accepting = {representative[state] for state in automaton.accepting}
    merged = BuchiAutomaton.build(
        automaton.aps, automaton.num_states, representative[automaton.initial], accepting, edges
    )
    return _restrict(merged, set(representative.values()))


def simplify(
    automaton: BuchiAutomaton, settings: KernelSettings | None = None
) -> BuchiAutomaton:
    """
    Trims useless states, normalizes acceptance and, on small automata,
    merges states equivalent under direct simulation.

    Input:
        automaton, BuchiAutomaton: the automaton to reduce
        settings, KernelSettings: the simulation size limit
    Output:
        BuchiAutomaton, same language and never more states
    """
    settings = resolve_settings(settings)
    result = normalize_acceptance(trim(automaton))
    if 1 < result.num_states <= settings.simulation_limit:
        try:
            result = trim(quotient(result, direct_simulation(result, settings)))
        except AlphabetTooLargeError:
            logger.debug(f"Skipping simulation on {len(result.aps)} propositions")
    if result.num_states < automaton.num_states:
        logger.trace(f"Simplified {automaton.num_states} -> {result.num_states} states")
    return result
