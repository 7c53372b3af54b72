"""Büchi complementation, picking the cheapest construction the input allows"""

from collections import deque
from enum import Enum, auto
from itertools import combinations
from typing import Callable, Hashable, Iterable, Iterator

import networkx as nx
from loguru import logger

from omega_automata.alphabet import LetterTable, letter_table
from omega_automata.buchi import BuchiAutomaton, empty, universal
from omega_automata.errors import StateBudgetExceeded
from omega_automata.operations import is_empty, is_weak, state_graph
from omega_automata.settings import (
    KernelSettings,
    check_deadline,
    resolve_settings,
    warning_threshold,
)
from omega_automata.simplify import simplify

Successors = Callable[[Hashable, int], Iterable[Hashable]]


class ComplementStrategy(Enum):
    """Constructions available to `complement`, cheapest first"""

    CONSTANT = auto()
    DETERMINISTIC = auto()
    WEAK = auto()
    SEMI_DETERMINISTIC = auto()
    RANK_BASED = auto()


def choose_strategy(automaton: BuchiAutomaton, table: LetterTable) -> ComplementStrategy:
    """Most specific construction the automaton qualifies for"""
    if not automaton.aps:
        return ComplementStrategy.CONSTANT
    if table.is_deterministic:
        return ComplementStrategy.DETERMINISTIC
    if is_weak(automaton):
        return ComplementStrategy.WEAK
    if table.is_deterministic_on(_accepting_closure(automaton)):
        return ComplementStrategy.SEMI_DETERMINISTIC
    return ComplementStrategy.RANK_BASED


def is_deterministic(automaton: BuchiAutomaton, settings: KernelSettings | None = None) -> bool:
    """At most one successor per state and letter"""
    return letter_table(automaton, settings).is_deterministic


def is_semi_deterministic(
    automaton: BuchiAutomaton, settings: KernelSettings | None = None
) -> bool:
    """Deterministic from the first accepting state on"""
    table = letter_table(automaton, settings)
    return table.is_deterministic_on(_accepting_closure(automaton))


def _accepting_closure(automaton: BuchiAutomaton) -> frozenset[int]:
    """States reachable from an accepting state"""
    graph = state_graph(automaton)
    reached = set(automaton.accepting)
    for state in automaton.accepting:
        reached |= nx.descendants(graph, state)
    return frozenset(reached)


def explore(
    table: LetterTable,
    start: Hashable,
    successors: Successors,
    is_accepting: Callable[[Hashable], bool],
    construction: str,
    settings: KernelSettings,
) -> BuchiAutomaton:
    """
    Breadth first construction of an automaton whose states are hashable
    keys. `successors(key, class_index)` lists the targets on a letter class.
    """
    index: dict[Hashable, int] = {start: 0}
    queue = deque([start])
    letters: dict[tuple[int, int], set[int]] = {}
    warn_at = warning_threshold(settings)
    while queue:
        key = queue.popleft()
        source = index[key]
        check_deadline(settings, construction)
        for position, cls in enumerate(table.classes):
            for target_key in successors(key, position):
                if target_key not in index:
                    if len(index) >= settings.state_budget:
                        raise StateBudgetExceeded(construction, settings.state_budget)
                    if len(index) == warn_at:
                        logger.warning(f"{construction} reached {warn_at} states")
                    index[target_key] = len(index)
                    queue.append(target_key)
                letters.setdefault((source, index[target_key]), set()).update(cls.minterms)
    accepting = [number for key, number in index.items() if is_accepting(key)]
    edges = [
        (source, target, table.guard(minterms)) for (source, target), minterms in letters.items()
    ]
    logger.debug(f"{construction} explored {len(index)} states")
    return BuchiAutomaton.build(table.automaton.aps, len(index), 0, accepting, edges)


def _complement_deterministic(table: LetterTable, settings: KernelSettings) -> BuchiAutomaton:
    """
    Completes the automaton with a sink, then guesses the point after which
    no accepting state is visited again.
    """
    automaton = table.automaton
    sink = automaton.num_states

    def step(state: int, position: int) -> int:
        targets = table.classes[position].successors[state] if state != sink else ()
        return next(iter(targets), sink)

    def successors(key: Hashable, position: int) -> Iterator[Hashable]:
        state, settled = key  # type: ignore[misc]
        target = step(state, position)
        rejecting = target not in automaton.accepting
        if not settled:
            yield (target, False)
        if rejecting:
            yield (target, True)

    return explore(
        table,
        (automaton.initial, False),
        successors,
        lambda key: key[1],  # type: ignore[index]
        "deterministic complement",
        settings,
    )


def _complement_weak(table: LetterTable, settings: KernelSettings) -> BuchiAutomaton:
    """
    Breakpoint construction. The second set follows the runs that stayed in
    accepting states since the last breakpoint, and the complement accepts
    when it empties infinitely often. The result is deterministic.
    """
    accepting = table.automaton.accepting

    def successors(key: Hashable, position: int) -> Iterator[Hashable]:
        current, waiting = key  # type: ignore[misc]
        cls = table.classes[position]
        reached = cls.step(current)
        tracked = reached if not waiting else cls.step(waiting)
        yield (reached, tracked & accepting)

    return explore(
        table,
        (frozenset({table.automaton.initial}), frozenset()),
        successors,
        lambda key: not key[1],  # type: ignore[index]
        "breakpoint complement",
        settings,
    )


def _subsets(items: frozenset[int]) -> Iterator[frozenset[int]]:
    ordered = sorted(items)
    for size in range(len(ordered) + 1):
        for chosen in combinations(ordered, size):
            yield frozenset(chosen)


def _complement_semi_deterministic(
    table: LetterTable, settings: KernelSettings
) -> BuchiAutomaton:
    """
    Complement of a semi-deterministic automaton, whose accepting part is
    deterministic. States are (N, C, S, B):
    N tracks runs still in the nondeterministic part,
    C holds deterministic runs that may still accept,
    S holds runs guessed never to accept again,
    B is the subset of C checked since the last breakpoint.
    """
    automaton = table.automaton
    final = automaton.accepting
    deterministic = _accepting_closure(automaton)
    initial = automaton.initial
    start = (
        frozenset() if initial in deterministic else frozenset({initial}),
        frozenset({initial}) & deterministic,
        frozenset(),
        frozenset({initial}) & deterministic,
    )

    def successors(key: Hashable, position: int) -> Iterator[Hashable]:
        nondet, checked, safe, pending = key  # type: ignore[misc]
        cls = table.classes[position]
        from_nondet = cls.step(nondet)
        safe_next = cls.step(safe)
        if safe_next & final:
            return
        candidates = ((from_nondet & deterministic) | cls.step(checked)) - safe_next
        nondet_next = from_nondet - deterministic
        for moved in _subsets(candidates - final):
            checked_next = candidates - moved
            pending_next = checked_next if not pending else cls.step(pending) & checked_next
            yield (nondet_next, checked_next, safe_next | moved, pending_next)

    return explore(
        table,
        start,
        successors,
        lambda key: not key[3],  # type: ignore[index]
        "semi-deterministic complement",
        settings,
    )


def _tight_rankings(
    states: list[int],
    bounds: dict[int, int],
    final: frozenset[int],
    rank: int,
) -> Iterator[tuple[tuple[int, int], ...]]:
    """
    Rankings of the states with maximal odd rank `rank` using every odd
    value up to it, each state ranked at most its bound and accepting
    states ranked even.
    """
    odd_values = frozenset(range(1, rank + 1, 2))
    free_after = [0] * (len(states) + 1)
    for position in range(len(states) - 1, -1, -1):
        free_after[position] = free_after[position + 1] + (states[position] not in final)
    chosen: list[tuple[int, int]] = []

    def extend(position: int, covered: frozenset[int]) -> Iterator[tuple[tuple[int, int], ...]]:
        missing = odd_values - covered
        if len(missing) > free_after[position]:
            return
        if position == len(states):
            yield tuple(chosen)
            return
        state = states[position]
        top = min(bounds[state], rank)
        values = range(0, top + 1, 2) if state in final else range(top + 1)
        for value in values:
            chosen.append((state, value))
            yield from extend(position + 1, covered | {value} if value % 2 else covered)
            chosen.pop()

    yield from extend(0, frozenset())


def _complement_rank_based(table: LetterTable, settings: KernelSettings) -> BuchiAutomaton:
    """
    Rank based construction restricted to tight rankings. A subset phase
    follows all runs, then jumps to a ranking phase which keeps the maximal
    rank fixed and accepts at every breakpoint of the even ranked runs.
    """
    automaton = table.automaton
    final = automaton.accepting

    def jump(reached: frozenset[int]) -> Iterator[Hashable]:
        if not reached:
            yield ("rank", (), frozenset())
            return
        states = sorted(reached)
        top = 2 * len(reached - final) - 1
        bounds = dict.fromkeys(states, top)
        for rank in range(1, top + 1, 2):
            for ranking in _tight_rankings(states, bounds, final, rank):
                yield ("rank", ranking, frozenset())

    def successors(key: Hashable, position: int) -> Iterator[Hashable]:
        cls = table.classes[position]
        if key[0] == "subset":  # type: ignore[index]
            reached = cls.step(key[1])  # type: ignore[index]
            yield ("subset", reached)
            yield from jump(reached)
            return
        _, ranking, waiting = key  # type: ignore[misc]
        ranks = dict(ranking)
        if not ranks:
            yield key
            return
        rank = max(ranks.values())
        bounds: dict[int, int] = {}
        for state, value in ranking:
            for target in cls.successors[state]:
                bounds[target] = min(bounds.get(target, value), value)
        for target in list(bounds):
            if target in final and bounds[target] % 2:
                bounds[target] -= 1
        states = sorted(bounds)
        origins = cls.step(waiting) if waiting else frozenset(states)
        for next_ranking in _tight_rankings(states, bounds, final, rank):
            even = frozenset(state for state, value in next_ranking if value % 2 == 0)
            yield ("rank", next_ranking, origins & even)

    return explore(
        table,
        ("subset", frozenset({automaton.initial})),
        successors,
        lambda key: key[0] == "rank" and not key[2],  # type: ignore[index]
        "rank based complement",
        settings,
    )


_CONSTRUCTIONS = {
    ComplementStrategy.DETERMINISTIC: _complement_deterministic,
    ComplementStrategy.WEAK: _complement_weak,
    ComplementStrategy.SEMI_DETERMINISTIC: _complement_semi_deterministic,
    ComplementStrategy.RANK_BASED: _complement_rank_based,
}


def complement(
    automaton: BuchiAutomaton,
    settings: KernelSettings | None = None,
    strategy: ComplementStrategy | None = None,
) -> BuchiAutomaton:
    """
    Automaton over the same propositions accepting exactly the words the
    input rejects.

    Input:
        automaton, BuchiAutomaton: the automaton to complement
        settings, KernelSettings: state budget and simplification limits
        strategy, ComplementStrategy: forces a construction the input
            qualifies for, chosen automatically when omitted
    Output:
        BuchiAutomaton, the simplified complement
    """
    settings = resolve_settings(settings)
    reduced = simplify(automaton, settings)
    table = letter_table(reduced, settings)
    chosen = strategy or choose_strategy(reduced, table)
    logger.debug(
        f"Complementing {reduced.num_states} states over {len(reduced.aps)} propositions "
        f"with {chosen.name.lower()}"
    )
    if chosen is ComplementStrategy.CONSTANT:
        return empty(automaton.aps) if not is_empty(reduced) else universal(automaton.aps)
    result = _CONSTRUCTIONS[chosen](table, settings)
    return simplify(result, settings)
