"""Random automata and lasso words, used to cross check constructions"""

from itertools import product

import numpy as np

from omega_automata.buchi import BuchiAutomaton, LassoWord
from omega_automata.guard import TRUE, Guard

_ALLOWED_DENSITY = (0.0, 1.0)


def random_automaton(
    rng: np.random.Generator,
    num_states: int,
    aps: tuple[str, ...],
    density: float = 0.4,
    accepting_ratio: float = 0.4,
) -> BuchiAutomaton:
    """
    Draws an automaton with one edge per (source, letter, target) triple
    kept with probability `density`.

    Input:
        rng, np.random.Generator: the random source
        num_states, int: number of states, state 0 is initial
        aps, tuple[str, ...]: the propositions
        density, float: probability to keep each letter edge
        accepting_ratio, float: probability for a state to accept
    Output:
        BuchiAutomaton, the drawn automaton
    """
    low, high = _ALLOWED_DENSITY
    if not low <= density <= high:
        raise ValueError(f"Density {density} outside {_ALLOWED_DENSITY}")
    letters = list(product([False, True], repeat=len(aps)))
    edges = []
    for source in range(num_states):
        for values in letters:
            guard = Guard.cube(dict(zip(aps, values)))
            for target in range(num_states):
                if rng.random() < density:
                    edges.append((source, target, guard))
    accepting = [state for state in range(num_states) if rng.random() < accepting_ratio]
    return BuchiAutomaton.build(aps, num_states, 0, accepting, edges)


def random_lasso(
    rng: np.random.Generator,
    aps: tuple[str, ...],
    max_prefix: int = 4,
    max_cycle: int = 4,
) -> LassoWord:
    """Uniform letters, prefix length in [0, max_prefix], cycle in [1, max_cycle]"""

    def letter() -> frozenset[str]:
        return frozenset(ap for ap in aps if rng.random() < 0.5)

    prefix_length = int(rng.integers(0, max_prefix + 1))
    cycle_length = int(rng.integers(1, max_cycle + 1))
    return LassoWord(
        tuple(letter() for _ in range(prefix_length)),
        tuple(letter() for _ in range(cycle_length)),
    )


def recurrence(ap: str = "a") -> BuchiAutomaton:
    """Deterministic automaton for: the proposition holds infinitely often"""
    on, off = Guard.atom(ap), Guard.atom(ap, False)
    return BuchiAutomaton.build(
        [ap], 2, 0, [1], [(0, 1, on), (0, 0, off), (1, 1, on), (1, 0, off)]
    )


def persistence(ap: str = "a") -> BuchiAutomaton:
    """Weak automaton for: the proposition eventually stays false"""
    off = Guard.atom(ap, False)
    return BuchiAutomaton.build([ap], 2, 0, [1], [(0, 0, TRUE), (0, 1, off), (1, 1, off)])
