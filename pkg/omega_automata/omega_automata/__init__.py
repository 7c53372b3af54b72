"""Büchi automata over symbolic alphabets"""

from omega_automata.buchi import BuchiAutomaton, Edge, LassoWord, empty, universal
from omega_automata.complement import (
    ComplementStrategy,
    complement,
    is_deterministic,
    is_semi_deterministic,
)
from omega_automata.errors import (
    AlphabetTooLargeError,
    ApCollisionError,
    AutomatonError,
    DeadlineExceeded,
    MalformedAutomatonError,
    StateBudgetExceeded,
    UnknownApError,
)
from omega_automata.finite_support import (
    complement_finite_support,
    finite_support,
    is_finitely_supported,
)
from omega_automata.guard import Guard
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
from omega_automata.settings import KernelSettings
from omega_automata.simplify import simplify

__all__ = [
    "AlphabetTooLargeError",
    "ApCollisionError",
    "AutomatonError",
    "BuchiAutomaton",
    "ComplementStrategy",
    "DeadlineExceeded",
    "Edge",
    "Guard",
    "KernelSettings",
    "LassoWord",
    "MalformedAutomatonError",
    "StateBudgetExceeded",
    "UnknownApError",
    "accepts",
    "complement",
    "complement_finite_support",
    "empty",
    "finite_support",
    "intersect",
    "is_deterministic",
    "is_empty",
    "is_finitely_supported",
    "is_semi_deterministic",
    "is_weak",
    "lasso_automaton",
    "project",
    "simplify",
    "substitute_aps",
    "union",
    "universal",
]
