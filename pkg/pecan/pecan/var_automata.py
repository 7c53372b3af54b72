"""Automata whose propositions are grouped into the tracks of named variables"""

import threading
from dataclasses import dataclass, field
from functools import cached_property
from itertools import count
from typing import Iterable, Iterator, Mapping

from omega_automata.buchi import BuchiAutomaton, empty, universal
from omega_automata.complement import complement
from omega_automata.errors import ApCollisionError
from omega_automata.finite_support import complement_finite_support
from omega_automata.operations import intersect, project, substitute_aps, union
from omega_automata.settings import KernelSettings

from pecan.definitions import AP_PREFIX
from pecan.errors import ArityError, UnknownVariableError, VariableMapConflict


class ApAllocator:
    """Hands out fresh proposition names v<k>_<i>, thread safe"""

    def __init__(self, prefix: str = AP_PREFIX) -> None:
        self.__prefix = prefix
        self.__counter = count()
        self.__lock = threading.Lock()

    def fresh(self, width: int = 1) -> tuple[str, ...]:
        """Tracks of a new variable"""
        with self.__lock:
            number = next(self.__counter)
        return tuple(f"{self.__prefix}{number}_{track}" for track in range(width))


FRESH_APS = ApAllocator()


@dataclass(frozen=True)
class VariableMap:
    """
    Variables and the ordered propositions holding their tracks. Distinct
    variables never share a proposition.
    """

    entries: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        frozen = {name: tuple(aps) for name, aps in self.entries.items()}
        object.__setattr__(self, "entries", frozen)
        owners: dict[str, str] = {}
        for name, aps in frozen.items():
            for ap in aps:
                if owners.setdefault(ap, name) != name:
                    raise ApCollisionError(
                        f"Proposition {ap} is shared by {owners[ap]} and {name}"
                    )

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.entries.items())))

    def __getitem__(self, name: str) -> tuple[str, ...]:
        if name not in self.entries:
            raise UnknownVariableError(f"Variable {name} is not tracked")
        return self.entries[name]

    def __contains__(self, name: object) -> bool:
        return name in self.entries

    def __iter__(self) -> Iterator[str]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @cached_property
    def aps(self) -> frozenset[str]:
        """Every proposition used by some variable"""
        return frozenset(ap for aps in self.entries.values() for ap in aps)

    def without(self, names: Iterable[str]) -> "VariableMap":
        dropped = set(names)
        return VariableMap({n: aps for n, aps in self.entries.items() if n not in dropped})

    def with_entry(self, name: str, aps: tuple[str, ...]) -> "VariableMap":
        return VariableMap({**self.entries, name: aps})

    def apply(self, renaming: Mapping[str, str]) -> "VariableMap":
        """Substitutes propositions inside every entry"""
        return VariableMap(
            {n: tuple(renaming.get(ap, ap) for ap in aps) for n, aps in self.entries.items()}
        )

    def __str__(self) -> str:
        inner = ", ".join(f"{n} -> [{', '.join(aps)}]" for n, aps in self.entries.items())
        return "{" + inner + "}"


@dataclass(frozen=True)
class Substitution:
    """Injective renaming of propositions"""

    mappings: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        targets = list(self.mappings.values())
        if len(set(targets)) != len(targets):
            raise ApCollisionError(f"Substitution {dict(self.mappings)} is not injective")

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.mappings.items())))

    def __bool__(self) -> bool:
        return bool(self.mappings)


def merge_union(v: VariableMap, w: VariableMap) -> VariableMap:
    """Keywise union of maps agreeing on their shared variables"""
    for name in set(v) & set(w):
        if v[name] != w[name]:
            raise VariableMapConflict(
                f"Variable {name} has tracks {v[name]} and {w[name]}, use a biased merge"
            )
    return VariableMap({**v.entries, **w.entries})


def biased_merge(
    v: VariableMap, w: VariableMap, allocator: ApAllocator = FRESH_APS
) -> tuple[VariableMap, Substitution]:
    """
    Merges w into v, keeping the propositions of v.

    Input:
        v, VariableMap: the map whose propositions are kept
        w, VariableMap: the map to rename
        allocator, ApAllocator: source of fresh names for variables of w
            whose propositions collide with those of v
    Output:
        tuple[VariableMap, Substitution], the union v ∪ wθ and θ
    """
    mappings: dict[str, str] = {}
    for name, aps in w.entries.items():
        if name in v:
            if len(v[name]) != len(aps):
                raise ArityError(
                    f"Variable {name} has {len(v[name])} and {len(aps)} tracks"
                )
            mappings.update(
                (old, new) for old, new in zip(aps, v[name]) if old != new
            )
        elif set(aps) & v.aps:
            mappings.update(zip(aps, allocator.fresh(len(aps))))
    theta = Substitution(mappings)
    return merge_union(v, w.apply(mappings)), theta


@dataclass(frozen=True)
class PecanAutomaton:
    """
    A Büchi automaton together with the variables its propositions encode.
    The propositions of the automaton are exactly those of the map.
    """

    varmap: VariableMap
    automaton: BuchiAutomaton

    def __post_init__(self) -> None:
        if set(self.automaton.aps) != self.varmap.aps:
            raise ApCollisionError(
                f"Automaton propositions {sorted(self.automaton.aps)} do not match "
                f"the variable map {self.varmap}"
            )

    @classmethod
    def true(cls) -> "PecanAutomaton":
        return cls(VariableMap(), universal())

    @classmethod
    def false(cls) -> "PecanAutomaton":
        return cls(VariableMap(), empty())

    @classmethod
    def top(cls, varmap: VariableMap) -> "PecanAutomaton":
        """No constraint on the variables of the map"""
        return cls(varmap, universal(sorted(varmap.aps)))

    @property
    def num_states(self) -> int:
        return self.automaton.num_states

    @property
    def num_edges(self) -> int:
        return self.automaton.num_edges

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(self.varmap)

    def with_automaton(self, automaton: BuchiAutomaton) -> "PecanAutomaton":
        return PecanAutomaton(self.varmap, automaton)


def _combine(
    a: PecanAutomaton,
    b: PecanAutomaton,
    operation: str,
    settings: KernelSettings | None,
    allocator: ApAllocator,
) -> PecanAutomaton:
    """Aligns the variable maps, renaming the larger operand, then combines"""
    if a.num_states < b.num_states:
        kept, renamed = a, b
    else:
        kept, renamed = b, a
    varmap, theta = biased_merge(kept.varmap, renamed.varmap, allocator)
    moved = substitute_aps(renamed.automaton, theta.mappings)
    if operation == "and":
        combined = intersect(kept.automaton, moved, settings)
    else:
        combined = union(kept.automaton, moved)
    return PecanAutomaton(varmap, combined)


def conjoin(
    a: PecanAutomaton,
    b: PecanAutomaton,
    settings: KernelSettings | None = None,
    allocator: ApAllocator = FRESH_APS,
) -> PecanAutomaton:
    """Intersection after aligning the tracks of shared variables"""
    return _combine(a, b, "and", settings, allocator)


def disjoin(
    a: PecanAutomaton,
    b: PecanAutomaton,
    settings: KernelSettings | None = None,
    allocator: ApAllocator = FRESH_APS,
) -> PecanAutomaton:
    """Union after aligning the tracks of shared variables"""
    return _combine(a, b, "or", settings, allocator)


def negate(
    a: PecanAutomaton,
    settings: KernelSettings | None = None,
    finite_support: bool = False,
) -> PecanAutomaton:
    """
    Complement over the same variables. With finite_support only values
    with finitely many true positions on every track are kept, which is
    all a caller restricting each variable to such a type can observe.
    """
    if finite_support:
        return a.with_automaton(complement_finite_support(a.automaton, settings))
    return a.with_automaton(complement(a.automaton, settings))


def rename_vars(
    a: PecanAutomaton, renaming: Mapping[str, tuple[str, tuple[str, ...]]]
) -> PecanAutomaton:
    """
    Replaces variables simultaneously. Each entry sends a variable to a new
    name and the propositions of the new name. Two variables sent to the
    same name, or a variable sent onto one already tracked, share one track.

    Input:
        a, PecanAutomaton: the automaton to rename
        renaming, Mapping[str, tuple[str, tuple[str, ...]]]: variable to
            (new variable, new propositions)
    Output:
        PecanAutomaton, the renamed automaton
    """
    mappings: dict[str, str] = {}
    targets: dict[str, tuple[str, ...]] = {}
    for old, (new, aps) in renaming.items():
        current = a.varmap[old]
        if len(current) != len(aps):
            raise ArityError(
                f"Cannot rename {old} with {len(current)} tracks onto {new} "
                f"with {len(aps)} tracks"
            )
        if targets.setdefault(new, aps) != aps:
            raise VariableMapConflict(f"Variable {new} renamed onto two track lists")
        mappings.update(zip(current, aps))
    untouched = a.varmap.without(renaming)
    for new, aps in targets.items():
        if new in untouched and untouched[new] != aps:
            raise VariableMapConflict(
                f"Variable {new} already has tracks {untouched[new]}, not {aps}"
            )
    renamed_entries = {**untouched.entries, **targets}
    varmap = VariableMap(renamed_entries)
    merge = len(set(mappings.values()) | untouched.aps) < len(mappings) + len(untouched.aps)
    automaton = substitute_aps(a.automaton, mappings, merge=merge)
    return PecanAutomaton(varmap, automaton)


def rename_var(
    a: PecanAutomaton, x: str, y: str, y_aps: tuple[str, ...]
) -> PecanAutomaton:
    """Replaces x by y, whose tracks are y_aps"""
    return rename_vars(a, {x: (y, y_aps)})


def project_var(a: PecanAutomaton, x: str) -> PecanAutomaton:
    """Existential quantification of a tracked variable"""
    aps = a.varmap[x]
    return PecanAutomaton(a.varmap.without([x]), project(a.automaton, aps))
