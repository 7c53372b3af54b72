"""Boolean guards over atomic propositions, kept in disjunctive normal form"""

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

Literal = tuple[str, bool]
Cube = frozenset[Literal]
Valuation = frozenset[str]

TRUE_STR = "t"
FALSE_STR = "f"
NOT_STR = "!"
AND_STR = "&"
OR_STR = "|"


def _consistent(cube: Iterable[Literal]) -> bool:
    """A cube is consistent when no proposition appears with both signs"""
    seen: dict[str, bool] = {}
    for ap, positive in cube:
        if seen.setdefault(ap, positive) != positive:
            return False
    return True


def _absorb(cubes: set[Cube]) -> set[Cube]:
    """Drops every cube implied by a smaller one"""
    ordered = sorted(cubes, key=len)
    kept: list[Cube] = []
    for cube in ordered:
        if not any(other <= cube for other in kept):
            kept.append(cube)
    return set(kept)


def _merge_adjacent(cubes: set[Cube]) -> set[Cube]:
    """Collapses c & p | c & !p into c until nothing changes"""
    changed = True
    while changed:
        changed = False
        for cube in sorted(cubes, key=_cube_key):
            for ap, positive in cube:
                twin = (cube - {(ap, positive)}) | {(ap, not positive)}
                if twin in cubes:
                    cubes = _absorb((cubes - {cube, twin}) | {cube - {(ap, positive)}})
                    changed = True
                    break
            if changed:
                break
    return cubes


def _cube_key(cube: Cube) -> tuple[int, list[Literal]]:
    return len(cube), sorted(cube)


@dataclass(frozen=True)
class Guard:
    """
    A propositional formula written as a set of cubes. Each cube is a
    conjunction of literals and the guard holds when any cube holds.

    The empty set of cubes is false, the set holding the empty cube is true.
    Use the constructors rather than the raw field: they keep the cubes
    consistent, absorbed and merged so equal formulas tend to compare equal.
    """

    cubes: frozenset[Cube]

    @classmethod
    def of(cls, cubes: Iterable[Iterable[Literal]]) -> "Guard":
        """Builds a reduced guard from raw cubes"""
        kept = {frozenset(cube) for cube in cubes}
        kept = {cube for cube in kept if _consistent(cube)}
        if frozenset() in kept:
            return TRUE
        return cls(frozenset(_merge_adjacent(_absorb(kept))))

    @classmethod
    def true(cls) -> "Guard":
        return TRUE

    @classmethod
    def false(cls) -> "Guard":
        return FALSE

    @classmethod
    def atom(cls, ap: str, positive: bool = True) -> "Guard":
        """Single literal guard"""
        return cls(frozenset({frozenset({(ap, positive)})}))

    @classmethod
    def cube(cls, literals: Mapping[str, bool]) -> "Guard":
        """Conjunction fixing each listed proposition to the given value"""
        return cls.of([literals.items()])

    @classmethod
    def from_minterms(cls, aps: Sequence[str], minterms: Iterable[int]) -> "Guard":
        """
        Rebuilds a small guard from the letters it accepts.

        Input:
            aps, Sequence[str]: bit i of a minterm is the value of aps[i]
            minterms, Iterable[int]: the accepted letters as bitmasks
        Output:
            Guard, a cover of the minterms by prime implicants
        """
        width = len(aps)
        wanted = set(minterms)
        if not wanted:
            return FALSE
        if len(wanted) == 1 << width:
            return TRUE
        primes = _prime_implicants(wanted, width)
        cover = _greedy_cover(wanted, primes)
        return cls.of(
            [
                (aps[bit], bool(value >> bit & 1))
                for bit in range(width)
                if not free >> bit & 1
            ]
            for value, free in cover
        )

    @cached_property
    def is_false(self) -> bool:
        return not self.cubes

    @cached_property
    def is_true(self) -> bool:
        """Validity check, exact even when the cubes are not merged down"""
        if frozenset() in self.cubes:
            return True
        return (~self).is_false

    @cached_property
    def atoms(self) -> frozenset[str]:
        """Propositions the guard mentions"""
        return frozenset(ap for cube in self.cubes for ap, _ in cube)

    def __and__(self, other: "Guard") -> "Guard":
        if self.is_false or other.is_false:
            return FALSE
        return Guard.of(left | right for left, right in product(self.cubes, other.cubes))

    def __or__(self, other: "Guard") -> "Guard":
        return Guard.of(self.cubes | other.cubes)

    def __invert__(self) -> "Guard":
        result = TRUE
        for cube in self.cubes:
            clause = Guard.of([(ap, not positive)] for ap, positive in cube)
            result = result & clause
            if result.is_false:
                break
        return result

    def exists(self, aps: Iterable[str]) -> "Guard":
        """Projects the propositions away by deleting their literals"""
        hidden = frozenset(aps)
        return Guard.of(
            [literal for literal in cube if literal[0] not in hidden]
            for cube in self.cubes
        )

    def rename(self, mapping: Mapping[str, str]) -> "Guard":
        """
        Renames literals simultaneously. When two propositions land on the
        same name their literals are conjoined, so cubes asking for opposite
        values vanish.
        """
        return Guard.of(
            [(mapping.get(ap, ap), positive) for ap, positive in cube]
            for cube in self.cubes
        )

    def evaluate(self, valuation: Valuation) -> bool:
        """Propositions missing from the valuation are false"""
        return any(
            all((ap in valuation) == positive for ap, positive in cube)
            for cube in self.cubes
        )

    def pick(self) -> Valuation:
        """A satisfying valuation setting every unconstrained proposition false"""
        if self.is_false:
            raise ValueError("Cannot pick a letter from the false guard")
        cube = min(self.cubes, key=_cube_key)
        return frozenset(ap for ap, positive in cube if positive)

    def masks(self, index: Mapping[str, int]) -> list[tuple[int, int]]:
        """Cubes as (positive bits, negative bits) over the given bit index"""
        compiled = []
        for cube in self.cubes:
            positive = negative = 0
            for ap, value in cube:
                if value:
                    positive |= 1 << index[ap]
                else:
                    negative |= 1 << index[ap]
            compiled.append((positive, negative))
        return compiled

    def sorted_cubes(self) -> list[list[Literal]]:
        return [sorted(cube) for cube in sorted(self.cubes, key=_cube_key)]

    def render(self, index: Mapping[str, int] | None = None) -> str:
        """
        Text form. With an index, propositions are written as their
        position, which is the form the automaton documents use.
        """
        if self.is_false:
            return FALSE_STR
        if frozenset() in self.cubes:
            return TRUE_STR

        def name(ap: str) -> str:
            return str(index[ap]) if index is not None else ap

        cubes = []
        for cube in self.cubes:
            literals = sorted(
                cube, key=lambda lit: (index[lit[0]] if index else 0, lit[0])
            )
            cubes.append(
                AND_STR.join(
                    name(ap) if positive else f"{NOT_STR}{name(ap)}"
                    for ap, positive in literals
                )
            )
        return OR_STR.join(sorted(cubes, key=lambda text: (len(text), text)))

    def __str__(self) -> str:
        return self.render()

    def __iter__(self) -> Iterator[Cube]:
        return iter(self.cubes)


TRUE = Guard(frozenset({frozenset()}))
FALSE = Guard(frozenset())


def _prime_implicants(minterms: set[int], width: int) -> set[tuple[int, int]]:
    """Quine-McCluskey merging, implicants are (value, free bits) pairs"""
    terms = {(term, 0) for term in minterms}
    primes: set[tuple[int, int]] = set()
    while terms:
        merged: set[tuple[int, int]] = set()
        used: set[tuple[int, int]] = set()
        for value, free in terms:
            for bit in range(width):
                flag = 1 << bit
                if free & flag or value & flag:
                    continue
                partner = (value | flag, free)
                if partner in terms:
                    merged.add((value, free | flag))
                    used.add((value, free))
                    used.add(partner)
        primes |= terms - used
        terms = merged
    return primes


def _covers(implicant: tuple[int, int], minterm: int) -> bool:
    value, free = implicant
    return minterm & ~free == value


def _greedy_cover(
    minterms: set[int], primes: set[tuple[int, int]]
) -> list[tuple[int, int]]:
    """Picks the implicant covering most remaining minterms, widest first on ties"""
    uncovered = set(minterms)
    chosen = []
    candidates = sorted(primes, key=lambda imp: (-bin(imp[1]).count("1"), imp))
    while uncovered:
        best = max(
            candidates,
            key=lambda imp: sum(1 for term in uncovered if _covers(imp, term)),
        )
        chosen.append(best)
        uncovered = {term for term in uncovered if not _covers(best, term)}
    return chosen
