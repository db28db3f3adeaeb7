"""Chain decompositions of ideal lattices and the lexicographic construction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .poset import Poset
from .ranks import DEFAULT_CAP, enumerate_ideals, predicted_heavy_kind

KINDS = ("SCD", "TCD", "BCD", "none")

# kind a chain decomposition must have to agree with the predicted rank shape
TARGET_FOR_SHAPE = {
    "all_ones": "SCD",
    "symmetric": "SCD",
    "top_interlacing": "TCD",
    "bottom_interlacing": "BCD",
}


class NotALinearExtension(ValueError):
    pass


class NotAPartition(ValueError):
    pass


@dataclass(frozen=True)
class SaturatedChain:
    ideals: tuple[frozenset[int], ...]

    @property
    def bottom_rank(self) -> int:
        return len(self.ideals[0])

    @property
    def top_rank(self) -> int:
        return len(self.ideals[-1])

    @property
    def center(self) -> Fraction:
        return Fraction(self.bottom_rank + self.top_rank, 2)

    def is_saturated(self) -> bool:
        return all(
            len(hi) == len(lo) + 1 and lo < hi
            for lo, hi in zip(self.ideals, self.ideals[1:])
        )


@dataclass(frozen=True)
class ChainDecomposition:
    chains: tuple[SaturatedChain, ...]
    n: int  # top rank of the lattice

    @property
    def kind(self) -> str:
        return classify_cd(self, self.n)

    def elements(self) -> list[frozenset[int]]:
        return [I for c in self.chains for I in c.ideals]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "kind": self.kind,
            "chains": [
                {"center": str(c.center), "ideals": [sorted(I) for I in c.ideals]}
                for c in self.chains
            ],
        }


def check_partition(cd: ChainDecomposition, poset: Poset | None = None) -> None:
    """Raise unless the chains are saturated, disjoint and (given ``poset``) cover L(P)."""
    seen: set[frozenset[int]] = set()
    for c in cd.chains:
        if not c.ideals or not c.is_saturated():
            raise NotAPartition(f"chain {[sorted(I) for I in c.ideals]} is not saturated")
        for I in c.ideals:
            if I in seen:
                raise NotAPartition(f"ideal {sorted(I)} lies on two chains")
            seen.add(I)
    if poset is not None:
        lattice = set(enumerate_ideals(poset, cap=max(DEFAULT_CAP, poset.n)))
        if seen != lattice:
            raise NotAPartition("chains do not cover the lattice of ideals")


def classify_cd(cd: ChainDecomposition, n: int | None = None) -> str:
    """Strongest of SCD, TCD, BCD that the centers allow, else ``"none"``."""
    check_partition(cd)
    n = cd.n if n is None else n
    doubled = {c.bottom_rank + c.top_rank for c in cd.chains}
    if doubled <= {n}:
        return "SCD"
    if doubled <= {n, n + 1}:
        return "TCD"
    if doubled <= {n, n - 1}:
        return "BCD"
    return "none"


def satisfies(kind: str, target: str) -> bool:
    """An SCD is in particular a TCD and a BCD."""
    return kind == target or (kind == "SCD" and target in ("TCD", "BCD"))


# ----------------------------------------------------------------------------
# linear extensions


def is_linear_extension(poset: Poset, order: Sequence[int]) -> bool:
    if sorted(order) != list(poset.elements):
        return False
    pos = {x: i for i, x in enumerate(order)}
    return all(pos[lo] < pos[hi] for lo, hi in poset.covers)


def linear_extensions(poset: Poset) -> Iterator[tuple[int, ...]]:
    """All linear extensions, choosing among available minimal elements by label."""
    n = poset.n
    indeg = {x: len(poset.lower_covers[x]) for x in poset.elements}
    order: list[int] = []

    def rec():
        if len(order) == n:
            yield tuple(order)
            return
        for x in poset.elements:
            if indeg[x] == 0:
                indeg[x] = -1
                for y in poset.upper_covers[x]:
                    indeg[y] -= 1
                order.append(x)
                yield from rec()
                order.pop()
                for y in poset.upper_covers[x]:
                    indeg[y] += 1
                indeg[x] = 0

    yield from rec()


# ----------------------------------------------------------------------------
# lexicographic chain decomposition


class IdealLattice:
    """L(P) materialised: ideals with their upward covers."""

    def __init__(self, poset: Poset, cap: int = DEFAULT_CAP):
        self.poset = poset
        self.ideals = list(enumerate_ideals(poset, cap=cap))
        index = {I: i for i, I in enumerate(self.ideals)}
        self.up: list[list[int]] = []
        for I in self.ideals:
            ups = []
            for x in poset.minimal(set(poset.elements) - I):
                ups.append(index[I | {x}])
            self.up.append(ups)
        self.sizes = [len(I) for I in self.ideals]

    def __len__(self):
        return len(self.ideals)


def lex_key(subset, position: dict[int, int]) -> tuple[int, ...]:
    """The subset as an increasing sequence of extension positions."""
    return tuple(sorted(position[x] for x in subset))


def lcd(poset: Poset, ext: Sequence[int], lattice: IdealLattice | None = None) -> ChainDecomposition:
    """Greedy lexicographic chain decomposition for the linear extension ``ext``.

    Each chain starts at the lexicographically smallest unused ideal of
    least rank and repeatedly climbs to the smallest unused ideal covering
    the current one.  Sequences are compared as tuples, so a proper prefix
    comes first.
    """
    if not is_linear_extension(poset, ext):
        raise NotALinearExtension(f"{list(ext)} is not a linear extension")
    lattice = lattice or IdealLattice(poset)
    position = {x: i for i, x in enumerate(ext)}
    keys = [lex_key(I, position) for I in lattice.ideals]
    order = sorted(range(len(lattice)), key=lambda i: (lattice.sizes[i], keys[i]))
    used = [False] * len(lattice)
    chains = []
    cursor = 0
    remaining = len(lattice)
    while remaining:
        while used[order[cursor]]:
            cursor += 1
        cur = order[cursor]
        chain = [cur]
        used[cur] = True
        remaining -= 1
        while True:
            options = [j for j in lattice.up[cur] if not used[j]]
            if not options:
                break
            cur = min(options, key=keys.__getitem__)
            used[cur] = True
            remaining -= 1
            chain.append(cur)
        chains.append(SaturatedChain(tuple(lattice.ideals[i] for i in chain)))
    return ChainDecomposition(tuple(chains), poset.n)


@dataclass
class SearchResult:
    target: str
    witness: tuple[int, ...] | None
    decomposition: ChainDecomposition | None
    tried: int
    exhausted: bool  # every extension was tried
    budget_exhausted: bool

    @property
    def found(self) -> bool:
        return self.witness is not None

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "found": self.found,
            "witness": list(self.witness) if self.witness else None,
            "tried": self.tried,
            "exhausted": self.exhausted,
            "budget_exhausted": self.budget_exhausted,
            "decomposition": self.decomposition.to_json() if self.decomposition else None,
        }


def predicted_target(poset: Poset) -> str:
    if poset.kind != "fence":
        raise ValueError("automatic targets are defined for fences")
    return TARGET_FOR_SHAPE[predicted_heavy_kind(poset.composition)]


def search_extensions(poset: Poset, target: str = "auto", budget: int = 10**6) -> SearchResult:
    """First linear extension (in enumeration order) whose LCD meets ``target``."""
    if target == "auto":
        target = predicted_target(poset)
    target = target.upper()
    if target not in ("SCD", "TCD", "BCD"):
        raise ValueError(f"unknown target {target!r}")
    lattice = IdealLattice(poset)
    tried = 0
    for ext in linear_extensions(poset):
        if tried >= budget:
            return SearchResult(target, None, None, tried, False, True)
        tried += 1
        cd = lcd(poset, ext, lattice)
        if satisfies(cd.kind, target):
            return SearchResult(target, ext, cd, tried, False, False)
    return SearchResult(target, None, None, tried, True, False)
