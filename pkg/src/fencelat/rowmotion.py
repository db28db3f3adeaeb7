"""Rowmotion on ideals and orbit averages of statistics.

``rho(I)`` is the complement in P of the filter generated by the maximal
elements of ``I``.  (This runs the usual rowmotion backwards; the orbits are
the same.)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .poset import Poset, is_ideal
from .ranks import DEFAULT_CAP, enumerate_ideals


class NotAnIdeal(ValueError):
    pass


def rho(poset: Poset, ideal) -> frozenset[int]:
    I = frozenset(ideal)
    if not is_ideal(poset, I):
        raise NotAnIdeal(f"{sorted(I)} is not an ideal")
    U = poset.up_closure(poset.maximal(I))
    return frozenset(poset.elements) - U


class _MaskRho:
    """Bitmask version of :func:`rho` for sweeping many ideals of one poset."""

    def __init__(self, poset: Poset):
        self.n = poset.n
        self.full = (1 << (poset.n + 1)) - 2
        self.up = [0] * (poset.n + 1)
        for lo, hi in poset.covers:
            self.up[lo] |= 1 << hi

    def __call__(self, mask: int) -> int:
        up = self.up
        maxima = 0
        m = mask
        while m:
            low = m & -m
            x = low.bit_length() - 1
            if not up[x] & mask:
                maxima |= low
            m ^= low
        closure = frontier = maxima
        while frontier:
            nxt = 0
            m = frontier
            while m:
                low = m & -m
                nxt |= up[low.bit_length() - 1]
                m ^= low
            frontier = nxt & ~closure
            closure |= frontier
        return self.full & ~closure


def _mask(subset) -> int:
    out = 0
    for x in subset:
        out |= 1 << x
    return out


def _unmask(mask: int) -> frozenset[int]:
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return frozenset(out)


def _is_linear_path(poset: Poset) -> bool:
    return all(abs(hi - lo) == 1 for lo, hi in poset.covers)


def _path_direction_masks(poset: Poset) -> tuple[int, int]:
    """Bit i of ``rise`` is set when x_i < x_{i+1}; of ``fall`` when x_i > x_{i+1}."""
    rise = fall = 0
    for lo, hi in poset.covers:
        if hi == lo + 1:
            rise |= 1 << lo
        else:
            fall |= 1 << hi
    return rise, fall


def path_ideal_masks(poset: Poset) -> np.ndarray:
    """All ideals of a path-shaped poset as bitmasks (bit i for x_i), unordered."""
    if not _is_linear_path(poset) or poset.n > 62:
        raise ValueError("needs a path poset with at most 62 elements")
    rise, fall = _path_direction_masks(poset)
    masks = np.array([0, 1 << 1], dtype=np.int64)
    for i in range(1, poset.n):
        bit = np.int64(1 << (i + 1))
        has = (masks >> i) & 1
        if rise >> i & 1:  # x_{i+1} in I forces x_i in I
            keep0, keep1 = masks, masks[has == 1]
        elif fall >> i & 1:  # x_i in I forces x_{i+1} in I
            keep0, keep1 = masks[has == 0], masks
        else:
            keep0, keep1 = masks, masks
        masks = np.concatenate([keep0, keep1 | bit])
    return masks


def path_rho_masks(poset: Poset, masks: np.ndarray) -> np.ndarray:
    """Vectorised rho for path-shaped posets using shifts along the path."""
    rise, fall = _path_direction_masks(poset)
    rise, fall = np.int64(rise), np.int64(fall)
    full = np.int64((1 << (poset.n + 1)) - 2)
    covered = (rise & (masks >> 1)) | ((fall & masks) << 1)
    closure = masks & ~covered
    while True:
        grown = closure | ((closure & rise) << 1) | ((closure >> 1) & fall)
        if np.array_equal(grown, closure):
            break
        closure = grown
    return full & ~closure


def rho_is_bijective(poset: Poset, cap: int = DEFAULT_CAP) -> bool:
    """Images are ideals and pairwise distinct."""
    if _is_linear_path(poset) and poset.n <= 62:
        ideals = np.sort(path_ideal_masks(poset))
        images = np.sort(path_rho_masks(poset, ideals))
        return bool(np.array_equal(ideals, images))
    step = _MaskRho(poset)
    ideals = {_mask(I) for I in enumerate_ideals(poset, cap=cap)}
    images = {step(m) for m in ideals}
    return images == ideals


@dataclass(frozen=True)
class Orbit:
    ideals: tuple[frozenset[int], ...]
    statistic_total: int

    @property
    def length(self) -> int:
        return len(self.ideals)

    @property
    def average(self) -> Fraction:
        return Fraction(self.statistic_total, self.length)


def indicator_key(n: int, subset) -> tuple[int, ...]:
    return tuple(1 if x in subset else 0 for x in range(1, n + 1))


def orbits(poset: Poset, statistic: Callable[[frozenset], int] = len, cap: int = DEFAULT_CAP) -> list[Orbit]:
    """Rowmotion orbits, each starting at its indicator-lexicographically least ideal.

    Orbits are listed in the order of those representatives.
    """
    step = _MaskRho(poset)
    remaining = [_mask(I) for I in enumerate_ideals(poset, cap=cap)]
    seen: set[int] = set()
    out = []
    for start in remaining:  # enumeration order is indicator-lexicographic
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        cur = step(start)
        while cur != start:
            if cur in seen:
                raise RuntimeError("rowmotion is not a permutation of the ideals")
            seen.add(cur)
            cycle.append(cur)
            cur = step(cur)
        ideals = tuple(_unmask(m) for m in cycle)
        out.append(Orbit(ideals, sum(statistic(I) for I in ideals)))
    return out


@dataclass
class MesicReport:
    c: Fraction
    orbits: list[Orbit]

    @property
    def passed(self) -> bool:
        return all(o.average == self.c for o in self.orbits)

    @property
    def failures(self) -> list[Orbit]:
        return [o for o in self.orbits if o.average != self.c]

    def to_json(self) -> dict:
        return {
            "c": str(self.c),
            "passed": self.passed,
            "orbits": [
                {"length": o.length, "total": o.statistic_total, "average": str(o.average)}
                for o in self.orbits
            ],
        }


def check_mesic(poset: Poset, statistic: Callable[[frozenset], int] = len, c=None) -> MesicReport:
    """Orbit averages of ``statistic`` against ``c`` (default ``n/2``), exactly."""
    c = Fraction(poset.n, 2) if c is None else Fraction(c)
    return MesicReport(c, orbits(poset, statistic))


def homomesy_family(k: int, parts: int) -> tuple[int, ...]:
    """(k-1, k, ..., k, k-1) with an odd number ``parts`` >= 3 of parts."""
    if k < 2 or parts < 3 or parts % 2 == 0:
        raise ValueError("need k >= 2 and an odd number of parts >= 3")
    return (k - 1,) + (k,) * (parts - 2) + (k - 1,)
