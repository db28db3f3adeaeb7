"""Fence, circular fence and gate posets.

Elements are the integers ``1..n`` read left to right along the Hasse
diagram.  A cover is stored as an ordered pair ``(lower, upper)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence


class InvalidComposition(ValueError):
    pass


class ParityError(ValueError):
    pass


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise InvalidComposition("composition must have at least one part")
        for p in parts:
            if isinstance(p, bool) or not isinstance(p, int) or p < 1:
                raise InvalidComposition(f"parts must be positive integers, got {p!r}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Composition":
        """Parse ``"6,2,1,2,3,1,6"``."""
        text = text.strip()
        if not text:
            raise InvalidComposition("empty composition string")
        try:
            parts = tuple(int(tok) for tok in text.split(","))
        except ValueError:
            raise InvalidComposition(f"malformed composition {text!r}") from None
        return cls(parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def reversed(self) -> "Composition":
        return Composition(self.parts[::-1])

    def __str__(self):
        return ",".join(map(str, self.parts))


def as_composition(beta) -> Composition:
    if isinstance(beta, Composition):
        return beta
    if isinstance(beta, str):
        return Composition.parse(beta)
    return Composition(tuple(beta))


def compositions(total: int) -> Iterable[tuple[int, ...]]:
    """All compositions of ``total`` in lexicographic order."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


def compositions_up_to(max_total: int, parity: str | None = None):
    """Compositions of 1..max_total, ordered by total then lexicographically.

    ``parity`` filters on the number of parts (``"odd"`` or ``"even"``).
    """
    for m in range(1, max_total + 1):
        for c in compositions(m):
            if parity == "odd" and len(c) % 2 == 0:
                continue
            if parity == "even" and len(c) % 2 == 1:
                continue
            yield c


class Segment(NamedTuple):
    kind: str  # "A" ascending or "D" descending
    index: int  # 1-based among segments of the same kind
    elements: tuple[int, ...]  # left to right


@dataclass(frozen=True)
class Poset:
    """A finite poset on ``1..n`` given by its cover relations.

    Equality compares only ``n`` and ``covers``; the remaining fields are
    descriptive metadata.
    """

    n: int
    covers: frozenset
    kind: str = field(default="poset", compare=False)
    composition: Composition | None = field(default=None, compare=False)
    segments: tuple[Segment, ...] = field(default=(), compare=False, repr=False)
    degenerate: bool = field(default=False, compare=False)

    @property
    def elements(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def lower_covers(self) -> dict[int, tuple[int, ...]]:
        low: dict[int, list[int]] = {i: [] for i in self.elements}
        for lo, hi in sorted(self.covers):
            low[hi].append(lo)
        return {i: tuple(v) for i, v in low.items()}

    @cached_property
    def upper_covers(self) -> dict[int, tuple[int, ...]]:
        up: dict[int, list[int]] = {i: [] for i in self.elements}
        for lo, hi in sorted(self.covers):
            up[lo].append(hi)
        return {i: tuple(v) for i, v in up.items()}

    def degree(self, x: int) -> int:
        return len(self.lower_covers[x]) + len(self.upper_covers[x])

    def leq(self, x: int, y: int) -> bool:
        return y in self.up_closure([x])

    def up_closure(self, xs: Iterable[int]) -> frozenset[int]:
        seen = set(xs)
        stack = list(seen)
        while stack:
            for y in self.upper_covers[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return frozenset(seen)

    def down_closure(self, xs: Iterable[int]) -> frozenset[int]:
        seen = set(xs)
        stack = list(seen)
        while stack:
            for y in self.lower_covers[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return frozenset(seen)

    def maximal(self, subset: Iterable[int]) -> frozenset[int]:
        s = frozenset(subset)
        return frozenset(x for x in s if not any(y in s for y in self.upper_covers[x]))

    def minimal(self, subset: Iterable[int]) -> frozenset[int]:
        s = frozenset(subset)
        return frozenset(x for x in s if not any(y in s for y in self.lower_covers[x]))

    def segment(self, kind: str, index: int) -> Segment:
        for seg in self.segments:
            if seg.kind == kind and seg.index == index:
                return seg
        raise KeyError((kind, index))

    def to_edge_list(self) -> str:
        return "".join(f"{lo} {hi}\n" for lo, hi in sorted(self.covers))

    def to_json(self) -> dict:
        doc = {
            "n": self.n,
            "covers": [list(c) for c in sorted(self.covers)],
            "segments": [
                {"kind": s.kind, "index": s.index, "elements": list(s.elements)}
                for s in self.segments
            ],
        }
        if self.composition is not None:
            doc["composition"] = list(self.composition.parts)
        doc["kind"] = self.kind
        if self.degenerate:
            doc["degenerate"] = True
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _path_segments(parts: Sequence[int], first_ascending: bool):
    """Segments and covers of a zigzag path with the given run lengths.

    Positions run from 1 to ``sum(parts) + 1``.
    """
    covers = []
    segments = []
    counts = {"A": 0, "D": 0}
    pos = 1
    for i, length in enumerate(parts):
        ascending = (i % 2 == 0) == first_ascending
        kind = "A" if ascending else "D"
        counts[kind] += 1
        elems = tuple(range(pos, pos + length + 1))
        segments.append((kind, counts[kind], elems))
        for j in range(pos, pos + length):
            covers.append((j, j + 1) if ascending else (j + 1, j))
        pos += length
    return segments, covers


def build_fence(beta) -> Poset:
    """The fence F(beta): segment 1 ascends, directions alternate."""
    beta = as_composition(beta)
    segs, covers = _path_segments(beta.parts, first_ascending=True)
    return Poset(
        n=beta.total + 1,
        covers=frozenset(covers),
        kind="fence",
        composition=beta,
        segments=tuple(Segment(*s) for s in segs),
    )


def build_circular_fence(beta) -> Poset:
    """F(beta) with x_1 and x_{n+1} identified; needs an even number of parts.

    For beta = (1, 1) the two covers coincide and the poset is flagged
    ``degenerate`` (a 2-element chain).
    """
    beta = as_composition(beta)
    if len(beta) % 2:
        raise ParityError(f"circular fence needs an even number of parts, got {len(beta)}")
    n = beta.total
    segs, covers = _path_segments(beta.parts, first_ascending=True)

    def wrap(x):
        return 1 if x == n + 1 else x

    wrapped = [(wrap(lo), wrap(hi)) for lo, hi in covers]
    cover_set = frozenset(wrapped)
    return Poset(
        n=n,
        covers=cover_set,
        kind="circular",
        composition=beta,
        segments=tuple(Segment(k, i, tuple(wrap(x) for x in el)) for k, i, el in segs),
        degenerate=len(cover_set) < len(wrapped),
    )


def gate_fence_composition(delta) -> Composition:
    """(d1, 1, d2, 1, ..., 1, dl): the fence whose dual is the gate G(delta)."""
    delta = as_composition(delta)
    parts: list[int] = []
    for i, d in enumerate(delta.parts):
        if i:
            parts.append(1)
        parts.append(d)
    return Composition(tuple(parts))


def build_gate(delta) -> Poset:
    """The gate G(delta), the dual of F(d1,1,d2,1,...,dl) with positions kept."""
    delta = as_composition(delta)
    parts = gate_fence_composition(delta).parts
    segs, covers = _path_segments(parts, first_ascending=False)
    return Poset(
        n=sum(parts) + 1,
        covers=frozenset(covers),
        kind="gate",
        composition=delta,
        segments=tuple(Segment(*s) for s in segs),
    )


def dual(poset: Poset, mirror: bool = True) -> Poset:
    """Reverse every cover.

    With ``mirror`` (the default) element ``i`` is relabelled ``n + 1 - i`` so
    that, e.g., ``dual(build_gate(d)) == build_gate(reversed d)`` and
    ``dual(build_fence(b)) == build_fence(reversed b)`` for an odd number of
    parts.  With ``mirror=False`` labels are kept.
    """
    n = poset.n
    m = (lambda x: n + 1 - x) if mirror else (lambda x: x)
    covers = frozenset((m(hi), m(lo)) for lo, hi in poset.covers)
    flip = {"A": "D", "D": "A"}
    segs = []
    for s in poset.segments:
        els = tuple(m(x) for x in s.elements)
        segs.append((flip[s.kind] if not mirror else s.kind, els[::-1] if mirror else els))
    if mirror:
        segs.reverse()
    counts = {"A": 0, "D": 0}
    segments = []
    for kind, els in segs:
        counts[kind] += 1
        segments.append(Segment(kind, counts[kind], els))
    return Poset(
        n=n,
        covers=covers,
        kind=f"dual({poset.kind})",
        composition=poset.composition,
        segments=tuple(segments),
        degenerate=poset.degenerate,
    )


def mirror_subset(n: int, subset: Iterable[int]) -> frozenset[int]:
    return frozenset(n + 1 - x for x in subset)


def _check_subset(poset: Poset, subset) -> frozenset[int]:
    s = frozenset(subset)
    bad = [x for x in s if not (isinstance(x, int) and 1 <= x <= poset.n)]
    if bad:
        raise ValueError(f"elements {sorted(bad)} are not in the ground set 1..{poset.n}")
    return s


def is_ideal(poset: Poset, subset) -> bool:
    s = _check_subset(poset, subset)
    return all(lo in s for lo, hi in poset.covers if hi in s)


def is_filter(poset: Poset, subset) -> bool:
    s = _check_subset(poset, subset)
    return all(hi in s for lo, hi in poset.covers if lo in s)


@dataclass(frozen=True)
class AlphaDeltaParams:
    alpha: tuple[int, ...]
    delta: tuple[int, ...]
    circular: bool = False


def fence_params(beta) -> AlphaDeltaParams:
    """alpha/delta for a linear fence with an odd number of parts.

    alpha_i is one more than the number of unshared elements on the i-th
    ascending segment; delta_i is the length of the i-th descending one.
    A single-part fence has no shared elements, so alpha_1 = beta_1 + 2.
    """
    beta = as_composition(beta)
    s = len(beta)
    if s % 2 == 0:
        raise ParityError(f"linear alpha/delta needs an odd number of parts, got {s}")
    parts = beta.parts
    if s == 1:
        return AlphaDeltaParams((parts[0] + 2,), ())
    alpha = [parts[i] for i in range(0, s, 2)]
    alpha[0] += 1
    alpha[-1] += 1
    return AlphaDeltaParams(tuple(alpha), tuple(parts[1::2]))


def circular_params(beta) -> AlphaDeltaParams:
    beta = as_composition(beta)
    if len(beta) % 2:
        raise ParityError(f"circular alpha/delta needs an even number of parts, got {len(beta)}")
    return AlphaDeltaParams(beta.parts[0::2], beta.parts[1::2], circular=True)


def alpha_delta(poset: Poset) -> AlphaDeltaParams:
    if poset.kind == "fence":
        return fence_params(poset.composition)
    if poset.kind == "circular":
        return circular_params(poset.composition)
    raise ValueError(f"alpha/delta is defined for fences and circular fences, not {poset.kind}")


def chain_layout(poset: Poset) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """Unshared ascending chains and descending chains, each listed bottom to top.

    Returns ``(tilde_A, D)``.  For a gate ``tilde_A`` is empty.  Every
    element lies in exactly one of the returned chains.
    """
    if poset.kind == "gate":
        ds = tuple(s.elements[::-1] for s in poset.segments if s.kind == "D")
        return (), ds
    if poset.kind not in ("fence", "circular"):
        raise ValueError(f"no chain layout for {poset.kind}")
    if poset.kind == "fence" and len(poset.composition) % 2 == 0:
        raise ParityError("encodings are defined for fences with an odd number of parts")
    asc = [s.elements for s in poset.segments if s.kind == "A"]
    desc = tuple(s.elements[::-1] for s in poset.segments if s.kind == "D")
    tilde = []
    last = len(asc) - 1
    for i, els in enumerate(asc):
        lo = 1 if (i > 0 or poset.kind == "circular") else 0
        hi = len(els) - 1 if (i < last or poset.kind == "circular") else len(els)
        tilde.append(tuple(els[lo:hi]))
    return tuple(tilde), desc
