"""Sequence encodings of ideals and filters.

An ideal of a fence is recorded by how many elements it takes from each
unshared ascending chain (``a``) and each descending chain (``d``); a filter
by ``b`` and ``e`` in the same way.  Gates only have the descending part.
Since every such chain is a chain, the counts determine the subset: an ideal
takes the lowest elements of each chain, a filter the highest.

Condition labels (``"IF3"``, ``"UC4"``, ...) follow the usual names of the
existence, order ideal and restriction conditions for each family.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .poset import (
    AlphaDeltaParams,
    Composition,
    Poset,
    as_composition,
    build_circular_fence,
    build_fence,
    build_gate,
    chain_layout,
    circular_params,
    fence_params,
    is_filter,
    is_ideal,
)

FAMILIES = ("gate", "fence", "circular")
SIDES = ("ideal", "filter")


class EncodingError(ValueError):
    pass


class Violation(NamedTuple):
    label: str
    index: int | None  # 1-based position the condition was checked at
    detail: str


@dataclass(frozen=True)
class Encoding:
    """An ideal (``side="ideal"``) or filter encoding.

    ``top`` is ``a`` (ideals) or ``b`` (filters) and is empty for gates;
    ``bottom`` is ``d`` or ``e``.  ``composition`` is beta for fences and
    circular fences and delta for gates.
    """

    family: str
    side: str
    top: tuple[int, ...]
    bottom: tuple[int, ...]
    composition: Composition

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.side not in SIDES:
            raise ValueError(f"unknown side {self.side!r}")
        object.__setattr__(self, "top", tuple(int(v) for v in self.top))
        object.__setattr__(self, "bottom", tuple(int(v) for v in self.bottom))
        object.__setattr__(self, "composition", as_composition(self.composition))
        p = self.params
        want_top = 0 if self.family == "gate" else len(p.alpha)
        if len(self.top) != want_top or len(self.bottom) != len(p.delta):
            raise EncodingError(
                f"{self.family} {self.side} over {self.composition} needs "
                f"{want_top} top and {len(p.delta)} bottom entries, got "
                f"{len(self.top)} and {len(self.bottom)}"
            )

    @cached_property
    def params(self) -> AlphaDeltaParams:
        if self.family == "gate":
            delta = self.composition.parts
            return AlphaDeltaParams((1,) * (len(delta) + 1), delta)
        if self.family == "fence":
            return fence_params(self.composition)
        return circular_params(self.composition)

    @property
    def alpha(self):
        return self.params.alpha

    @property
    def delta(self):
        return self.params.delta

    @property
    def ell(self) -> int:
        return len(self.params.delta)

    @property
    def a(self):
        self._need("ideal")
        return self.top

    @property
    def d(self):
        self._need("ideal")
        return self.bottom

    @property
    def b(self):
        self._need("filter")
        return self.top

    @property
    def e(self):
        self._need("filter")
        return self.bottom

    def _need(self, side):
        if self.side != side:
            raise AttributeError(f"not available on a {self.side} encoding")

    @property
    def size(self) -> int:
        return sum(self.top) + sum(self.bottom)

    @property
    def narrow(self) -> bool:
        return self.family == "circular" and all(x == 1 for x in self.params.alpha)

    def poset(self) -> Poset:
        if self.family == "gate":
            return build_gate(self.composition)
        if self.family == "fence":
            return build_fence(self.composition)
        return build_circular_fence(self.composition)

    def replace(self, top=None, bottom=None, side=None) -> "Encoding":
        return Encoding(
            self.family,
            self.side if side is None else side,
            self.top if top is None else top,
            self.bottom if bottom is None else bottom,
            self.composition,
        )

    def to_json(self) -> dict:
        names = ("a", "d") if self.side == "ideal" else ("b", "e")
        doc = {}
        if self.family != "gate":
            doc[names[0]] = list(self.top)
        doc[names[1]] = list(self.bottom)
        return doc

    def __str__(self):
        return format_encoding(self)


def gate_ideal(d, delta) -> Encoding:
    return Encoding("gate", "ideal", (), tuple(d), as_composition(delta))


def gate_filter(e, delta) -> Encoding:
    return Encoding("gate", "filter", (), tuple(e), as_composition(delta))


def fence_ideal(a, d, beta) -> Encoding:
    return Encoding("fence", "ideal", tuple(a), tuple(d), as_composition(beta))


def fence_filter(b, e, beta) -> Encoding:
    return Encoding("fence", "filter", tuple(b), tuple(e), as_composition(beta))


def circular_ideal(a, d, beta) -> Encoding:
    return Encoding("circular", "ideal", tuple(a), tuple(d), as_composition(beta))


def circular_filter(b, e, beta) -> Encoding:
    return Encoding("circular", "filter", tuple(b), tuple(e), as_composition(beta))


def narrow_composition(delta) -> Composition:
    """(1, d1, 1, d2, ..., 1, dl)."""
    parts: list[int] = []
    for x in as_composition(delta).parts:
        parts += [1, x]
    return Composition(tuple(parts))


def narrow_circular_ideal(d, delta) -> Encoding:
    return circular_ideal((0,) * len(d), d, narrow_composition(delta))


def narrow_circular_filter(e, delta) -> Encoding:
    return circular_filter((0,) * len(e), e, narrow_composition(delta))


def from_json(doc: dict, family: str, composition) -> Encoding:
    if "e" in doc or "b" in doc:
        return Encoding(family, "filter", doc.get("b", ()), doc["e"], as_composition(composition))
    return Encoding(family, "ideal", doc.get("a", ()), doc["d"], as_composition(composition))


# ----------------------------------------------------------------------------
# validation


def _bounds(out, label, seq, upper, what):
    for i, (v, hi) in enumerate(zip(seq, upper), 1):
        if not 0 <= v <= hi:
            out.append(Violation(label, i, f"{what}_{i}={v} outside [0,{hi}]"))


def _validate_gate(enc: Encoding, restricted: bool) -> list[Violation]:
    out: list[Violation] = []
    delta = enc.delta
    ell = len(delta)
    full = [x + 1 for x in delta]
    if enc.side == "ideal":
        d = enc.bottom
        _bounds(out, "I1", d, full, "d")
        for i in range(2, ell + 1):
            if d[i - 1] == full[i - 1] and d[i - 2] == 0:
                out.append(Violation("I2", i, f"d_{i} full but d_{i - 1}=0"))
        if restricted:
            if d[0] > delta[0]:
                out.append(Violation("I3", 1, f"d_1={d[0]} > delta_1={delta[0]}"))
            if d[-1] == 1:
                out.append(Violation("I3", ell, "d_l = 1"))
    else:
        e = enc.bottom
        _bounds(out, "U1", e, full, "e")
        for i in range(1, ell):
            if e[i - 1] == full[i - 1] and e[i] == 0:
                out.append(Violation("U2", i, f"e_{i} full but e_{i + 1}=0"))
        if restricted:
            if e[0] == 1:
                out.append(Violation("U3", 1, "e_1 = 1"))
            if e[-1] > delta[-1]:
                out.append(Violation("U3", ell, f"e_l={e[-1]} > delta_l={delta[-1]}"))
    return out


def _validate_fence(enc: Encoding, restricted: bool) -> list[Violation]:
    out: list[Violation] = []
    alpha, delta = enc.alpha, enc.delta
    ell = len(delta)
    top, bot = enc.top, enc.bottom
    if enc.side == "ideal":
        a, d = top, bot
        _bounds(out, "IF1", a, [x - 1 for x in alpha], "a")
        _bounds(out, "IF2", d, [x + 1 for x in delta], "d")
        for i in range(1, ell + 1):
            if d[i - 1] == delta[i - 1] + 1:
                if a[i - 1] != alpha[i - 1] - 1:
                    out.append(Violation("IF3", i, f"d_{i} full but a_{i} < alpha_{i}-1"))
                if i > 1 and d[i - 2] == 0:
                    out.append(Violation("IF3", i, f"d_{i} full but d_{i - 1}=0"))
            if a[i] > 0 and d[i - 1] == 0:
                out.append(Violation("IF4", i, f"a_{i + 1}>0 but d_{i}=0"))
        if restricted and ell:
            if d[0] > delta[0]:
                out.append(Violation("IF5", 1, f"d_1={d[0]} > delta_1"))
            if d[-1] == 1 and a[-1] >= alpha[-1] - 1:
                out.append(Violation("IF6", ell, "d_l = 1 and a_{l+1} = alpha_{l+1}-1"))
    else:
        b, e = top, bot
        _bounds(out, "UF1", b, [x - 1 for x in alpha], "b")
        _bounds(out, "UF2", e, [x + 1 for x in delta], "e")
        for i in range(1, ell + 1):
            if e[i - 1] == delta[i - 1] + 1:
                if b[i] != alpha[i] - 1:
                    out.append(Violation("UF3", i, f"e_{i} full but b_{i + 1} < alpha_{i + 1}-1"))
                if i < ell and e[i] == 0:
                    out.append(Violation("UF3", i, f"e_{i} full but e_{i + 1}=0"))
            if b[i - 1] > 0 and e[i - 1] == 0:
                out.append(Violation("UF4", i, f"b_{i}>0 but e_{i}=0"))
        if restricted and ell:
            if e[-1] > delta[-1]:
                out.append(Violation("UF5", ell, f"e_l={e[-1]} > delta_l"))
            if e[0] == 1 and b[0] >= alpha[0] - 1:
                out.append(Violation("UF6", 1, "e_1 = 1 and b_1 = alpha_1-1"))
    return out


def _validate_circular(enc: Encoding, narrow: bool) -> list[Violation]:
    out: list[Violation] = []
    alpha, delta = enc.alpha, enc.delta
    ell = len(delta)
    top, bot = enc.top, enc.bottom
    full = [x + 1 for x in delta]
    if narrow:
        if any(x != 1 for x in alpha):
            raise EncodingError("narrow conditions need every ascending segment of length 1")
        if any(top):
            out.append(Violation("IC1" if enc.side == "ideal" else "UC1", None, "top row must be 0"))
        if enc.side == "ideal":
            _bounds(out, "ICN1", bot, full, "d")
            for i in range(1, ell + 1):
                if bot[i - 1] == full[i - 1] and bot[(i - 2) % ell] == 0:
                    out.append(Violation("ICN2", i, f"d_{i} full but d_{i - 1}=0"))
        else:
            _bounds(out, "UCN1", bot, full, "e")
            for i in range(1, ell + 1):
                if bot[i - 1] == full[i - 1] and bot[i % ell] == 0:
                    out.append(Violation("UCN2", i, f"e_{i} full but e_{i + 1}=0"))
        return out
    if enc.side == "ideal":
        a, d = top, bot
        _bounds(out, "IC1", a, [x - 1 for x in alpha], "a")
        _bounds(out, "IC2", d, full, "d")
        for i in range(1, ell + 1):
            prev = (i - 2) % ell
            if d[i - 1] == full[i - 1]:
                if a[i - 1] != alpha[i - 1] - 1:
                    out.append(Violation("IC3", i, f"d_{i} full but a_{i} < alpha_{i}-1"))
                if d[prev] == 0:
                    out.append(Violation("IC3", i, f"d_{i} full but d_{i - 1}=0"))
            if a[i - 1] > 0 and d[prev] == 0:
                out.append(Violation("IC4", i, f"a_{i}>0 but d_{i - 1}=0"))
    else:
        b, e = top, bot
        _bounds(out, "UC1", b, [x - 1 for x in alpha], "b")
        _bounds(out, "UC2", e, full, "e")
        for i in range(1, ell + 1):
            nxt = i % ell
            if e[i - 1] == full[i - 1]:
                if b[nxt] != alpha[nxt] - 1:
                    out.append(Violation("UC3", i, f"e_{i} full but b_{i + 1} < alpha_{i + 1}-1"))
                if e[nxt] == 0:
                    out.append(Violation("UC3", i, f"e_{i} full but e_{i + 1}=0"))
            if b[i - 1] > 0 and e[i - 1] == 0:
                out.append(Violation("UC4", i, f"b_{i}>0 but e_{i}=0"))
    return out


def validate(enc: Encoding, restricted: bool = False, narrow: bool = False) -> list[Violation]:
    """Every violated condition, in label order.

    ``restricted`` adds I3 / U3 (gates) or IF5-IF6 / UF5-UF6 (fences); it is
    ignored for circular fences, which have no restricted variant.
    ``narrow`` checks a circular encoding against ICN / UCN.
    """
    if enc.family == "gate":
        return _validate_gate(enc, restricted)
    if enc.family == "fence":
        return _validate_fence(enc, restricted)
    return _validate_circular(enc, narrow)


def violated_labels(enc: Encoding, restricted: bool = False, narrow: bool = False) -> list[str]:
    labels: list[str] = []
    for v in validate(enc, restricted, narrow):
        if v.label not in labels:
            labels.append(v.label)
    return labels


def is_valid(enc: Encoding, restricted: bool = False, narrow: bool = False) -> bool:
    return not validate(enc, restricted, narrow)


def require_valid(enc: Encoding, restricted: bool = False, narrow: bool = False) -> None:
    bad = validate(enc, restricted, narrow)
    if bad:
        msg = "; ".join(f"{v.label}: {v.detail}" for v in bad)
        raise EncodingError(f"invalid {enc.family} {enc.side} encoding {enc.to_json()}: {msg}")


# ----------------------------------------------------------------------------
# subsets <-> encodings


def _family_of(poset: Poset) -> str:
    if poset.kind not in FAMILIES:
        raise ValueError(f"no encoding for posets of kind {poset.kind!r}")
    return poset.kind


def _encode(poset: Poset, subset, side: str) -> Encoding:
    family = _family_of(poset)
    s = frozenset(subset)
    check = is_ideal if side == "ideal" else is_filter
    if not check(poset, s):
        raise EncodingError(f"{sorted(s)} is not an {side} of {poset.kind} {poset.composition}")
    tilde, ds = chain_layout(poset)
    top = tuple(len(s.intersection(c)) for c in tilde)
    bottom = tuple(len(s.intersection(c)) for c in ds)
    return Encoding(family, side, top, bottom, poset.composition)


def encode_ideal(poset: Poset, subset) -> Encoding:
    return _encode(poset, subset, "ideal")


def encode_filter(poset: Poset, subset) -> Encoding:
    return _encode(poset, subset, "filter")


def decode(enc: Encoding, poset: Poset | None = None) -> frozenset[int]:
    require_valid(enc)
    poset = poset or enc.poset()
    tilde, ds = chain_layout(poset)
    out: set[int] = set()
    for chain, k in zip(tilde + ds, enc.top + enc.bottom):
        out.update(chain[:k] if enc.side == "ideal" else chain[len(chain) - k:])
    return frozenset(out)


decode_ideal = decode
decode_filter = decode


# ----------------------------------------------------------------------------
# reversal


def reversed_composition(enc: Encoding) -> Composition:
    parts = enc.composition.parts
    if enc.family == "circular":
        return Composition(parts[:1] + parts[1:][::-1])
    return Composition(parts[::-1])


def reverse(enc: Encoding) -> Encoding:
    """Ideal encodings become filter encodings of the reversed composition.

    For circular fences the first ascending count stays first (it is the
    entry repeated at both ends of the interlaced display).
    """
    side = "filter" if enc.side == "ideal" else "ideal"
    if enc.family == "circular":
        top = enc.top[:1] + enc.top[1:][::-1]
    else:
        top = enc.top[::-1]
    return Encoding(enc.family, side, top, enc.bottom[::-1], reversed_composition(enc))


def reverse_subset(poset: Poset, subset) -> frozenset[int]:
    """Subset-level counterpart of :func:`reverse`.

    Linear fences and gates are mirrored end to end; a circular fence is
    mirrored about the middle of its first unshared ascending chain.
    """
    n = poset.n
    if poset.kind == "circular":
        b1 = poset.composition.parts[0]
        return frozenset((b1 + 1 - x) % n + 1 for x in subset)
    return frozenset(n + 1 - x for x in subset)


# ----------------------------------------------------------------------------
# display


def format_encoding(enc: Encoding) -> str:
    """Two-row interlaced layout, with the first ``a`` repeated for circular fences."""
    left, right = ("⌊", "⌋") if enc.side == "ideal" else ("⌈", "⌉")
    if enc.family == "gate":
        return left + ",".join(map(str, enc.bottom)) + right
    top = list(enc.top) + ([enc.top[0]] if enc.family == "circular" else [])
    width = max(len(str(v)) for v in top + list(enc.bottom))
    cell = width + 1
    row1 = "".join(str(v).rjust(width) + " " * cell for v in top).rstrip()
    row2 = " " * cell + "".join(str(v).rjust(width) + " " * cell for v in enc.bottom).rstrip()
    pad = max(len(row1), len(row2))
    return f"{left} {row1.ljust(pad)} {right}\n  {row2.ljust(pad)}"
