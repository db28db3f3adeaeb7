"""Size-preserving bijections from ideals to filters.

``phi`` acts on restricted gate ideals, ``Phi`` on fence ideals (of size at
most ``min(beta_1, beta_s)``, or restricted ones of any size), ``phi_bar``
on narrow circular fences and ``Phi_bar`` on all circular fences.  Every
inverse is ``reverse . forward . reverse``.

Each map accepts an optional ``trace`` list; the sequence after every
numbered step is appended to it as a :class:`TraceStep`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .encodings import Encoding, EncodingError, gate_ideal, require_valid, reverse, validate


class TraceStep(NamedTuple):
    step: str
    top: tuple[int, ...]
    bottom: tuple[int, ...]


class Block(NamedTuple):
    start: int  # 0-based
    end: int  # 0-based, inclusive; end < start when a circular block wraps
    trailing: int  # length of the factor of trailing ones
    positions: tuple[int, ...]

    @property
    def head(self) -> tuple[int, ...]:
        """Positions of the block minus its trailing ones."""
        return self.positions[: len(self.positions) - self.trailing]

    @property
    def tail(self) -> tuple[int, ...]:
        return self.positions[len(self.positions) - self.trailing:]


@dataclass(frozen=True)
class BlockStructure:
    sequence: tuple[int, ...]
    circular: bool
    blocks: tuple[Block, ...]


def _trailing_ones(values: Sequence[int]) -> int:
    t = 0
    for v in reversed(values):
        if v != 1:
            break
        t += 1
    return t


def block_structure(seq: Sequence[int], circular: bool = False) -> BlockStructure:
    """Maximal factors of positive entries and their trailing ones.

    A circular sequence with no zero has no blocks.
    """
    seq = tuple(seq)
    if any(v < 0 for v in seq):
        raise ValueError(f"negative entry in {seq}")
    n = len(seq)
    blocks = []
    if circular:
        if 0 in seq:
            z = seq.index(0)
            order = [(z + 1 + j) % n for j in range(n)]  # starts right after a zero
            run: list[int] = []
            for p in order:
                if seq[p] > 0:
                    run.append(p)
                elif run:
                    blocks.append(run)
                    run = []
            if run:
                blocks.append(run)
    else:
        run = []
        for p in range(n):
            if seq[p] > 0:
                run.append(p)
            elif run:
                blocks.append(run)
                run = []
        if run:
            blocks.append(run)
    out = []
    for run in blocks:
        t = _trailing_ones([seq[p] for p in run])
        out.append(Block(run[0], run[-1], t, tuple(run)))
    if circular:
        out.sort(key=lambda b: b.start)
    return BlockStructure(seq, circular, tuple(out))


def step_p1(seq: Sequence[int], structure: BlockStructure) -> list[int]:
    """Move each nonempty factor of trailing ones one place right, past its zero."""
    out = list(seq)
    n = len(out)
    for block in structure.blocks:
        if not block.trailing:
            continue
        zero = (block.positions[-1] + 1) % n if structure.circular else block.positions[-1] + 1
        if zero >= n or out[zero] != 0:
            raise EncodingError(f"trailing ones at {block.tail} are not followed by a 0 in {tuple(seq)}")
        out[block.tail[0]] = 0
        out[zero] = 1
    return out


def step_p2(seq: Sequence[int], structure: BlockStructure) -> list[int]:
    """Shift one unit from the right end to the left end of every head of length >= 2."""
    out = list(seq)
    for block in structure.blocks:
        head = block.head
        if len(head) >= 2:
            out[head[-1]] -= 1
            out[head[0]] += 1
    return out


def phi_sequence(d: Sequence[int], circular: bool = False, trace: list | None = None) -> tuple[int, ...]:
    """Steps P1 and P2 on a bare sequence (no validity checks)."""
    structure = block_structure(d, circular)
    after_p1 = step_p1(d, structure)
    if trace is not None:
        trace.append(TraceStep("P1", (), tuple(after_p1)))
    after_p2 = step_p2(after_p1, structure)
    if trace is not None:
        trace.append(TraceStep("P2", (), tuple(after_p2)))
    return tuple(after_p2)


def _expect(enc: Encoding, family: str, side: str):
    if enc.family != family or enc.side != side:
        raise EncodingError(f"expected a {family} {side} encoding, got {enc.family} {enc.side}")


def phi(enc: Encoding, trace: list | None = None) -> Encoding:
    """Restricted gate ideal to restricted gate filter of the same size."""
    _expect(enc, "gate", "ideal")
    require_valid(enc, restricted=True)
    e = phi_sequence(enc.bottom, trace=trace)
    return enc.replace(bottom=e, side="filter")


def phi_inverse(enc: Encoding, trace: list | None = None) -> Encoding:
    _expect(enc, "gate", "filter")
    require_valid(enc, restricted=True)
    return reverse(phi(reverse(enc), trace))


def _gate_factor_check(factor, delta_slice):
    bad = validate(gate_ideal(factor, delta_slice), restricted=True)
    if bad:
        raise AssertionError(f"factor {factor} fails {[v.label for v in bad]} before phi")


def _step_ph1(a, d, alpha, circular):
    ell = len(d)
    a, d = list(a), list(d)
    hits = []
    for i in range(ell):
        j = (i + 1) % len(a) if circular else i + 1
        if d[i] == 1 and a[j] < alpha[j] - 1:
            hits.append((i, j))
    for i, j in hits:
        d[i] = 0
        a[j] += 1
    return a, d


def _step_ph3(b, e):
    b, e = list(b), list(e)
    for i in range(len(e)):
        if e[i] == 0 and b[i] > 0:
            e[i] = 1
            b[i] -= 1
    return b, e


def Phi(enc: Encoding, trace: list | None = None, check: bool = True) -> Encoding:
    """Fence ideal to fence filter of the same size.

    Defined on ideals satisfying IF5-IF6, which includes every ideal of size
    at most ``min(beta_1, beta_s)``.  With ``check`` each factor handed to
    ``phi`` is asserted to be a restricted gate ideal.
    """
    _expect(enc, "fence", "ideal")
    require_valid(enc)
    bad = validate(enc, restricted=True)
    if bad:
        beta = enc.composition.parts
        bound = min(beta[0], beta[-1])
        raise EncodingError(
            f"ideal of size {enc.size} > min(beta_1, beta_s) = {bound} is not restricted "
            f"({', '.join(sorted({v.label for v in bad}))})"
        )
    alpha, delta = enc.alpha, enc.delta
    ell = len(delta)
    a, d = _step_ph1(enc.top, enc.bottom, alpha, circular=False)
    if trace is not None:
        trace.append(TraceStep("PH1", tuple(a), tuple(d)))
    cuts = [0] + [i for i in range(1, ell) if a[i] < alpha[i] - 1] + [ell]
    e: list[int] = []
    for lo, hi in zip(cuts, cuts[1:]):
        if lo == hi:  # no descending segments at all
            continue
        factor = d[lo:hi]
        if check:
            _gate_factor_check(factor, delta[lo:hi])
        e.extend(phi_sequence(factor))
    b = list(a)
    if trace is not None:
        trace.append(TraceStep("PH2", tuple(b), tuple(e)))
    b, e = _step_ph3(b, e)
    if trace is not None:
        trace.append(TraceStep("PH3", tuple(b), tuple(e)))
    return enc.replace(top=b, bottom=e, side="filter")


def Phi_inverse(enc: Encoding, trace: list | None = None, check: bool = True) -> Encoding:
    _expect(enc, "fence", "filter")
    require_valid(enc)
    return reverse(Phi(reverse(enc), trace, check))


def phi_bar(enc: Encoding, trace: list | None = None) -> Encoding:
    """Narrow circular ideal to narrow circular filter; positive sequences are fixed."""
    _expect(enc, "circular", "ideal")
    require_valid(enc, narrow=True)
    d = enc.bottom
    if all(v > 0 for v in d):
        if trace is not None:
            trace.append(TraceStep("positive", (), d))
        return enc.replace(side="filter")
    e = phi_sequence(d, circular=True, trace=trace)
    return enc.replace(bottom=e, side="filter")


def phi_bar_inverse(enc: Encoding, trace: list | None = None) -> Encoding:
    _expect(enc, "circular", "filter")
    require_valid(enc, narrow=True)
    return reverse(phi_bar(reverse(enc), trace))


def Phi_bar(enc: Encoding, trace: list | None = None, check: bool = True) -> Encoding:
    """Circular fence ideal to circular fence filter of the same size."""
    _expect(enc, "circular", "ideal")
    require_valid(enc)
    alpha, delta = enc.alpha, enc.delta
    ell = len(delta)
    a, d = _step_ph1(enc.top, enc.bottom, alpha, circular=True)
    if trace is not None:
        trace.append(TraceStep("PHC1", tuple(a), tuple(d)))
    cuts = [i for i in range(ell) if a[i] < alpha[i] - 1]
    if cuts:
        e = [0] * ell
        for c, nxt in zip(cuts, cuts[1:] + [cuts[0] + ell]):
            positions = [p % ell for p in range(c, nxt)]
            factor = [d[p] for p in positions]
            if check:
                _gate_factor_check(factor, [delta[p] for p in positions])
            for p, v in zip(positions, phi_sequence(factor)):
                e[p] = v
    elif all(v > 0 for v in d):
        e = list(d)
    else:
        e = list(phi_sequence(d, circular=True))
    b = list(a)
    if trace is not None:
        trace.append(TraceStep("PHC2", tuple(b), tuple(e)))
    b, e = _step_ph3(b, e)
    if trace is not None:
        trace.append(TraceStep("PHC3", tuple(b), tuple(e)))
    return enc.replace(top=b, bottom=e, side="filter")


def Phi_bar_inverse(enc: Encoding, trace: list | None = None, check: bool = True) -> Encoding:
    _expect(enc, "circular", "filter")
    require_valid(enc)
    return reverse(Phi_bar(reverse(enc), trace, check))
