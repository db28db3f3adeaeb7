"""Rank sequences of ideal lattices and the shape properties of sequences."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Iterator, Sequence

from .poset import (
    ParityError,
    Poset,
    as_composition,
    build_circular_fence,
    build_fence,
)

DEFAULT_CAP = 24


class CapExceeded(RuntimeError):
    pass


def enumerate_ideals(poset: Poset, size: int | None = None, cap: int = DEFAULT_CAP) -> Iterator[frozenset[int]]:
    """Every ideal exactly once, in lexicographic order of the indicator vector.

    Brute-force backtracking over ``x_1..x_n``; each element is checked
    against its covers with smaller labels as soon as it is decided.
    """
    n = poset.n
    if n > cap:
        raise CapExceeded(f"poset has {n} elements, cap is {cap}")
    # constraints that become checkable once element i is decided
    need_in = {i: [lo for lo in poset.lower_covers[i] if lo < i] for i in poset.elements}
    need_out = {i: [hi for hi in poset.upper_covers[i] if hi < i] for i in poset.elements}
    chosen = [False] * (n + 1)

    def rec(i, count):
        if size is not None and (count > size or count + (n - i + 1) < size):
            return
        if i > n:
            yield frozenset(x for x in range(1, n + 1) if chosen[x])
            return
        if not any(chosen[hi] for hi in need_out[i]):
            chosen[i] = False
            yield from rec(i + 1, count)
        if all(chosen[lo] for lo in need_in[i]):
            chosen[i] = True
            yield from rec(i + 1, count + 1)
            chosen[i] = False

    yield from rec(1, 0)


def enumerate_filters(poset: Poset, size: int | None = None, cap: int = DEFAULT_CAP) -> Iterator[frozenset[int]]:
    """Filters as complements of ideals (of size ``n - size``)."""
    full = frozenset(poset.elements)
    for ideal in enumerate_ideals(poset, None if size is None else poset.n - size, cap):
        yield full - ideal


def _is_path_like(poset: Poset) -> bool:
    n = poset.n
    return all(hi - lo in (1, -1) or {lo, hi} == {1, n} for lo, hi in poset.covers)


def _path_dp(poset: Poset) -> list[int]:
    """Transfer-matrix count along x_1..x_n, conditioning on x_1 to close a cycle.

    State is whether the current element is in the ideal; the polynomial in
    each state is a list of exact integer coefficients.
    """
    n = poset.n
    cov = poset.covers

    def allowed(i, j, si, sj):
        # an ideal containing the upper end of a cover contains the lower end
        if (i, j) in cov and sj and not si:
            return False
        if (j, i) in cov and si and not sj:
            return False
        return True

    total = [0] * (n + 1)
    for s1 in (0, 1):
        polys = {0: None, 1: None}
        polys[s1] = [0] * (n + 1)
        polys[s1][s1] = 1
        for i in range(1, n):
            nxt = {0: None, 1: None}
            for si, pi in polys.items():
                if pi is None:
                    continue
                for sj in (0, 1):
                    if not allowed(i, i + 1, si, sj):
                        continue
                    acc = nxt[sj]
                    if acc is None:
                        acc = nxt[sj] = [0] * (n + 1)
                    if sj:
                        for k in range(n):
                            acc[k + 1] += pi[k]
                    else:
                        for k in range(n + 1):
                            acc[k] += pi[k]
            polys = nxt
        for sn, pn in polys.items():
            if pn is None or not allowed(n, 1, sn, s1):
                continue
            for k in range(n + 1):
                total[k] += pn[k]
    return total


@dataclass(frozen=True)
class RankSequence:
    coefficients: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.coefficients) - 1

    @property
    def total(self) -> int:
        return sum(self.coefficients)

    def __getitem__(self, k):
        return self.coefficients[k]

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def __eq__(self, other):
        if isinstance(other, RankSequence):
            return self.coefficients == other.coefficients
        return self.coefficients == tuple(other)

    def __hash__(self):
        return hash(self.coefficients)


def rank_sequence(poset: Poset, method: str = "auto") -> RankSequence:
    """r_k = number of ideals of size k, for k = 0..n.

    ``method`` is ``"dp"`` (posets whose Hasse diagram is a path or cycle in
    label order), ``"brute"`` (enumeration), or ``"auto"``.
    """
    if method == "auto":
        method = "dp" if _is_path_like(poset) else "brute"
    if method == "dp":
        if not _is_path_like(poset):
            raise ValueError("dp counting needs covers between neighbouring labels only")
        return RankSequence(tuple(_path_dp(poset)))
    counts = [0] * (poset.n + 1)
    for ideal in enumerate_ideals(poset):
        counts[len(ideal)] += 1
    return RankSequence(tuple(counts))


def fence_rank_sequence(beta, circular: bool = False) -> RankSequence:
    beta = as_composition(beta)
    return rank_sequence(build_circular_fence(beta) if circular else build_fence(beta))


# ----------------------------------------------------------------------------
# sequence properties


def _chain_witness(b, order):
    for prev, cur in zip(order, order[1:]):
        if b[prev] > b[cur]:
            return cur
    return None


def top_interlacing_order(n: int) -> list[int]:
    """0, n, 1, n-1, ... ending at ceil(n/2)."""
    order = []
    lo, hi = 0, n
    while lo <= hi:
        order.append(lo)
        if hi != lo:
            order.append(hi)
        lo, hi = lo + 1, hi - 1
    return order


def bottom_interlacing_order(n: int) -> list[int]:
    """n, 0, n-1, 1, ... ending at floor(n/2)."""
    order = []
    lo, hi = 0, n
    while lo <= hi:
        order.append(hi)
        if hi != lo:
            order.append(lo)
        lo, hi = lo + 1, hi - 1
    return order


def symmetry_witness(b) -> int | None:
    n = len(b) - 1
    return next((k for k in range(n + 1) if b[k] != b[n - k]), None)


def unimodal_witness(b) -> int | None:
    """First index j with b[j] > b[j-1] after an earlier strict descent."""
    falling = False
    for j in range(1, len(b)):
        if b[j] < b[j - 1]:
            falling = True
        elif b[j] > b[j - 1] and falling:
            return j
    return None


def top_heavy_witness(b) -> int | None:
    n = len(b) - 1
    return next((k for k in range(n // 2) if b[k] > b[n - k]), None)


def bottom_heavy_witness(b) -> int | None:
    n = len(b) - 1
    return next((k for k in range(n // 2) if b[k] < b[n - k]), None)


def log_concave_witness(b) -> int | None:
    return next((i for i in range(1, len(b) - 1) if b[i] * b[i] < b[i - 1] * b[i + 1]), None)


def is_symmetric(b) -> bool:
    return symmetry_witness(b) is None


def is_unimodal(b) -> bool:
    return unimodal_witness(b) is None


def is_log_concave(b) -> bool:
    return log_concave_witness(b) is None


def is_top_interlacing(b) -> bool:
    return _chain_witness(b, top_interlacing_order(len(b) - 1)) is None


def is_bottom_interlacing(b) -> bool:
    return _chain_witness(b, bottom_interlacing_order(len(b) - 1)) is None


PROPERTIES = (
    "symmetric",
    "unimodal",
    "top_heavy",
    "bottom_heavy",
    "top_interlacing",
    "bottom_interlacing",
    "log_concave",
)


@dataclass(frozen=True)
class SequenceClassification:
    symmetric: bool
    unimodal: bool
    top_heavy: bool
    bottom_heavy: bool
    top_interlacing: bool
    bottom_interlacing: bool
    log_concave: bool
    witnesses: dict = field(default_factory=dict)  # failed property -> smallest violating index

    def to_json(self) -> dict:
        return asdict(self)


def classify(seq: Sequence[int]) -> SequenceClassification:
    b = tuple(seq)
    if not b:
        raise ValueError("empty sequence")
    n = len(b) - 1
    w = {
        "symmetric": symmetry_witness(b),
        "unimodal": unimodal_witness(b),
        "top_heavy": top_heavy_witness(b),
        "bottom_heavy": bottom_heavy_witness(b),
        "top_interlacing": _chain_witness(b, top_interlacing_order(n)),
        "bottom_interlacing": _chain_witness(b, bottom_interlacing_order(n)),
        "log_concave": log_concave_witness(b),
    }
    flags = {k: v is None for k, v in w.items()}
    return SequenceClassification(**flags, witnesses={k: v for k, v in w.items() if v is not None})


# ----------------------------------------------------------------------------
# theorem and conjecture checks


def predicted_heavy_kind(beta) -> str:
    """Shape that the interlacing classification theorem assigns to r(beta).

    One of ``"all_ones"``, ``"symmetric"``, ``"top_interlacing"``,
    ``"bottom_interlacing"``.  The equal-ends odd case looks at the actual
    rank sequence of the composition with both end parts removed.
    """
    parts = as_composition(beta).parts
    s = len(parts)
    if s == 1:
        return "all_ones"
    if s % 2 == 0:
        return "bottom_interlacing"
    if parts[0] > parts[-1]:
        return "bottom_interlacing"
    if parts[0] < parts[-1]:
        return "top_interlacing"
    inner = classify(fence_rank_sequence(parts[1:-1]))
    if inner.symmetric:
        return "symmetric"
    if inner.top_interlacing:
        return "bottom_interlacing"
    if inner.bottom_interlacing:
        return "top_interlacing"
    return "unclassified"


def _holds(kind: str, r: Sequence[int], c: SequenceClassification) -> bool:
    if kind == "all_ones":
        return all(x == 1 for x in r)
    if kind == "unclassified":
        return False
    return getattr(c, kind)


@dataclass
class Finding:
    """Outcome of one check on one composition; ``ok`` is False for a counterexample."""

    check: str
    beta: tuple[int, ...]
    ok: bool
    r: tuple[int, ...] = ()
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"check": self.check, "beta": list(self.beta), "ok": self.ok, "r": list(self.r), **self.details}


def verify_theorem_heavy(beta) -> Finding:
    beta = as_composition(beta)
    r = fence_rank_sequence(beta)
    c = classify(r)
    kind = predicted_heavy_kind(beta)
    return Finding(
        "heavy",
        beta.parts,
        _holds(kind, r, c),
        r.coefficients,
        {"predicted": kind, "classification": c.to_json()},
    )


def verify_partial_symmetry(beta, bijective: bool = True) -> Finding:
    """r_k = r_{n-k} for k <= min(beta_1, beta_s), numerically and through Phi.

    With ``bijective`` the map is also checked to send the size-k ideals
    injectively onto the size-k filters for every such k.
    """
    from .bijections import Phi
    from .encodings import encode_filter, encode_ideal

    beta = as_composition(beta)
    if len(beta) % 2 == 0:
        raise ParityError("partial symmetry concerns an odd number of parts")
    poset = build_fence(beta)
    r = rank_sequence(poset)
    n = r.n
    bound = min(beta[0], beta[-1])
    numeric = [k for k in range(min(bound, n) + 1) if r[k] != r[n - k]]
    bij_fail: list[int] = []
    if bijective:
        for k in range(min(bound, n) + 1):
            images = {Phi(encode_ideal(poset, I)) for I in enumerate_ideals(poset, k)}
            targets = {encode_filter(poset, U) for U in enumerate_filters(poset, k)}
            if len(images) != r[k] or images != targets:
                bij_fail.append(k)
    return Finding(
        "partial-symmetry",
        beta.parts,
        not numeric and not bij_fail,
        r.coefficients,
        {"bound": bound, "numeric_failures": numeric, "bijection_failures": bij_fail},
    )


def verify_restricted_bijection(beta) -> Finding:
    """Phi maps restricted ideals of each size k onto restricted filters of size k."""
    from .bijections import Phi
    from .encodings import encode_filter, encode_ideal, is_valid

    beta = as_composition(beta)
    poset = build_fence(beta)
    images: dict[int, list] = {}
    for I in enumerate_ideals(poset):
        enc = encode_ideal(poset, I)
        if is_valid(enc, restricted=True):
            images.setdefault(enc.size, []).append(Phi(enc))
    targets: dict[int, set] = {}
    for U in enumerate_filters(poset):
        enc = encode_filter(poset, U)
        if is_valid(enc, restricted=True):
            targets.setdefault(enc.size, set()).add(enc)
    failures = [
        k for k in range(poset.n + 1)
        if len(set(images.get(k, []))) != len(images.get(k, []))
        or set(images.get(k, [])) != targets.get(k, set())
    ]
    return Finding(
        "restricted-bijection",
        beta.parts,
        not failures,
        (),
        {"sizes_failing": failures,
         "counts": [len(images.get(k, [])) for k in range(poset.n + 1)]},
    )


def verify_circular_symmetry(beta, bijective: bool = True) -> Finding:
    from .bijections import Phi_bar
    from .encodings import encode_filter, encode_ideal

    beta = as_composition(beta)
    poset = build_circular_fence(beta)
    r = rank_sequence(poset)
    sym = is_symmetric(r)
    bij_ok = True
    if bijective:
        images = []
        for I in enumerate_ideals(poset):
            enc = encode_ideal(poset, I)
            out = Phi_bar(enc)
            bij_ok &= out.size == enc.size
            images.append(out)
        targets = {encode_filter(poset, U) for U in enumerate_filters(poset)}
        bij_ok &= len(set(images)) == len(images) and set(images) == targets
    return Finding(
        "fbsym",
        beta.parts,
        sym and bij_ok,
        r.coefficients,
        {"symmetric": sym, "bijection": bij_ok if bijective else None,
         "degenerate": poset.degenerate},
    )


def is_fbuni_exception(beta) -> bool:
    """Shapes (1,k,1,k) and (k,1,k,1)."""
    p = as_composition(beta).parts
    return len(p) == 4 and p[0] == p[2] and p[1] == p[3] and 1 in (p[0], p[1])


def verify_conjecture_fbuni(beta) -> Finding:
    beta = as_composition(beta)
    r = fence_rank_sequence(beta, circular=True)
    w = unimodal_witness(r)
    exc = is_fbuni_exception(beta)
    return Finding(
        "fbuni",
        beta.parts,
        w is None or exc,
        r.coefficients,
        {"unimodal": w is None, "witness": w, "exception_shape": exc},
    )


def verify_log_concave(beta, circular: bool = False) -> Finding:
    beta = as_composition(beta)
    r = fence_rank_sequence(beta, circular=circular)
    w = log_concave_witness(r)
    return Finding("logconcave", beta.parts, True, r.coefficients,
                   {"circular": circular, "log_concave": w is None, "witness": w})
