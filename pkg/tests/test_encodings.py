from itertools import product

import pytest
from hypothesis import given, strategies as st

from fencelat.encodings import (
    Encoding,
    EncodingError,
    circular_ideal,
    decode,
    encode_filter,
    encode_ideal,
    fence_ideal,
    format_encoding,
    from_json,
    gate_filter,
    gate_ideal,
    is_valid,
    narrow_circular_ideal,
    reverse,
    reverse_subset,
    validate,
    violated_labels,
)
from fencelat.poset import (
    build_circular_fence,
    build_fence,
    build_gate,
    chain_layout,
    compositions,
    compositions_up_to,
)

from oracles import filters, gate, ideals, zigzag


def _posets(max_total):
    for beta in compositions_up_to(max_total, "odd"):
        yield build_fence(beta), zigzag(beta)
    for beta in compositions_up_to(max_total, "even"):
        yield build_circular_fence(beta), zigzag(beta, circular=True)
    for m in range(1, max_total - 1):
        for delta in compositions(m):
            yield build_gate(delta), gate(delta)


def _raw_subset(poset, top, bottom, side):
    tilde, ds = chain_layout(poset)
    out = set()
    for chain, k in zip(tilde + ds, top + bottom):
        out.update(chain[:k] if side == "ideal" else chain[len(chain) - k:])
    return frozenset(out)


@pytest.mark.parametrize("side", ["ideal", "filter"])
def test_conditions_characterise_ideals_and_filters(side):
    """Every count vector (one past each bound included) is valid iff it encodes an ideal/filter."""
    for poset, (n, covers) in _posets(9):
        truth = set(ideals(n, covers) if side == "ideal" else filters(n, covers))
        tilde, ds = chain_layout(poset)
        lengths = [len(c) for c in tilde + ds]
        k = len(tilde)
        hits = set()
        for counts in product(*(range(m + 2) for m in lengths)):
            enc = Encoding(poset.kind, side, counts[:k], counts[k:], poset.composition)
            in_range = all(c <= m for c, m in zip(counts, lengths))
            ok = is_valid(enc)
            if not in_range:
                assert not ok
                continue
            subset = _raw_subset(poset, counts[:k], counts[k:], side)
            assert ok == (subset in truth), (poset.composition, side, counts)
            if ok:
                hits.add(subset)
        assert hits == truth


def test_encode_decode_round_trip():
    for poset, (n, covers) in _posets(9):
        for s in ideals(n, covers):
            enc = encode_ideal(poset, s)
            assert decode(enc) == s and enc.size == len(s)
        for s in filters(n, covers):
            enc = encode_filter(poset, s)
            assert decode(enc) == s and enc.size == len(s)


def test_worked_encodings():
    enc = encode_ideal(build_fence((6, 2, 1, 2, 3, 1, 6)), {9, 10, 11, 12, 13, 16})
    assert (enc.a, enc.d) == ((0, 0, 1, 0), (1, 3, 1))
    assert validate(enc) == []
    enc = encode_ideal(build_circular_fence((2, 1, 2, 3, 1, 2, 2, 1)), {1, 2, 3, 4, 5, 9, 12})
    assert (enc.a, enc.d) == ((1, 1, 0, 0), (2, 1, 1, 1))
    empty = encode_ideal(build_fence((2, 4, 1)), set())
    assert empty.top == (0, 0) and empty.bottom == (0,)


def test_violation_labels():
    assert "I3" in violated_labels(gate_ideal((0, 0, 1), (2, 3, 1)), restricted=True)
    assert violated_labels(gate_ideal((0, 0, 1), (2, 3, 1))) == []
    bad = fence_ideal((7, 0, 0, 0), (0, 0, 0), (6, 2, 1, 2, 3, 1, 6))
    assert "IF1" in violated_labels(bad)
    assert "IF4" in violated_labels(fence_ideal((0, 1, 0, 0), (0, 0, 0), (6, 2, 1, 2, 3, 1, 6)))
    assert "IC4" in violated_labels(circular_ideal((0, 1, 0, 0), (0, 0, 0, 0), (2, 1, 2, 3, 1, 2, 2, 1)))
    with pytest.raises(EncodingError):
        fence_ideal((0, 0), (1,), (6, 2, 1, 2, 3, 1, 6))


def test_small_ideals_are_restricted():
    for beta in compositions_up_to(10, "odd"):
        poset = build_fence(beta)
        n, covers = zigzag(beta)
        for s in ideals(n, covers):
            if len(s) <= min(beta[0], beta[-1]):
                assert is_valid(encode_ideal(poset, s), restricted=True)


def test_restricted_gate_iff_restricted_fence():
    """Holds whenever d_l > 0; with d_l = 0 the padded fence encoding only breaks IF4."""
    for m in range(1, 9):
        for delta in compositions(m):
            parts = []
            for x in delta:
                parts += [1, x]
            parts.append(1)
            ell = len(delta)
            a = (1,) + (0,) * (ell - 1) + (1,)
            for d in product(*(range(x + 2) for x in delta)):
                g = gate_ideal(d, delta)
                f = fence_ideal(a, d, parts)
                if d[-1] > 0:
                    assert is_valid(g, restricted=True) == is_valid(f, restricted=True), (delta, d)
                elif is_valid(g, restricted=True):
                    assert violated_labels(f, restricted=True) == ["IF4"]


def test_narrow_circular_conditions():
    enc = narrow_circular_ideal((7, 1, 1, 0, 5, 1, 0, 0, 3), (7, 1, 1, 1, 5, 1, 1, 1, 3))
    assert is_valid(enc, narrow=True) and is_valid(enc)
    assert enc.narrow


def test_reverse_examples():
    enc = fence_ideal((0, 0, 1, 0), (1, 3, 1), (6, 2, 1, 2, 3, 1, 6))
    r = reverse(enc)
    assert r.side == "filter" and (r.b, r.e) == ((0, 1, 0, 0), (1, 3, 1))
    assert r.composition.parts == (6, 1, 3, 2, 1, 2, 6)
    assert reverse(r) == enc
    g = reverse(gate_ideal((2, 0), (1, 2)))
    assert g == gate_filter((0, 2), (2, 1))


def test_reverse_matches_subsets():
    for poset, (n, covers) in _posets(9):
        for s in ideals(n, covers):
            enc = encode_ideal(poset, s)
            r = reverse(enc)
            assert is_valid(r) and r.size == enc.size
            assert decode(r) == reverse_subset(poset, s)
            assert reverse(r) == enc


def test_json_and_display():
    enc = fence_ideal((0, 0, 1, 0), (1, 3, 1), (6, 2, 1, 2, 3, 1, 6))
    assert enc.to_json() == {"a": [0, 0, 1, 0], "d": [1, 3, 1]}
    assert from_json(enc.to_json(), "fence", (6, 2, 1, 2, 3, 1, 6)) == enc
    assert gate_ideal((2, 0), (1, 2)).to_json() == {"d": [2, 0]}
    assert format_encoding(gate_ideal((2, 0), (1, 2))) == "⌊2,0⌋"
    lines = format_encoding(enc).splitlines()
    assert lines[0].startswith("⌊") and lines[0].rstrip().endswith("⌋")
    assert lines[0].split()[1:-1] == ["0", "0", "1", "0"]
    assert lines[1].split() == ["1", "3", "1"]
    circ = circular_ideal((1, 1, 0, 0), (2, 1, 1, 1), (2, 1, 2, 3, 1, 2, 2, 1))
    assert format_encoding(circ).splitlines()[0].split()[1:-1] == ["1", "1", "0", "0", "1"]


@given(st.lists(st.integers(1, 3), min_size=1, max_size=5).filter(lambda p: len(p) % 2), st.data())
def test_random_ideal_round_trip(beta, data):
    poset = build_fence(beta)
    n, covers = zigzag(beta)
    s = data.draw(st.sampled_from(ideals(n, covers)))
    enc = encode_ideal(poset, s)
    assert decode(enc) == s
    assert reverse(reverse(enc)) == enc
