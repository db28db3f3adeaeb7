"""Brute-force references that share no code with the package."""

from itertools import product


def zigzag(parts, circular=False):
    """(n, covers) of a zigzag path, closed into a cycle when ``circular``."""
    covers = []
    x = 1
    for i, p in enumerate(parts):
        for _ in range(p):
            covers.append((x, x + 1) if i % 2 == 0 else (x + 1, x))
            x += 1
    n = x
    if circular:
        n -= 1
        covers = [(1 if a == n + 1 else a, 1 if b == n + 1 else b) for a, b in covers]
    return n, set(covers)


def gate(delta):
    parts = []
    for i, d in enumerate(delta):
        if i:
            parts.append(1)
        parts.append(d)
    n, covers = zigzag(parts)
    return n, {(b, a) for a, b in covers}


def subsets(n):
    for bits in product((0, 1), repeat=n):
        yield frozenset(i + 1 for i, b in enumerate(bits) if b)


def ideals(n, covers):
    return [s for s in subsets(n) if all(a in s for a, b in covers if b in s)]


def filters(n, covers):
    return [s for s in subsets(n) if all(b in s for a, b in covers if a in s)]


def ranks(n, covers):
    r = [0] * (n + 1)
    for s in ideals(n, covers):
        r[len(s)] += 1
    return r
