"""Independent reference implementations used only by the tests."""

import itertools


def leibniz_det(m):
    n = m.nrows
    total = m.ring.zero()
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = m.ring.one()
        for i in range(n):
            term = term * m[i, perm[i]]
        total = total - term if inversions % 2 else total + term
    return total


def perfect_matchings(idx):
    if not idx:
        yield []
        return
    first, rest = idx[0], idx[1:]
    for k, j in enumerate(rest):
        for m in perfect_matchings(rest[:k] + rest[k + 1:]):
            yield [(first, j)] + m


def matching_pfaffian(a):
    """Sum over perfect matchings, signed by the crossing number."""
    body = getattr(a, "body", a)
    total = body.ring.zero()
    for m in perfect_matchings(tuple(range(body.nrows))):
        crossings = sum(
            1 for (a1, b1), (a2, b2) in itertools.combinations(m, 2)
            if a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1
        )
        term = body.ring.one()
        for i, j in m:
            term = term * body[i, j]
        total = total - term if crossings % 2 else total + term
    return total


def brute_unimodular(ring, row, elements):
    return any(
        sum((a * b for a, b in zip(row, w)), ring.zero()).is_one()
        for w in itertools.product(elements, repeat=len(row))
    )
