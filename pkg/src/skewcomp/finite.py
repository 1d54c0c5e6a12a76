"""Exhaustive decision procedures over small finite rings.

Rows are tuples of ring elements; the elementary group acts on the right,
so the letter (i, j, lam) adds lam times entry i to entry j.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass

from .errors import DimensionError, InfiniteRingError, NotUnimodularError, SearchBoundError
from .matrices import ElementaryWord
from .pfaffian import alternating_from_upper, pfaffian
from .rings import Modular, enumerate_elements, is_unit

MAX_RING_SIZE = 8
MAX_MATRIX_SIZE = 6


def _require_finite(ring):
    size = ring.cardinality()
    if size is None:
        raise InfiniteRingError(f"{ring} is not finite")
    if size > MAX_RING_SIZE:
        raise SearchBoundError(f"|R| = {size} exceeds the search bound {MAX_RING_SIZE}")
    return size


def _generates_unit_ideal(ring, row):
    if isinstance(ring, Modular):
        return math.gcd(*(x.value for x in row), ring.m) == 1
    elements = enumerate_elements(ring)
    ideal = {ring.zero()}
    for a in row:
        multiples = {r * a for r in elements}
        ideal = {x + y for x in ideal for y in multiples}
    return ring.one() in ideal


def is_unimodular(ring, row):
    _require_finite(ring)
    return _generates_unit_ideal(ring, tuple(ring.coerce(x) for x in row))


def find_witness(ring, row):
    """Some w with <row, w> = 1, by exhaustive search; None if there is none."""
    _require_finite(ring)
    elements = enumerate_elements(ring)
    row = tuple(ring.coerce(x) for x in row)
    for w in itertools.product(elements, repeat=len(row)):
        total = ring.zero()
        for a, b in zip(row, w):
            total = total + a * b
        if total.is_one():
            return w
    return None


def enumerate_um(ring, n):
    """All unimodular rows of length n, in product order of the ring enumeration."""
    if n < 1:
        raise ValueError("n must be >= 1")
    _require_finite(ring)
    elements = enumerate_elements(ring)
    return [row for row in itertools.product(elements, repeat=n) if _generates_unit_ideal(ring, row)]


def _generators(ring, n):
    lams = [x for x in enumerate_elements(ring) if not x.is_zero()]
    return [(i, j, lam) for i in range(n) for j in range(n) if i != j for lam in lams]


def _neighbours(row, gens):
    for i, j, lam in gens:
        if row[i].is_zero():
            continue
        new = list(row)
        new[j] = new[j] + lam * row[i]
        yield (i, j, lam), tuple(new)


@dataclass(frozen=True)
class Orbit:
    representative: tuple
    members: tuple
    words: dict  # member -> ElementaryWord carrying the representative to it

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class OrbitTable:
    ring: object
    n: int
    classes: tuple

    @property
    def sizes(self):
        return [len(c) for c in self.classes]

    def to_json(self, full=False):
        out = {
            "ring": str(self.ring),
            "n": self.n,
            "orbit_count": len(self.classes),
            "sizes": self.sizes,
            "representatives": [[str(x) for x in c.representative] for c in self.classes],
        }
        if full:
            out["orbits"] = [
                [
                    {"row": [str(x) for x in m],
                     "word": [[i, j, str(lam)] for i, j, lam in c.words[m].letters]}
                    for m in c.members
                ]
                for c in self.classes
            ]
        return out


def _bfs(ring, start, goal=None):
    n = len(start)
    gens = _generators(ring, n)
    parent = {start: None}
    queue = deque([start])
    while queue:
        row = queue.popleft()
        if row == goal:
            break
        for letter, child in _neighbours(row, gens):
            if child not in parent:
                parent[child] = (row, letter)
                queue.append(child)
    return parent


def _word_to(ring, parent, node):
    n = len(node)
    letters = []
    while parent[node] is not None:
        node, (i, j, lam) = parent[node]
        letters.append((i + 1, j + 1, lam))
    return ElementaryWord(ring, n, tuple(reversed(letters)))


def _sort_key(ring):
    index = {x: k for k, x in enumerate(enumerate_elements(ring))}
    return lambda row: tuple(index[x] for x in row)


def _check_row(ring, row):
    row = tuple(ring.coerce(x) for x in row)
    if not _generates_unit_ideal(ring, row):
        raise NotUnimodularError(f"row {[str(x) for x in row]} is not unimodular")
    return row


def orbit_bfs(ring, n, start):
    """The E_n(R)-orbit of ``start`` with a word for every member."""
    _require_finite(ring)
    start = _check_row(ring, start)
    if len(start) != n:
        raise DimensionError(f"start row has length {len(start)}, expected {n}")
    parent = _bfs(ring, start)
    members = tuple(sorted(parent, key=_sort_key(ring)))
    words = {m: _word_to(ring, parent, m) for m in members}
    return Orbit(start, members, words)


def orbit_table(ring, n):
    rows = enumerate_um(ring, n)
    seen = set()
    classes = []
    for row in rows:
        if row in seen:
            continue
        orbit = orbit_bfs(ring, n, row)
        seen.update(orbit.members)
        classes.append(orbit)
    return OrbitTable(ring, n, tuple(classes))


def same_orbit(ring, u, v):
    """A word eps with u eps = v, or None when u and v lie in different orbits."""
    _require_finite(ring)
    u, v = _check_row(ring, u), _check_row(ring, v)
    if len(u) != len(v):
        raise DimensionError("rows of different lengths")
    parent = _bfs(ring, u, goal=v)
    if v not in parent:
        return None
    return _word_to(ring, parent, v)


def completable_bfs(ring, row):
    """A word carrying e_1 to ``row``, or None."""
    row = tuple(ring.coerce(x) for x in row)
    if len(row) < 2:
        raise DimensionError("completable_bfs needs n >= 2")
    e1 = (ring.one(),) + (ring.zero(),) * (len(row) - 1)
    return same_orbit(ring, e1, row)


def skew_completable_search(ring, row, require_pfaffian_one=False):
    """An invertible alternating V with first row (0, v), or None when none exists.

    Enumerates every choice of the free strictly-upper entries.
    """
    _require_finite(ring)
    v = tuple(ring.coerce(x) for x in getattr(row, "v", row))
    size = len(v) + 1
    if size % 2:
        raise DimensionError(f"skew completion needs a row of odd length, got {len(v)}")
    if size > MAX_MATRIX_SIZE:
        raise SearchBoundError(f"matrix size {size} exceeds the search bound {MAX_MATRIX_SIZE}")
    elements = enumerate_elements(ring)
    free = (size - 1) * (size - 2) // 2
    for rest in itertools.product(elements, repeat=free):
        V = alternating_from_upper(ring, size, v + rest)
        pf = pfaffian(V)
        if require_pfaffian_one:
            if pf.is_one():
                return V
        elif is_unit(ring, pf):
            return V
    return None
