"""Witt-class representatives and pad-and-conjugate equivalence certificates.

x ~ y is certified by (l, eps) with A_x ⊥ psi_{s+l} = eps^t (A_y ⊥ psi_{r+l}) eps,
where A_x is 2r x 2r and A_y is 2s x 2s.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import DimensionError, InfiniteRingError, PfaffianError, RingMismatchError
from .matrices import ElementaryWord, apply_word, perp
from .pfaffian import AlternatingMatrix, check_alternating, pfaffian, psi
from .rings import enumerate_elements


@dataclass(frozen=True)
class WittRep:
    A: AlternatingMatrix

    @property
    def ring(self):
        return self.A.ring

    @property
    def size(self):
        return self.A.size


@dataclass(frozen=True)
class EquivCertificate:
    l: int
    eps: ElementaryWord

    def inverse(self):
        return EquivCertificate(self.l, self.eps.inverse())

    def to_json(self):
        return {"l": self.l, "eps": self.eps.to_json()}


def witt_rep(a):
    a = check_alternating(a)
    if a.size % 2:
        raise DimensionError(f"Witt representatives have even size, got {a.size}")
    pf = pfaffian(a)
    if not pf.is_one():
        raise PfaffianError(f"pfaffian is {pf}, not 1")
    return WittRep(a)


def pad(x, l):
    if l < 0:
        raise ValueError("padding must be nonnegative")
    if l == 0:
        return x
    return WittRep(AlternatingMatrix(perp(x.A.body, psi(l, x.ring).body)))


def witt_perp(x, y):
    if x.ring != y.ring:
        raise RingMismatchError("Witt representatives over different rings")
    return WittRep(AlternatingMatrix(perp(x.A.body, y.A.body)))


def padded_pair(x, y, l):
    """(A_x ⊥ psi_{s+l}, A_y ⊥ psi_{r+l}); both of size 2(r+s+l)."""
    r, s = x.size // 2, y.size // 2
    return pad(x, s + l).A.body, pad(y, r + l).A.body


def check_equiv(x, y, cert):
    left, right = padded_pair(x, y, cert.l)
    if cert.eps.size != left.nrows:
        raise DimensionError(
            f"certificate word has size {cert.eps.size}, padded matrices have size {left.nrows}"
        )
    return apply_word(right, cert.eps, "both") == left


def generator_pool(ring, size):
    """All E_ij(lam), lam != 0, ordered by (i, j) then ring enumeration order."""
    lams = [x for x in enumerate_elements(ring) if not x.is_zero()]
    return [(i, j, lam) for i in range(1, size + 1) for j in range(1, size + 1) if i != j
            for lam in lams]


def search_equiv(x, y, depth, pool=None, l=0):
    """Breadth-first search for eps of length <= depth; None is inconclusive.

    The certificate returned is the lexicographically least of minimal length
    with respect to the pool order.
    """
    if not x.ring.is_finite:
        raise InfiniteRingError(f"search_equiv needs a finite ring, got {x.ring}")
    target, start = padded_pair(x, y, l)
    size = target.nrows
    ring = x.ring
    if pool is None:
        pool = generator_pool(ring, size)
    parent = {start: None}
    frontier = deque([start])
    level = 0
    if start == target:
        return EquivCertificate(l, ElementaryWord(ring, size))
    while frontier and level < depth:
        next_frontier = deque()
        for state in frontier:
            for letter in pool:
                word = ElementaryWord(ring, size, (letter,))
                child = apply_word(state, word, "both")
                if child in parent:
                    continue
                parent[child] = (state, letter)
                if child == target:
                    letters = []
                    node = child
                    while parent[node] is not None:
                        node, let = parent[node]
                        letters.append(let)
                    return EquivCertificate(l, ElementaryWord(ring, size, tuple(reversed(letters))))
                next_frontier.append(child)
        frontier = next_frontier
        level += 1
    return None
