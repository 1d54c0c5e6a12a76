"""Alternating matrices and the Pfaffian, normalised so that pf(psi_r) = 1."""

from __future__ import annotations

from .errors import ConstructionError, DimensionError, NotAlternatingError
from .matrices import Matrix, det, mat_mul, perp
from .rings import Rationals


class AlternatingMatrix:
    """A square matrix checked to be skew-symmetric with zero diagonal.

    Build through :func:`check_alternating`; the wrapped matrix is never modified.
    """

    __slots__ = ("body",)

    def __init__(self, body):
        self.body = body

    @property
    def ring(self):
        return self.body.ring

    @property
    def size(self):
        return self.body.nrows

    def first_row(self):
        return self.body.rows[0]

    def __eq__(self, other):
        return isinstance(other, AlternatingMatrix) and self.body == other.body

    def __hash__(self):
        return hash(self.body)

    def __repr__(self):
        return f"AlternatingMatrix({self.body.to_strings()})"


def check_alternating(m):
    if isinstance(m, AlternatingMatrix):
        return m
    if not m.is_square:
        raise DimensionError(f"alternating matrices are square, got {m.shape}")
    n = m.nrows
    for i in range(n):
        if not m[i, i].is_zero():
            raise NotAlternatingError(
                f"nonzero diagonal entry at ({i + 1}, {i + 1})", (i + 1, i + 1)
            )
        for j in range(i + 1, n):
            if m[j, i] != -m[i, j]:
                raise NotAlternatingError(
                    f"entry ({j + 1}, {i + 1}) is not the negative of ({i + 1}, {j + 1})",
                    (j + 1, i + 1),
                )
    return AlternatingMatrix(m)


def psi(r, ring=None):
    """The 2r x 2r standard form psi_1 ⊥ ... ⊥ psi_1."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    ring = ring or Rationals()
    block = Matrix(ring, [[0, 1], [-1, 0]])
    out = Matrix(ring, [])
    for _ in range(r):
        out = perp(out, block)
    return AlternatingMatrix(out)


def _pf(rows, idx):
    # first-row expansion over the index list idx
    if not idx:
        return None  # stands for 1
    first, rest = idx[0], idx[1:]
    total = None
    for pos, j in enumerate(rest):
        a = rows[first][j]
        if a.is_zero():
            continue
        sub = _pf(rows, rest[:pos] + rest[pos + 1:])
        if sub is not None:
            if sub.is_zero():
                continue
            a = a * sub
        # rest[pos] is column pos+2 of the (sub)matrix in 1-based terms
        term = a if pos % 2 == 0 else -a
        total = term if total is None else total + term
    if total is None:
        return rows[first][first].ring.zero()
    return total


def pfaffian(a):
    """pf(A) = sum_j (-1)^j a_1j pf(A without rows/cols 1, j); pf of 0x0 is 1."""
    a = check_alternating(a)
    if a.size % 2:
        raise DimensionError(f"Pfaffian of odd size {a.size}")
    value = _pf(a.body.rows, tuple(range(a.size)))
    return a.ring.one() if value is None else value


def congruence(a, alpha):
    """alpha^t A alpha, with pf(result) = pf(A) det(alpha) verified."""
    a = check_alternating(a)
    if not alpha.is_square or alpha.nrows != a.size:
        raise DimensionError(f"congruence needs a {a.size}x{a.size} matrix, got {alpha.shape}")
    result = check_alternating(mat_mul(mat_mul(alpha.T, a.body), alpha))
    if a.size % 2 == 0 and pfaffian(result) != pfaffian(a) * det(alpha):
        raise ConstructionError("pf(alpha^t A alpha) != pf(A) det(alpha)")
    return result


def alternating_perp(a, b):
    return AlternatingMatrix(perp(check_alternating(a).body, check_alternating(b).body))


def alternating_from_upper(ring, n, upper):
    """Alternating n x n matrix from its strictly-upper entries in row-major order."""
    zero = ring.zero()
    grid = [[zero] * n for _ in range(n)]
    it = iter(upper)
    for i in range(n):
        for j in range(i + 1, n):
            x = ring.coerce(next(it))
            grid[i][j] = x
            grid[j][i] = -x
    return AlternatingMatrix(Matrix(ring, grid))
