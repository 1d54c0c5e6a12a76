"""Dense matrices over the rings of :mod:`skewcomp.rings` and elementary words.

Elementary-word letters use 1-based ``(i, j, lam)`` indices: ``E_ij(lam)`` is
the identity plus ``lam`` in row ``i``, column ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError, RingMismatchError
from .rings import RingElement


class Matrix:
    __slots__ = ("ring", "rows", "nrows", "ncols")

    def __init__(self, ring, rows, ncols=None):
        rows = tuple(tuple(ring.coerce(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(row) != ncols for row in rows):
            raise DimensionError("ragged entry grid")
        self.ring = ring
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def _raw(cls, ring, rows, ncols):
        # rows already hold canonical elements of ring
        m = cls.__new__(cls)
        m.ring = ring
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        return m

    @classmethod
    def identity(cls, ring, n):
        one, zero = ring.one(), ring.zero()
        return cls._raw(
            ring, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        zero = ring.zero()
        return cls._raw(ring, tuple((zero,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def parse(cls, ring, grid):
        """Build from a grid of element strings (or ints)."""
        return cls(ring, [[ring(x) for x in row] for row in grid])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def transpose(self):
        cols = tuple(tuple(row[j] for row in self.rows) for j in range(self.ncols))
        return Matrix._raw(self.ring, cols, self.nrows)

    @property
    def T(self):
        return self.transpose()

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ring == other.ring
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ring, self.rows))

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __add__(self, other):
        _same_ring(self, other)
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in addition")
        return Matrix._raw(
            self.ring,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols,
        )

    def __neg__(self):
        return Matrix._raw(self.ring, tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def submatrix(self, rows, cols):
        return Matrix._raw(
            self.ring, tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols)
        )

    def to_strings(self):
        return [[str(x) for x in row] for row in self.rows]

    def __repr__(self):
        return f"Matrix({self.ring}, {self.to_strings()})"


def _same_ring(a, b):
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring} vs {b.ring}")


def mat_mul(a, b):
    _same_ring(a, b)
    if a.ncols != b.nrows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    zero = a.ring.zero()
    cols = b.transpose().rows if b.ncols else ()
    out = []
    for row in a.rows:
        new = []
        for col in cols:
            acc = zero
            for x, y in zip(row, col):
                if not x.is_zero() and not y.is_zero():
                    acc = acc + x * y
            new.append(acc)
        out.append(tuple(new))
    return Matrix._raw(a.ring, tuple(out), b.ncols)


def _det_cofactor(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j, x in enumerate(rows[0]):
        if x.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = x * _det_cofactor(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else rows[0][0].ring.zero()


def _det_berkowitz(rows):
    # division-free characteristic polynomial; det = (-1)^n * p(0)
    ring = rows[0][0].ring
    n = len(rows)
    one, zero = ring.one(), ring.zero()
    vect = [one, -rows[0][0]]
    for r in range(1, n):
        sub = [row[:r] for row in rows[:r]]
        row_r = rows[r][:r]
        col = [rows[i][r] for i in range(r)]
        toeplitz = [one, -rows[r][r]]
        cur = col
        for _ in range(r):
            toeplitz.append(-sum((x * y for x, y in zip(row_r, cur)), zero))
            cur = [sum((a * b for a, b in zip(srow, cur)), zero) for srow in sub]
        new = []
        for i in range(r + 2):
            acc = zero
            for k in range(min(i, r) + 1):
                acc = acc + toeplitz[i - k] * vect[k]
            new.append(acc)
        vect = new
    return vect[n] if n % 2 == 0 else -vect[n]


def det(a):
    """Division-free determinant, valid over rings with zero divisors."""
    if not a.is_square:
        raise DimensionError(f"determinant of non-square {a.shape} matrix")
    if a.nrows == 0:
        return a.ring.one()
    if a.nrows <= 4:
        return _det_cofactor(a.rows)
    return _det_berkowitz(a.rows)


def adjugate(a):
    """Classical adjoint; ``a @ adjugate(a) == det(a) * I``."""
    if not a.is_square:
        raise DimensionError("adjugate of non-square matrix")
    n = a.nrows
    if n == 1:
        return Matrix.identity(a.ring, 1)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = a.submatrix([r for r in range(n) if r != i], [c for c in range(n) if c != j])
            cof = det(minor)
            out[j][i] = cof if (i + j) % 2 == 0 else -cof
    return Matrix._raw(a.ring, tuple(tuple(r) for r in out), n)


def perp(a, b):
    """Block-diagonal sum ``a ⊥ b``."""
    _same_ring(a, b)
    zero = a.ring.zero()
    rows = [r + (zero,) * b.ncols for r in a.rows]
    rows += [(zero,) * a.ncols + r for r in b.rows]
    return Matrix._raw(a.ring, tuple(rows), a.ncols + b.ncols)


def one_perp(a):
    """``1 ⊥ a``."""
    return perp(Matrix.identity(a.ring, 1), a)


@dataclass(frozen=True)
class ElementaryWord:
    """Ordered product of elementary matrices ``E_ij(lam)`` of a fixed size."""

    ring: object
    size: int
    letters: tuple = ()

    def __post_init__(self):
        if self.size < 1:
            raise DimensionError("word size must be positive")
        letters = []
        for i, j, lam in self.letters:
            if i == j or not (1 <= i <= self.size and 1 <= j <= self.size):
                raise DimensionError(f"bad letter indices ({i}, {j}) for size {self.size}")
            letters.append((int(i), int(j), self.ring.coerce(lam)))
        object.__setattr__(self, "letters", tuple(letters))

    def __len__(self):
        return len(self.letters)

    def __add__(self, other):
        if other.size != self.size or other.ring != self.ring:
            raise DimensionError("cannot concatenate words of different size or ring")
        return ElementaryWord(self.ring, self.size, self.letters + other.letters)

    def inverse(self):
        return ElementaryWord(
            self.ring, self.size, tuple((i, j, -lam) for i, j, lam in reversed(self.letters))
        )

    def shifted(self, offset, size):
        """The same letters acting on coordinates ``offset+1 .. offset+self.size``."""
        return ElementaryWord(
            self.ring, size, tuple((i + offset, j + offset, lam) for i, j, lam in self.letters)
        )

    def simplified(self):
        """Drop letters with ``lam == 0``."""
        return ElementaryWord(
            self.ring, self.size, tuple(t for t in self.letters if not t[2].is_zero())
        )

    def to_json(self):
        return {
            "ring": str(self.ring),
            "size": self.size,
            "letters": [[i, j, str(lam)] for i, j, lam in self.letters],
        }


def _col_op(rows, i, j, lam):
    # column j += lam * column i   (0-based)
    out = []
    for r in rows:
        if r[i].is_zero():
            out.append(r)
        else:
            r = list(r)
            r[j] = r[j] + lam * r[i]
            out.append(tuple(r))
    return out


def _row_op(rows, i, j, lam):
    # row i += lam * row j   (0-based)
    rows = list(rows)
    rows[i] = tuple(x + lam * y if not y.is_zero() else x for x, y in zip(rows[i], rows[j]))
    return rows


def apply_word(a, word, side="right", transpose=False):
    """Multiply ``a`` by the word's matrix eps without expanding it.

    side="right": a @ eps (or a @ eps^t); side="left": eps @ a (or eps^t @ a);
    side="both": eps^t @ a @ eps, the congruence action.
    """
    if word.ring != a.ring:
        raise RingMismatchError("word and matrix over different rings")
    if side == "both":
        return apply_word(apply_word(a, word, "left", transpose=True), word, "right")
    rows = list(a.rows)
    if side == "right":
        if a.ncols != word.size:
            raise DimensionError(f"word of size {word.size} cannot act on {a.shape} from the right")
        if transpose:
            for i, j, lam in reversed(word.letters):
                rows = _col_op(rows, j - 1, i - 1, lam)
        else:
            for i, j, lam in word.letters:
                rows = _col_op(rows, i - 1, j - 1, lam)
    elif side == "left":
        if a.nrows != word.size:
            raise DimensionError(f"word of size {word.size} cannot act on {a.shape} from the left")
        if transpose:
            for i, j, lam in word.letters:
                rows = _row_op(rows, j - 1, i - 1, lam)
        else:
            for i, j, lam in reversed(word.letters):
                rows = _row_op(rows, i - 1, j - 1, lam)
    else:
        raise ValueError(f"unknown side {side!r}")
    return Matrix._raw(a.ring, tuple(rows), a.ncols)


def expand_word(word):
    """The matrix product of the letters, in order."""
    return apply_word(Matrix.identity(word.ring, word.size), word, "right")


def elementary(ring, n, i, j, lam):
    return expand_word(ElementaryWord(ring, n, ((i, j, lam),)))


def row_matrix(ring, row):
    return Matrix(ring, [list(row)])
