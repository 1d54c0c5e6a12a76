"""Certified unimodular rows, skew completions and the completion K(V)
of the row with squared first entry.

Construction of K(V) for a skew completion V (size n+1, Pfaffian 1) of v:

1. Write V = [[0, v], [-v^t, X]] and let w be the tail of V^{-1} e_1, so
   <v, w> = 1 and X w^t = 0.  The column operations
   ``col1 += sum w_j col_{j+1}``, ``col_{j+1} -= v_j col1``,
   ``col1 += sum w_j col_{j+1}`` carry V to 1 ⊥ S with S = v^t v + X.
2. The first row s of S and the target t = (v_1^2, v_2, ..., v_n) are both
   unimodular.  For n = 3 the vector
   u = (w_1^2, -(1 + v_1 w_1)((v_1 - 1) v_3 - w_3), (1 + v_1 w_1)((v_1 - 1) v_2 + w_2))
   satisfies <s, u> = <t, u> = 1, so the transvection I + u^t (t - s) maps
   s to t.  It is written as a product of elementary matrices by splitting
   t - s into Koszul vectors u_j e_i - u_i e_j; each factor is a commutator of
   two-letter words times a two-letter word.  For n >= 5 the passage from s to
   t is found by orbit search over finite rings only.
3. K = S Q, and the inverse of the full operation word certifies
   V = (1 ⊥ K) eps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConstructionError, DimensionError, NotUnimodularError
from .matrices import ElementaryWord, Matrix, adjugate, apply_word, det, mat_mul, one_perp
from .pfaffian import AlternatingMatrix, check_alternating, congruence, pfaffian, psi


def inner(v, w):
    total = v[0].ring.zero()
    for x, y in zip(v, w):
        total = total + x * y
    return total


@dataclass(frozen=True)
class CertifiedRow:
    v: tuple
    w: tuple

    @property
    def ring(self):
        return self.v[0].ring

    def __len__(self):
        return len(self.v)


def certify_row(v, w, ring=None):
    if ring is not None:
        v = [ring(x) if isinstance(x, str) else ring.coerce(x) for x in v]
        w = [ring(x) if isinstance(x, str) else ring.coerce(x) for x in w]
    v, w = tuple(v), tuple(w)
    if len(v) != len(w):
        raise DimensionError(f"row and witness lengths differ ({len(v)} vs {len(w)})")
    if len(v) < 2:
        raise DimensionError("unimodular rows need length >= 2")
    value = inner(v, w)
    if not value.is_one():
        raise NotUnimodularError(f"<v, w> = {value}, not 1", value)
    return CertifiedRow(v, w)


def power_first(row, n):
    """(v_0^n, v_1, ...) with witness from 1 - x^n = (1 - x)(1 + x + ... + x^(n-1)), x = v_0 w_0."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return row
    x = row.v[0] * row.w[0]
    h = sum((x**k for k in range(n)), row.ring.zero())
    v = (row.v[0] ** n,) + row.v[1:]
    w = (row.w[0] ** n,) + tuple(wi * h for wi in row.w[1:])
    return certify_row(v, w)


def power_last(row, n):
    if n < 1:
        raise ValueError("n must be >= 1")
    rev = power_first(CertifiedRow(row.v[::-1], row.w[::-1]), n)
    return certify_row(rev.v[::-1], rev.w[::-1])


@dataclass(frozen=True)
class SkewCompletion:
    row: CertifiedRow
    V: AlternatingMatrix
    provenance: str  # "explicit-4x4", "from-completion" or "search"


@dataclass(frozen=True)
class CompletionResult:
    K: Matrix
    certificate: ElementaryWord | None
    V: AlternatingMatrix | None = None
    checks: dict = field(default_factory=dict)

    @property
    def row(self):
        return self.K.rows[0]


def skew4_matrix(v, w):
    """The 4x4 alternating matrix with first row (0, v) whose Pfaffian is <v, w>."""
    ring = v[0].ring
    (v0, v1, v2), (w0, w1, w2) = v, w
    z = ring.zero()
    return check_alternating(
        Matrix(
            ring,
            [
                [z, v0, v1, v2],
                [-v0, z, w2, -w1],
                [-v1, -w2, z, w0],
                [-v2, w1, -w0, z],
            ],
        )
    )


def skew4(row):
    """Skew completion of a certified row of length 3, with Pfaffian 1."""
    if len(row) != 3:
        raise DimensionError("skew4 needs a row of length 3")
    V = skew4_matrix(row.v, row.w)
    if not pfaffian(V).is_one():
        raise ConstructionError(f"pf(skew4) = {pfaffian(V)}, expected 1")
    return SkewCompletion(row, V, "explicit-4x4")


def skew_from_completion(sigma, witness=None):
    """(1 ⊥ sigma)^t psi_r (1 ⊥ sigma) for sigma of odd size with det 1."""
    if not sigma.is_square or sigma.nrows % 2 == 0:
        raise DimensionError(f"sigma must be square of odd size, got {sigma.shape}")
    if not det(sigma).is_one():
        raise ConstructionError(f"det(sigma) = {det(sigma)}, expected 1")
    n = sigma.nrows
    if witness is None:
        witness = adjugate(sigma).column(0)
    row = certify_row(sigma.rows[0], witness)
    V = congruence(psi((n + 1) // 2, sigma.ring), one_perp(sigma))
    if V.first_row() != (sigma.ring.zero(),) + sigma.rows[0]:
        raise ConstructionError("first row of V is not (0, e1 sigma)")
    return SkewCompletion(row, V, "from-completion")


def skew_witness(V):
    """Tail of V^{-1} e_1 for an alternating V of Pfaffian 1."""
    body = V.body
    if V.size == 4:
        return (body[2, 3], -body[1, 3], body[1, 2])
    return adjugate(body).column(0)[1:]


def _suslin_word(ring, u, z, t):
    """Elementary word for I + u^t z, given <t, u> = 1 and <z, u> = 0 (size >= 3)."""
    n = len(u)
    letters = []
    for i in range(n):
        for j in range(i + 1, n):
            c = z[i] * t[j] - z[j] * t[i]
            if c.is_zero():
                continue
            k = next(x for x in range(n) if x not in (i, j))
            ui, uj = u[i], u[j]
            I, J, Kk = i + 1, j + 1, k + 1
            # commutator [E_ik(ui) E_jk(uj), E_ki(c uj) E_kj(-c ui)]
            letters += [
                (I, Kk, ui), (J, Kk, uj), (Kk, I, c * uj), (Kk, J, -c * ui),
                (I, Kk, -ui), (J, Kk, -uj), (Kk, I, -c * uj), (Kk, J, c * ui),
            ]
            for m in range(n):
                if m not in (i, j):
                    letters += [(m + 1, I, c * u[m] * uj), (m + 1, J, -c * u[m] * ui)]
    return ElementaryWord(ring, n, tuple(letters)).simplified()


def _common_witness_3(v, w):
    a, b, c = v
    d, e, f = w
    g = 1 + a * d
    return (d * d, -g * ((a - 1) * c - e), g * ((a - 1) * b + f))


def _passage_word(ring, s, t, w, v):
    """Word Q of size n with s Q = t, or None."""
    n = len(s)
    if n == 3:
        u = _common_witness_3(v, w)
        z = tuple(x - y for x, y in zip(t, s))
        if not inner(t, u).is_one() or not inner(z, u).is_zero():
            raise ConstructionError("common witness identity failed")
        return _suslin_word(ring, u, z, t)
    if ring.is_finite:
        from .finite import same_orbit

        return same_orbit(ring, s, t)
    return None


def krusemeyer_complete(S):
    """Completion K of (v_1^2, v_2, ..., v_n) with certificate V = (1 ⊥ K) eps.

    Returns None when n >= 5 and no passage word could be found (infinite ring).
    """
    V = S.V if isinstance(S, SkewCompletion) else check_alternating(S)
    ring = V.ring
    size = V.size
    if size % 2 or size < 4:
        raise DimensionError(f"skew completion must have even size >= 4, got {size}")
    if not pfaffian(V).is_one():
        raise ConstructionError(f"pf(V) = {pfaffian(V)}, expected 1")
    n = size - 1
    v = V.first_row()[1:]
    w = skew_witness(V)
    if not inner(v, w).is_one():
        raise ConstructionError("witness extracted from V is not valid")

    ops = [(j + 2, 1, w[j]) for j in range(n)]
    ops += [(1, j + 2, -v[j]) for j in range(n)]
    ops += [(j + 2, 1, w[j]) for j in range(n)]
    reduce_word = ElementaryWord(ring, size, tuple(ops)).simplified()
    M = apply_word(V.body, reduce_word, "right")
    zero, one = ring.zero(), ring.one()
    if M.rows[0] != (one,) + (zero,) * n or any(not M[i, 0].is_zero() for i in range(1, size)):
        raise ConstructionError("column reduction did not reach 1 ⊥ S")
    Smat = M.submatrix(range(1, size), range(1, size))
    s = Smat.rows[0]
    t = (v[0] * v[0],) + tuple(v[1:])

    passage = _passage_word(ring, s, t, w, v)
    if passage is None:
        return None
    K = apply_word(Smat, passage, "right")
    certificate = (reduce_word + passage.shifted(1, size)).inverse()

    checks = {
        "first_row": K.rows[0] == t,
        "det_one": det(K).is_one(),
        "certificate": apply_word(one_perp(K), certificate, "right") == V.body,
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise ConstructionError(f"K(V) postconditions failed: {', '.join(failed)}")
    return CompletionResult(K, certificate, V, checks)


def square_witt_rep(result, r=None):
    """W = (1 ⊥ K^t) psi_r (1 ⊥ K); alternating, Pfaffian det(K) = 1, e1 W = (0, e1 K)."""
    K = result.K if isinstance(result, CompletionResult) else result
    n = K.nrows
    if r is None:
        r = (n + 1) // 2
    if 2 * r != n + 1:
        raise DimensionError(f"1 + size(K) = {n + 1} does not equal 2r = {2 * r}")
    alpha = one_perp(K)
    W = check_alternating(mat_mul(mat_mul(alpha.T, psi(r, K.ring).body), alpha))
    if not pfaffian(W).is_one():
        raise ConstructionError("pf(W) != 1")
    if W.first_row() != (K.ring.zero(),) + K.rows[0]:
        raise ConstructionError("first row of W is not (0, e1 K)")
    return W


@dataclass(frozen=True)
class VerificationReport:
    first_row_matches: bool
    determinant: object

    @property
    def det_is_one(self):
        return self.determinant.is_one()

    @property
    def passed(self):
        return self.first_row_matches and self.det_is_one


def verify_completion(row, sigma):
    if not sigma.is_square or sigma.nrows != len(row):
        raise DimensionError("sigma must be square with size equal to the row length")
    row = tuple(sigma.ring.coerce(x) for x in row)
    return VerificationReport(sigma.rows[0] == row, det(sigma))


@dataclass(frozen=True)
class TangentSample:
    point: tuple
    field: tuple
    orthogonality: Fraction
    vanishing: bool


@dataclass(frozen=True)
class TangentReport:
    precondition_ok: bool
    determinant: object
    samples: tuple

    @property
    def vanishing_points(self):
        return [s.point for s in self.samples if s.vanishing]


def tangent_check(sigma, points, strict=True):
    """Evaluate the candidate tangent field (second row of adj(sigma)^t) at sphere points.

    With strict=False a sigma failing the completion precondition is still
    evaluated and the failure is recorded in the report.
    """
    ring = sigma.ring
    if sigma.shape != (3, 3) or getattr(ring, "nvars", 0) != 3:
        raise DimensionError("tangent_check needs a 3x3 matrix over a 3-variable ring")
    xs = tuple(ring.gens())
    d = det(sigma)
    ok = sigma.rows[0] == xs and d.is_one()
    if strict and not ok:
        raise ConstructionError("sigma is not a completion of (x0, x1, x2)")
    adj = adjugate(sigma)
    field_polys = adj.column(1)
    samples = []
    for p in points:
        p = tuple(Fraction(x) for x in p)
        if sum(x * x for x in p) != 1:
            raise ValueError(f"{p} is not on the unit sphere")
        vals = tuple(ring.poly_ring.evaluate(f.value, p).value for f in field_polys)
        dot = sum(a * b for a, b in zip(vals, p))
        samples.append(TangentSample(p, vals, dot, all(x == 0 for x in vals)))
    return TangentReport(ok, d, tuple(samples))
