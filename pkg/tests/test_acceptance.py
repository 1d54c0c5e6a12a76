"""The ten acceptance criteria, each with its time bound.

Every test records one PASS/FAIL line, shown in the terminal summary.
"""

import itertools
import random
import time

import pytest

from skewcomp.cli import run
from skewcomp.completion import (
    certify_row,
    inner,
    krusemeyer_complete,
    skew4,
    skew4_matrix,
    square_witt_rep,
)
from skewcomp.finite import enumerate_um, find_witness, orbit_table, same_orbit, skew_completable_search
from skewcomp.matrices import Matrix, apply_word, det, one_perp
from skewcomp.pfaffian import alternating_from_upper, alternating_perp, congruence, pfaffian, psi
from skewcomp.rings import enumerate_elements, parse_ring
from tests import acceptance_log
from tests.oracles import matching_pfaffian

SPHERE = "Q[x0,x1,x2]/(x0^2+x1^2+x2^2-1)"
G3 = "Q[v1,v2,v3,w1,w2,w3]/(v1*w1+v2*w2+v3*w3-1)"


def record(number, title, ok, elapsed, bound):
    ok = ok and elapsed < bound
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.2f}s, bound {bound}s)"
    acceptance_log.LINES.append(line)
    print(line)
    assert ok, line


def timed(fn):
    start = time.perf_counter()
    ok = fn()
    return ok, time.perf_counter() - start


def test_criterion_01_pfaffian_convention():
    ok, t = timed(lambda: all(pfaffian(psi(r)) == 1 for r in range(1, 7)))
    record(1, "pf(psi_r) = 1 for r = 1..6", ok, t, 1)


def _random_alt(rng, ring, n):
    return alternating_from_upper(ring, n, [rng.randint(-9, 9) for _ in range(n * (n - 1) // 2)])


def _laws():
    rng = random.Random(2024)
    for spec in ["Zmod:4", "Zmod:5", "Zmod:6", "Q"]:
        ring = parse_ring(spec)
        for k in range(200):
            n = 2 * (1 + k % 3)
            a = _random_alt(rng, ring, n)
            pf = pfaffian(a)
            if det(a.body) != pf * pf:
                return False
            alpha = Matrix(ring, [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)])
            if pfaffian(congruence(a, alpha)) != pf * det(alpha):
                return False
            # perp sizes stay within 6
            c = _random_alt(rng, ring, 2 + 2 * (k % 2))
            b = _random_alt(rng, ring, 2)
            if pfaffian(alternating_perp(c, b)) != pfaffian(c) * pfaffian(b):
                return False
    return True


def test_criterion_02_pfaffian_laws():
    ok, t = timed(_laws)
    record(2, "det = pf^2, congruence and perp laws, 200 instances per ring", ok, t, 30)


def _matchings():
    ring = parse_ring("Zmod:3")
    for upper in itertools.product(enumerate_elements(ring), repeat=6):
        a = alternating_from_upper(ring, 4, upper)
        if pfaffian(a) != matching_pfaffian(a):
            return False
    ring = parse_ring("Zmod:5")
    rng = random.Random(7)
    for _ in range(100):
        a = _random_alt(rng, ring, 6)
        if pfaffian(a) != matching_pfaffian(a):
            return False
    return True


def test_criterion_03_matchings_oracle():
    ok, t = timed(_matchings)
    record(3, "Pfaffian agrees with the perfect-matchings sum", ok, t, 60)


def _skew4_identity():
    ring = parse_ring("Q[v0,v1,v2,w0,w1,w2]")
    g = ring.gens()
    V = skew4_matrix(g[:3], g[3:])
    return pfaffian(V) == ring("v0*w0+v1*w1+v2*w2") == inner(g[:3], g[3:])


def test_criterion_04_skew4_identity():
    ok, t = timed(_skew4_identity)
    record(4, "pf(skew4(v, w)) = <v, w> as a polynomial identity", ok, t, 1)


def _rows():
    sphere = parse_ring(SPHERE)
    g3 = parse_ring(G3)
    return [
        certify_row(sphere.gens(), sphere.gens()),
        certify_row(g3.gens()[:3], g3.gens()[3:]),
    ]


def _pipeline():
    for row in _rows():
        V = skew4(row).V
        result = krusemeyer_complete(V)
        K = result.K
        if K.rows[0] != (row.v[0] ** 2,) + row.v[1:] or not det(K).is_one():
            return False
        if apply_word(one_perp(K), result.certificate, "right") != V.body:
            return False
    return True


def test_criterion_05_completion_pipeline():
    ok, t = timed(_pipeline)
    record(5, "K(V) over the sphere ring and G3 with verified certificate", ok, t, 10)


def _square_rep():
    rows = _rows() + [certify_row(["1", "2", "3"], ["1", "0", "0"], parse_ring("Zmod:6"))]
    for row in rows:
        W = square_witt_rep(krusemeyer_complete(skew4(row).V))
        if not pfaffian(W).is_one() or W.first_row()[1:] != (row.v[0] ** 2,) + row.v[1:]:
            return False
    z6 = rows[-1]
    W = skew4(z6).V
    for _ in range(2):
        W = square_witt_rep(krusemeyer_complete(W))
    return W.first_row()[1:] == (z6.v[0] ** 4,) + z6.v[1:]


def test_criterion_06_square_representative():
    ok, t = timed(_square_rep)
    record(6, "square representative: pf 1, first row (0, v1^2, ...), iterate to v1^4", ok, t, 60)


def _row_column_orbits():
    for m in (2, 3, 4):
        ring = parse_ring(f"Zmod:{m}")
        for v in enumerate_um(ring, 3):
            completions = [skew4(certify_row(v, find_witness(ring, v))).V]
            found = skew_completable_search(ring, v, require_pfaffian_one=True)
            if found is not None:
                completions.append(found)
            for V in completions:
                K = krusemeyer_complete(V).K
                if same_orbit(ring, K.rows[0], K.column(0)) is None:
                    return False
    return True


def test_criterion_07_row_and_column_same_orbit():
    ok, t = timed(_row_column_orbits)
    record(7, "e1 K(V) and e1 K(V)^t in the same E_3 orbit, Zmod:2..4", ok, t, 300)


def _skew_completable():
    for m in (2, 3, 4):
        ring = parse_ring(f"Zmod:{m}")
        if any(skew_completable_search(ring, v) is None for v in enumerate_um(ring, 3)):
            return False
    return True


def test_criterion_08_skew_completable():
    ok, t = timed(_skew_completable)
    record(8, "every row of Um_3(Zmod:m), m = 2..4, is skew completable", ok, t, 300)


def _transitive():
    return all(
        len(orbit_table(parse_ring(f"Zmod:{m}"), n).classes) == 1
        for n in (2, 3) for m in range(2, 7)
    )


def test_criterion_09_transitivity():
    ok, t = timed(_transitive)
    record(9, "E_n(Zmod:m) transitive on Um_n, n = 2, 3, m = 2..6", ok, t, 60)


def _golden():
    import io
    from pathlib import Path

    golden = Path(__file__).parent / "golden"
    cases = [
        (["demo", "kaplansky"], "demo_kaplansky.json"),
        (["demo", "identities"], "demo_identities.json"),
        (["orbit", "--ring", "Zmod:3", "--n", "2"], "orbit_zmod3_n2.json"),
    ]
    for argv, name in cases:
        outs = []
        for _ in range(2):
            buf = io.StringIO()
            if run(argv + ["--format", "json"], stdout=buf) != 0:
                return False
            outs.append(buf.getvalue())
        if outs[0] != outs[1] or outs[0] != (golden / name).read_text():
            return False
    return True


def test_criterion_10_cli_golden_files():
    ok, t = timed(_golden)
    record(10, "CLI golden files byte-identical across runs", ok, t, 60)
