"""Command-line front end: ``skewcomp <command> [options]``.

Exit status is 2 for parse or validation errors, 1 when a check fails and 0
otherwise.  ``--format json`` prints one deterministic JSON report.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import io
from .completion import (
    certify_row,
    inner,
    krusemeyer_complete,
    skew4,
    skew4_matrix,
    skew_from_completion,
    square_witt_rep,
    tangent_check,
)
from .errors import ConstructionError, RingMismatchError, SkewcompError
from .finite import enumerate_um, find_witness, orbit_table, same_orbit
from .matrices import Matrix, det, mat_mul
from .pfaffian import alternating_from_upper, alternating_perp, check_alternating, pfaffian, psi
from .rings import PolynomialRing, Rationals, parse_ring
from .witt import check_equiv, search_equiv, witt_rep

SPHERE = "Q[x0,x1,x2]/(x0^2+x1^2+x2^2-1)"
G3 = "Q[v1,v2,v3,w1,w2,w3]/(v1*w1+v2*w2+v3*w3-1)"


class Report:
    def __init__(self, command):
        self.command = command
        self.inputs = {}
        self.outputs = {}
        self.checks = []

    def check(self, name, ok, detail=""):
        status = ok if isinstance(ok, str) else ("pass" if ok else "fail")
        self.checks.append({"name": name, "status": status, "detail": str(detail)})
        return status == "pass"

    @property
    def exit_status(self):
        return 1 if any(c["status"] == "fail" for c in self.checks) else 0

    def to_json(self):
        return {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "checks": self.checks,
            "exit_status": self.exit_status,
        }

    def to_text(self):
        lines = [f"command: {self.command}"]
        for key, value in sorted(self.inputs.items()):
            lines.append(f"input {key}: {_flat(value)}")
        for key, value in sorted(self.outputs.items()):
            lines.append(f"output {key}: {_flat(value)}")
        for c in self.checks:
            detail = f"  ({c['detail']})" if c["detail"] else ""
            lines.append(f"[{c['status']}] {c['name']}{detail}")
        lines.append(f"exit status: {self.exit_status}")
        return "\n".join(lines) + "\n"


def _flat(value):
    if isinstance(value, dict) and "entries" in value:
        return "[" + "; ".join(", ".join(r) for r in value["entries"]) + "]"
    if isinstance(value, list):
        return "(" + ", ".join(_flat(x) for x in value) + ")"
    return str(value)


def _strs(xs):
    return [str(x) for x in xs]


def _ring_arg(args, default=None):
    spec = getattr(args, "ring", None) or default
    return parse_ring(spec) if spec else None


def _load_matrix(path, ring):
    obj = io.read_json(path)
    m = io.matrix_from_json(obj, ring)
    if ring is not None and "ring" in obj and parse_ring(obj["ring"]) != ring:
        raise RingMismatchError(f"{path} is over {obj['ring']}, not {ring}")
    return m


def _load_row(args, ring):
    if getattr(args, "row", None):
        obj = io.read_json(args.row)
        return io.row_from_json(obj, ring)
    if ring is None or args.v is None or args.w is None:
        raise SkewcompError("give --row FILE, or --ring with --v and --w")
    return certify_row(args.v.split(","), args.w.split(","), ring)


def _row_inputs(report, row):
    report.inputs["ring"] = str(row.ring)
    report.inputs["v"] = _strs(row.v)
    report.inputs["w"] = _strs(row.w)


def _skew_source(args, ring, report):
    """Alternating V of Pfaffian 1 from --skew FILE, or skew4 of a length-3 row."""
    if getattr(args, "skew", None):
        V = check_alternating(_load_matrix(args.skew, ring))
        report.inputs["ring"] = str(V.ring)
        report.inputs["skew"] = io.matrix_to_json(V)["entries"]
        return V
    row = _load_row(args, ring)
    _row_inputs(report, row)
    return skew4(row).V


def _pipeline(report, V, prefix=""):
    """Run K(V) and the square representative, recording outputs and checks."""
    v = V.first_row()[1:]
    result = krusemeyer_complete(V)
    if result is None:
        report.check(prefix + "certificate", "inconclusive", "no passage word over an infinite ring")
        return None
    target = (v[0] * v[0],) + tuple(v[1:])
    report.outputs[prefix + "K"] = io.matrix_to_json(result.K)
    report.outputs[prefix + "certificate"] = io.word_to_json(result.certificate)
    report.check(prefix + "first_row", result.row == target, ", ".join(_strs(result.row)))
    report.check(prefix + "det_one", det(result.K).is_one(), det(result.K))
    report.check(prefix + "certificate", result.checks["certificate"],
                 f"{len(result.certificate)} letters")
    return result


def cmd_pfaffian(args, report):
    ring = _ring_arg(args)
    A = check_alternating(_load_matrix(args.matrix, ring))
    report.inputs["ring"] = str(A.ring)
    report.inputs["matrix"] = io.matrix_to_json(A)["entries"]
    pf = pfaffian(A)
    d = det(A.body)
    report.outputs["pfaffian"] = str(pf)
    report.outputs["det"] = str(d)
    report.check("det = pf^2", d == pf * pf, f"pf^2 = {pf * pf}")


def cmd_skew4(args, report):
    row = _load_row(args, _ring_arg(args))
    _row_inputs(report, row)
    V = skew4(row).V
    report.outputs["V"] = io.matrix_to_json(V)
    report.check("pf(V) = <v, w>", pfaffian(V) == inner(row.v, row.w), pfaffian(V))


def cmd_skew_from_completion(args, report):
    sigma = _load_matrix(args.matrix, _ring_arg(args))
    report.inputs["ring"] = str(sigma.ring)
    report.inputs["sigma"] = sigma.to_strings()
    witness = None
    if args.witness:
        witness = [sigma.ring(x) for x in args.witness.split(",")]
    sk = skew_from_completion(sigma, witness)
    report.outputs["V"] = io.matrix_to_json(sk.V)
    zero = sigma.ring.zero()
    report.check("first row (0, e1 sigma)", sk.V.first_row() == (zero,) + sigma.rows[0])
    report.check("pf(V) = 1", pfaffian(sk.V).is_one(), pfaffian(sk.V))


def cmd_complete(args, report):
    V = _skew_source(args, _ring_arg(args), report)
    report.outputs["V"] = io.matrix_to_json(V)
    _pipeline(report, V)


def cmd_square_rep(args, report):
    V = _skew_source(args, _ring_arg(args), report)
    if args.iterate < 1:
        raise SkewcompError("--iterate must be >= 1")
    report.inputs["iterate"] = args.iterate
    v = V.first_row()[1:]
    W = V
    for k in range(args.iterate):
        result = _pipeline(report, W, prefix=f"step{k + 1}." if args.iterate > 1 else "")
        if result is None:
            return
        W = square_witt_rep(result)
    report.outputs["W"] = io.matrix_to_json(W)
    expected = (v[0] ** (2 ** args.iterate),) + tuple(v[1:])
    report.check("W alternating", True)
    report.check("pf(W) = 1", pfaffian(W).is_one(), pfaffian(W))
    report.check("first row of W", W.first_row()[1:] == expected, ", ".join(_strs(W.first_row())))


def _load_rep(path, ring):
    return witt_rep(_load_matrix(path, ring))


def cmd_witt_check(args, report):
    ring = _ring_arg(args)
    x, y = _load_rep(args.x, ring), _load_rep(args.y, ring)
    cert = io.certificate_from_json(io.read_json(args.cert), x.ring)
    report.inputs.update(ring=str(x.ring), x=io.matrix_to_json(x.A)["entries"],
                         y=io.matrix_to_json(y.A)["entries"], certificate=cert.to_json())
    report.check("certificate verifies", check_equiv(x, y, cert))


def cmd_witt_search(args, report):
    ring = _ring_arg(args)
    x, y = _load_rep(args.x, ring), _load_rep(args.y, ring)
    report.inputs.update(ring=str(x.ring), x=io.matrix_to_json(x.A)["entries"],
                         y=io.matrix_to_json(y.A)["entries"], depth=args.depth, pad=args.pad)
    cert = search_equiv(x, y, args.depth, l=args.pad)
    if cert is None:
        report.check("equivalence found", "inconclusive", f"no certificate of length <= {args.depth}")
        return
    report.outputs["certificate"] = cert.to_json()
    report.check("certificate verifies", check_equiv(x, y, cert), f"{len(cert.eps)} letters")


def cmd_orbit(args, report):
    ring = parse_ring(args.ring)
    report.inputs.update(ring=str(ring), n=args.n)
    table = orbit_table(ring, args.n)
    report.outputs["table"] = table.to_json(full=args.full)
    total = sum(table.sizes)
    report.check("orbits partition Um", total == len(enumerate_um(ring, args.n)), f"{total} rows")


def cmd_um_count(args, report):
    ring = parse_ring(args.ring)
    report.inputs.update(ring=str(ring), n=args.n)
    report.outputs["count"] = len(enumerate_um(ring, args.n))


DEFAULT_POINTS = "1,0,0;0,1,0;0,0,1;3/5,4/5,0;0,3/5,4/5;2/3,2/3,1/3"


def cmd_tangent_check(args, report):
    sigma = _load_matrix(args.matrix, _ring_arg(args))
    points = [tuple(p.split(",")) for p in args.points.split(";")]
    report.inputs.update(ring=str(sigma.ring), sigma=sigma.to_strings(),
                         points=[list(p) for p in points])
    tr = tangent_check(sigma, points, strict=False)
    report.outputs["determinant"] = str(tr.determinant)
    report.outputs["samples"] = [
        {"point": _strs(s.point), "field": _strs(s.field), "dot": str(s.orthogonality),
         "vanishes": s.vanishing}
        for s in tr.samples
    ]
    report.check("sigma completes (x0, x1, x2)", tr.precondition_ok, f"det = {tr.determinant}")
    tangent = all(s.orthogonality == 0 for s in tr.samples)
    report.check("field tangent at samples", tangent)
    report.check("field vanishes somewhere", "pass" if tr.vanishing_points else "inconclusive",
                 f"{len(tr.vanishing_points)} of {len(tr.samples)} samples")


def demo_kaplansky(args, report):
    ring = parse_ring(SPHERE)
    xs = ring.gens()
    row = certify_row(xs, xs)
    _row_inputs(report, row)
    report.check("<x, x> = 1", inner(row.v, row.w).is_one())
    V = skew4(row).V
    report.outputs["V"] = io.matrix_to_json(V)
    report.check("pf(V) = 1", pfaffian(V).is_one(), pfaffian(V))
    result = _pipeline(report, V)
    W = square_witt_rep(result)
    report.outputs["W"] = io.matrix_to_json(W)
    report.check("pf(W) = 1", pfaffian(W).is_one())
    report.check("first row of W", W.first_row()[1:] == result.row)


def demo_row_column_orbits(args, report):
    ring = parse_ring(f"Zmod:{args.mod}")
    report.inputs["ring"] = str(ring)
    rows = enumerate_um(ring, 3)
    failures = []
    for v in rows:
        row = certify_row(v, find_witness(ring, v))
        K = krusemeyer_complete(skew4(row).V).K
        if same_orbit(ring, K.rows[0], K.column(0)) is None:
            failures.append(_strs(v))
    report.outputs["rows_checked"] = len(rows)
    report.outputs["failures"] = failures
    report.check("e1 K and e1 K^t in the same orbit", not failures,
                 f"{len(rows) - len(failures)} of {len(rows)} rows")


def _random_alternating(rng, ring, n, m):
    return alternating_from_upper(ring, n, [rng.randrange(m) for _ in range(n * (n - 1) // 2)])


def demo_identities(args, report):
    report.inputs["seed"] = args.seed
    report.check("pf(psi_r) = 1 for r = 1..6", all(pfaffian(psi(r)).is_one() for r in range(1, 7)))

    P = PolynomialRing(Rationals(), ["v0", "v1", "v2", "w0", "w1", "w2"])
    g = P.gens()
    v, w = g[:3], g[3:]
    S = skew4_matrix(v, w)
    pf = pfaffian(S)
    report.outputs["pf_skew4"] = str(pf)
    report.check("pf(skew4) = <v, w>", pf == inner(v, w))
    report.check("det(skew4) = pf^2", det(S.body) == pf * pf)

    rng = random.Random(args.seed)
    ring = parse_ring("Zmod:5")
    ok_cong = ok_perp = True
    for _ in range(args.count):
        A = _random_alternating(rng, ring, 4, 5)
        B = _random_alternating(rng, ring, 2, 5)
        alpha = Matrix(ring, [[rng.randrange(5) for _ in range(4)] for _ in range(4)])
        C = check_alternating(mat_mul(mat_mul(alpha.T, A.body), alpha))
        ok_cong &= pfaffian(C) == pfaffian(A) * det(alpha)
        ok_perp &= pfaffian(alternating_perp(A, B)) == pfaffian(A) * pfaffian(B)
    report.check("pf(a^t A a) = pf(A) det(a)", ok_cong, f"{args.count} instances over Zmod:5")
    report.check("pf(A perp B) = pf(A) pf(B)", ok_perp, f"{args.count} instances over Zmod:5")

    G = parse_ring(G3)
    row = certify_row(G.gens()[:3], G.gens()[3:])
    result = _pipeline(report, skew4(row).V, prefix="G3.")
    W = square_witt_rep(result)
    report.check("G3.pf(W) = 1", pfaffian(W).is_one())


DEMOS = {"kaplansky": demo_kaplansky, "lemma35": demo_row_column_orbits, "identities": demo_identities}


def cmd_demo(args, report):
    DEMOS[args.scenario](args, report)


def _add_common(p):
    p.add_argument("--ring", help="ring spec, e.g. Zmod:6 or Q[x,y]/(x*y-1)")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--out", metavar="FILE", help="also write the report to FILE")


def _add_row(p):
    p.add_argument("--row", metavar="FILE", help="row file with v and w")
    p.add_argument("--v", help="comma-separated row entries (with --ring)")
    p.add_argument("--w", help="comma-separated witness entries (with --ring)")


def build_parser():
    parser = argparse.ArgumentParser(prog="skewcomp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pfaffian", help="Pfaffian and determinant of an alternating matrix")
    p.add_argument("--matrix", required=True, metavar="FILE")
    p.set_defaults(func=cmd_pfaffian)

    p = sub.add_parser("skew4", help="4x4 skew completion of a length-3 row")
    _add_row(p)
    p.set_defaults(func=cmd_skew4)

    p = sub.add_parser("skew-from-completion", help="skew completion from a completion sigma")
    p.add_argument("--matrix", required=True, metavar="FILE")
    p.add_argument("--witness", help="comma-separated witness for the first row of sigma")
    p.set_defaults(func=cmd_skew_from_completion)

    for name, func, helptext in (
        ("complete", cmd_complete, "completion K of the row with squared first entry"),
        ("square-rep", cmd_square_rep, "alternating representative with first row (0, v1^2, ...)"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_row(p)
        p.add_argument("--skew", metavar="FILE", help="alternating matrix of Pfaffian 1")
        if name == "square-rep":
            p.add_argument("--iterate", type=int, default=1)
        p.set_defaults(func=func)

    p = sub.add_parser("witt-check", help="verify an equivalence certificate")
    p.add_argument("--x", required=True, metavar="FILE")
    p.add_argument("--y", required=True, metavar="FILE")
    p.add_argument("--cert", required=True, metavar="FILE")
    p.set_defaults(func=cmd_witt_check)

    p = sub.add_parser("witt-search", help="search for an equivalence certificate")
    p.add_argument("--x", required=True, metavar="FILE")
    p.add_argument("--y", required=True, metavar="FILE")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--pad", type=int, default=0)
    p.set_defaults(func=cmd_witt_search)

    for name, func, helptext in (
        ("orbit", cmd_orbit, "elementary orbits on unimodular rows"),
        ("um-count", cmd_um_count, "number of unimodular rows"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--n", type=int, required=True)
        if name == "orbit":
            p.add_argument("--full", action="store_true", help="include members and words")
        p.set_defaults(func=func)

    p = sub.add_parser("tangent-check", help="evaluate the tangent field of a 3x3 sigma")
    p.add_argument("--matrix", required=True, metavar="FILE")
    p.add_argument("--points", default=DEFAULT_POINTS, help="semicolon-separated points")
    p.set_defaults(func=cmd_tangent_check)

    p = sub.add_parser("demo", help="built-in scenarios")
    p.add_argument("scenario", choices=sorted(DEMOS))
    p.add_argument("--mod", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=20)
    p.set_defaults(func=cmd_demo)

    for p in sub.choices.values():
        _add_common(p)
    return parser


def run(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    command = args.command + (f" {args.scenario}" if args.command == "demo" else "")
    report = Report(command)
    try:
        args.func(args, report)
    except ConstructionError as exc:
        report.check("construction", False, exc)
    except (SkewcompError, ValueError, ZeroDivisionError) as exc:
        print(f"skewcomp: error: {exc}", file=sys.stderr)
        return 2
    text = io.dumps(report.to_json()) if args.format == "json" else report.to_text()
    stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return report.exit_status


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
