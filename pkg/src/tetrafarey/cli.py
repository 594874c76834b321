"""Command-line interface: ``tetrafarey <group> <command> [options]``.

Every command prints one JSON object carrying ``"schema": 1``.  Exit status is
0 when the check passes, 1 when a verification fails and 2 on usage errors or
malformed input.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
import time
from itertools import combinations
from pathlib import Path
from typing import Any, Callable

from . import jsonio
from .eisenstein import INF, ONE, ZERO, EInt, ProjPoint, reduce
from .friezes import (
    ClosedPath,
    FriezeError,
    LimitExhausted,
    SearchConfig,
    enumerate_closed_paths,
    frieze_from_closed_path,
    quiddity_bound_check,
    real_quiddity,
)
from .graph import (
    STANDARD_TETRA,
    det_length_sq,
    is_edge,
    is_face,
    is_fundamental_tetrahedron,
    symmetric_farey_sum,
)
from .lambdas import (
    DegenerateGeodesic,
    Horosphere,
    WalkAmbiguity,
    b_sequence,
    geodesic_walk,
    lambda_numeric,
    standard_horosphere,
    verify_five_point,
    verify_soddy_gosset,
    verify_tetra_ptolemy,
)
from .paths import (
    AngleSeq,
    PathError,
    angle_sequence,
    cf_eval,
    normalise_path,
    path_from_angles,
    skew_normalise,
)
from .sampling import rand_point, rand_point_qnorm, rand_tetra
from .tilings import (
    ProductMode,
    TilingError,
    check_window,
    coplanarity_test,
    paths_from_tiling,
    tiling_from_paths,
    tiling_to_triple,
    tilings_equivalent,
    triple_to_tiling,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------- helpers


def _arg(args, name: str, decode: Callable, default=None, required: bool = True):
    raw = getattr(args, name, None)
    if raw is None:
        if default is not None or not required:
            return default
        raise UsageError(f"--{name.replace('_', '-')} is required")
    return decode(jsonio.load_arg(raw), f"--{name.replace('_', '-')}")


def _points(n: int | None = None):
    return lambda x, where: jsonio.dec_points(x, where, n)


def _report(passed: bool, residual: Any = 0, witnesses: Any = None, **extra) -> dict:
    out = {"pass": bool(passed), "residual": residual, "witnesses": witnesses if witnesses is not None else []}
    out.update(extra)
    return out


def _rng(args) -> random.Random:
    return random.Random(args.seed)


# ---------------------------------------------------------------- graph


def graph_edge(args) -> dict:
    u = _arg(args, "u", jsonio.dec_point)
    v = _arg(args, "v", jsonio.dec_point)
    edge = is_edge(u, v)
    n = det_length_sq(u, v)
    return _report(edge, 0, [reduce(u), reduce(v)], det_length_sq=n, edge=edge, exact=True)


def graph_face(args) -> dict:
    pts = _arg(args, "points", _points(3))
    ok = is_face(pts)
    return _report(ok, 0, [reduce(p) for p in pts], face=ok, exact=True)


def graph_tetra(args) -> dict:
    pts = _arg(args, "points", _points(4))
    ok = is_fundamental_tetrahedron(pts)
    lens = {f"{i}{j}": det_length_sq(pts[i], pts[j]) for i, j in combinations(range(4), 2)}
    return _report(ok, 0, [reduce(p) for p in pts], tetrahedron=ok, det_length_sq=lens, exact=True)


def graph_star(args) -> dict:
    u = _arg(args, "u", jsonio.dec_point)
    v = _arg(args, "v", jsonio.dec_point)
    if not is_edge(u, v):
        raise ValueError("u and v are not adjacent")
    apexes = symmetric_farey_sum(u, v)
    faces_ok = all(is_face([u, v, w]) for w in apexes)
    distinct = len({w.key() for w in apexes}) == 6
    return _report(faces_ok and distinct, 0, apexes, apexes=apexes, exact=True)


# ---------------------------------------------------------------- verify


def _tetra_arg(args):
    return _arg(args, "tetra", _points(4), default=list(STANDARD_TETRA))


def verify_ptolemy(args) -> dict:
    if args.random:
        rng = _rng(args)
        fails = []
        for _ in range(args.random):
            T, _m = rand_tetra(rng)
            X = rand_point(rng, 12)
            if any(X.key() == v.key() for v in T):
                continue
            r = verify_tetra_ptolemy(T, X)
            if not r.passed:
                fails.append({"tetra": list(T), "x": X, "b": r.details.get("b")})
        return _report(not fails, 0, fails[:5], samples=args.random, failures=len(fails), exact=True)
    T = _tetra_arg(args)
    X = _arg(args, "x", jsonio.dec_point)
    r = verify_tetra_ptolemy(T, X, args.tolerance)
    return _report(r.passed, 0 if r.lhs == r.rhs else r.lhs - r.rhs, [X], lhs=r.lhs, rhs=r.rhs, exact=True, **r.details)


def _random_horospheres(rng: random.Random, n: int) -> list[Horosphere]:
    hs = []
    for k in range(n):
        if k == 0 and rng.random() < 0.3:
            hs.append(Horosphere(None, math.exp(rng.uniform(-1, 1))))
        else:
            c = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            hs.append(Horosphere(c, math.exp(rng.uniform(-2, 1))))
    return hs


def verify_five(args) -> dict:
    if args.random:
        rng = _rng(args)
        worst = 0.0
        for _ in range(args.random):
            r = verify_five_point(_random_horospheres(rng, 5), args.tolerance)
            worst = max(worst, r.residual)
        return _report(worst < args.tolerance, worst, [], samples=args.random, exact=False)
    pts = _arg(args, "points", _points(5))
    r = verify_five_point(pts, args.tolerance)
    return _report(r.passed, 0 if r.lhs == r.rhs else r.residual, pts, lhs=r.lhs, rhs=r.rhs, exact=True)


def verify_soddy(args) -> dict:
    if args.random:
        rng = _rng(args)
        fails = []
        for _ in range(args.random):
            T, _m = rand_tetra(rng)
            r = verify_soddy_gosset(T)
            if not r.passed:
                fails.append(list(T))
        return _report(not fails, 0, fails[:5], samples=args.random, failures=len(fails), exact=True)
    T = _tetra_arg(args)
    r = verify_soddy_gosset(T, args.tolerance)
    return _report(r.passed, 0 if r.lhs == r.rhs else r.lhs - r.rhs, T, lhs=r.lhs, rhs=r.rhs, k=r.details["k"], exact=True)


def _lambda_residual(u: ProjPoint, v: ProjPoint) -> tuple[float, float, int]:
    lam = lambda_numeric(standard_horosphere(u), standard_horosphere(v))
    n = det_length_sq(u, v)
    ref = math.sqrt(n)
    return abs(lam - ref) / max(ref, 1e-300), lam, n


def verify_lambda_det(args) -> dict:
    if args.random:
        rng = _rng(args)
        worst, witness = 0.0, []
        for _ in range(args.random):
            u = rand_point_qnorm(rng, args.max_qnorm)
            v = rand_point_qnorm(rng, args.max_qnorm)
            if u.key() == v.key():
                continue
            res, _lam, _n = _lambda_residual(u, v)
            if res > worst:
                worst, witness = res, [u, v]
        return _report(worst < args.tolerance, worst, witness, samples=args.random, exact=False)
    u = _arg(args, "u", jsonio.dec_point)
    v = _arg(args, "v", jsonio.dec_point)
    if reduce(u).key() == reduce(v).key():
        raise ValueError("u and v coincide")
    res, lam, n = _lambda_residual(reduce(u), reduce(v))
    return _report(res < args.tolerance, res, [u, v], lam=lam, det_length_sq=n, sqrt_det_length_sq=math.sqrt(n), exact=False)


def _bseq_report(X, Y) -> dict:
    walk = geodesic_walk(X, Y)
    seq = b_sequence(X, walk)
    b = list(seq.values)
    start_ok = b[1:5] == [1, 1, 1, 3] if len(b) >= 5 else b[1:] == [1, 1, 1, 3][: len(b) - 1]
    return {
        "b": b,
        "starts_1113": start_ok,
        "recurrence": seq.recurrence_holds(),
        "increasing_lag4": seq.increasing_at_lag4(),
        "step_relations": seq.step_relations_hold(),
        "fifo": seq.is_fifo(),
        "dropped": list(seq.dropped),
        "tetrahedra": len(walk),
    }


def verify_bseq(args) -> dict:
    if args.random:
        rng = _rng(args)
        counts = {"samples": 0, "skipped": 0, "recurrence_failures": 0, "other_failures": 0}
        witnesses = []
        for _ in range(args.random):
            X, Y = rand_point(rng, 4), rand_point(rng, 30)
            try:
                r = _bseq_report(X, Y)
            except (DegenerateGeodesic, WalkAmbiguity, ValueError):
                counts["skipped"] += 1
                continue
            counts["samples"] += 1
            if not (r["starts_1113"] and r["increasing_lag4"] and r["step_relations"]):
                counts["other_failures"] += 1
            if not r["recurrence"]:
                counts["recurrence_failures"] += 1
                if len(witnesses) < 3:
                    witnesses.append({"x": X, "y": Y, "b": r["b"]})
        ok = counts["recurrence_failures"] == 0 and counts["other_failures"] == 0
        return _report(ok, 0, witnesses, exact=True, **counts)
    X = _arg(args, "x", jsonio.dec_point)
    Y = _arg(args, "y", jsonio.dec_point)
    r = _bseq_report(X, Y)
    ok = r["starts_1113"] and r["recurrence"] and r["increasing_lag4"]
    return _report(ok, 0, r["b"], exact=True, **r)


# ---------------------------------------------------------------- path


def _path_vertices(args):
    raw = getattr(args, "path", None)
    if raw is None:
        raise UsageError("--path is required")
    return jsonio.dec_path_vertices(jsonio.load_arg(raw), "--path")


def path_normalize(args) -> dict:
    verts, base = _path_vertices(args)
    seed = reduce(verts[0])
    p = skew_normalise(verts, seed, base) if args.skew else normalise_path(verts, seed, base)
    return _report(True, 0, [], path=p, self_intersecting=p.is_self_intersecting())


def path_angles(args) -> dict:
    verts, base = _path_vertices(args)
    p = skew_normalise(verts, reduce(verts[0]), base)
    a = angle_sequence(p)
    return _report(True, 0, [], angles=a, path=p)


def path_from_angles_cmd(args) -> dict:
    a = _arg(args, "angles", jsonio.dec_angles)
    v0 = _arg(args, "v0", jsonio.dec_point, default=ProjPoint(ONE, ZERO))
    v1 = _arg(args, "v1", jsonio.dec_point, default=ProjPoint(ZERO, ONE))
    p = path_from_angles(v0, v1, a, args.seed_index)
    return _report(True, 0, [], path=p, self_intersecting=p.is_self_intersecting())


def path_cf(args) -> dict:
    a = _arg(args, "angles", jsonio.dec_angles)
    r = cf_eval(a.values)
    ok = r.endpoint_is_reciprocal()
    return _report(
        ok,
        0,
        [],
        endpoint=r.endpoint,
        nested=r.nested,
        nested_point=r.nested_point,
        relation="endpoint = 1/[a1; a2, ..., an]",
        exact=True,
    )


# ---------------------------------------------------------------- tile


def _window(args, name: str = "window"):
    return _arg(args, name, jsonio.dec_window)


def _range(offset: int, n: int | None, default: range) -> range:
    if n is None:
        return default
    return range(offset, offset + n)


def tile_from_paths(args) -> dict:
    (uv, ub) = jsonio.dec_path_vertices(jsonio.load_arg(args.u), "--u") if args.u else (None, 0)
    (vv, vb) = jsonio.dec_path_vertices(jsonio.load_arg(args.v), "--v") if args.v else (None, 0)
    if uv is None or vv is None:
        raise UsageError("--u and --v are required")
    u = normalise_path(uv, uv[0], ub)
    v = normalise_path(vv, vv[0], vb)
    rows = _range(u.base_index, args.rows, u.indices)
    cols = _range(v.base_index, args.cols, v.indices)
    if rows.stop > u.indices.stop or cols.stop > v.indices.stop:
        raise UsageError("--rows/--cols exceed the supplied paths")
    w = tiling_from_paths(u, v, args.mode, rows, cols)
    chk = check_window(w, require_tame=min(w.shape) >= 3) if min(w.shape) >= 2 else None
    return _report(chk.ok if chk else True, 0, [], window=w, check=chk, exact=True)


def tile_from_triple(args) -> dict:
    t = _arg(args, "triple", jsonio.dec_triple)
    rows = range(args.row_offset, args.row_offset + (args.rows or 4))
    cols = range(args.col_offset, args.col_offset + (args.cols or 4))
    w = triple_to_tiling(t, rows, cols)
    chk = check_window(w, require_tame=min(w.shape) >= 3)
    return _report(chk.ok, 0, [], window=w, check=chk, exact=True)


def tile_check(args) -> dict:
    w = _window(args)
    chk = check_window(w, require_tame=not args.sl2_only)
    wit = [chk.first_violation] if chk.first_violation else []
    return _report(chk.ok, 0, wit, exact=True, **chk.as_dict())


def tile_to_paths(args) -> dict:
    w = _window(args)
    u, v = paths_from_tiling(w, args.mode)
    back = tiling_from_paths(u, v, args.mode, w.rows, w.cols)
    ok = back.same_entries(w)
    return _report(ok, 0, [], u=u, v=v, exact=True)


def tile_to_triple(args) -> dict:
    w = _window(args)
    t = tiling_to_triple(w)
    ok = triple_to_tiling(t, w.rows, w.cols).same_entries(w)
    return _report(ok, 0, [], triple=t, exact=True)


def tile_equiv(args) -> dict:
    w1 = _window(args)
    w2 = _window(args, "other")
    if w1.shape != w2.shape or (w1.row_offset, w1.col_offset) != (w2.row_offset, w2.col_offset):
        raise ValueError("windows differ in shape or offsets")
    ok = tilings_equivalent(w1, w2)
    return _report(ok, 0, [], equivalent=ok, exact=True)


def tile_coplanar(args) -> dict:
    w = _window(args)
    r = coplanarity_test(w)
    return _report(r.coplanar, 0, [r.witness] if r.witness else [], agree=r.coplanar == r.all_integer, exact=True, **r.as_dict())


# ---------------------------------------------------------------- frieze


def _frieze_summary(c: ClosedPath) -> dict:
    fr = frieze_from_closed_path(c)
    band_window = fr.window
    chk = check_window(band_window)
    bound = quiddity_bound_check(c)
    return {
        "points": list(c.points),
        "quiddity": list(c.quiddity()),
        "real_quiddity": real_quiddity(c),
        "band": [list(r) for r in fr.band],
        "height": fr.height,
        "zero_free": fr.zero_free,
        "zero_witness": fr.zero_witness,
        "bound_ok": bound.passed,
        "window_ok": chk.ok,
    }


def frieze_enumerate(args) -> dict:
    cfg = SearchConfig(
        prune_quiddity=not args.no_prune,
        prune_symmetry=not args.no_prune,
        conjugation=not args.no_conjugation,
        group=args.group,
    )
    try:
        res = enumerate_closed_paths(args.period, args.limit, cfg)
    except LimitExhausted as e:
        raise _Fail({"pass": False, "error": str(e), "limit": args.limit}) from None
    classes = [_frieze_summary(c) for c in res.paths]
    ok = all(s["zero_free"] and s["bound_ok"] and s["window_ok"] and s["height"] == args.period - 3 for s in classes)
    out = _report(ok, 0, [], period=args.period, classes=len(classes), raw=res.raw_count, nodes=res.nodes, results=classes, exact=True)
    if args.out:
        Path(args.out).write_text(jsonio.dumps({"schema": jsonio.SCHEMA, **out}, args.json_indent) + "\n")
    return out


def frieze_from_path(args) -> dict:
    verts, _ = jsonio.dec_path_vertices(jsonio.load_arg(args.path), "path")
    c = ClosedPath(tuple(verts))
    if c.is_self_intersecting():
        raise FriezeError("path is self-intersecting")
    s = _frieze_summary(c)
    return _report(s["zero_free"] and s["bound_ok"] and s["window_ok"], 0, [s["zero_witness"]] if s["zero_witness"] else [], exact=True, **s)


class _Fail(Exception):
    def __init__(self, payload: dict):
        super().__init__(payload.get("error", "verification failed"))
        self.payload = payload


# ---------------------------------------------------------------- parser


def _common(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--seed", type=int, default=d(0), help="random seed (64-bit integer, default 0)")
    p.add_argument("--tolerance", type=float, default=d(1e-9), help="numeric tolerance (default 1e-9)")
    p.add_argument("--json-indent", type=int, default=d(None), help="indent the JSON output")
    p.add_argument("--timing", action="store_true", default=d(False), help="add elapsed milliseconds to the report")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tetrafarey", description="Exact tools for the Eisenstein tetrahedral Farey graph.")
    _common(parser, suppress=False)
    groups = parser.add_subparsers(dest="section", metavar="{graph,verify,path,tile,frieze}", parser_class=_Parser)
    groups.required = True

    def leaf(sub, name: str, fn, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        _common(p, suppress=True)
        p.set_defaults(func=fn, command_name=name)
        return p

    g = groups.add_parser("graph", help="adjacency, faces, tetrahedra")
    gs = g.add_subparsers(dest="cmd", parser_class=_Parser)
    gs.required = True
    for name, fn, h in (("edge", graph_edge, "is u - v an edge"), ("star", graph_star, "the six faces on an edge")):
        p = leaf(gs, name, fn, h)
        p.add_argument("--u", required=True)
        p.add_argument("--v", required=True)
    leaf(gs, "face", graph_face, "three pairwise adjacent points").add_argument("--points", required=True)
    leaf(gs, "tetra", graph_tetra, "four points of a fundamental tetrahedron").add_argument("--points", required=True)

    v = groups.add_parser("verify", help="identities with JSON reports")
    vs = v.add_subparsers(dest="cmd", parser_class=_Parser)
    vs.required = True
    p = leaf(vs, "ptolemy-tetra", verify_ptolemy, "quartic Ptolemy relation for X and a tetrahedron")
    p.add_argument("--tetra")
    p.add_argument("--x")
    p.add_argument("--random", type=int, default=0)
    p = leaf(vs, "five-point", verify_five, "five-point relation")
    p.add_argument("--points")
    p.add_argument("--random", type=int, default=0)
    p = leaf(vs, "soddy", verify_soddy, "reduced Soddy-Gosset relation")
    p.add_argument("--tetra")
    p.add_argument("--random", type=int, default=0)
    p = leaf(vs, "lambda-det", verify_lambda_det, "numeric lambda length vs det length")
    p.add_argument("--u")
    p.add_argument("--v")
    p.add_argument("--random", type=int, default=0)
    p.add_argument("--max-qnorm", type=int, default=10_000)
    p = leaf(vs, "b-seq", verify_bseq, "b-sequence along the geodesic walk from X to Y")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--random", type=int, default=0)

    pa = groups.add_parser("path", help="normalised paths and angle sequences")
    ps = pa.add_subparsers(dest="cmd", parser_class=_Parser)
    ps.required = True
    p = leaf(ps, "normalize", path_normalize, "normalise (or skew-normalise) a vertex list")
    p.add_argument("--path", required=True)
    p.add_argument("--skew", action="store_true")
    leaf(ps, "angles", path_angles, "angle sequence of a path").add_argument("--path", required=True)
    p = leaf(ps, "from-angles", path_from_angles_cmd, "rebuild a skew-normalised path")
    p.add_argument("--angles", required=True)
    p.add_argument("--v0")
    p.add_argument("--v1")
    p.add_argument("--seed-index", type=int, default=0)
    leaf(ps, "cf", path_cf, "endpoint vs nested continued fraction").add_argument("--angles", required=True)

    t = groups.add_parser("tile", help="SL2 tilings")
    ts = t.add_subparsers(dest="cmd", parser_class=_Parser)
    ts.required = True
    p = leaf(ts, "from-paths", tile_from_paths, "tiling from two normalised paths")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--mode", choices=[m.value for m in ProductMode], default="scalar")
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p = leaf(ts, "from-triple", tile_from_triple, "tiling from a triple (a, b, X)")
    p.add_argument("--triple", required=True)
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("--row-offset", type=int, default=0)
    p.add_argument("--col-offset", type=int, default=0)
    p = leaf(ts, "check", tile_check, "adjacent 2x2 and 3x3 minors")
    p.add_argument("--window", required=True)
    p.add_argument("--sl2-only", action="store_true")
    p = leaf(ts, "to-paths", tile_to_paths, "recover the two paths")
    p.add_argument("--window", required=True)
    p.add_argument("--mode", choices=[m.value for m in ProductMode], default="scalar")
    leaf(ts, "to-triple", tile_to_triple, "recover the triple").add_argument("--window", required=True)
    p = leaf(ts, "equiv", tile_equiv, "equivalence under the 72 transforms")
    p.add_argument("--window", required=True)
    p.add_argument("--other", required=True)
    leaf(ts, "coplanar", tile_coplanar, "integer rows/columns test").add_argument("--window", required=True)

    f = groups.add_parser("frieze", help="closed paths and frieze patterns")
    fs = f.add_subparsers(dest="cmd", parser_class=_Parser)
    fs.required = True
    p = leaf(fs, "enumerate", frieze_enumerate, "closed non-self-intersecting paths of a given period")
    p.add_argument("--period", type=int, required=True)
    p.add_argument("--limit", type=int, default=100_000)
    p.add_argument("--out")
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--no-conjugation", action="store_true")
    p.add_argument("--group", choices=["pgl2", "sl2"], default="pgl2")
    leaf(fs, "from-path", frieze_from_path, "frieze band of a closed path").add_argument("path")
    return parser


def run(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    indent = None
    command = " ".join(argv[:2])
    try:
        args = parser.parse_args(argv)
        indent = args.json_indent
        command = f"{args.section} {args.command_name}"
        t0 = time.perf_counter()
        try:
            body = args.func(args)
            code = EXIT_PASS if body["pass"] else EXIT_FAIL
        except _Fail as e:
            body, code = e.payload, EXIT_FAIL
        if args.timing:
            body["timing_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    except SystemExit as e:
        # --help
        return int(e.code or 0)
    except UsageError as e:
        body, code = {"pass": False, "error": str(e)}, EXIT_USAGE
    except jsonio.DecodeError as e:
        body, code = {"pass": False, "error": str(e), "location": e.where}, EXIT_USAGE
    except (ValueError, ArithmeticError, PathError, TilingError, FriezeError) as e:
        body, code = {"pass": False, "error": f"{type(e).__name__}: {e}"}, EXIT_USAGE
    text = jsonio.dumps({"schema": jsonio.SCHEMA, "command": command, **body}, indent)
    out.write(text + "\n")
    out.flush()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
