"""Command-line front end.

Examples::

    helixsrf eval --omega 2.30052398302 --alpha 0.26454000216
    helixsrf scan --quantity rho --omega 1.4:5.0:10 --alpha 0.2645:0.2645:1
    helixsrf smith --n 23 --omega 3.1 --alpha 0.05 --edges tree.csv
    helixsrf verify --fast
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import Optional, Sequence

from . import acceptance, optimize, srf
from .helix import DomainError, HelixParams, helix_points, union_sequence
from .spanning import mst_oracle, spanning_length_closed
from .steiner import finite_steiner_ratio, relax_fixed_topology, sausage_length_closed


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def parse_range(text: str, degrees: bool = False) -> tuple[tuple[float, float], int]:
    """``LO:HI:STEPS`` with both ends included and STEPS the node count."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"range {text!r} must look like LO:HI:STEPS")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"range {text!r} must look like LO:HI:STEPS") from None
    if degrees:
        lo, hi = math.radians(lo), math.radians(hi)
    if lo > hi or steps < 1:
        raise UsageError(f"range {text!r} is empty")
    return (lo, hi), steps


def _write_csv(out, header, rows):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])


def _write_json(out, obj):
    json.dump(obj, out, allow_nan=True)
    out.write("\n")


def _omega(args) -> float:
    return math.radians(args.omega) if args.degrees else args.omega


def _params(args) -> HelixParams:
    return HelixParams(_omega(args), args.alpha, args.n)


def cmd_eval(args, out):
    s = srf.sample(_omega(args), args.alpha, args.k_max, args.lam)
    if args.format == "csv":
        _write_csv(out, s.csv_header(), [s.csv_row()])
    else:
        _write_json(out, s.to_dict())


def cmd_points(args, out):
    params = _params(args)
    pts = helix_points(params)
    if args.k is None:
        _write_csv(out, ["i", "x", "y", "z"], ([i, *map(float, p)] for i, p in enumerate(pts)))
        return
    seqs, connectors = union_sequence(params, args.k)
    member = {i: seq.j for seq in seqs for i in seq.indices}
    link = dict(connectors)
    _write_csv(out, ["i", "x", "y", "z", "subsequence", "connects_to"],
               ([i, *map(float, p), member[i], link.get(i)] for i, p in enumerate(pts)))


def _tree_csv(path_or_out, tree):
    rows = tree.csv_rows()
    if hasattr(path_or_out, "write"):
        _write_csv(path_or_out, ["endpoint_a", "endpoint_b", "length"], rows)
    else:
        with open(path_or_out, "w", newline="") as fh:
            _write_csv(fh, ["endpoint_a", "endpoint_b", "length"], rows)


def cmd_mst(args, out):
    params = _params(args)
    tree = mst_oracle(helix_points(params))
    if args.format == "csv":
        _tree_csv(out, tree)
        return
    if args.edges:
        _tree_csv(args.edges, tree)
    closed = {str(k): spanning_length_closed(params, k) for k in range(1, min(args.k_max, params.n - 1) + 1)}
    _write_json(out, {
        "n": params.n, "omega": params.omega, "alpha": params.alpha,
        "oracle_length": tree.total_length, "edges": len(tree.edges),
        "closed_form_lengths": closed,
    })


def cmd_smith(args, out):
    params = _params(args)
    rep = relax_fixed_topology(params, max_iter=args.max_iter, tol=args.tol)
    if args.format == "csv":
        _tree_csv(out, rep.embedding)
        return
    if args.edges:
        _tree_csv(args.edges, rep.embedding)
    mst_len = mst_oracle(rep.embedding.terminals).total_length
    try:
        closed: Optional[float] = sausage_length_closed(params)
    except DomainError:
        closed = None
    doc = rep.to_dict()
    doc.update({
        "n": params.n, "omega": params.omega, "alpha": params.alpha,
        "converged": rep.converged(args.tol), "closed_form_length": closed,
        "mst_length": mst_len, "finite_steiner_ratio": rep.length / mst_len,
    })
    _write_json(out, doc)


def _grid_args(args):
    w_rng, n_w = parse_range(args.omega, args.degrees)
    a_rng, n_a = parse_range(args.alpha)
    return w_rng, a_rng, (n_w, n_a)


def _options(args):
    return {"k_max": args.k_max, "lam": args.lam if args.lam is not None else 0.0,
            "k": args.k, "fst_restrict": args.fst_restrict}


def cmd_scan(args, out):
    w_rng, a_rng, res = _grid_args(args)
    grid = optimize.scan(args.quantity, w_rng, a_rng, res, **_options(args))
    _write_csv(out, ["omega", "alpha", "value"], grid.long_rows())


def cmd_minimize(args, out):
    w_rng, a_rng, res = _grid_args(args)
    rep = optimize.minimize(args.quantity, w_rng, a_rng, res, refine=not args.no_refine, **_options(args))
    _write_json(out, rep.to_dict())


def _polylines_csv(out, lines):
    rows = ((cid, float(w), float(a)) for cid, line in enumerate(lines) for w, a in zip(line.omega, line.alpha))
    _write_csv(out, ["curve_id", "omega", "alpha"], rows)


def cmd_contour(args, out):
    try:
        levels = [float(v) for v in args.levels.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"--levels {args.levels!r} must be comma-separated numbers") from None
    w_rng, a_rng, res = _grid_args(args)
    grid = optimize.scan(args.quantity, w_rng, a_rng, res, **_options(args))
    _polylines_csv(out, optimize.contour(grid, levels))


def cmd_fst_boundary(args, out):
    w_rng, a_rng, res = _grid_args(args)
    _polylines_csv(out, optimize.fst_boundary(args.k, w_rng, a_rng, res))


def cmd_verify(args, out):
    checks = []
    for num, *_ in acceptance.CRITERIA:
        check = acceptance.run_criterion(num, fast=args.fast)
        print(check.line(), file=out, flush=True)
        checks.append(check)
    failed = [c for c in checks if not c.passed]
    print(f"{len(checks) - len(failed)}/{len(checks)} criteria passed"
          + (" (fast mode)" if args.fast else ""), file=out)
    return 1 if failed else 0


def _default_range(rng, steps):
    return f"{rng[0]!r}:{rng[1]!r}:{steps}"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="helixsrf", description=__doc__.split("\n")[0])
    p.add_argument("-o", "--output", help="write to this file instead of stdout")
    p.add_argument("--degrees", action="store_true", help="read omega values in degrees")
    sub = p.add_subparsers(dest="command", required=True)

    def helix(sp, need_n=True):
        if need_n:
            sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--omega", type=float, required=True)
        sp.add_argument("--alpha", type=float, required=True)

    sp = sub.add_parser("eval", help="all functionals at one (omega, alpha)")
    helix(sp, need_n=False)
    sp.add_argument("--k-max", type=int, default=3)
    sp.add_argument("--lambda", dest="lam", type=float)
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("points", help="helix points, optionally with skip-k membership")
    helix(sp)
    sp.add_argument("--k", type=int)
    sp.set_defaults(func=cmd_points)

    sp = sub.add_parser("mst", help="exact MST of the helix points")
    helix(sp)
    sp.add_argument("--k-max", type=int, default=3)
    sp.add_argument("--edges", help="also write the edge CSV here")
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.set_defaults(func=cmd_mst)

    sp = sub.add_parser("smith", help="fixed-topology sausage Steiner tree relaxation")
    helix(sp)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--max-iter", type=int, default=10000)
    sp.add_argument("--edges", help="also write the edge CSV here")
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.set_defaults(func=cmd_smith)

    def grid(sp, quantity=True, k_default=1):
        if quantity:
            sp.add_argument("--quantity", choices=optimize.QUANTITIES, default="rho")
        sp.add_argument("--omega", default=_default_range(optimize.DEFAULT_OMEGA_RANGE, 256),
                        help="LO:HI:STEPS, endpoints included")
        sp.add_argument("--alpha", default=_default_range(optimize.DEFAULT_ALPHA_RANGE, 256),
                        help="LO:HI:STEPS, endpoints included")
        sp.add_argument("--fst-restrict", action="store_true")
        sp.add_argument("--k-max", type=int, default=3)
        sp.add_argument("--lambda", dest="lam", type=float)
        sp.add_argument("--k", type=int, default=k_default, help="skip period for cos_theta")

    sp = sub.add_parser("scan", help="long-format grid of one quantity")
    grid(sp)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("minimize", help="grid-seeded simplex minimum")
    grid(sp)
    sp.add_argument("--no-refine", action="store_true")
    sp.set_defaults(func=cmd_minimize)

    sp = sub.add_parser("contour", help="level curves of one quantity")
    grid(sp)
    sp.add_argument("--levels", required=True, help="comma-separated levels")
    sp.set_defaults(func=cmd_contour)

    sp = sub.add_parser("fst-boundary", help="curves where skip-k edges meet at 120 degrees")
    grid(sp, quantity=False)
    sp.set_defaults(func=cmd_fst_boundary)

    sp = sub.add_parser("verify", help="run the acceptance checks")
    sp.add_argument("--fast", action="store_true", help="smaller samples, same tolerances")
    sp.set_defaults(func=cmd_verify)
    return p


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = stdout or sys.stdout
    fh = None
    try:
        if args.output:
            fh = open(args.output, "w", newline="")
            out = fh
        return args.func(args, out) or 0
    except (UsageError, DomainError, ValueError) as exc:
        print(f"helixsrf {args.command}: error: {exc}", file=sys.stderr)
        return 2
    finally:
        if fh is not None:
            fh.close()


def main() -> None:
    sys.exit(run())
