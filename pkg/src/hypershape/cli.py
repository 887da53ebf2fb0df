"""Command-line front end.

    hypershape analyze SPEC --at U,V,W [--format csv|jsonl]
    hypershape grid SPEC --out FILE [--format csv|jsonl]
    hypershape check SPEC

A SPEC is a JSON document::

    {
      "surface": {"x": "...", "y": "...", "z": "...", "t": "..."},
      "domain":  {"u": [lo, hi], "v": [lo, hi], "w": [lo, hi]},
      "samples": [nu, nv, nw],
      "implicit": "optional f(x, y, z, t)",
      "eps_k": 1e-8,
      "eps_reg": 1e-12
    }

Grid rows are emitted with w varying fastest, then v, then u.
"""
import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .batch import OK, analyze_points, grid_points
from .checks import THRESHOLDS, point_checks
from .errors import DomainError, HypershapeError, NotRegular, OutsideDomainBox, ParseError, SpecError
from .expr import IMPLICIT, parse
from .geometry import EPS_REG, ParametricSurface, evaluate_derivatives, implicit_normal
from .weingarten import verify_ternary_identities

CSV_COLUMNS = (
    "u", "v", "w", "x", "y", "z", "t", "n1", "n2", "n3", "n4",
    "g11", "g12", "g13", "g22", "g23", "g33",
    "b11", "b12", "b13", "b22", "b23", "b33",
    "K", "H", "k1", "k2", "k3", "class", "status",
)  # fmt: skip
REPORT_COLUMNS = (
    CSV_COLUMNS[:23]
    + ("s11", "s12", "s13", "s22", "s23", "s33")
    + CSV_COLUMNS[23:29]
    + ("residual_theorem2_i", "residual_theorem2_ii", "residual_eq16", "status")
)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_SPEC, EXIT_SINGULAR, EXIT_DOMAIN = 0, 1, 2, 3, 4


@dataclass
class SurfaceSpec:
    surface: ParametricSurface
    samples: tuple
    implicit: object = None
    eps_k: float = 1e-8
    eps_reg: float = EPS_REG


def _positive(value, name):
    value = float(value)
    if not value > 0:
        raise SpecError(f"{name} must be positive, got {value}")
    return value


def load_spec(path):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON: {exc}") from exc
    return spec_from_dict(doc)


def spec_from_dict(doc):
    if not isinstance(doc, dict):
        raise SpecError("spec must be a JSON object")
    try:
        surface = doc["surface"]
        coords = [surface[c] for c in "xyzt"]
    except (KeyError, TypeError):
        raise SpecError("spec needs 'surface' with string entries x, y, z, t") from None
    domain = doc.get("domain", {p: [-math.inf, math.inf] for p in "uvw"})
    if isinstance(domain, dict):
        try:
            domain = [domain[p] for p in "uvw"]
        except KeyError:
            raise SpecError("domain needs entries u, v, w") from None
    if len(domain) != 3 or any(len(d) != 2 for d in domain):
        raise SpecError("domain must give [lo, hi] for each of u, v, w")
    samples = tuple(doc.get("samples", (2, 2, 2)))
    if len(samples) != 3 or any(not isinstance(n, int) or n < 2 for n in samples):
        raise SpecError(f"samples must be three integers >= 2, got {list(samples)}")
    try:
        surf = ParametricSurface(tuple(coords), tuple(tuple(d) for d in domain))
    except ValueError as exc:
        if isinstance(exc, HypershapeError):
            raise
        raise SpecError(str(exc)) from exc
    implicit = doc.get("implicit")
    if implicit is not None:
        implicit = parse(implicit, IMPLICIT)
    return SurfaceSpec(
        surface=surf,
        samples=samples,
        implicit=implicit,
        eps_k=_positive(doc.get("eps_k", 1e-8), "eps_k"),
        eps_reg=_positive(doc.get("eps_reg", EPS_REG), "eps_reg"),
    )


def fmt(x):
    """Shortest decimal that round-trips to the same double."""
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    x = float(x)
    if math.isnan(x):
        return ""
    return repr(x + 0.0)  # drops the sign of -0.0


def point_report(batch, i, eps_k=1e-8):
    """Ordered dict with the REPORT_COLUMNS for row ``i``."""
    row = dict.fromkeys(REPORT_COLUMNS)
    row.update(zip("uvw", batch.points[i]))
    row["status"] = batch.status[i]
    if batch.status[i] != OK:
        return row
    row.update(zip("xyzt", batch.position[i]))
    row.update(zip(("n1", "n2", "n3", "n4"), batch.N[i]))
    row.update(zip(("g11", "g12", "g13", "g22", "g23", "g33"), batch.G[i]))
    row.update(zip(("b11", "b12", "b13", "b22", "b23", "b33"), batch.B[i]))
    row.update(zip(("s11", "s12", "s13", "s22", "s23", "s33"), batch.S_ortho[i]))
    row["K"] = batch.K[i]
    row["H"] = batch.H[i]
    row.update(zip(("k1", "k2", "k3"), batch.k[i]))
    row["class"] = batch.point_class(i, eps_k).name
    checks = point_checks(batch, i, eps_k)
    f = batch.frame(i)
    res_i, res_ii = verify_ternary_identities(f, batch.A_cramer[i], *np.eye(3))
    row["residual_theorem2_i"] = res_i
    row["residual_theorem2_ii"] = res_ii
    eq16 = checks["eq16_cayley_hamilton"]
    row["residual_eq16"] = "n/a" if eq16 is None else eq16 * float(np.max(np.abs(batch.k[i]))) ** 3
    return row


def _record(row, columns):
    out = {}
    for c in columns:
        v = row[c]
        out[c] = None if v is None or (isinstance(v, float) and math.isnan(v)) else (
            v if isinstance(v, str) else float(v)
        )
    return out


def _parse_point(text):
    try:
        values = tuple(float(x) for x in text.split(","))
    except ValueError:
        values = ()
    if len(values) != 3:
        raise argparse.ArgumentTypeError(f"expected u,v,w, got {text!r}")
    return values


def _fail(stage, exc, code):
    print(f"error [{stage}]: {exc}", file=sys.stderr)
    return code


def _load(args):
    spec = load_spec(args.spec)
    if args.eps_k is not None:
        spec.eps_k = _positive(args.eps_k, "--eps-k")
    if args.eps_reg is not None:
        spec.eps_reg = _positive(args.eps_reg, "--eps-reg")
    return spec


def cmd_analyze(args, out=None):
    out = out or sys.stdout
    spec = _load(args)
    p = args.at
    if not spec.surface.contains(p):
        raise OutsideDomainBox(f"point {p} lies outside the domain box {spec.surface.domain}")
    evaluate_derivatives(spec.surface, [p])  # surfaces domain errors with their message
    batch = analyze_points(spec.surface, [p], spec.eps_reg, args.backend)
    if batch.status[0] != OK:
        raise NotRegular(f"frame is degenerate at {p} (rank of the Jacobian < 3)")
    row = point_report(batch, 0, spec.eps_k)
    if args.format == "jsonl":
        out.write(json.dumps(_record(row, REPORT_COLUMNS)) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(REPORT_COLUMNS)
        w.writerow([fmt(row[c]) for c in REPORT_COLUMNS])
    else:
        width = max(len(c) for c in REPORT_COLUMNS)
        for c in REPORT_COLUMNS:
            out.write(f"{c:<{width}} : {fmt(row[c])}\n")
    return EXIT_OK


def cmd_grid(args, out=None):
    spec = _load(args)
    points = grid_points(spec.surface.domain, spec.samples)
    batch = analyze_points(spec.surface, points, spec.eps_reg, args.backend)
    buf = io.StringIO()
    if args.format == "jsonl":
        for i in range(len(batch)):
            buf.write(json.dumps(_record(point_report(batch, i, spec.eps_k), REPORT_COLUMNS)) + "\n")
    else:
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for i in range(len(batch)):
            row = point_report(batch, i, spec.eps_k)
            w.writerow([fmt(row[c]) for c in CSV_COLUMNS])
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(buf.getvalue())
    n_ok = sum(s == OK for s in batch.status)
    print(f"wrote {len(batch)} rows ({n_ok} regular) to {args.out}", file=out or sys.stdout)
    return EXIT_OK if n_ok else EXIT_SINGULAR


def run_checks(spec, backend=None):
    """Max normalised residual per identity over the sample grid.

    Returns ``(results, n_points, n_regular)`` with ``results`` mapping the
    identity name to the max residual, or None when it never applied.
    """
    points = grid_points(spec.surface.domain, spec.samples)
    batch = analyze_points(spec.surface, points, spec.eps_reg, backend)
    worst = dict.fromkeys(THRESHOLDS)
    if spec.implicit is not None:
        worst["implicit_normal"] = None
    n_regular = 0
    for i in range(len(batch)):
        if batch.status[i] != OK:
            continue
        n_regular += 1
        checks = point_checks(batch, i, spec.eps_k)
        if spec.implicit is not None:
            try:
                n_imp = implicit_normal(spec.implicit, batch.position[i])
                n_par = batch.N[i]
                checks["implicit_normal"] = float(min(np.max(np.abs(n_imp - n_par)), np.max(np.abs(n_imp + n_par))))
            except HypershapeError:
                checks["implicit_normal"] = None
        for name, value in checks.items():
            if value is not None:
                worst[name] = value if worst[name] is None else max(worst[name], value)
    return worst, len(batch), n_regular


def cmd_check(args, out=None):
    out = out or sys.stdout
    spec = _load(args)
    worst, n_points, n_regular = run_checks(spec, args.backend)
    thresholds = dict(THRESHOLDS, implicit_normal=1e-9)
    print(f"{n_regular} of {n_points} sample points regular", file=out)
    ok = n_regular > 0
    for name, value in worst.items():
        if value is None:
            print(f"  {name:<24} n/a", file=out)
            continue
        passed = value <= thresholds[name]
        ok &= passed
        print(f"  {name:<24} max {value:.3e}  (limit {thresholds[name]:.0e})  {'PASS' if passed else 'FAIL'}", file=out)
    if n_regular == 0:
        print("no regular points: every sample is singular", file=out)
    print("all checks passed" if ok else "CHECK FAILED", file=out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def build_parser():
    parser = argparse.ArgumentParser(prog="hypershape", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spec", help="surface specification (JSON)")
    common.add_argument("--eps-k", type=float, default=None, help="zero threshold for principal curvatures")
    common.add_argument("--eps-reg", type=float, default=None, help="relative regularity threshold")
    common.add_argument("--backend", choices=("numba", "numpy"), default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full report at one parameter point")
    p.add_argument("--at", type=_parse_point, required=True, metavar="U,V,W")
    p.add_argument("--format", choices=("text", "csv", "jsonl"), default="text")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("grid", parents=[common], help="evaluate the sample lattice into a file")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("check", parents=[common], help="verify the structural identities on the grid")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, ParseError, OSError) as exc:
        stage = "parse" if isinstance(exc, ParseError) else "spec"
        return _fail(stage, exc, EXIT_SPEC)
    except NotRegular as exc:
        return _fail("frame", exc, EXIT_SINGULAR)
    except (DomainError, OutsideDomainBox) as exc:
        return _fail("evaluate", exc, EXIT_DOMAIN)


if __name__ == "__main__":
    sys.exit(main())
