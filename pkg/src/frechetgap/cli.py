"""Command-line front end.

Thin shell over the library: every verdict printed here is recomputable by
direct calls with identical results.  Exit codes: 0 success, 1 verification
failure, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .bench import BENCH_ALGOS, bench_csv, run_bench
from .curve import Curve, curve_dumps, curve_loads
from .engines import (
    VARIANTS, discrete_frechet_exact, discrete_weak_frechet_exact,
    extract_matching, frechet_exact, partial_frechet_exact,
    weak_frechet_exact,
)
from .exactnum import fmt_exact, to_exact
from .gadgets import (
    BUILDER_VARIANTS, TrivialityClass, brute_force_ov, build_reduction,
    classify_instance, ov_dumps, ov_loads, pair_dumps,
    subdivide_pair_for_discrete,
)
from .gapcheck import campaign_instances, check_instance, resolve_instance, random_instance
from .render import render_fsd
from .weak1d import weak_frechet_1d_linear

_FAMILIES = ("partial", "frechet", "discrete", "weak1d", "weak2d")


class _CliError(Exception):
    pass


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc}")


def _write_text(path, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_curve(path: str) -> Curve:
    try:
        return curve_loads(_read_text(path))
    except _CliError:
        raise
    except Exception as exc:
        raise _CliError(f"bad curve file {path}: {exc}")


def _load_instance(path: str):
    try:
        return ov_loads(_read_text(path))
    except _CliError:
        raise
    except ValueError as exc:
        raise _CliError(f"bad instance file {path}: {exc}")


def _parse_eps(text: str):
    try:
        eps = to_exact(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise _CliError(f"bad eps {text!r}")
    if eps < 0:
        raise _CliError("eps must be >= 0")
    return eps


# --- subcommands -----------------------------------------------------------------

def _cmd_gen_ov(args) -> int:
    try:
        inst = random_instance(args.n, args.m, args.d, args.seed,
                               density=args.density, nontrivial=args.nontrivial)
    except ValueError as exc:
        raise _CliError(str(exc))
    _write_text(args.out, ov_dumps(inst))
    return 0


def _cmd_solve_ov(args) -> int:
    inst = _load_instance(args.instance)
    cls, witness = resolve_instance(inst)
    if witness is None:
        print(f"{cls.value} NO")
    else:
        print(f"{cls.value} YES {witness[0]} {witness[1]}")
    return 0


def _cmd_reduce(args) -> int:
    inst = _load_instance(args.instance)
    if classify_instance(inst) is not TrivialityClass.NONTRIVIAL:
        raise _CliError("instance is trivial; reductions need a nontrivial instance "
                        "(use solve-ov for the direct verdict)")
    family = "frechet" if args.family == "discrete" else args.family
    pair = build_reduction(inst, family)
    if args.family == "discrete":
        pair = subdivide_pair_for_discrete(pair)
    _write_text(args.out, pair_dumps(pair) + "\n")
    return 0


_EXACT_BY_VARIANT = {
    "F": lambda p, q: frechet_exact(p, q),
    "dF": lambda p, q: discrete_frechet_exact(p, q),
    "partialF": lambda p, q: partial_frechet_exact(p, q),
    "partial-dF": lambda p, q: partial_frechet_exact(p, q, discrete=True),
    "wF": lambda p, q: weak_frechet_exact(p, q, endpoint_restricted=True),
    "wwF": lambda p, q: weak_frechet_exact(p, q, endpoint_restricted=False),
    "dwF": lambda p, q: discrete_weak_frechet_exact(p, q, endpoint_restricted=True),
    "dwwF": lambda p, q: discrete_weak_frechet_exact(p, q, endpoint_restricted=False),
}


def _cmd_dist(args) -> int:
    P, Q = _load_curve(args.curve_a), _load_curve(args.curve_b)
    variant = args.variant
    if variant not in VARIANTS:
        raise _CliError(f"unknown variant {variant!r} (choose from {', '.join(VARIANTS)})")
    if args.algo in ("weak1d-linear", "weak-quadratic") and variant != "wF":
        raise _CliError(f"--algo {args.algo} only computes the wF variant")
    try:
        if args.algo == "weak1d-linear":
            value = weak_frechet_1d_linear(P, Q)
        else:
            value = _EXACT_BY_VARIANT[variant](P, Q)
    except ValueError as exc:
        raise _CliError(str(exc))
    print(fmt_exact(value))
    if args.witness is not None:
        matching = extract_matching(P, Q, value, variant)
        _write_text(args.witness, json.dumps(matching.to_obj()) + "\n")
    return 0


def _families(text: str):
    fams = tuple(f.strip() for f in text.split(",") if f.strip())
    for f in fams:
        if f not in BUILDER_VARIANTS:
            raise _CliError(f"unknown reduction family {f!r} "
                            f"(choose from {', '.join(BUILDER_VARIANTS)})")
    return fams


def _cmd_verify_gap(args) -> int:
    families = _families(args.variant)
    reports = []
    if args.instance is not None:
        inst = _load_instance(args.instance)
        cls, witness = resolve_instance(inst)
        if cls is not TrivialityClass.NONTRIVIAL:
            verdict = "NO" if witness is None else f"YES {witness[0]} {witness[1]}"
            print(f"trivial instance ({cls.value}): {verdict}")
            return 0
        for family in families:
            reports.append(check_instance(inst, family, label=args.instance))
    else:
        for label, inst in campaign_instances(seeds_per_cell=args.seeds,
                                              base_seed=args.seed,
                                              n_max=args.n_max,
                                              d_min=args.d_min, d_max=args.d_max):
            for family in families:
                reports.append(check_instance(inst, family, label=label))

    rows = [row for rep in reports for row in rep.rows()]
    rows.sort(key=lambda r: (r["family"], r["label"], r["variant"]))
    failures = sum(1 for rep in reports if not rep.passed)

    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["family", "label", "n", "m", "d",
                                             "oracle", "variant", "distance",
                                             "decision_ok", "offset"])
    writer.writeheader()
    writer.writerows(rows)
    if args.out is not None:
        _write_text(args.out, buf.getvalue())

    for rep in sorted(reports, key=lambda r: (r.family, r.label)):
        dists = " ".join(f"{v}={fmt_exact(x)}" for v, x in sorted(rep.distances.items()))
        print(f"{'PASS' if rep.passed else 'FAIL'} {rep.family:8s} {rep.label:14s} "
              f"{'YES' if rep.oracle_yes else 'NO ':3s} {dists}")
    print(f"{len(reports) - failures}/{len(reports)} passed")
    return 1 if failures else 0


def _cmd_render_fsd(args) -> int:
    P, Q = _load_curve(args.curve_a), _load_curve(args.curve_b)
    eps = _parse_eps(args.eps)
    witness = None
    if args.witness is not None:
        if args.witness not in VARIANTS:
            raise _CliError(f"unknown variant {args.witness!r}")
        try:
            witness = extract_matching(P, Q, eps, args.witness)
        except ValueError as exc:
            raise _CliError(f"no witness at eps={args.eps}: {exc}")
    svg = render_fsd(P, Q, eps, res=args.res, arclength=args.arclength,
                     witness=witness)
    _write_text(args.out, svg)
    return 0


def _cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s]
    except ValueError:
        raise _CliError(f"bad size list {args.sizes!r}")
    if sizes != sorted(sizes):
        raise _CliError("sizes must be ascending")
    try:
        rows = run_bench(args.algo, sizes, seed=args.seed, runs=args.runs)
    except ValueError as exc:
        raise _CliError(str(exc))
    _write_text(args.out, bench_csv(rows))
    return 0


# --- parser ------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="frechetgap",
                                 description="Exact Fréchet-variant distances and "
                                             "orthogonal-vectors hardness gadgets")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-ov", help="generate a random instance file")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--nontrivial", action="store_true",
                   help="resample any all-zero vector")
    g.add_argument("--out", default=None)
    g.set_defaults(fn=_cmd_gen_ov)

    s = sub.add_parser("solve-ov", help="oracle verdict for an instance file")
    s.add_argument("instance")
    s.set_defaults(fn=_cmd_solve_ov)

    r = sub.add_parser("reduce", help="build a hard curve pair from an instance")
    r.add_argument("family", choices=_FAMILIES)
    r.add_argument("instance")
    r.add_argument("--out", default=None)
    r.set_defaults(fn=_cmd_reduce)

    d = sub.add_parser("dist", help="exact distance between two curve files")
    d.add_argument("curve_a")
    d.add_argument("curve_b")
    d.add_argument("--variant", default="F")
    d.add_argument("--algo", default="auto", choices=("auto", "weak1d-linear",
                                                      "weak-quadratic"))
    d.add_argument("--witness", default=None, metavar="PATH",
                   help="write a matching JSON achieving the printed value")
    d.set_defaults(fn=_cmd_dist)

    v = sub.add_parser("verify-gap", help="oracle-vs-distance gap campaign")
    v.add_argument("--instance", default=None,
                   help="verify one instance file instead of the sweep")
    v.add_argument("--variant", default="partial,frechet,weak1d,weak2d",
                   help="comma-separated reduction families")
    v.add_argument("--seeds", type=int, default=25, help="seeds per (n,m,d) cell")
    v.add_argument("--seed", type=int, default=0, help="campaign base seed")
    v.add_argument("--n-max", type=int, default=6)
    v.add_argument("--d-min", type=int, default=2)
    v.add_argument("--d-max", type=int, default=5)
    v.add_argument("--out", default=None, metavar="CSV")
    v.set_defaults(fn=_cmd_verify_gap)

    f = sub.add_parser("render-fsd", help="free-space diagram SVG")
    f.add_argument("curve_a")
    f.add_argument("curve_b")
    f.add_argument("--eps", required=True)
    f.add_argument("--res", type=int, default=8)
    f.add_argument("--arclength", action="store_true",
                   help="space axes by distance travelled instead of index")
    f.add_argument("--witness", default=None, metavar="VARIANT",
                   help="overlay a matching path for this variant")
    f.add_argument("--out", default=None)
    f.set_defaults(fn=_cmd_render_fsd)

    b = sub.add_parser("bench", help="median wall time per input size")
    b.add_argument("--algo", default="weak1d-linear", choices=BENCH_ALGOS)
    b.add_argument("--sizes", default="100000,1000000,10000000")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--runs", type=int, default=3)
    b.add_argument("--out", default=None)
    b.set_defaults(fn=_cmd_bench)

    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
