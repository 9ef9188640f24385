"""Command-line interface.

Exit status: 0 on pass, 1 on fail, 2 on usage, parse or invariant errors.
Series arguments accept a JSON file path or a catalog name such as
``koebe``, ``catalog:gen_koebe(0.5)`` or ``moebius:1,-1``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

import numpy as np

from .bounds import (
    FSBoundInputs, PhiExpansion, fekete_szego_functional, fekete_szego_terms,
    sufficient_condition, verify_coefficient_bounds,
)
from .classes import ClassParams, MoebiusTarget, certify_membership
from .disk import DEFAULT_GRID, DiskGrid
from .errors import KSClassError
from .series import TruncatedSeries
from .suite import CERT_ORDER, DEFAULT_SEED, DEFAULT_TRIALS, dumps_report, run_suite
from .synthesis import (
    bernardi_transform, blaschke_witness, catalog, compose_moebius, parse_catalog,
    random_disk_point, solve_coefficients,
)

ORDER_RANGE = (8, 4096)


class UsageError(Exception):
    pass


def load_series(source: str, order: int) -> TruncatedSeries:
    if os.path.exists(source):
        with open(source) as fh:
            return TruncatedSeries.from_dict(json.load(fh))
    return parse_catalog(source, order)


def _load_meta(source: str) -> dict[str, Any]:
    if source and os.path.exists(source):
        with open(source) as fh:
            return json.load(fh).get("meta", {})
    return {}


def _complex_json(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _params(args, meta=None) -> ClassParams:
    meta = meta or {}
    k = args.k if args.k is not None else meta.get("k", 1)
    lam = args.lam if args.lam is not None else meta.get("lambda", 0.0)
    mu = args.mu if args.mu is not None else meta.get("mu", 0.0)
    return ClassParams(int(k), float(lam), float(mu))


def _target(args, meta=None) -> MoebiusTarget:
    meta = meta or {}
    A = args.A if args.A is not None else meta.get("A", 1.0)
    B = args.B if args.B is not None else meta.get("B", -1.0)
    return MoebiusTarget(float(A), float(B))


def _grid(args) -> DiskGrid:
    if args.grid:
        with open(args.grid) as fh:
            return DiskGrid.from_dict(json.load(fh), label=os.path.basename(args.grid))
    if args.grid_radii is None and args.grid_angles is None:
        return DEFAULT_GRID
    radii = DEFAULT_GRID.radii
    if args.grid_radii:
        radii = tuple(float(r) for r in args.grid_radii.split(","))
    angles = args.grid_angles or DEFAULT_GRID.angles_per_circle
    return DiskGrid(radii, angles)


def _emit(payload: Any, out: str | None) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_check(args) -> int:
    params, target = _params(args), _target(args)
    f = load_series(args.f, args.order)
    g = load_series(args.g, args.order)
    report = certify_membership(f, g, params, target, _grid(args), alpha=args.alpha)
    _emit(report.to_dict(), args.out)
    return 0 if report.verdict else 1


def cmd_synth(args) -> int:
    params, target = _params(args), _target(args)
    order = args.order
    g_source = args.g or f"gen_koebe({params.starlike_order!r})"
    g = load_series(g_source, order + params.k - 1)
    meta = {"k": params.k, "lambda": params.lam, "mu": params.mu, "A": target.A, "B": target.B,
            "g": g_source}
    if args.p:
        p = load_series(args.p, order)
        meta["p"] = args.p
    else:
        c = random_disk_point(np.random.default_rng(args.seed))
        p = compose_moebius(blaschke_witness(c, order), target)
        meta["w_c"] = _complex_json(c)
        meta["seed"] = args.seed
    f = solve_coefficients(p, g, params, order)
    if args.gamma is not None:
        f = bernardi_transform(f, args.gamma)
        meta["gamma"] = args.gamma
    data = f.to_dict()
    data["meta"] = meta
    _emit(data, args.out)
    return 0


def cmd_bounds(args) -> int:
    source = args.member or args.f
    if not source:
        raise UsageError("bounds needs --member (or --f)")
    meta = _load_meta(source)
    params, target = _params(args, meta), _target(args, meta)
    f = load_series(source, max(args.order, args.nmax))
    report = verify_coefficient_bounds(f, params, PhiExpansion.from_moebius(target), args.nmax)
    _emit(report.rows, args.out)
    return 0 if report.passed else 1


def cmd_fs(args) -> int:
    meta = _load_meta(args.f)
    params, target = _params(args, meta), _target(args, meta)
    f = load_series(args.f, args.order)
    inputs = FSBoundInputs(args.delta, args.d1)
    terms = fekete_szego_terms(params, PhiExpansion.from_moebius(target), inputs)
    value = fekete_szego_functional(f, args.delta)
    ok = value <= terms["value"] + 1e-9
    _emit({
        "verdict": "pass" if ok else "fail",
        "functional": value,
        "bound": float(terms["value"]),
        "terms": [float(t) for t in terms["terms"]],
        "alpha": _complex_json(terms["alpha"]),
        "beta": _complex_json(terms["beta"]),
        "delta": args.delta,
        "d1": args.d1,
        "caveats": terms["caveats"],
    }, args.out)
    return 0 if ok else 1


def cmd_sufficient(args) -> int:
    meta = _load_meta(args.f)
    params, target = _params(args, meta), _target(args, meta)
    f = load_series(args.f, args.order)
    g = load_series(args.g, args.order)
    report = sufficient_condition(f, g, params, target)
    _emit(report.to_dict(), args.out)
    return 0 if report.verdict else 1


def cmd_suite(args) -> int:
    report = run_suite(args.seed, args.trials, _grid(args), args.order)
    _emit(dumps_report(report), args.out)
    return 0 if report["all_passed"] else 1


def cmd_catalog(args) -> int:
    aux = None
    if args.name == "gen_koebe":
        aux = args.alpha if args.alpha is not None else 0.0
    elif args.name == "moebius":
        aux = (args.A if args.A is not None else 1.0, args.B if args.B is not None else -1.0)
    s = catalog(args.name, args.order, aux) if aux is not None else parse_catalog(args.name, args.order)
    _emit(s.to_dict(), args.out)
    return 0


def _order(text: str) -> int:
    n = int(text)
    lo, hi = ORDER_RANGE
    if not lo <= n <= hi:
        raise argparse.ArgumentTypeError(f"order must lie in [{lo}, {hi}]")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ksclass",
        description="Sampled certificates and bound checks for the class K_s^(k)(lambda, mu, A, B).",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int)
    common.add_argument("--lambda", dest="lam", type=float)
    common.add_argument("--mu", type=float)
    common.add_argument("--A", type=float)
    common.add_argument("--B", type=float)
    common.add_argument("--order", type=_order, default=CERT_ORDER)
    common.add_argument("--grid", help="grid JSON file {\"radii\": [...], \"angles\": n}")
    common.add_argument("--grid-radii", help="comma-separated radii in (0, 1)")
    common.add_argument("--grid-angles", type=int)
    common.add_argument("--out", help="report path (default: stdout)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="certify membership of f with witness g")
    p.add_argument("--f", required=True)
    p.add_argument("--g", default="identity")
    p.add_argument("--alpha", type=float, help="starlikeness order demanded of g (default (k-1)/k)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("synth", parents=[common], help="synthesize a member from the recurrence")
    p.add_argument("--g")
    p.add_argument("--p", help="P-class series (default: phi(w) with a seeded Schwarz function)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--gamma", type=float, help="apply the Bernardi transform afterwards")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("bounds", parents=[common], help="compare |a_n| with the coefficient bound")
    p.add_argument("--member")
    p.add_argument("--f")
    p.add_argument("--nmax", type=int, default=16)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("fs", parents=[common], help="Fekete-Szego functional against its closed-form bound")
    p.add_argument("--f", required=True)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--d1", type=float, default=2.0)
    p.set_defaults(func=cmd_fs)

    p = sub.add_parser("sufficient", parents=[common], help="coefficient-sum sufficient condition")
    p.add_argument("--f", required=True)
    p.add_argument("--g", default="identity")
    p.set_defaults(func=cmd_sufficient)

    p = sub.add_parser("suite", parents=[common], help="run the seeded property suite")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("catalog", parents=[common], help="print a catalog series")
    p.add_argument("name")
    p.add_argument("--alpha", type=float)
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (KSClassError, UsageError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
