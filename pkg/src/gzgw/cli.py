"""Batch command-line front end.

Subcommands: pattern, map, demo-n2, verify.  Data goes to stdout,
diagnostics to stderr.  Exit codes: 0 success, 1 failed verification,
2 parse/validation failure, 3 boundary-stratum rejection.
"""

import argparse
import json
import sys

import numpy as np

from gzgw import __version__
from gzgw.errors import BoundaryStratumError, GzgwError, SchemaError
from gzgw.gwmap import gw_forward, gw_inverse, n2_closed_form, psi_extract
from gzgw.pattern import classify, gz_lambda, gz_mu
from gzgw.serialize import (dump_json, load_json, matrix_from_obj,
                            matrix_to_obj, pattern_to_obj)
from gzgw.verify import DEFAULT_TOLERANCES, RunConfig, run_all


def _emit(obj, out_path):
    text = dump_json(obj, out_path)
    if out_path is None:
        print(text)


def cmd_pattern(args):
    mat = matrix_from_obj(load_json(args.matrix), hermitian_tol=args.tol)
    pat = gz_mu(mat) if args.log else gz_lambda(mat)
    cls = classify(pat, strictness_tol=args.margin)
    obj = pattern_to_obj(pat)
    obj["classification"] = cls.kind
    obj["margin"] = None if not np.isfinite(cls.margin) else float(cls.margin)
    _emit(obj, args.out)
    return 0


def cmd_map(args):
    mat = matrix_from_obj(load_json(args.matrix), hermitian_tol=args.tol)
    if args.psi:
        tw = psi_extract(mat, steps=args.steps, strictness_tol=args.margin)
        out = matrix_to_obj(tw.psi)
        out["det_defect"] = tw.det_defect
        out["continuation_steps"] = tw.continuation_steps
    elif args.inverse:
        out = matrix_to_obj(gw_inverse(mat, strictness_tol=args.margin))
    else:
        out = matrix_to_obj(gw_forward(mat, strictness_tol=args.margin).image)
    _emit(out, args.out)
    return 0


def cmd_demo_n2(args):
    vals = np.linspace(args.grid_min, args.grid_max, args.grid_points)
    worst = 0.0
    print(f"{'a':>9} {'b':>9} {'img00':>12} {'img01':>12} {'img11':>12} {'deviation':>11}")
    for a in vals:
        for b in vals:
            if b == 0.0:
                continue
            closed, _ = n2_closed_form(float(a), float(b))
            mat = np.array([[a, b], [b, -a]], dtype=np.complex128)
            transported = gw_forward(mat).image
            dev = float(abs(transported - closed).max())
            worst = max(worst, dev)
            print(f"{a:>9.4f} {b:>9.4f} {closed[0,0].real:>12.6f} "
                  f"{closed[0,1].real:>12.6f} {closed[1,1].real:>12.6f} {dev:>11.3e}")
    print(f"max deviation: {worst:.3e}")
    return 0 if worst <= 1e-10 else 1


def _parse_tolerance_overrides(items):
    overrides = {}
    for item in items or []:
        name, _, value = item.partition("=")
        if not value or name not in DEFAULT_TOLERANCES:
            raise SchemaError(f"unknown tolerance override {item!r}")
        overrides[name] = float(value)
    return overrides


def cmd_verify(args):
    cfg = RunConfig(size=args.size, seed=args.seed, samples=args.samples,
                    margin=args.margin, fd_step=args.fd_step, steps=args.steps,
                    tolerances=_parse_tolerance_overrides(args.tolerance))
    if args.config:
        loaded = load_json(args.config)
        for key in ("size", "seed", "samples", "margin", "fd_step", "steps"):
            if key in loaded:
                setattr(cfg, key, type(getattr(cfg, key))(loaded[key]))
        cfg.tolerances.update(loaded.get("tolerances", {}))
    records = run_all(cfg)
    _emit(records, args.out)
    failing = [r for r in records if not r["pass"]]
    for rec in failing:
        print(f"FAILED {json.dumps(rec)}", file=sys.stderr)
    return 1 if failing else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gzgw",
        description="Action-angle data of Hermitian matrices and the canonical "
                    "map onto positive definite matrices, with verification.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pattern", help="level eigenvalues plus cone classification")
    p.add_argument("matrix", help="matrix JSON file")
    p.add_argument("--log", action="store_true",
                   help="logarithmic pattern (input must be positive definite)")
    p.add_argument("--tol", type=float, default=1e-12, help="hermitian tolerance")
    p.add_argument("--margin", type=float, default=1e-8, help="strictness margin")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_pattern)

    p = sub.add_parser("map", help="forward map, inverse, or twist")
    p.add_argument("matrix", help="matrix JSON file")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--psi", action="store_true", help="extract the twist instead")
    p.add_argument("--steps", type=int, default=64, help="continuation steps")
    p.add_argument("--tol", type=float, default=1e-12, help="hermitian tolerance")
    p.add_argument("--margin", type=float, default=1e-8, help="strictness margin")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_map)

    p = sub.add_parser("demo-n2", help="closed form vs transported map on a grid")
    p.add_argument("--grid-min", type=float, default=-2.0)
    p.add_argument("--grid-max", type=float, default=2.0)
    p.add_argument("--grid-points", type=int, default=21)
    p.set_defaults(fn=cmd_demo_n2)

    p = sub.add_parser("verify", help="run the seeded verification suites")
    p.add_argument("--size", type=int, default=4, help="largest matrix size")
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--margin", type=float, default=1e-8)
    p.add_argument("--fd-step", type=float, default=1e-5)
    p.add_argument("--steps", type=int, default=64)
    p.add_argument("--tolerance", action="append", metavar="NAME=VALUE",
                   help="override a check tolerance (repeatable)")
    p.add_argument("--config", default=None, help="JSON config file override")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BoundaryStratumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except GzgwError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
