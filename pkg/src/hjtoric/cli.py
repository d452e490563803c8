"""Command-line front end.

Subcommands: resolve, blowup, equiv, signature, simulate, hj.  Numeric
flags that are rational-valued accept exact "n/d" strings; output is JSON
(or SVG for diagrams).  Exit codes: 0 success, 2 domain/validation error,
1 internal inconsistency.  Set HJTORIC_LOG=debug for verbose logging.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .blowup import cross_check, fulton_config, mcduff_sequence
from .circle import FixedPointDatum, build_cover, run_loop, validate
from .errors import DomainError, StructureError
from .hj import hj_expand, hj_reverse
from .homology import IntersectionLattice, signature
from .rationals import parse_rational, rational_json
from .resolution import (
    CyclicSingularity,
    resolution_params,
    resolve_cyclic,
    same_resolution,
    type_equivalent,
)
from .svg import cut_diagram_svg

log = logging.getLogger(__name__)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _emit_json(obj, out: str | None) -> None:
    _emit(json.dumps(obj, indent=2), out)


def cmd_resolve(args) -> int:
    s = CyclicSingularity(args.r, args.p, args.q)
    chain = resolve_cyclic(s)
    alpha, k = resolution_params(s)
    payload = {
        "r": args.r,
        "p": args.p,
        "q": args.q,
        "chain": list(chain.self_intersections),
        "k": k,
        "alpha": alpha,
    }
    if s.smooth:
        payload["note"] = "smooth point: empty resolution"
    _emit_json(payload, args.out)
    return 0


def cmd_blowup(args) -> int:
    size = parse_rational(args.size)
    cfg = fulton_config(args.p, args.q, size=size)
    seq = mcduff_sequence(args.q, args.p)
    ok = cross_check(args.p, args.q)
    if args.format == "svg":
        _emit(cut_diagram_svg(args.p, args.q, scale=args.scale), args.out)
        return 0 if ok else 1
    payload = cfg.to_json()
    payload.update(
        {
            "size": rational_json(size),
            "mcduff": list(seq.multiplicities),
            "cuts": [list(c) for c in seq.cut_directions],
            "cross_check": ok,
        }
    )
    _emit_json(payload, args.out)
    if not ok:
        log.error("cross_check(%d, %d) failed: the two resolution routes disagree", args.p, args.q)
        return 1
    return 0


def cmd_equiv(args) -> int:
    s1 = CyclicSingularity(args.r, 1, args.q1)
    s2 = CyclicSingularity(args.r, 1, args.q2)
    payload = {
        "r": args.r,
        "q1": args.q1,
        "q2": args.q2,
        "oriented": args.oriented,
        "type_equivalent": type_equivalent(s1, s2, oriented=args.oriented),
        "same_resolution": same_resolution(s1, s2),
    }
    _emit_json(payload, args.out)
    return 0


def cmd_signature(args) -> int:
    raw = sys.stdin.read() if args.input == "-" else open(args.input).read()
    lat = IntersectionLattice.from_json(raw)
    b_plus, b_minus, b_zero = signature(lat)
    _emit_json({"b_plus": b_plus, "b_minus": b_minus, "b_zero": b_zero}, args.out)
    return 0


def _parse_simulation_input(raw: str) -> dict:
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed JSON input: {exc}") from exc
    if not isinstance(obj, dict) or "fixed_points" not in obj:
        raise DomainError('input must be an object with a "fixed_points" list')
    return obj


def cmd_simulate(args) -> int:
    raw = sys.stdin.read() if args.input == "-" else open(args.input).read()
    obj = _parse_simulation_input(raw)
    data = [
        FixedPointDatum(
            parse_rational(fp["level"]),
            int(fp["sign"]),
            int(fp["p"]),
            int(fp["q"]),
            fp.get("match"),
        )
        for fp in obj["fixed_points"]
    ]
    report = validate(data)
    if not report.ok:
        _emit_json({"errors": list(report.errors)}, args.out)
        return 2
    payload = {}
    if data:
        eps = parse_rational(obj["eps"]) if "eps" in obj else None
        if eps is not None:
            payload["cover"] = build_cover(data, eps).to_json()
    result = run_loop(
        data,
        loops=int(obj.get("loops", 5)),
        bound=obj.get("bound"),
        base=parse_rational(obj["base"]) if "base" in obj else None,
        delta=parse_rational(obj["delta"]) if "delta" in obj else None,
        tracked_independent=bool(obj.get("tracked_independent", True)),
    )
    payload.update(result.to_json())
    _emit_json(payload, args.out)
    return 0


def cmd_hj(args) -> int:
    e = hj_expand(args.m, args.k)
    rev = hj_reverse(e)
    payload = {
        "m": args.m,
        "k": args.k,
        "terms": list(e.terms),
        "reversed_terms": list(rev.terms),
        "k_prime": rev.residue,
    }
    _emit_json(payload, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hjtoric",
        description="Exact toric combinatorics: quotient-singularity resolutions, "
        "weighted blowups and circle-action reduced-space simulation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("resolve", help="resolve an order-r type-(p,q) quotient point")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("blowup", help="resolve a (p,q)-weighted blowup both ways")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--size", default="1", help='blowup size, exact rational "n/d"')
    p.add_argument("--format", choices=("json", "svg"), default="json")
    p.add_argument("--scale", type=int, default=40, help="svg units per lattice step")
    p.add_argument("--out")
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("equiv", help="compare two order-r types (1,q1), (1,q2)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--q1", type=int, required=True)
    p.add_argument("--q2", type=int, required=True)
    p.add_argument("--oriented", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("signature", help="signature (b+, b-, b0) of a lattice JSON file")
    p.add_argument("input", help='lattice JSON path, or "-" for stdin')
    p.add_argument("--out")
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("simulate", help="run the reduced-space circle simulation")
    p.add_argument("input", help='simulation JSON path, or "-" for stdin')
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("hj", help="negative continued fraction of m/k")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_hj)

    return parser


def main(argv=None) -> int:
    level = os.environ.get("HJTORIC_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, NotImplementedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except StructureError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
