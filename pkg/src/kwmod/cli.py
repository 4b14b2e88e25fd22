"""Command line: ``kwmod inspect | sweep | render | levi``.

Exit codes: 0 success, 1 a check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .kw import induced_dimension, verify_instance
from .partitions import InvalidPart, NotWeaklyDecreasing, PartitionPair, parse_partition
from .pchar import (
    BlockShapeMismatch,
    check_levi_identities,
    parse_block,
    parse_semisimple,
)
from .pyramid import dynkin_pyramid, render_ascii, render_svg, shift_pyramid, young_pyramid
from .superalgebra import AlgebraContext, InvalidContext, dynkin_grading, parabolic
from .sweep import InvalidBound, SweepConfig, run_sweep

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

log = logging.getLogger("kwmod")


class InputError(Exception):
    pass


def _pair(args) -> PartitionPair:
    try:
        pp = PartitionPair(parse_partition(args.r), parse_partition(args.q))
    except (InvalidPart, NotWeaklyDecreasing) as exc:
        raise InputError(str(exc)) from None
    m = pp.m if args.m is None else args.m
    n = pp.n if args.n is None else args.n
    if (pp.m, pp.n) != (m, n):
        raise InputError(f"({pp.r}|{pp.q}) is not a partition of ({m}|{n})")
    if m + n == 0:
        raise InputError("empty algebra")
    return pp


def _context(m: int, n: int, p: int, kind: str) -> AlgebraContext:
    try:
        return AlgebraContext(m, n, p, kind)
    except InvalidContext as exc:
        raise InputError(str(exc)) from None


def _write_json(obj, path: str | None):
    text = json.dumps(obj, indent=2, ensure_ascii=False)
    if path:
        Path(path).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def cmd_inspect(args) -> int:
    pp = _pair(args)
    ctx = _context(pp.m, pp.n, args.p, args.kind)
    rep = verify_instance(ctx, pp)
    if args.json:
        _write_json(rep.to_json(), args.out)
        return EXIT_OK if rep.passed else EXIT_FAIL
    P = dynkin_pyramid(pp)
    Q = shift_pyramid(P)
    Y = young_pyramid(pp)
    print(f"{ctx.kind}({ctx.m}|{ctx.n}) over F_{ctx.p}, Jordan type r=({pp.r}) q=({pp.q})")
    for title, pyr in (("Dynkin pyramid", P), ("shifted pyramid", Q), ("Young pyramid", Y)):
        print(f"\n{title}:")
        print(render_ascii(pyr, numbers=True))
    print("\nDynkin grading sdim g(k):")
    for k, sub in sorted(dynkin_grading(ctx, pp).items()):
        print(f"  g({k:+d}) = {sub.sdim}")
    print(f"\nsdim p   = {parabolic(ctx, P).sdim}")
    print(f"sdim p'  = {parabolic(ctx, Q).sdim}")
    print(f"sdim p_Y = {parabolic(ctx, Y).sdim}")
    d0, d1 = rep.metadata["kw_dims"]
    print(f"kw dims (d0, d1) = ({d0}, {d1})")
    if rep.kw_bound is not None:
        b = rep.kw_bound
        print(f"kw bound = {b.format(ctx.p)} = {b.value(ctx.p)}")
        if "induced_dimension" in rep.checks and rep.checks["induced_dimension"].passed:
            print(f"induced dimension = {induced_dimension(ctx, pp).format(ctx.p)}")
    print("\nchecks:")
    for name, res in rep.checks.items():
        extra = f"  ({res.detail})" if res.status == "fail" and res.detail else ""
        print(f"  {res.status:4s}  {name}{extra}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_render(args) -> int:
    pp = _pair(args)
    P = dynkin_pyramid(pp)
    pyramids = {"dynkin": P, "shifted": shift_pyramid(P), "young": young_pyramid(pp)}
    chosen = list(pyramids) if args.which == "all" else [args.which]
    for name in chosen:
        if len(chosen) > 1:
            print(f"{name}:")
        print(render_ascii(pyramids[name], numbers=args.numbers))
    if args.svg:
        Path(args.svg).write_text(render_svg(pyramids[chosen[0]], numbers=True), encoding="utf-8")
    return EXIT_OK


def cmd_levi(args) -> int:
    try:
        s = parse_semisimple(args.s)
        per_block = dict(parse_block(b) for b in args.block or [])
    except (ValueError, InvalidPart) as exc:
        raise InputError(str(exc)) from None
    m = len(s.even) if args.m is None else args.m
    n = len(s.odd) if args.n is None else args.n
    ctx = _context(m, n, args.p, args.kind)
    try:
        rep = check_levi_identities(ctx, s, per_block)
    except BlockShapeMismatch as exc:
        raise InputError(str(exc)) from None
    if args.json:
        _write_json(rep.to_json(), args.out)
    else:
        meta = rep.metadata
        print(f"{ctx.kind}({ctx.m}|{ctx.n}) over F_{ctx.p}, s = {s.reduced(ctx.p)}")
        for blk in meta["blocks"]:
            bm, bn = blk["size"]
            print(f"  block λ={blk['eigenvalue']}: gl({bm}|{bn}), Jordan type {blk['jordan']}")
        print(f"sdim l = {tuple(meta['sdim_l'])}, sdim u = {tuple(meta['sdim_u'])}")
        print(f"d = {tuple(meta['d'])}, d' = {tuple(meta['d_prime'])}")
        if rep.kw_bound is not None:
            print(f"kw bound = {rep.kw_bound.format(ctx.p)} = {rep.kw_bound.value(ctx.p)}")
        for name, res in rep.checks.items():
            print(f"  {res.status:4s}  {name}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def _csv(conv):
    def parse(text: str):
        return tuple(conv(t) for t in text.split(",") if t.strip())

    return parse


def cmd_sweep(args) -> int:
    try:
        cfg = SweepConfig(
            max_size=args.max_size,
            primes=args.primes,
            kinds=args.kinds,
            seed=args.seed,
            levi_random=args.levi_random,
            out_path=args.out,
        )
    except InvalidBound as exc:
        raise InputError(f"InvalidBound: {exc}") from None
    report = run_sweep(cfg)
    if args.out:
        _write_json(report, args.out)
    summary = report["summary"]
    print(json.dumps(summary))
    return EXIT_OK if summary["failed"] == 0 and summary["levi_failed"] == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kwmod", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def pair_args(sp):
        sp.add_argument("--m", type=int)
        sp.add_argument("--n", type=int)
        sp.add_argument("--r", default="", help='even partition, e.g. "3,1"')
        sp.add_argument("--q", default="", help='odd partition, e.g. "2,1"')

    sp = sub.add_parser("inspect", help="pyramids, gradings and checks for one nilpotent")
    pair_args(sp)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--kind", choices=("gl", "sl"), default="gl")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_inspect)

    sp = sub.add_parser("render", help="draw pyramids")
    pair_args(sp)
    sp.add_argument("--which", choices=("dynkin", "shifted", "young", "all"), default="all")
    sp.add_argument("--numbers", action="store_true", help="label boxes b1.., 1..")
    sp.add_argument("--svg", metavar="PATH")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("levi", help="Levi reduction for x = s + n")
    sp.add_argument("--m", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--kind", choices=("gl", "sl"), default="gl")
    sp.add_argument("--s", required=True, help='diagonal of s, e.g. "0,1|0"')
    sp.add_argument("--block", action="append", metavar="LAMBDA:R|Q")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_levi)

    sp = sub.add_parser("sweep", help="exhaustive verification over m+n <= max-size")
    sp.add_argument("--max-size", type=int, default=4)
    sp.add_argument("--primes", type=_csv(int), default=(3, 5, 7))
    sp.add_argument("--kinds", type=_csv(str), default=("gl", "sl"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--levi-random", type=int, default=0, metavar="K")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
