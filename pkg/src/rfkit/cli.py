"""Command-line front end.

Exit codes: 0 ok, 1 usage or domain error, 2 inconclusive certificate,
3 selftest failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from fractions import Fraction

from . import __version__
from .classes import YClass, enumerate_obstructive, is_obstructive_at, mu, volume_constraint
from .cremona import reduce_packing
from .ech import cb_lower, ellipsoid_caps, polydisc_caps
from .exact import DomainError, fmt_rat, parse_rat
from .rf import discontinuity_demo, rf_beta, rf_beta_literal, verify_rf
from .scan import cmd_scan, dec, dec_sqrt, rows_to_csv, rows_to_json
from .weights import weight_expansion

EXIT_OK, EXIT_USAGE, EXIT_INCONCLUSIVE, EXIT_SELFTEST = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rat(text: str) -> Fraction:
    try:
        return parse_rat(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("RFKIT_THREADS", "1")))
    except ValueError:
        return 1


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--json", action="store_true", default=d(False), help="emit JSON")
    p.add_argument("--csv", action="store_true", default=d(False), help="emit CSV where supported")
    p.add_argument("--threads", type=int, default=d(_default_threads()), help="worker processes")
    p.add_argument("--max-steps", type=int, default=d(None), help="Cremona move cap")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def cmd_weights(args) -> int:
    we = weight_expansion(args.a)
    if args.json:
        _emit(we.to_json())
    else:
        print(we.describe())
        print(f"M={we.M} q={we.q} blocks={','.join(map(str, we.block_lengths))}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    cert = reduce_packing(args.b, args.a, args.max_steps)
    if args.json:
        _emit(cert.to_json(trace=args.trace))
    else:
        if args.trace:
            for i, st in enumerate(cert.steps):
                print(f"{i:4d} {st.action:8s} defect={_short(st.defect)}  {st.vector}")
        print(f"verdict: {cert.verdict.value}")
        print(f"moves: {cert.moves} (cap {cert.max_moves})")
        print(f"final: {cert.final}")
    return EXIT_OK if cert.certified else EXIT_INCONCLUSIVE


def _short(x) -> str:
    from .exact import Quad

    if isinstance(x, Quad) and x.is_rational:
        return fmt_rat(x.rat)
    return str(x)


def cmd_ech(args) -> int:
    seq = (ellipsoid_caps if args.shape == "E" else polydisc_caps)(args.x, args.y, args.n)
    if args.json:
        _emit(seq.to_json())
    elif args.csv:
        print("k,value,decimal")
        for k, v in enumerate(seq.values):
            print(f"{k},{fmt_rat(v)},{dec(v)}")
    else:
        for k, v in enumerate(seq.values):
            print(f"c_{k} = {fmt_rat(v)}")
    return EXIT_OK


def cmd_cb(args) -> int:
    val, k = cb_lower(args.a, args.b, args.kmax)
    if args.json:
        _emit({"a": fmt_rat(args.a), "b": fmt_rat(args.b), "value": fmt_rat(val),
               "decimal": dec(val), "k": k,
               "volume": dec_sqrt(args.a / (2 * args.b))})
    else:
        print(f"c_b(a) >= {fmt_rat(val)} ({dec(val)}) attained at k={k}")
        print(f"volume constraint {dec_sqrt(args.a / (2 * args.b))}")
    return EXIT_OK


def cmd_mu(args) -> int:
    cls = YClass.parse(args.cls)
    val = mu(cls, args.b, args.a)
    obstr = is_obstructive_at(cls, args.b, args.a)
    vol = volume_constraint(args.a, args.b)
    if args.json:
        _emit({"class": cls.to_json(), "mu": fmt_rat(val), "decimal": dec(val),
               "volume": vol.to_json(), "volume_decimal": dec_sqrt(args.a / (2 * args.b)),
               "obstructive": obstr})
    else:
        print(f"mu = {fmt_rat(val)} ({dec(val)})")
        print(f"volume = sqrt({fmt_rat(args.a / (2 * args.b))}) ({dec_sqrt(args.a / (2 * args.b))})")
        print(f"obstructive: {'yes' if obstr else 'no'}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    found = enumerate_obstructive(args.b, args.a, args.dmax, args.length,
                                  shards=max(1, args.threads), workers=args.threads)
    if args.json:
        _emit([dict(c.to_json(), mu=fmt_rat(mu(c, args.b, args.a))) for c in found])
    else:
        for c in found:
            print(f"{c.label()}  mu={fmt_rat(mu(c, args.b, args.a))}")
        print(f"{len(found)} class(es)")
    return EXIT_OK


def cmd_rf(args) -> int:
    rep = verify_rf(args.b, args.samples_left, args.samples_right, max_moves=args.max_steps)
    if args.json:
        _emit(rep.to_json())
    else:
        print(f"b = {fmt_rat(rep.b)}  n_b = {rep.n_b}  RF = {fmt_rat(rep.rf)} ({dec(rep.rf)})")
        print(f"class {rep.obstructing_class.label()}  lambda at RF = {_short(rep.lam_at_rf)}")
        for c in rep.checks:
            print(f"  [{'pass' if c.passed else 'FAIL'}] {c.name}")
    return EXIT_OK if rep.passed else EXIT_INCONCLUSIVE


def cmd_rf_beta(args) -> int:
    rf, cls = rf_beta(args.n)
    lit = rf_beta_literal(args.n)
    if args.json:
        _emit({"n": args.n, "b": fmt_rat(Fraction(args.n + 1, args.n)), "rf": fmt_rat(rf),
               "decimal": dec(rf), "class": cls.to_json(), "unsquared": fmt_rat(lit)})
    else:
        print(f"RF({args.n + 1}/{args.n}) = {fmt_rat(rf)} ({dec(rf)})")
        print(f"class {cls.label()}")
        print(f"unsquared expression: {fmt_rat(lit)} ({dec(lit)})")
    return EXIT_OK


def cmd_discontinuity(args) -> int:
    if args.n_to < args.n_from:
        raise UsageError("--n-to must be >= --n-from")
    tab = discontinuity_demo(range(args.n_from, args.n_to + 1))
    if args.json:
        _emit(tab.to_json())
    else:
        print("n,b,class,mu,margin,obstructive,rf,rf_decimal")
        for r in tab.rows:
            print(f"{r.n},{fmt_rat(r.b)},\"{r.cls.label()}\",{fmt_rat(r.mu)},{fmt_rat(r.margin)},"
                  f"{str(r.obstructive).lower()},{fmt_rat(r.rf)},{dec(r.rf)}")
        print(f"# b=1: {tab.rf1_class.label()} mu={fmt_rat(tab.rf1_mu)} at a={fmt_rat(tab.rf1)} "
              f"equal to volume: {tab.rf1_equal}")
    if args.plot:
        from .plotting import plot_discontinuity

        plot_discontinuity(tab, args.plot)
    return EXIT_OK


def cmd_scan_cli(args) -> int:
    rows = cmd_scan(args.b, args.a_from, args.a_to, args.steps, args.classes,
                    d_max=args.dmax, kmax=args.kmax, threads=args.threads,
                    max_moves=args.max_steps)
    text = rows_to_json(rows) if args.json else rows_to_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.plot:
        from .plotting import plot_scan

        plot_scan(rows, args.plot)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import FLAGS, run

    results = run()
    if args.list:
        for r in results:
            print(f"{r.golden.name} [{r.golden.provenance}]: {r.golden.expected}")
        return EXIT_OK
    if args.json:
        _emit({"results": [{"name": r.golden.name, "provenance": r.golden.provenance,
                            "expected": r.golden.expected, "actual": r.actual,
                            "passed": r.passed} for r in results],
               "flagged": list(FLAGS)})
    else:
        for r in results:
            print(f"[{'pass' if r.passed else 'FAIL'}] {r.golden.name}: {r.actual}")
        for f in FLAGS:
            print(f"[flagged] {f}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_SELFTEST


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rfkit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"rfkit {__version__}")
    _global_flags(p, suppress=False)
    common = _Parser(add_help=False)
    _global_flags(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=fn)
        return sp

    sp = add("weights", cmd_weights, "weight expansion of a rational")
    sp.add_argument("a", type=_rat)

    sp = add("reduce", cmd_reduce, "Cremona reduction certificate at the volume constraint")
    sp.add_argument("--a", type=_rat, required=True)
    sp.add_argument("--b", type=_rat, required=True)
    sp.add_argument("--trace", action="store_true")

    sp = add("ech", cmd_ech, "ECH capacities of E(x,y) or P(x,y)")
    sp.add_argument("--shape", choices=["E", "P"], required=True)
    sp.add_argument("--x", type=_rat, required=True)
    sp.add_argument("--y", type=_rat, required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = add("cb", cmd_cb, "capacity-ratio lower bound for c_b(a)")
    sp.add_argument("--a", type=_rat, required=True)
    sp.add_argument("--b", type=_rat, required=True)
    sp.add_argument("--kmax", type=int, default=None)

    sp = add("mu", cmd_mu, "obstruction value of a class")
    sp.add_argument("--class", dest="cls", required=True, help='e.g. "6,3;3,2x7"')
    sp.add_argument("--a", type=_rat, required=True)
    sp.add_argument("--b", type=_rat, required=True)

    sp = add("enumerate", cmd_enumerate, "exhaustive search for obstructive classes")
    sp.add_argument("--a", type=_rat, required=True)
    sp.add_argument("--b", type=_rat, required=True)
    sp.add_argument("--dmax", type=int, required=True)
    sp.add_argument("--length", choices=["exact", "atmost"], default="atmost")

    sp = add("rf", cmd_rf, "closed-form RF value and its checks")
    sp.add_argument("--b", type=_rat, required=True)
    sp.add_argument("--samples-left", type=int, default=3)
    sp.add_argument("--samples-right", type=int, default=3)

    sp = add("rf-beta", cmd_rf_beta, "RF at b = (n+1)/n")
    sp.add_argument("--n", type=int, required=True)

    sp = add("discontinuity", cmd_discontinuity, "R_n obstruction at a = 8 as b -> 1")
    sp.add_argument("--n-from", type=int, default=5)
    sp.add_argument("--n-to", type=int, default=20)
    sp.add_argument("--plot", default=None, help="write a figure to this path")

    sp = add("scan", cmd_scan_cli, "grid scan over a at fixed b")
    sp.add_argument("--b", type=_rat, required=True)
    sp.add_argument("--a-from", type=_rat, required=True)
    sp.add_argument("--a-to", type=_rat, required=True)
    sp.add_argument("--steps", type=int, default=10)
    sp.add_argument("--classes", choices=["families", "enumerate"], default="families")
    sp.add_argument("--dmax", type=int, default=20)
    sp.add_argument("--kmax", type=int, default=None)
    sp.add_argument("--out", default=None, help="write rows here instead of stdout")
    sp.add_argument("--plot", default=None, help="write a figure to this path")

    sp = add("selftest", cmd_selftest, "recompute the golden values")
    sp.add_argument("--list", action="store_true")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return args.func(args)
    except UsageError as exc:
        print(f"rfkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ValueError, ZeroDivisionError) as exc:
        print(f"rfkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
