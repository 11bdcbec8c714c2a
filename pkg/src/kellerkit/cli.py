"""Command-line front end.

Exit status: 0 on success, 1 when the analysis answers in the negative
(not Keller, not invertible, no certificate, Formanek check false, or a
scan aborted on a counterexample candidate), 2 on input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .criteria import classify, cmw_decompose_2d, degree_conjecture_check
from .endo import (FAMILIES, GeneratorSpec, format_map, generate_family, invert, is_keller,
                   parse_map)
from .errors import (BudgetExceeded, CounterexampleCandidate, DegenerateSampleError,
                     KellerkitError, UnsupportedError)
from .extension import coordinate_minpoly, verify_formanek
from .harness import parse_config, read_report, report_hash, run_scan
from .polycore import format_polynomial

OK, NEGATIVE, USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _read_map(path):
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_map(text)


def _emit(args, text, record):
    out = json.dumps(record, sort_keys=True) if args.format == "records" else text
    if args.out and args.command not in ("scan", "generate"):
        Path(args.out).write_text(out + "\n", encoding="utf-8")
    else:
        print(out)


def _names(n):
    return [f"x{i + 1}" for i in range(n)]


def cmd_parse(args):
    F = _read_map(args.map)
    _emit(args, format_map(F).rstrip("\n"),
          {"n": F.n, "coords": [format_polynomial(c) for c in F], "degrees": list(F.degrees())})
    return OK


def cmd_jacobian(args):
    F = _read_map(args.map)
    j = F.jacobian()
    _emit(args, format_polynomial(j), {"jacobian": format_polynomial(j),
                                       "constant": j.is_constant()})
    return OK


def cmd_keller(args):
    F = _read_map(args.map)
    k = is_keller(F)
    _emit(args, "true" if k else "false", {"keller": k})
    return OK if k else NEGATIVE


def cmd_invert(args):
    F = _read_map(args.map)
    inv = invert(F)
    if inv is None:
        _emit(args, "not an automorphism", {"automorphism": False})
        return NEGATIVE
    _emit(args, format_map(inv).rstrip("\n"),
          {"automorphism": True, "inverse": [format_polynomial(c) for c in inv]})
    return OK


def cmd_degree(args):
    F = _read_map(args.map)
    dc = degree_conjecture_check(F, args.seed)
    text = (f"D = {dc.D}\nd = {dc.d}, bound d^(n-1) = {dc.bound}, "
            f"holds = {str(dc.holds).lower()}")
    if dc.out_of_hypothesis:
        text += " (map is not Keller)"
    _emit(args, text, dc.as_dict())
    return OK


def cmd_minpoly(args):
    F = _read_map(args.map)
    idx = [args.index - 1] if args.index else range(F.n)
    rows, recs = [], []
    for i in idx:
        m = coordinate_minpoly(F, i, args.seed + i + 1)
        poly = format_polynomial(m.specialized, ["T"])
        rows.append(f"d{i + 1} = {m.degree}  minpoly at c={list(map(str, m.value))}: {poly}")
        rec = {"index": i + 1, "degree": m.degree, "specialized": poly,
               "value": [str(v) for v in m.value], "strategy": m.strategy}
        if m.symbolic is not None:
            names = [f"t{k + 1}" for k in range(F.n)] + ["T"]
            rec["symbolic"] = format_polynomial(m.symbolic, names)
            rows.append(f"    over Q[F]: {rec['symbolic']}")
        recs.append(rec)
    _emit(args, "\n".join(rows), {"minpoly": recs})
    return OK


def cmd_formanek(args):
    F = _read_map(args.map)
    fr = verify_formanek(F, args.seed)
    text = "true" if fr.ok else f"false (degree {fr.degree})"
    if fr.ok and fr.relation is not None:
        text += "\n" + fr.witness_text()
    _emit(args, text, {"formanek_ok": fr.ok, "degree": fr.degree,
                       "witness": fr.witness_text()})
    return OK if fr.ok else NEGATIVE


def cmd_classify(args):
    F = _read_map(args.map)
    if not is_keller(F):
        _emit(args, "NONE (map is not Keller)", {"rule": "NONE", "keller": False})
        return NEGATIVE
    cert = classify(F, args.seed)
    d = cert.as_dict()
    text = f"{d['rule']}\nevidence: {json.dumps(d['evidence'], sort_keys=True)}\n" \
           f"verified by inversion: {str(cert.verified_by_inversion).lower()}"
    _emit(args, text, d)
    return OK if cert.certified else NEGATIVE


def cmd_cmw(args):
    F = _read_map(args.map)
    dec = cmw_decompose_2d(F)
    g2 = format_polynomial(dec.g[1])
    c = [str(v) for v in dec.c]
    _emit(args, f"g = ({format_polynomial(dec.g[0])}, {g2})\nc = {', '.join(c)}",
          {"g": [format_polynomial(p) for p in dec.g], "c": c})
    return OK


def cmd_generate(args):
    maps = []
    for k in range(args.count):
        spec = GeneratorSpec(args.family, args.seed + k, n=args.n, degree=args.degree,
                             factors=args.factors, r=args.r)
        maps.append(generate_family(spec))
    if args.out and args.count > 1:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        for k, F in enumerate(maps):
            (d / f"{args.family}-{args.seed + k}.map").write_text(format_map(F), encoding="utf-8")
        return OK
    if args.format == "records":
        text = "\n".join(json.dumps({"provenance": F.provenance,
                                     "coords": [format_polynomial(c) for c in F]},
                                    sort_keys=True) for F in maps)
    else:
        text = "\n".join(format_map(F) for F in maps).rstrip("\n")
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return OK


def cmd_scan(args):
    cfg = parse_config(Path(args.config).read_text(encoding="utf-8"))
    over = {}
    if args.seed_given:
        over["seed"] = args.seed
    if args.out:
        over["out"] = args.out
    if args.jobs:
        over["jobs"] = args.jobs
    cfg = cfg.replace(**over)
    try:
        res = run_scan(cfg)
    except CounterexampleCandidate as exc:
        print(f"COUNTEREXAMPLE-CANDIDATE: {exc}", file=sys.stderr)
        print(json.dumps(exc.record, sort_keys=True), file=sys.stderr)
        return NEGATIVE
    if args.format == "records" and not cfg.out:
        for r in res.records:
            print(json.dumps(r.to_dict(), sort_keys=True))
    else:
        print(json.dumps(res.summary, sort_keys=True, indent=None if args.format == "records" else 2))
        print(f"hash (timings excluded): {report_hash(res.records)}")
    return OK


def cmd_report_hash(args):
    print(report_hash(read_report(args.report)))
    return OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed (default 0)")
    common.add_argument("--out", help="write output to this path")
    common.add_argument("--format", choices=("text", "records"), default="text")

    p = _Parser(prog="kellerkit", description="Exact analysis of polynomial maps.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def map_cmd(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.add_argument("map", help="map file ('-' for stdin)")
        sp.set_defaults(func=fn)
        return sp

    map_cmd("parse", cmd_parse, "parse and print a map in canonical form")
    map_cmd("jacobian", cmd_jacobian, "Jacobian determinant")
    map_cmd("keller", cmd_keller, "is the Jacobian a non-zero constant")
    map_cmd("invert", cmd_invert, "inverse of an automorphism")
    map_cmd("degree", cmd_degree, "extension degree D and the degree bound")
    mp = map_cmd("minpoly", cmd_minpoly, "minimal polynomial degrees d_i")
    mp.add_argument("--index", type=int, help="coordinate (1-based); all when omitted")
    map_cmd("formanek", cmd_formanek, "is x_n rational in F and x_1..x_{n-1}")
    map_cmd("classify", cmd_classify, "automorphism certificate for a Keller map")
    map_cmd("cmw", cmd_cmw, "split a 2D Keller map with affine first coordinate")

    gp = sub.add_parser("generate", parents=[common], help="generate maps from a family")
    gp.add_argument("family", choices=FAMILIES)
    gp.add_argument("--n", type=int, default=2)
    gp.add_argument("--degree", type=int, default=3)
    gp.add_argument("--factors", type=int, default=2)
    gp.add_argument("--r", type=int, default=1)
    gp.add_argument("--count", type=int, default=1)
    gp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("scan", parents=[common], help="run a corpus scan from a config file")
    sp.add_argument("config", help="key = value config file")
    sp.add_argument("--jobs", type=int, default=0, help="worker processes")
    sp.set_defaults(func=cmd_scan)

    hp = sub.add_parser("report-hash", help="determinism hash of a report (timings excluded)")
    hp.add_argument("report")
    hp.set_defaults(func=cmd_report_hash)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if hasattr(args, "seed"):
        args.seed_given = args.seed is not None
        if args.seed is None:
            args.seed = 0
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        # ValueError covers ParseError, PreconditionError, InputError, SchemaError
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (BudgetExceeded, DegenerateSampleError, UnsupportedError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return USAGE
    except KellerkitError as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
