"""Command-line front end: ``yangtwist generators | build | verify``.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .chain import ChainSpecError, chain_element
from .io import ChainConfig, ConfigError, matrix_document, report_document, write_json
from .ortho import build_rep_table, e, positive_roots
from .rmatrix import PoleError, classical_r, rho, twisted_R, yangian_R
from .scalar import ScalarParseError, parse_scalar
from . import verify

TARGETS = {
    "F": "chain element F = F_p ... F_0",
    "rho": "rho = sum_k eta_k (H (x) E + sum A (x) B)",
    "r": "classical r = rho - tau(rho)",
    "R": "R_F = F_21 F^-1",
    "Ru": "R(u) = u R_F + P - u/(u + M/2 - 1) F_21 K F^-1",
}

CHECKS = ("twist", "cybe", "qybe", "spectral", "lemma", "worked_example")


class UsageError(Exception):
    pass


def _add_chain_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON chain config (overrides the flags below)")
    p.add_argument("--series", choices=("B", "D"))
    p.add_argument("--rank", type=int)
    p.add_argument("--depth", type=int, default=0)
    p.add_argument("--xi", default="1")
    p.add_argument("--eta", action="append", default=[], help="per-level eta (repeatable)")


def _config(args) -> ChainConfig:
    if args.config:
        return ChainConfig.load(args.config)
    if args.series is None or args.rank is None:
        raise UsageError("either --config or both --series and --rank are required")
    return ChainConfig(args.series, args.rank, args.depth, args.xi, list(args.eta))


def _rational_arg(text: str, what: str) -> Fraction:
    x = parse_scalar(text)
    if not x.is_real():
        raise UsageError(f"{what} must be rational, got {text!r}")
    return x.re


def cmd_generators(args) -> int:
    try:
        table = build_rep_table(args.series, args.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = Path(args.out)
    cfg = {"series": args.series, "rank": args.rank}
    for root in positive_roots(args.series, args.rank):
        write_json(out / f"gen_{root.label}.json",
                   matrix_document(table.generator(root), f"d(L_{root.label})", cfg))
    for (i, j), h in sorted(table.cartan.items()):
        label = e(args.rank, i, j).label
        write_json(out / f"cartan_{label}.json", matrix_document(h, f"d(H_{label})", cfg))
    return 0


def cmd_build(args) -> int:
    config = _config(args)
    spec = config.to_spec()
    targets = args.target or ["F"]
    if "Ru" in targets and args.u is None:
        raise UsageError("target Ru needs --u")
    u = _rational_arg(args.u, "u") if args.u is not None else None
    table = build_rep_table(spec.series, spec.N)
    builders = {
        "F": lambda: chain_element(spec, table),
        "rho": lambda: rho(spec, table).rho,
        "r": lambda: classical_r(spec, table),
        "R": lambda: twisted_R(spec, table),
        "Ru": lambda: yangian_R(spec, table, u),
    }
    out = Path(args.out)
    cfg = config.to_dict()
    for t in targets:
        m = builders[t]()
        write_json(out / f"{t}.json", matrix_document(m, TARGETS[t], cfg, u if t == "Ru" else None))
    return 0


def _parse_sample(text: str):
    try:
        u, v = text.split(",")
    except ValueError:
        raise UsageError(f"sample must look like 'u,v', got {text!r}") from None
    return _rational_arg(u, "sample u"), _rational_arg(v, "sample v")


def run_checks(spec, checks, samples=None):
    table = build_rep_table(spec.series, spec.N)
    verdicts = []
    for name in checks:
        if name == "twist":
            verdicts.append(verify.check_twist_equation(spec, table))
        elif name == "cybe":
            verdicts.append(verify.check_cybe(spec, table))
        elif name == "qybe":
            verdicts.append(verify.check_qybe_constant(twisted_R(spec, table), spec.describe()))
        elif name == "spectral":
            verdicts.append(verify.check_qybe_spectral(spec, table, samples))
        elif name == "lemma":
            verdicts.append(verify.check_lemma(spec, table))
        elif name == "worked_example":
            verdicts.append(verify.check_worked_example(spec.N, table))
    return verdicts


def cmd_verify(args) -> int:
    config = _config(args)
    spec = config.to_spec()
    worked_ok = spec.series == "B" and spec.N >= 3
    checks = args.check or [c for c in CHECKS if c != "worked_example" or worked_ok]
    if "worked_example" in checks and not worked_ok:
        raise UsageError("worked_example needs series B and rank >= 3")
    samples = [_parse_sample(s) for s in args.sample] or None
    verdicts = run_checks(spec, checks, samples)
    report = report_document(config.to_dict(), verdicts)
    for v in verdicts:
        print(f"{'PASS' if v.passed else 'FAIL'} {v.check_name}" + (f"  witness={v.witness}" if v.witness else ""))
    if args.out:
        write_json(args.out, report)
    else:
        import json

        print(json.dumps(report, indent=1))
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="yangtwist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generators", help="export defining-representation generators")
    g.add_argument("--series", choices=("B", "D"), required=True)
    g.add_argument("--rank", type=int, required=True)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generators)

    b = sub.add_parser("build", help="export chain matrices")
    _add_chain_args(b)
    b.add_argument("--target", action="append", choices=tuple(TARGETS), help="repeatable; default F")
    b.add_argument("--u", help="spectral parameter for target Ru")
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="run exact checks and write a report")
    _add_chain_args(v)
    v.add_argument("--check", action="append", choices=CHECKS, help="repeatable; default all applicable")
    v.add_argument("--sample", action="append", default=[], help="spectral sample 'u,v' (repeatable)")
    v.add_argument("--out", help="report path (stdout if omitted)")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ConfigError, ChainSpecError, PoleError, ScalarParseError, ValueError) as exc:
        print(f"yangtwist: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
