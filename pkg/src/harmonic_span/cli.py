"""Command-line front end.

    python -m harmonic_span decompose 1/3
    python -m harmonic_span dim --primes 5,7
    python -m harmonic_span dim --indices 1/4,1/2,3/4,1/1
    python -m harmonic_span check 3.7

Exit codes: 0 success, 1 usage or parse error, 2 unsupported modulus or
conductor above the cap, 3 internal invariant violation.  Output is
deterministic JSON (or text) with a top-level ``"schema": 1``.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from typing import Sequence

import mpmath

from .checks import SUITES, run_suites
from .cyclotomic import conductor_cap
from .errors import (
    ConductorCapExceeded,
    InsufficientPrecision,
    InvariantViolation,
    PoleError,
    UnsupportedModulus,
)
from .gauss import HarmonicIndex, harmonic_symbolic
from .linalg import dim_W_report, span_dimension, upper_bound
from .numeric import PrecisionConfig, eval_symbolic, format_residual, harmonic_numeric

DIGITS_ENV = "HARMONIC_SPAN_DIGITS"
SCHEMA = 1

EXIT_OK, EXIT_USAGE, EXIT_UNSUPPORTED, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    digits: int = 100
    conductor_cap: int | None = None
    output_format: str = "json"
    output_path: str | None = None

    def __post_init__(self) -> None:
        if self.digits < 10:
            raise UsageError("--digits must be at least 10")
        if self.conductor_cap is not None and self.conductor_cap < 4:
            raise UsageError("--conductor-cap must be at least 4")
        if self.output_format not in ("json", "text"):
            raise UsageError("--format must be json or text")

    @property
    def precision(self) -> PrecisionConfig:
        return PrecisionConfig(self.digits)


_STRICT_INDEX = re.compile(r"[+-]?[0-9]+/[0-9]+")


def parse_index(text: str, strict: bool = True) -> HarmonicIndex:
    """``a/q`` with optional sign and no whitespace.  A negative integer is
    a pole.  With ``strict``, a numerator divisible by a denominator above
    1 is rejected instead of being reduced."""
    if not _STRICT_INDEX.fullmatch(text):
        raise UsageError(f"cannot parse {text!r}: expected a/q, e.g. 1/3")
    a, q = (int(x) for x in text.split("/"))
    if q == 0:
        raise UsageError(f"{text}: zero denominator")
    if strict and q > 1 and a % q == 0:
        raise UsageError(f"{text}: q divides a; write the integer as {a // q}/1")
    try:
        return HarmonicIndex(a, q)
    except PoleError as exc:
        raise UsageError(f"{text}: {exc}") from None


def _parse_list(text: str, item) -> list:
    if not text:
        raise UsageError("empty list")
    return [item(t) for t in text.split(",")]


def _prime(text: str) -> int:
    if not re.fullmatch(r"[0-9]+", text):
        raise UsageError(f"not a prime: {text!r}")
    return int(text)


def cmd_decompose(arg: str, cfg: RunConfig) -> dict:
    idx = parse_index(arg)
    value = harmonic_symbolic(idx)
    p = cfg.precision
    symbolic = eval_symbolic(value, p)
    series = harmonic_numeric(idx, p)
    with mpmath.workdps(p.working):
        residual = abs(symbolic - series)
    return {
        "schema": SCHEMA,
        "command": "decompose",
        "index": str(idx),
        "value": value.to_json(),
        "numeric": mpmath.nstr(series, min(cfg.digits, 50)),
        "residual": format_residual(residual),
        "digits": cfg.digits,
    }


def cmd_dim(primes: list[int] | None, indices: list[HarmonicIndex] | None, cfg: RunConfig) -> dict:
    p = cfg.precision
    if primes is not None:
        try:
            report = dim_W_report(primes, p)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return {"schema": SCHEMA, "command": "dim", **report.to_json()}
    span = span_dimension(indices, precision=p, cap=cfg.conductor_cap)
    try:
        bound: int | None = upper_bound(sorted({i.q for i in span.indices}))
    except UnsupportedModulus:
        bound = None
    out = {"schema": SCHEMA, "command": "dim", **span.to_json(), "upper_bound": bound}
    return out


def cmd_check_lemmas(selector: str, cfg: RunConfig, max_coeff: int = 50) -> dict:
    if selector != "all" and selector not in SUITES:
        raise UsageError(f"unknown selector {selector!r}; choose from all, {', '.join(SUITES)}")
    cases = run_suites(selector, cfg.precision, max_coeff)
    passed = all(c.passed for c in cases)
    return {
        "schema": SCHEMA,
        "command": "check",
        "selector": selector,
        "passed": passed,
        "cases": [c.to_json() for c in cases],
    }


def _render_text(report: dict) -> str:
    cmd = report.get("command")
    lines = []
    if cmd == "decompose":
        lines.append(f"H_{{{report['index']}}} =")
        for t in report["value"]["terms"]:
            atom = t["atom"] if t["atom"] != "LogSin" else f"log sin({t['k']}pi/{t['m']})"
            lines.append(f"  + ({_coeff_text(t['coeff'])}) * {atom}")
        lines.append(f"numeric  {report['numeric']}")
        lines.append(f"residual {report['residual']} at {report['digits']} digits")
    elif cmd == "dim":
        lines.append(f"dim = {report['dim']}")
        if "formula" in report:
            lines.append(f"formula = {report['formula']}  match = {report['match']}")
        if report.get("upper_bound") is not None:
            lines.append(f"upper bound = {report['upper_bound']}")
        for note in report.get("notes", []):
            lines.append(f"note: {note}")
        for r in report["relations"]:
            lines.append(f"relation over {len(r['indices'])} indices, residual {r['residual']}")
    elif cmd == "check":
        for c in report["cases"]:
            lines.append(f"{'PASS' if c['passed'] else 'FAIL'}  [{c['suite']}] {c['case']}  {c['detail']}")
        lines.append("all passed" if report["passed"] else "FAILURES")
    return "\n".join(lines) + "\n"


def _coeff_text(c: dict) -> str:
    parts = []
    for i, (num, den) in enumerate(c["coeffs"]):
        if num == 0:
            continue
        r = str(num) if den == 1 else f"{num}/{den}"
        z = f"z{c['conductor']}" + (f"^{i}" if i > 1 else "")
        parts.append(r if i == 0 else f"{r}*{z}")
    return " + ".join(parts) or "0"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=None,
                        help=f"decimal digits (default 100, or ${DIGITS_ENV})")
    common.add_argument("--conductor-cap", type=int, default=None)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", default=None, help="write the report to this path")

    parser = argparse.ArgumentParser(prog="harmonic-span",
                                     description="Exact decomposition and span dimensions of H_{a/q}.")
    sub = parser.add_subparsers(dest="command", required=True)
    d = sub.add_parser("decompose", parents=[common], help="decompose H_{a/q}")
    d.add_argument("index")
    m = sub.add_parser("dim", parents=[common], help="span dimension")
    g = m.add_mutually_exclusive_group(required=True)
    g.add_argument("--primes")
    g.add_argument("--indices")
    c = sub.add_parser("check", parents=[common], help="run identity suites")
    c.add_argument("selector", choices=["all", *SUITES])
    c.add_argument("--max-coeff", type=int, default=50)
    return parser


def _default_digits() -> int:
    env = os.environ.get(DIGITS_ENV)
    if env is None:
        return 100
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"${DIGITS_ENV} must be an integer, got {env!r}") from None


_NEGATIVE = re.compile(r"-[0-9][0-9/,+-]*")


def _protect_negatives(argv: Sequence[str]) -> list[str]:
    """argparse reads ``-1/3`` as a flag; glue list values to their option
    and move a negative positional index behind ``--``."""
    out: list[str] = []
    tail: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok == "--":
            out.append(tok)
            out.extend(it)
            break
        if tok in ("--indices", "--primes"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        elif _NEGATIVE.fullmatch(tok):
            tail.append(tok)
        else:
            out.append(tok)
    return out + (["--", *tail] if tail else [])


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = _protect_negatives(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        digits = args.digits if args.digits is not None else _default_digits()
        cfg = RunConfig(args.command, digits, args.conductor_cap, args.format, args.out)
        with conductor_cap(cfg.conductor_cap):
            if args.command == "decompose":
                report = cmd_decompose(args.index, cfg)
            elif args.command == "dim":
                primes = _parse_list(args.primes, _prime) if args.primes else None
                indices = (_parse_list(args.indices, lambda t: parse_index(t, strict=False))
                           if args.indices else None)
                report = cmd_dim(primes, indices, cfg)
            else:
                report = cmd_check_lemmas(args.selector, cfg, args.max_coeff)
    except (UsageError, InsufficientPrecision) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnsupportedModulus, ConductorCapExceeded) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT

    text = json.dumps(report, indent=2) + "\n" if cfg.output_format == "json" else _render_text(report)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if report.get("command") == "check" and not report["passed"]:
        return 1
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
