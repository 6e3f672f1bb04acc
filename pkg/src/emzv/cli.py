"""Command-line interface: reduce indices, evaluate values, sweep relation
families, and emit reduction tables as JSON lines.

Exit codes: 0 success, 2 argument/parse error, 3 fuel exhausted,
4 numeric failure, 5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable

import numpy as np

from .faypoly import compositions
from .numerics import (
    DEFAULT_CONFIG,
    NumericsConfig,
    PreconditionError,
    get_evaluator,
    kronecker_f,
    parse_config_file,
    parse_tau,
)
from .reduction import FuelExhausted, reduce_index
from .relations import (
    Expression,
    fay_identity,
    parity_split,
    prop_mat_identity,
    reflection_identity,
    shuffle_identity,
    trailing_ones,
)
from .words import ArgumentError, format_index, parse_index, parity_is_even, weight

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_FUEL = 3
EXIT_NUMERIC = 4
EXIT_VERIFY = 5

FAMILIES = (
    "shuffle",
    "reflection",
    "fay",
    "prop-mat",
    "parity",
    "trailing-ones",
    "reduction",
    "kronecker",
)


def _complex_json(value: complex) -> dict:
    value = complex(value)
    return {"re": value.real, "im": value.imag}


def _load_config(args) -> NumericsConfig:
    if getattr(args, "config", None):
        return parse_config_file(args.config)
    return DEFAULT_CONFIG


def _indices_within(max_weight: int, max_length: int, min_length: int = 1):
    for r in range(min_length, max_length + 1):
        for w in range(max_weight + 1):
            yield from compositions(w, r)


def cmd_reduce(args) -> int:
    try:
        index = parse_index(args.index)
    except ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        expr, trace = reduce_index(index, fuel=args.fuel)
    except FuelExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FUEL
    verify_report = None
    if args.verify:
        cfg = _load_config(args)
        tau = parse_tau(args.tau)
        try:
            ev = get_evaluator(tau, cfg)
            lhs = ev.value(index)
            rhs = ev.eval_expression(expr)
        except (ArithmeticError, PreconditionError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        residual = abs(lhs - rhs)
        verify_report = {
            "tau": str(tau.tau),
            "lhs": _complex_json(lhs),
            "rhs": _complex_json(rhs),
            "residual": residual,
            "passed": residual <= args.tol,
        }
    if args.format == "json":
        payload = {
            "index": list(index),
            "expression": expr.to_json_dict(),
            "trace_len": len(trace.steps),
        }
        if args.trace:
            payload["trace"] = [
                {
                    "rule": step.rule,
                    "index": list(step.index),
                    "rhs": step.identity.rhs.to_json_dict(),
                }
                for step in trace.steps
            ]
        if verify_report is not None:
            payload["verify"] = verify_report
        print(json.dumps(payload, sort_keys=True))
    else:
        print(expr.to_text())
        if args.trace:
            for step in trace.steps:
                print(f"# {step.rule}: I({format_index(step.index)}) -> {step.identity.rhs.to_text()}")
        if verify_report is not None:
            print(
                f"# verify tau={verify_report['tau']}: residual {verify_report['residual']:.3e} "
                + ("PASS" if verify_report["passed"] else "FAIL")
            )
    if verify_report is not None and not verify_report["passed"]:
        return EXIT_VERIFY
    return EXIT_OK


def cmd_eval(args) -> int:
    try:
        index = parse_index(args.index)
        tau = parse_tau(args.tau)
    except ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    cfg = _load_config(args)
    try:
        ev = get_evaluator(tau, cfg)
        if len(index) == 0:
            value, estimate = 1.0 + 0j, 0.0
        else:
            value, estimate = ev.regularized(index)
    except (ArithmeticError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.format == "json":
        print(json.dumps({"index": list(index), "re": value.real, "im": value.imag, "err": estimate}))
    else:
        print(f"{value.real!r} + {value.imag!r}i  (err <= {estimate:.3e})")
    return EXIT_OK


def _family_instances(family: str, args, cfg: NumericsConfig):
    """Yield (descriptor, callable) pairs; callables return (lhs, rhs) values."""
    mw, ml = args.max_weight, args.max_length
    tau = parse_tau(args.tau) if args.tau else None
    ev = get_evaluator(tau, cfg) if tau is not None else None

    def identity_check(ident):
        def run():
            return ev.eval_expression(ident.lhs), ev.eval_expression(ident.rhs)

        return run

    if family in ("shuffle", "reflection", "fay", "parity", "trailing-ones", "reduction") and ev is None:
        raise ArgumentError(f"family {family} needs --tau")

    if family == "shuffle":
        for v in _indices_within(mw, ml - 1):
            for w in _indices_within(mw - weight(v), ml - len(v)):
                yield f"{format_index(v)}|{format_index(w)}", identity_check(shuffle_identity(v, w))
    elif family == "reflection":
        for k in _indices_within(mw, ml):
            yield format_index(k), identity_check(reflection_identity(k))
    elif family == "fay":
        for k in _indices_within(mw, ml):
            if len(k) > 1 and k[-1] == 1:
                continue
            yield format_index(k), identity_check(fay_identity(k))
    elif family == "parity":
        for k in _indices_within(mw, ml):
            if len(k) < 2 or not parity_is_even(k):
                continue
            yield format_index(k), identity_check(parity_split(k))
    elif family == "trailing-ones":
        for k in _indices_within(mw, ml):
            if k[-1] != 1 or all(e == 1 for e in k):
                continue
            yield format_index(k), identity_check(trailing_ones(k))
    elif family == "prop-mat":
        for w in range(mw + 1):
            for r in range(w + 1):
                s = w - r
                if s == 1:
                    continue

                def run(r=r, s=s):
                    fay = fay_identity((r, s))
                    mat = prop_mat_identity(r, s)
                    match = fay.lhs == mat.lhs and fay.rhs == mat.rhs
                    return (1.0 + 0j, (1.0 if match else 0.0) + 0j)

                yield f"{r},{s}", run
    elif family == "reduction":
        for k in _indices_within(mw, ml, min_length=0):

            def run(k=k):
                expr, _ = reduce_index(k, fuel=args.fuel)
                return ev.value(k), ev.eval_expression(expr)

            yield format_index(k), run
    elif family == "kronecker":
        rng = np.random.default_rng(20240817)
        tau_k = tau if tau is not None else parse_tau("0+1i")
        for i in range(20):
            a = complex(rng.uniform(0.05, 0.45), rng.uniform(-0.2, 0.2))
            z = complex(rng.uniform(0.1, 0.9), rng.uniform(-0.3, 0.3))
            a2 = complex(rng.uniform(0.05, 0.4), rng.uniform(-0.15, 0.15))
            z2 = complex(rng.uniform(0.1, 0.9), rng.uniform(-0.3, 0.3))

            def run(a=a, z=z, a2=a2, z2=z2):
                f = kronecker_f(a, z, tau_k, cfg)
                checks = [
                    (f, -kronecker_f(-a, -z, tau_k, cfg)),
                    (kronecker_f(a, z + 1, tau_k, cfg), f),
                    (
                        kronecker_f(a, z + tau_k.tau, tau_k, cfg),
                        np.exp(-2j * np.pi * a) * f,
                    ),
                    (
                        f * kronecker_f(a2, z2, tau_k, cfg),
                        kronecker_f(a + a2, z, tau_k, cfg) * kronecker_f(a2, z2 - z, tau_k, cfg)
                        + kronecker_f(a + a2, z2, tau_k, cfg) * kronecker_f(a, z - z2, tau_k, cfg),
                    ),
                ]
                worst = max(checks, key=lambda pair: abs(pair[0] - pair[1]))
                return worst

            yield f"point-{i}", run
    else:
        raise ArgumentError(f"unknown family {family!r}")


def cmd_verify(args) -> int:
    cfg = _load_config(args)
    try:
        instances = list(_family_instances(args.family, args, cfg))
    except ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    def evaluate(item):
        descriptor, run = item
        start = time.perf_counter()
        lhs, rhs = run()
        elapsed = time.perf_counter() - start
        residual = float(abs(complex(lhs) - complex(rhs)))
        return {
            "family": args.family,
            "instance": descriptor,
            "tau": args.tau,
            "lhs": _complex_json(lhs),
            "rhs": _complex_json(rhs),
            "residual": residual,
            "passed": bool(residual <= args.tol),
            "wall_time": elapsed,
        }

    try:
        if args.jobs > 1:
            with ThreadPoolExecutor(max_workers=args.jobs) as pool:
                reports = list(pool.map(evaluate, instances))
        else:
            reports = [evaluate(item) for item in instances]
    except FuelExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FUEL
    except (ArithmeticError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    if args.format == "text":
        lines = [
            f"{rep['family']} {rep['instance']}: residual {rep['residual']:.3e} "
            + ("PASS" if rep["passed"] else "FAIL")
            for rep in reports
        ]
    else:
        lines = [json.dumps(rep, sort_keys=True) for rep in reports]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    else:
        for line in lines:
            print(line)
    failed = [rep for rep in reports if not rep["passed"]]
    print(
        f"# family={args.family}: {len(reports) - len(failed)}/{len(reports)} passed",
        file=sys.stderr,
    )
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_table(args) -> int:
    rows = []
    try:
        for k in _indices_within(args.max_weight, args.max_length, min_length=0):
            expr, trace = reduce_index(k, fuel=args.fuel)
            rows.append((k, expr, trace))
    except FuelExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FUEL

    def render(row):
        k, expr, trace = row
        return json.dumps(
            {
                "index": list(k),
                "expression": expr.to_json_dict(),
                "trace_len": len(trace.steps),
                "terminal": len(trace.steps) == 0,
            },
            sort_keys=True,
        )

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            lines = list(pool.map(render, rows))
    else:
        lines = [render(row) for row in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_selftest(args) -> int:
    cfg = _load_config(args)
    checks: list[tuple[str, Callable[[], bool]]] = []

    def check_prop_mat() -> bool:
        for w in range(7):
            for r in range(w + 1):
                s = w - r
                if s == 1:
                    continue
                fay = fay_identity((r, s))
                mat = prop_mat_identity(r, s)
                if fay.rhs != mat.rhs:
                    return False
        return True

    checks.append(("fay matches length-2 formula (weight <= 6)", check_prop_mat))

    def check_simplex() -> bool:
        ev = get_evaluator(parse_tau("0+1i"), cfg)
        return all(
            abs(ev.admissible((0,) * r) - 1 / math.factorial(r)) < 1e-10 for r in range(1, 5)
        )

    checks.append(("simplex volumes", check_simplex))

    def check_length_one() -> bool:
        ev = get_evaluator(parse_tau("0+1i"), cfg)
        return abs(ev.admissible((2,)) + math.pi**2 / 3) < 1e-8 and abs(ev.admissible((3,))) < 1e-8

    checks.append(("length-1 values", check_length_one))

    def check_reduce() -> bool:
        ev = get_evaluator(parse_tau("0+1i"), cfg)
        expr, _ = reduce_index((2, 1))
        return abs(ev.value((2, 1)) - ev.eval_expression(expr)) < 1e-6

    checks.append(("reduce and verify (2,1)", check_reduce))

    failures = 0
    for name, run in checks:
        ok = False
        try:
            ok = run()
        except Exception as exc:  # pragma: no cover - defensive
            print(f"FAIL {name}: {exc}")
            failures += 1
            continue
        print(("PASS" if ok else "FAIL") + f" {name}")
        failures += 0 if ok else 1
    return EXIT_OK if failures == 0 else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emzv",
        description="Reduce and evaluate elliptic multiple zeta values.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="rewrite an index into terminal generators")
    p.add_argument("--index", required=True, help="comma-separated entries, '-' for empty")
    p.add_argument("--fuel", type=int, default=10_000)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--tau", default="0+1i")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--config")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("eval", help="evaluate a value numerically")
    p.add_argument("--index", required=True)
    p.add_argument("--tau", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--config")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="sweep a relation family")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--max-weight", type=int, default=4)
    p.add_argument("--max-length", type=int, default=3)
    p.add_argument("--tau", default=None)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--fuel", type=int, default=10_000)
    p.add_argument("--config")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="reduction table for all indices in bounds")
    p.add_argument("--max-weight", type=int, required=True)
    p.add_argument("--max-length", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--fuel", type=int, default=10_000)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("selftest", help="quick internal battery")
    p.add_argument("--config")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)
    try:
        return args.func(args)
    except ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
