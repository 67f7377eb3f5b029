"""Command-line front door.

Subcommands::

    least          least element of a complemented subset given by two predicates
    prime-divisor  prime divisor of n by descent, least-element search, or both
    descent        run a descent on a configured structure with DSL step rules
    check          law suites and seeded property checks

Exit codes: 0 ok, 1 failed checks, 2 disjointness violation, 3 not
locatable, 4 domain or input error (including predicate parse errors),
5 bad step (non-decreasing or escaping).  Human-readable output goes to
stdout and diagnostics to stderr; with ``--json`` exactly one JSON
document is emitted to stdout.  Identical inputs and seed produce
identical output.

The ``descent`` command's step rules are single-variable expressions
applied per component: on the naturals the element itself; on product or
lexicographic pairs the Found predicate must hold at both components, and
the descend rule drops both components (product) or the second component
until it stops decreasing, then the first with the second reset to
``--reset`` (lexicographic; default reset is the start's second
component); on a sum it applies within the current summand.  Deeper
nestings need programmatic step oracles.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional

from . import arithmetic, checks, dsl
from .combinators import EscapedSubset, structure_from_config
from .complemented import DisjointnessViolated, NotLocatable, clnp_least
from .engine import Descend, DescentTrace, Found, NonDecreasingStep, search
from .naturals import MUTATION_KINDS, mutated_structure


def _add_common(parser: argparse.ArgumentParser, default_bound: int) -> None:
    parser.add_argument("--bound", type=int, default=default_bound,
                        help=f"range for exhaustive checks (default {default_bound})")
    parser.add_argument("--json", action="store_true", help="emit one JSON document")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    parser.add_argument("--trace-out", metavar="PATH",
                        help="append line-delimited JSON trace records to PATH")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="descent", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    least = sub.add_parser("least", help="least element of a complemented subset")
    least.add_argument("--a1", required=True, metavar="PRED", help="prover predicate")
    least.add_argument("--a0", required=True, metavar="PRED", help="refuter predicate")
    least.add_argument("--start", required=True, type=int, help="a known prover")
    _add_common(least, default_bound=1024)

    prime = sub.add_parser("prime-divisor", help="prime divisor of n")
    prime.add_argument("n", type=int)
    prime.add_argument("--method", choices=("descent", "clnp", "both"), default="both")
    _add_common(prime, default_bound=1024)

    desc = sub.add_parser("descent", help="run a descent with DSL step rules")
    desc.add_argument("--config", metavar="PATH",
                      help="JSON structure description file (default: the naturals)")
    desc.add_argument("--structure", metavar="JSON",
                      help="inline JSON structure description (overrides --config)")
    desc.add_argument("--start", required=True, metavar="JSON",
                      help="start element: an int, [a, b], or [tag, v] with tag 0 or 1")
    desc.add_argument("--found", required=True, metavar="PRED", help="evidence predicate")
    desc.add_argument("--descend", required=True, metavar="EXPR", help="descend rule")
    desc.add_argument("--reset", type=int, default=None,
                      help="second-component reset for lexicographic descents")
    _add_common(desc, default_bound=1024)

    check = sub.add_parser("check", help="run law suites and property checks")
    check.add_argument("suite", choices=("axioms", "properties", "all"))
    check.add_argument("--mutate", choices=MUTATION_KINDS, default=None,
                       help="run the axiom suite against a deliberately broken structure")
    _add_common(check, default_bound=64)
    return parser


def _emit(doc: dict, as_json: bool, lines: list) -> None:
    if as_json:
        print(json.dumps(doc))
    else:
        for line in lines:
            print(line)


def _write_trace(path: Optional[str], trace: DescentTrace, show) -> None:
    if path:
        with open(path, "a", encoding="utf-8") as handle:
            handle.write(trace.json_line(show) + "\n")


def _exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, DisjointnessViolated):
        return 2
    if isinstance(exc, NotLocatable):
        return 3
    if isinstance(exc, (arithmetic.OutOfDomain, dsl.ParseError, ValueError, OSError,
                        json.JSONDecodeError)):
        return 4
    if isinstance(exc, (NonDecreasingStep, EscapedSubset)):
        return 5
    raise exc


def _render_visited(trace: DescentTrace, show) -> str:
    return " -> ".join(show(v) for v in trace.visited)


def _cmd_least(args) -> int:
    e1 = dsl.parse(args.a1)
    e0 = dsl.parse(args.a0)
    for warning in dsl.lint(e1) + dsl.lint(e0):
        print(f"warning: {warning}", file=sys.stderr)
    pair = dsl.complemented_from_exprs(e1, e0, args.bound)
    cert = clnp_least(pair, args.start)
    _write_trace(args.trace_out, cert.trace, str)
    doc = {
        "command": "least",
        "mu": cert.mu,
        "verified_bound": cert.verified_bound,
        "trace": json.loads(cert.trace.json_line()),
    }
    _emit(doc, args.json, [
        f"mu = {cert.mu}",
        f"trace: {_render_visited(cert.trace, str)}",
        f"steps: {cert.trace.steps}",
    ])
    return 0


def _cmd_prime_divisor(args) -> int:
    if args.n <= 1:
        raise arithmetic.OutOfDomain(args.n)
    methods = ("descent", "clnp") if args.method == "both" else (args.method,)
    runners = {"descent": arithmetic.prime_divisor_descent, "clnp": arithmetic.prime_divisor_clnp}
    results = []
    lines = []
    for method in methods:
        result = runners[method](args.n)
        _write_trace(args.trace_out, result.trace, str)
        entry = result.to_json_dict(args.n)
        if method == "clnp" and isinstance(result.trace.outcome, Found):
            entry["mu"] = result.trace.outcome.witness
            lines.append(f"method = clnp: mu = {entry['mu']}, p = {result.p}")
        else:
            lines.append(f"method = {method}: p = {result.p}")
        lines.append(f"  trace: {_render_visited(result.trace, str)}")
        results.append(entry)
    if args.method == "both":
        agree = all(arithmetic.is_prime_oracle(r["p"]) and args.n % r["p"] == 0 for r in results)
        lines.append(f"both methods verified: {'yes' if agree else 'NO'}")
    _emit({"command": "prime-divisor", "n": args.n, "results": results}, args.json, lines)
    return 0


def _shape_of(config: Any) -> Any:
    if config == "nat":
        return "scalar"
    if isinstance(config, dict) and len(config) == 1:
        kind, body = next(iter(config.items()))
        if kind == "restrict":
            return _shape_of(body["of"])
        if kind in ("product", "lex"):
            if _shape_of(body[0]) == "scalar" and _shape_of(body[1]) == "scalar":
                return "pair" if kind == "product" else "lex-pair"
            raise ValueError("step rules support flat pair structures only")
        if kind == "coproduct":
            if _shape_of(body[0]) == "scalar" and _shape_of(body[1]) == "scalar":
                return "sum"
            raise ValueError("step rules support flat sum structures only")
    raise ValueError(f"unrecognized structure description: {config!r}")


def _as_element(value: Any, shape: str) -> Any:
    if shape == "scalar":
        if not isinstance(value, int):
            raise ValueError("start must be an integer for this structure")
        return value
    if not (isinstance(value, list) and len(value) == 2
            and all(isinstance(v, int) for v in value)):
        raise ValueError("start must be a two-element integer list for this structure")
    return tuple(value)


def _make_step(shape: str, found, descend, reset: Optional[int], start) :
    def holds(v: int) -> bool:
        return dsl.eval_predicate(found, v)

    def drop(v: int) -> int:
        return dsl.eval_arith(descend, v)

    if shape == "scalar":
        return lambda x: Found(x) if holds(x) else Descend(drop(x))
    if shape == "pair":
        return lambda p: (Found(p) if holds(p[0]) and holds(p[1])
                          else Descend((drop(p[0]), drop(p[1]))))
    if shape == "lex-pair":
        base = reset if reset is not None else start[1]

        def lex_step(p):
            a, b = p
            if holds(a) and holds(b):
                return Found(p)
            b2 = drop(b)
            if b2 < b:
                return Descend((a, b2))
            return Descend((drop(a), base))

        return lex_step
    return lambda w: (Found(w) if holds(w[1]) else Descend((w[0], drop(w[1]))))


def _cmd_descent(args) -> int:
    if args.structure is not None:
        config = json.loads(args.structure)
    elif args.config is not None:
        with open(args.config, encoding="utf-8") as handle:
            config = json.load(handle)["structure"]
    else:
        config = "nat"
    shape = _shape_of(config)
    structure = structure_from_config(config)
    start = _as_element(json.loads(args.start), shape)
    found_pred = dsl.parse(args.found)
    descend_expr = dsl.parse_arith(args.descend)
    step = _make_step(shape, found_pred, descend_expr, args.reset, start)
    found, trace = search(structure, start, step)
    _write_trace(args.trace_out, trace, structure.show)
    doc = {
        "command": "descent",
        "found": structure.show(found),
        "trace": json.loads(trace.json_line(structure.show)),
    }
    _emit(doc, args.json, [
        f"found: {structure.show(found)}",
        f"trace: {_render_visited(trace, structure.show)}",
        f"steps: {trace.steps}",
    ])
    return 0


def _cmd_check(args) -> int:
    results = []
    if args.suite in ("axioms", "all"):
        structure = mutated_structure(args.mutate) if args.mutate else None
        results.extend(checks.run_axiom_checks(bounds=(args.bound,), structure=structure))
    if args.suite in ("properties", "all"):
        results.extend(checks.run_property_checks(args.seed))
    doc = {
        "command": "check",
        "suite": args.suite,
        "seed": args.seed,
        "results": [
            {"check": r.name, "passed": r.passed, "detail": r.detail} for r in results
        ],
        "passed": all(r.passed for r in results),
    }
    lines = [
        f"{'PASS' if r.passed else 'FAIL'} {r.name}" + (f" - {r.detail}" if r.detail else "")
        for r in results
    ]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    _emit(doc, args.json, lines)
    return 0 if doc["passed"] else 1


def main(argv: Optional[list] = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "least": _cmd_least,
        "prime-divisor": _cmd_prime_divisor,
        "descent": _cmd_descent,
        "check": _cmd_check,
    }
    try:
        return handlers[args.command](args)
    except Exception as exc:  # mapped to documented exit codes
        code = _exit_code_for(exc)
        detail = getattr(exc, "diagnostic", None)
        if detail is not None:
            print(f"error: {exc} (expected one of: {', '.join(detail.expected)})",
                  file=sys.stderr)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
