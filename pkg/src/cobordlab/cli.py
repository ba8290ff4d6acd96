"""Command-line front end.

Subcommands: class, express, dimq, bound, realize, rho, localize, selftest.
Classes are entered either as variety expressions ("2.P(4)*H(2,4) + P(1)")
or in raw mode ("b[2]*b[1]^2 + b[4]"); raw mode is detected by the b[...]
syntax or a bare integer.  JSON output is deterministic: results depend on
flags only, never on cache state, and keys are emitted sorted.

Exit codes: 0 ok, 1 usage or input error, 2 not in the generator ring where
membership is required, 3 internal assertion failure (including a failing
selftest).  The COBORDLAB_CACHE environment variable overrides --cache.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import acceptance
from .actions import CharacterGroup, action_to_json, realize
from .bounds import main_bound, milnor_divisibility_check, ratio_bound, small_fixed_divisibility
from .chow import chern_numbers, parse_variety
from .cobordism import (
    NotInLp,
    dim_q_direct,
    dim_q_via_generators,
    express_in_generators,
    perturbed_family,
    standard_generators,
)
from .equivariant import localization_check
from .fpring import NEG_INF, BPoly, TruncationError, format_bpoly, format_genpoly
from .partitions import IndexSet, is_power_of, rho_q

DEFAULT_CACHE = os.path.join("~", ".cobordlab", "cache.json")
RAW_DEFAULT_WEIGHT = 16


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; the contract says 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# -- input parsing ----------------------------------------------------------


_RAW_TOKEN = re.compile(r"\s*(?:(b\[)|(\d+)|([\]^*+]))")


def parse_raw_bpoly(text: str, p: int) -> BPoly:
    """Parse 'b[2]*b[1]^2 + b[4]' style input, including bare constants."""
    pos = 0
    tokens = []
    while pos < len(text):
        m = _RAW_TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"raw class syntax error at position {pos}: {text[pos:]!r}")
            break
        pos = m.end()
        tokens.append(m.group(1) or m.group(3) or int(m.group(2)))
    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else None

    def take(expected=None):
        nonlocal idx
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"raw class syntax error: expected {expected!r}, got {tok!r}")
        idx += 1
        return tok

    def parse_factor():
        # either a b[i]^e factor or a bare integer coefficient
        if peek() == "b[":
            take("b[")
            part = take()
            if not isinstance(part, int) or part < 1:
                raise ValueError("b[...] wants a positive integer index")
            take("]")
            exp = 1
            if peek() == "^":
                take("^")
                exp = take()
                if not isinstance(exp, int) or exp < 1:
                    raise ValueError("exponents are positive integers")
            return [part] * exp, 1
        tok = take()
        if not isinstance(tok, int):
            raise ValueError(f"raw class syntax error: unexpected {tok!r}")
        return [], tok

    terms: dict = {}
    while True:
        coeff = 1
        parts: list[int] = []
        while True:
            ps, c = parse_factor()
            parts.extend(ps)
            coeff *= c
            if peek() == "*":
                take("*")
                continue
            break
        alpha = tuple(sorted(parts, reverse=True))
        terms[alpha] = terms.get(alpha, 0) + coeff
        if peek() == "+":
            take("+")
            continue
        if peek() is None:
            break
        raise ValueError(f"raw class syntax error: unexpected {peek()!r}")
    return BPoly(p, terms, None)


def is_raw_input(text: str) -> bool:
    return "b[" in text or text.strip().isdigit()


def load_class(args) -> BPoly:
    """The input class, exact, from either input mode."""
    text = args.input
    if is_raw_input(text):
        x = parse_raw_bpoly(text, args.prime)
        ceiling = args.max_weight if args.max_weight is not None else RAW_DEFAULT_WEIGHT
        top = x.top_weight()
        if top != NEG_INF and top > ceiling:
            raise ValueError(f"raw class weight {top} exceeds {ceiling}; raise --max-weight")
        return x
    expr, notes = parse_variety(text)
    for note in notes:
        print(f"note: {note}", file=sys.stderr)
    return chern_numbers(expr, args.prime)


def make_family(args):
    spec = getattr(args, "family", "standard")
    m = re.fullmatch(r"perturbed\((\d+)\)", spec)
    if m:
        return perturbed_family(args.prime, int(m.group(1)))
    if spec != "standard":
        raise ValueError(f"unknown family {spec!r}; use standard or perturbed(SEED)")
    cache = os.environ.get("COBORDLAB_CACHE") or getattr(args, "cache", None) or DEFAULT_CACHE
    return standard_generators(args.prime, cache_path=os.path.expanduser(cache))


def check_order(args) -> int:
    q = args.order
    if q < 1 or not is_power_of(q, args.prime):
        raise ValueError(f"order {q} is not a power of the prime {args.prime}")
    return q


def _json_dim(v):
    return None if v == NEG_INF else v


def _dim_text(v) -> str:
    return "-inf" if v == NEG_INF else str(v)


def emit(args, obj: dict, text: str) -> None:
    if args.json:
        print(json.dumps(obj, sort_keys=True, indent=2))
    else:
        print(text)


def _parse_int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    return [int(chunk) for chunk in text.split(",")]


# -- subcommands ------------------------------------------------------------


def cmd_class(args) -> int:
    x = load_class(args)
    if args.max_weight is not None and not is_raw_input(args.input):
        x = x.truncate(args.max_weight)
    emit(args, x.to_json_dict(), format_bpoly(x))
    return 0


def cmd_express(args) -> int:
    x = load_class(args)
    fam = make_family(args)
    res = express_in_generators(x, fam)
    if isinstance(res, NotInLp):
        emit(
            args,
            {"notInLp": {"p": res.p, "witness": list(res.witness)}},
            f"not a polynomial in the generators; witness c_{list(res.witness)}",
        )
        return 0
    emit(args, {"expression": res.to_json_dict()}, format_genpoly(res))
    return 0


def cmd_dimq(args) -> int:
    q = check_order(args)
    x = load_class(args)
    fam = make_family(args)
    direct = dim_q_direct(x, q)
    via = dim_q_via_generators(x, q, fam)
    assert direct == via, f"dimension disagreement: direct {direct}, via generators {via}"
    emit(
        args,
        {"direct": _json_dim(direct), "viaGenerators": _json_dim(via)},
        f"dim_{q} = {_dim_text(direct)} (direct) = {_dim_text(via)} (via generators)",
    )
    return 0


def cmd_bound(args) -> int:
    q = check_order(args)
    x = load_class(args)
    fam = make_family(args)
    out: dict = {"main": _json_dim(main_bound(x, q))}
    lines = [f"main bound: {_dim_text(main_bound(x, q))}"]
    if args.indices is not None:
        A = _parse_int_list(args.indices)
        report = ratio_bound(x, A, args.parts, q, fam)
        out["ratio"] = report.to_json_dict()
        lines.append(f"ratio bound (A={A}, s={args.parts}): {_dim_text(report.bound)}"
                     + ("" if report.hypothesis_checked else " [hypothesis not met]"))
    if args.small_d is not None:
        verdict = small_fixed_divisibility(x, q, args.small_d, fam)
        out["smallFixed"] = verdict
        lines.append(f"small fixed-locus divisibility at d={args.small_d}: {verdict}")
    if args.milnor_d is not None:
        verdict = milnor_divisibility_check(x, args.milnor_d, fam)
        out["milnor"] = verdict
        lines.append(f"Milnor-generator divisibility at d={args.milnor_d}: {verdict}")
    emit(args, out, "\n".join(lines))
    return 0


def cmd_realize(args) -> int:
    q = check_order(args)
    x = load_class(args)
    fam = make_family(args)
    action, achieved = realize(x, CharacterGroup.cyclic(q), fam)
    emit(
        args,
        {"achievedDim": _json_dim(achieved), "action": action_to_json(action)},
        f"achieved fixed dimension {_dim_text(achieved)}\n{json.dumps(action_to_json(action), sort_keys=True)}",
    )
    return 0


def cmd_rho(args) -> int:
    if (args.members is None) == (args.np_minus is None):
        raise ValueError("give exactly one of --members or --np-minus")
    if args.members is not None:
        index_set = IndexSet.finite(_parse_int_list(args.members))
    else:
        index_set = IndexSet.np_minus(args.prime, _parse_int_list(args.np_minus))
    value = rho_q(index_set, args.order)
    emit(args, {"rho": str(value)}, f"rho_{args.order} = {value}")
    return 0


def cmd_localize(args) -> int:
    weights = tuple(_parse_int_list(args.weights))
    y = {(args.zeta, args.t): 1}
    lhs, rhs = localization_check(args.prime, weights, y, args.r)
    emit(args, {"lhs": lhs, "match": lhs == rhs, "rhs": rhs}, f"lhs {lhs}, rhs {rhs}")
    assert lhs == rhs, f"localization mismatch: lhs {lhs} != rhs {rhs}"
    return 0


def cmd_selftest(args) -> int:
    results = acceptance.run_all()
    if args.json:
        checks = []
        for r in results:
            row: dict = {"name": r.name, "ok": r.ok}
            if not r.ok:
                row["detail"] = r.detail
            checks.append(row)
        payload = {
            "checks": checks,
            "failed": sum(not r.ok for r in results),
            "passed": sum(r.ok for r in results),
        }
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for r in results:
            print(f"{'PASS' if r.ok else 'FAIL'} {r.name} ({r.seconds:.1f}s): {r.detail}")
        print(f"{sum(r.ok for r in results)}/{len(results)} checks passed")
    return 0 if all(r.ok for r in results) else 3


# -- wiring -----------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="cobordlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, order=False, family=False, input_arg=True):
        if input_arg:
            sp.add_argument("input", help="variety expression or raw b[...] class")
            sp.add_argument("--max-weight", type=int, default=None, help="weight ceiling (raw default 16)")
        sp.add_argument("-p", "--prime", type=int, required=True, help="the prime p")
        if order:
            sp.add_argument("-q", "--order", type=int, required=True, help="group order, a power of p")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if family:
            sp.add_argument("--family", default="standard", help="standard or perturbed(SEED)")
            sp.add_argument("--cache", default=None, help=f"generator cache path (default {DEFAULT_CACHE})")

    sp = sub.add_parser("class", help="mod-p class of a variety expression")
    common(sp)
    sp.set_defaults(fn=cmd_class)

    sp = sub.add_parser("express", help="write a class in the polynomial generators")
    common(sp, family=True)
    sp.set_defaults(fn=cmd_express)

    sp = sub.add_parser("dimq", help="fixed-locus dimension invariant, both routes")
    common(sp, order=True, family=True)
    sp.set_defaults(fn=cmd_dimq)

    sp = sub.add_parser("bound", help="main/ratio/divisibility bounds")
    common(sp, order=True, family=True)
    sp.add_argument("--indices", default=None, help="comma list: indices spanned by the ratio-bound ideal")
    sp.add_argument("--parts", type=int, default=0, help="ratio bound part count s")
    sp.add_argument("--small-d", type=int, default=None, help="check small fixed-locus divisibility at this d")
    sp.add_argument("--milnor-d", type=int, default=None, help="check Milnor-generator divisibility at this d")
    sp.set_defaults(fn=cmd_bound)

    sp = sub.add_parser("realize", help="construct an action achieving dim_q")
    common(sp, order=True, family=True)
    sp.set_defaults(fn=cmd_realize)

    sp = sub.add_parser("rho", help="exact infimum of floor(i/q)/i over an index set")
    common(sp, order=True, input_arg=False)
    sp.add_argument("--members", default=None, help="comma list: a finite index set")
    sp.add_argument("--np-minus", default=None, help="comma list: exclusions from N_p (may be empty)")
    sp.set_defaults(fn=cmd_rho)

    sp = sub.add_parser("localize", help="fixed-point localization check on P(V)")
    common(sp, input_arg=False)
    sp.add_argument("--weights", required=True, help="comma list of character weights")
    sp.add_argument("--zeta", type=int, default=0, help="zeta exponent of the monomial y")
    sp.add_argument("--t", type=int, default=0, help="t exponent of the monomial y")
    sp.add_argument("--r", type=int, default=1, help="evaluation residue (nonzero)")
    sp.set_defaults(fn=cmd_localize)

    sp = sub.add_parser("selftest", help="run the acceptance checks")
    sp.add_argument("--json", action="store_true", help="machine-readable output")
    sp.set_defaults(fn=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args)
    except NotInLp as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, TruncationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except AssertionError as e:
        print(f"internal assertion failed: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
