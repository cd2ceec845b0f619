"""Command-line interface.

Exit status: 0 success, 1 usage error, 2 precondition or validation
failure, 3 enumeration budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from functools import partial
from itertools import islice

from . import formats
from .core import (BudgetExceeded, DeckFormatError, ParamsError, ShuffleError,
                   find_orbit, format_deck, make_params, max_settle, parse_deck, shuffle_once)
from .posets import (build_fixed_poset, build_periodic_poset, build_shuffling_poset,
                     cycle_length_stats, verify_cycle_theorem)
from .stacks import (construct_period_stack, count_fixed, enumerate_fixed, enumerate_periodic,
                     possible_periods)
from .weights import (METHODS, conjecture_scan, is_symmetric, scan_pairs, validate,
                      weight_function)

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(p, deck=False, method=True, j=False):
    p.add_argument("--n", dest="N", type=int, required=True, help="deck size N")
    p.add_argument("--k", type=int, required=True, help="number of stacks k")
    if deck:
        p.add_argument("--deck", required=True, help="deck as digits (j <= 10) or comma-separated labels")
    if method:
        p.add_argument("--method", choices=sorted(METHODS), default="up", help="weight function generator")
    if j:
        p.add_argument("--j", type=int, default=2, help="number of labels")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ordered-shuffle", description="Shuffling with ordered cards.")
    shared = _Parser(add_help=False)
    shared.add_argument("--format", choices=["text", "json"], default="text")
    shared.add_argument("--budget", type=int, default=None,
                        help="max decks for exhaustive searches (env ORDERED_SHUFFLE_BUDGET)")
    shared.add_argument("--output", default=None, help="write output to this path")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    add = partial(sub.add_parser, parents=[shared])

    _add_common(add("shuffle", help="one shuffle step"), deck=True, method=False)
    _add_common(add("orbit", help="settle time and period of a deck"), deck=True, method=False)
    _add_common(add("weight", help="generate a weight function"))
    p = add("validate-weight", help="check a weight function")
    _add_common(p, method=False)
    p.add_argument("--values", required=True, help="comma-separated weights")
    p = add("poset", help="shuffling, fixed or periodic poset")
    _add_common(p)
    p.add_argument("--kind", choices=["shuffling", "fixed", "periodic"], default="shuffling")
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    _add_common(add("count-fixed", help="count fixed stacks"), j=True)
    for name in ("enum-fixed", "enum-periodic"):
        p = add(name, help=f"list {name[5:]} stacks")
        _add_common(p, j=True)
        p.add_argument("--limit", type=int, default=None)
    _add_common(add("periods", help="possible periods"))
    p = add("make-period", help="build a deck of a given period")
    _add_common(p)
    p.add_argument("--d", type=int, required=True)
    _add_common(add("verify-theorem", help="cycle lengths against ord_k(N - q)"), method=False)
    _add_common(add("cycle-stats", help="cycle-length histogram"))
    p = add("conjecture-scan", help="symmetry of the generated weight functions")
    p.add_argument("--max-n", type=int, default=200)
    _add_common(add("max-settle", help="longest settle time by brute force"),
                method=False, j=True)
    return parser


def _shuffling(args):
    params = make_params(args.N, args.k)
    return params, build_shuffling_poset(params, weight_function(params, args.method))


def run(args) -> tuple:
    """Returns (record, text) for one parsed command."""
    cmd = args.command
    if cmd == "conjecture-scan":
        failures = conjecture_scan(scan_pairs(args.max_n))
        rec = {"max_n": args.max_n, "counterexamples": [
            {"N": N, "k": k, "phi": list(phi)} for (N, k), phi in failures]}
        lines = [f"scanned all k | N <= {args.max_n}: {len(failures)} non-symmetric"]
        lines += [f"N={N} k={k}: {','.join(map(str, phi))}" for (N, k), phi in failures]
        return rec, "\n".join(lines)

    params = make_params(args.N, args.k)
    rec = {"params": formats.params_record(params)}
    if cmd == "shuffle":
        deck = parse_deck(args.deck)
        out = format_deck(shuffle_once(deck, params))
        rec.update(deck=format_deck(deck), result=out)
        return rec, out
    if cmd == "orbit":
        orbit = find_orbit(parse_deck(args.deck), params)
        rec.update(formats.orbit_record(orbit))
        text = f"settle={orbit.settle} period={orbit.period}\n" + "\n".join(rec["cycle"])
        return rec, text
    if cmd == "weight":
        wf = weight_function(params, args.method)
        rec.update(method=args.method, phi=list(wf.values), symmetric=is_symmetric(wf))
        return rec, formats.weight_table(wf)
    if cmd == "validate-weight":
        try:
            values = [int(v) for v in args.values.split(",")]
        except ValueError:
            raise UsageError(f"malformed weights {args.values!r}") from None
        wf = validate(values, params)
        rec.update(phi=list(wf.values), valid=True, symmetric=is_symmetric(wf))
        return rec, "valid"
    if cmd == "verify-theorem":
        report = verify_cycle_theorem(params)
        rec.update(method="basek", order=report.order,
                   histogram={str(k): v for k, v in report.histogram.items()},
                   lengths_divide=report.lengths_divide, max_attained=report.max_attained,
                   t_divides=report.t_divides, passed=report.passed)
        hist = " ".join(f"{length}:{count}" for length, count in report.histogram.items())
        text = (f"{'pass' if report.passed else 'FAIL'}: ord_{params.k}({params.N - params.q})"
                f"={report.order}; cycle lengths {hist}")
        return rec, text
    if cmd == "max-settle":
        settle, deck = max_settle(params, args.j, args.budget)
        rec.update(j=args.j, max_settle=settle, witness=format_deck(deck))
        return rec, f"{settle} {format_deck(deck)}"

    params, poset = _shuffling(args)
    rec["method"] = args.method
    if cmd == "poset":
        if args.kind == "shuffling":
            obj, body = poset, formats.shuffling_poset_record(poset)
        elif args.kind == "fixed":
            obj = build_fixed_poset(poset)
            body = formats.label_poset_record(obj)
        else:
            obj = build_periodic_poset(poset)
            body = formats.label_poset_record(obj)
        rec.update(kind=args.kind, poset=body)
        if args.dot:
            return rec, formats.export_dot(obj).rstrip("\n")
        return rec, _poset_text(args.kind, obj, poset)
    if cmd == "cycle-stats":
        stats = cycle_length_stats(poset)
        rec.update(histogram={str(k): v for k, v in stats.histogram.items()}, lcm=stats.lcm,
                   max_length=stats.max_length, lcm_is_max=stats.lcm_is_max)
        hist = " ".join(f"{length}:{count}" for length, count in stats.histogram.items())
        return rec, f"lengths {hist}; lcm={stats.lcm} max={stats.max_length}"
    if cmd == "count-fixed":
        count = count_fixed(build_fixed_poset(poset), args.j)
        rec.update(j=args.j, count=str(count))
        return rec, str(count)
    if cmd in ("enum-fixed", "enum-periodic"):
        if cmd == "enum-fixed":
            stream = enumerate_fixed(build_fixed_poset(poset), args.j)
        else:
            stream = enumerate_periodic(build_periodic_poset(poset), args.j)
        decks = [format_deck(d) for d in islice(stream, args.limit)]
        rec.update(j=args.j, decks=decks)
        return rec, "\n".join(decks)
    if cmd == "periods":
        ps = possible_periods(poset)
        rec.update(lcm_cycles=ps.lcm_cycles, divisors=list(ps.divisors))
        return rec, f"lcm={ps.lcm_cycles} periods={' '.join(map(str, ps.divisors))}"
    if cmd == "make-period":
        deck = construct_period_stack(poset, build_periodic_poset(poset), args.d)
        orbit = find_orbit(deck, params)
        rec.update(d=args.d, deck=format_deck(deck), settle=orbit.settle, period=orbit.period)
        return rec, format_deck(deck)
    raise UsageError(f"unknown command {cmd}")


def _poset_text(kind, obj, poset) -> str:
    if kind == "shuffling":
        by_level = {}
        for cyc in poset.cycles:
            by_level.setdefault(poset.wf[cyc[0]], []).append("(" + " ".join(map(str, cyc)) + ")")
        return "\n".join(f"level {lv}: {' '.join(cs)}" for lv, cs in sorted(by_level.items()))
    lines = [f"{obj.size} nodes, {len(obj.cover_edges)} cover edges"]
    for h, lo in sorted(obj.cover_edges):
        lines.append(f"{' '.join(map(str, obj.names[lo]))} <= {' '.join(map(str, obj.names[h]))}"
                     if kind == "fixed" else f"{lo} <= {h}")
    return "\n".join(lines)


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        rec, text = run(args)
    except (UsageError, ParamsError, DeckFormatError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ShuffleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.format == "json":
        text = json.dumps({"schema": formats.schema(args.command), **rec}, indent=2, sort_keys=True)
    if args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_PRECONDITION
    else:
        print(text, file=stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
