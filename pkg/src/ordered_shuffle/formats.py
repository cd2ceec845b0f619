"""Text tables, JSON records and Graphviz DOT for the package's objects."""
from __future__ import annotations

from .core import Orbit, ShuffleParams, format_deck, make_params, parse_deck
from .posets import FixedPoset, LabelPoset, PeriodicPoset, ShufflingPoset
from .weights import WeightFunction, validate

SCHEMA_PREFIX = "ordered-shuffle"


def schema(name: str) -> str:
    return f"{SCHEMA_PREFIX}/{name}/v1"


def params_record(params: ShuffleParams) -> dict:
    return {"N": params.N, "k": params.k, "t": params.t, "q": params.q, "n": params.n}


def params_from_record(rec: dict) -> ShuffleParams:
    params = make_params(rec["N"], rec["k"])
    if params_record(params) != rec:
        raise ValueError(f"inconsistent params record {rec}")
    return params


def orbit_record(orbit: Orbit) -> dict:
    return {
        "settle": orbit.settle,
        "period": orbit.period,
        "cycle": [format_deck(d) for d in orbit.cycle_decks],
    }


def orbit_from_record(rec: dict) -> Orbit:
    return Orbit(rec["settle"], rec["period"], tuple(parse_deck(d) for d in rec["cycle"]))


def weight_record(wf: WeightFunction) -> dict:
    return {"params": params_record(wf.params), "phi": list(wf.values)}


def weight_from_record(rec: dict) -> WeightFunction:
    return validate(rec["phi"], params_from_record(rec["params"]))


def weight_table(wf: WeightFunction, width: int = 16) -> str:
    """Index row over weight row, split every ``width`` columns."""
    lines = []
    for start in range(0, len(wf), width):
        idx = range(start, min(start + width, len(wf)))
        cells = [(str(a), str(wf[a])) for a in idx]
        pad = [max(len(x), len(y)) for x, y in cells]
        lines.append("n      | " + " | ".join(x.rjust(p) for (x, _), p in zip(cells, pad)))
        lines.append("phi(n) | " + " | ".join(y.rjust(p) for (_, y), p in zip(cells, pad)))
        lines.append("")
    return "\n".join(lines).rstrip("\n")


def label_poset_record(lp: LabelPoset) -> dict:
    return {
        "nodes": [list(name) for name in lp.names],
        "levels": list(lp.levels),
        "edges": sorted([h, lo] for h, lo in lp.cover_edges),
    }


def label_poset_from_record(rec: dict) -> LabelPoset:
    return LabelPoset(tuple(rec["levels"]), frozenset((h, lo) for h, lo in rec["edges"]),
                      tuple(tuple(n) for n in rec["nodes"]))


def shuffling_poset_record(poset: ShufflingPoset) -> dict:
    return {
        "params": params_record(poset.params),
        "phi": list(poset.wf.values),
        "successor": list(poset.successor),
        "cycles": [list(c) for c in poset.cycles],
        "column_edges": sorted(list(e) for e in poset.column_edges),
    }


# --- DOT -------------------------------------------------------------------------

def _ranked(lines, levels, names):
    by_level = {}
    for idx, level in enumerate(levels):
        by_level.setdefault(level, []).append(idx)
    for level in sorted(by_level):
        members = " ".join(names[i] for i in by_level[level])
        lines.append(f"  {{rank=same; {members}}}  // level {level}")


def export_dot(poset, sink=None) -> str:
    """DOT digraph with one rank per weight level, lowest level at the bottom.
    Written to ``sink`` (a path) when given."""
    lines = ["digraph poset {", "  rankdir=BT;", "  node [shape=ellipse];"]
    if isinstance(poset, ShufflingPoset):
        lines[0] = "digraph shuffling_poset {"
        names = [f"s{a}" for a in range(poset.N)]
        for a in range(poset.N):
            lines.append(f'  {names[a]} [label="{a}"];')
        _ranked(lines, poset.wf.values, names)
        for a, b in enumerate(poset.successor):
            lines.append(f"  {names[a]} -> {names[b]} [constraint=false];")
        for a, b in sorted(poset.column_edges):
            lo, hi = sorted((a, b), key=poset.wf.__getitem__)
            lines.append(f"  {names[lo]} -> {names[hi]} [dir=none, style=dashed];")
    elif isinstance(poset, LabelPoset):
        kind = {FixedPoset: "fixed_poset", PeriodicPoset: "periodic_poset"}.get(type(poset), "poset")
        lines[0] = f"digraph {kind} {{"
        names = [f"c{i}" for i in range(poset.size)]
        for i in range(poset.size):
            label = " ".join(map(str, poset.names[i])) if poset.names else str(i)
            lines.append(f'  {names[i]} [label="{label}"];')
        _ranked(lines, poset.levels, names)
        for h, lo in sorted(poset.cover_edges):
            lines.append(f"  {names[lo]} -> {names[h]} [dir=none];")
    else:
        raise TypeError(f"cannot export {type(poset).__name__}")
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if sink is not None:
        with open(sink, "w") as fh:
            fh.write(text)
    return text
