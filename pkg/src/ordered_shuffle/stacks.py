"""Fixed and periodic stacks as admissible labelings of the fixed and
periodic posets."""
from __future__ import annotations

from dataclasses import dataclass
from graphlib import TopologicalSorter
from itertools import product
from typing import Iterator

from .core import Deck, PreconditionError, ShuffleError, find_orbit
from .counting import count_labelings
from .posets import FixedPoset, LabelPoset, PeriodicPoset, ShufflingPoset, divisors


class ConstructionError(ShuffleError):
    """A periodic witness could not be built; this indicates a bug."""


def strict_closure(lp: LabelPoset):
    """Bitsets ``below[x]`` and ``above[x]`` of nodes strictly under/over ``x``."""
    lower, upper = lp.lower_covers(), lp.upper_covers()
    below = [0] * lp.size
    order = list(TopologicalSorter({x: lower[x] for x in range(lp.size)}).static_order())
    for x in order:
        for y in lower[x]:
            below[x] |= (1 << y) | below[y]
    above = [0] * lp.size
    for x in reversed(order):
        for y in upper[x]:
            above[x] |= (1 << y) | above[y]
    return below, above


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def admissible_labelings(lp: LabelPoset, j: int) -> Iterator[tuple]:
    """All labelings with ``label[low] >= label[high]``, lexicographic in
    node order."""
    if j < 1:
        raise ValueError(f"alphabet size must be >= 1, got {j}")
    below, above = strict_closure(lp)
    size = lp.size
    labels = [0] * size

    def extend(x):
        if x == size:
            yield tuple(labels)
            return
        earlier = (1 << x) - 1
        lo = max((labels[y] for y in _bits(above[x] & earlier)), default=0)
        hi = min((labels[y] for y in _bits(below[x] & earlier)), default=j - 1)
        for label in range(lo, hi + 1):
            labels[x] = label
            yield from extend(x + 1)

    yield from extend(0)


def enumerate_fixed(fp: FixedPoset, j: int) -> Iterator[Deck]:
    # cycles are indexed by smallest member, so node order gives deck order
    for labels in admissible_labelings(fp, j):
        yield fp.expand(labels)


def count_fixed(fp: FixedPoset, j: int) -> int:
    return count_labelings(fp, j)


def enumerate_periodic(pp: PeriodicPoset, j: int) -> Iterator[Deck]:
    yield from admissible_labelings(pp, j)


def count_periodic(pp: PeriodicPoset, j: int) -> int:
    return count_labelings(pp, j)


@dataclass(frozen=True)
class PeriodSet:
    divisors: tuple
    lcm_cycles: int


def possible_periods(poset: ShufflingPoset) -> PeriodSet:
    m = poset.lcm_cycles()
    return PeriodSet(tuple(divisors(m)), m)


def _prime_powers(d: int) -> list:
    out, p = [], 2
    while p * p <= d:
        if d % p == 0:
            q = 1
            while d % p == 0:
                q *= p
                d //= p
            out.append(q)
        p += 1
    if d > 1:
        out.append(d)
    return out


def _cycle_choices(poset: ShufflingPoset, d: int):
    """Ways to realize period ``d`` as (cycle index, rotation period) pairs:
    one cycle if some cycle length is a multiple of ``d``, else one cycle per
    prime power of ``d``."""
    lengths = poset.cycle_lengths()
    for idx, length in enumerate(lengths):
        if length % d == 0:
            yield [(idx, d)]
    parts = _prime_powers(d)
    if len(parts) > 1:
        options = [[idx for idx, length in enumerate(lengths) if length % pp == 0] for pp in parts]
        for combo in product(*options):
            if len(set(combo)) == len(combo):
                yield list(zip(combo, parts))


def construct_period_stack(poset: ShufflingPoset, pp: PeriodicPoset, d: int) -> Deck:
    """Two-label periodic deck of period exactly ``d``.

    The chosen cycle carries the pattern ``0...01`` repeated, which returns to
    itself only after ``d`` steps.  Cards forced below one of its 1s get 1,
    cards forced above one of its 0s get 0, and the rest get 1 below the
    cycle's level and 0 from it upward.
    """
    m = poset.lcm_cycles()
    if d < 1 or m % d:
        raise PreconditionError(f"period {d} does not divide the lcm {m} of cycle lengths")
    below, above = strict_closure(pp)
    for choice in _cycle_choices(poset, d):
        forced = _propagate(poset, choice, below, above)
        if forced is None:
            continue
        cut = min(poset.wf[poset.cycles[idx][0]] for idx, _ in choice)
        deck = tuple(forced.get(a, 1 if poset.wf[a] < cut else 0) for a in range(poset.N))
        if not pp.is_admissible(deck):
            continue
        orbit = find_orbit(deck, poset.params)
        if orbit.settle == 0 and orbit.period == d:
            return deck
    raise ConstructionError(f"no witness of period {d} for N={poset.N}, k={poset.params.k}")


def _propagate(poset, choice, below, above):
    """Seed the chosen cycles with their patterns and push 1s down and 0s up;
    None on a conflict."""
    forced = {}
    for idx, rot in choice:
        for pos, a in enumerate(poset.cycles[idx]):
            forced[a] = 1 if pos % rot == rot - 1 else 0
    for a, label in list(forced.items()):
        for x in _bits(below[a] if label == 1 else above[a]):
            if forced.setdefault(x, label) != label:
                return None
    return forced
