"""Shuffling, fixed and periodic posets, and cycle-length arithmetic."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import reduce
from math import gcd, lcm
from typing import Sequence

from .core import PreconditionError, ShuffleParams, _check_length
from .weights import WeightFunction, base_k_digits, base_k_weight


@dataclass(frozen=True)
class ShufflingPoset:
    params: ShuffleParams
    wf: WeightFunction
    successor: tuple
    cycles: tuple  # each cycle starts at its smallest member; sorted by it
    cycle_of: tuple
    column_edges: frozenset

    @property
    def N(self) -> int:
        return self.params.N

    def level(self, a: int) -> int:
        return self.wf[a]

    def cycle_lengths(self) -> list:
        return [len(c) for c in self.cycles]

    def lcm_cycles(self) -> int:
        return reduce(lcm, self.cycle_lengths(), 1)

    def sorted_column(self, ell: int) -> list:
        """Subscripts of column ``ell`` by increasing weight."""
        return sorted(self.params.column(ell), key=self.wf.__getitem__)


def _orbits(perm: Sequence[int]) -> list:
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        a = start
        while not seen[a]:
            seen[a] = True
            cyc.append(a)
            a = perm[a]
        cycles.append(tuple(cyc))
    return cycles


def build_shuffling_poset(params: ShuffleParams, wf: WeightFunction) -> ShufflingPoset:
    if wf.params != params:
        raise PreconditionError("weight function built for different parameters")
    succ = [0] * params.N
    edges = set()
    for ell in range(params.n):
        col = list(params.column(ell))
        target = {wf[b]: b for b in params.block(ell)}
        for a in col:
            succ[a] = target[wf[a]]
        edges.update((a, b) for a in col for b in col if a < b)
    cycles = tuple(sorted(_orbits(succ)))
    cycle_of = [0] * params.N
    for idx, cyc in enumerate(cycles):
        for a in cyc:
            cycle_of[a] = idx
    return ShufflingPoset(params, wf, tuple(succ), cycles, tuple(cycle_of), frozenset(edges))


def mapping_rule_gcd1(a: int, params: ShuffleParams) -> int:
    """Successor of ``a`` under the base-k weight: ``k*a + digit_{t-1}(a) mod N``."""
    if gcd(params.q, params.k) != 1:
        raise PreconditionError(f"mapping rule needs gcd(q, k) = 1, got q={params.q}, k={params.k}")
    digit = base_k_digits(a, params.k, params.t)[-1]
    return (params.k * a + digit) % params.N


def _factorize(m: int) -> dict:
    factors = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    return factors


def _totient(m: int) -> int:
    result = m
    for p in _factorize(m):
        result = result // p * (p - 1)
    return result


def mult_order(k: int, s: int) -> int:
    """Multiplicative order of ``k`` modulo ``s``."""
    if s < 1 or gcd(k, s) != 1:
        raise PreconditionError(f"ord_{k}({s}) undefined: gcd({k}, {s}) != 1")
    if s == 1:
        return 1
    order = _totient(s)
    for p in _factorize(order):
        while order % p == 0 and pow(k, order // p, s) == 1:
            order //= p
    return order


def divisors(m: int) -> list:
    small = [d for d in range(1, int(m ** 0.5) + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


@dataclass
class TheoremReport:
    params: ShuffleParams
    order: int
    histogram: dict
    lengths_divide: bool
    max_attained: bool
    t_divides: bool

    @property
    def passed(self) -> bool:
        return self.lengths_divide and self.max_attained and self.t_divides


def verify_cycle_theorem(params: ShuffleParams) -> TheoremReport:
    """Cycle lengths under the base-k weight against ``ord_k(N - q)``."""
    poset = build_shuffling_poset(params, base_k_weight(params))
    order = mult_order(params.k, params.N - params.q)
    hist = Counter(poset.cycle_lengths())
    return TheoremReport(
        params=params,
        order=order,
        histogram=dict(sorted(hist.items())),
        lengths_divide=all(order % length == 0 for length in hist),
        max_attained=max(hist) == order,
        t_divides=order % params.t == 0,
    )


@dataclass
class CycleStats:
    histogram: dict
    lcm: int
    max_length: int

    @property
    def lcm_is_max(self) -> bool:
        return self.lcm == self.max_length


def cycle_length_stats(poset: ShufflingPoset) -> CycleStats:
    hist = Counter(poset.cycle_lengths())
    return CycleStats(dict(sorted(hist.items())), poset.lcm_cycles(), max(hist))


def complement_symmetry_check(poset: ShufflingPoset) -> bool:
    N, succ = poset.N, poset.successor
    return all(succ[N - 1 - i] == N - 1 - succ[i] for i in range(N))


def poset_shuffle(deck: Sequence[int], poset: ShufflingPoset) -> tuple:
    """Shuffle by working in the poset: within each column the heaviest
    labels sink to the lowest weights, then every card advances one step
    along its cycle."""
    params = poset.params
    _check_length(deck, params)
    settled = list(deck)
    for ell in range(params.n):
        col = poset.sorted_column(ell)
        for a, label in zip(col, sorted((deck[a] for a in col), reverse=True)):
            settled[a] = label
    out = [0] * params.N
    for a, label in enumerate(settled):
        out[poset.successor[a]] = label
    return tuple(out)


@dataclass(frozen=True)
class LabelPoset:
    """Nodes at integer levels with cover edges ``(high, low)``; a labeling is
    admissible when ``label[low] >= label[high]`` on every edge."""

    levels: tuple
    cover_edges: frozenset
    names: tuple = field(default=())

    @property
    def size(self) -> int:
        return len(self.levels)

    def lower_covers(self) -> list:
        below = [[] for _ in self.levels]
        for high, low in sorted(self.cover_edges):
            below[high].append(low)
        return below

    def upper_covers(self) -> list:
        above = [[] for _ in self.levels]
        for high, low in sorted(self.cover_edges):
            above[low].append(high)
        return above

    def is_admissible(self, labels: Sequence[int]) -> bool:
        return all(labels[low] >= labels[high] for high, low in self.cover_edges)

    def reversed(self) -> "LabelPoset":
        """The same poset turned upside down."""
        top = max(self.levels, default=0)
        return LabelPoset(tuple(top - v for v in self.levels),
                          frozenset((low, high) for high, low in self.cover_edges), self.names)


@dataclass(frozen=True)
class FixedPoset(LabelPoset):
    """Nodes are the cycles of a shuffling poset."""

    poset: ShufflingPoset = None

    def expand(self, labels: Sequence[int]) -> tuple:
        deck = [0] * self.poset.N
        for label, cyc in zip(labels, self.poset.cycles):
            for a in cyc:
                deck[a] = label
        return tuple(deck)


@dataclass(frozen=True)
class PeriodicPoset(LabelPoset):
    """Nodes are the subscripts themselves."""

    poset: ShufflingPoset = None

    def expand(self, labels: Sequence[int]) -> tuple:
        return tuple(labels)


def _adjacent_pairs(poset: ShufflingPoset):
    """Weight-adjacent pairs (lower, higher) inside each column."""
    for ell in range(poset.params.n):
        col = poset.sorted_column(ell)
        yield from zip(col, col[1:])


def build_fixed_poset(poset: ShufflingPoset) -> FixedPoset:
    cyc = poset.cycle_of
    edges = frozenset((cyc[d], cyc[c]) for c, d in _adjacent_pairs(poset))
    levels = tuple(poset.wf[c[0]] for c in poset.cycles)
    return FixedPoset(levels, edges, poset.cycles, poset)


def build_periodic_poset(poset: ShufflingPoset) -> PeriodicPoset:
    """Edge (B, A) when, for some s, the cards starting at A and B sit
    weight-adjacent in one column after s steps, A on the lower weight."""
    N, succ = poset.N, poset.successor
    pred = [0] * N
    for a, b in enumerate(succ):
        pred[b] = a
    pairs = list(_adjacent_pairs(poset))
    # origin[x] = succ^{-s}(x); pairs repeat once s reaches the lcm of cycle lengths
    origin = list(range(N))
    edges = set()
    for _ in range(poset.lcm_cycles()):
        edges.update((origin[d], origin[c]) for c, d in pairs)
        origin = [origin[pred[x]] for x in range(N)]
    return PeriodicPoset(tuple(poset.wf.values), frozenset(edges), tuple((a,) for a in range(N)), poset)
