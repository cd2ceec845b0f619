"""Counting down-sets of a LabelPoset.

A down-set here is a node set ``I`` with ``high in I => low in I`` for every
cover edge ``(high, low)``: the nodes carrying label 1 in an admissible
two-label assignment.  Labelings with ``j`` labels are nested chains of
``j - 1`` down-sets, i.e. down-sets of the product with a chain.

Two engines:

* a layered transfer-matrix DP on numpy arrays indexed by subsets of one
  layer, used when every edge joins adjacent layers; it meets in the middle
  at the widest layer so that layer is never materialized in full;
* a frontier DP over Python dicts for everything else.
"""
from __future__ import annotations

from collections import deque
from graphlib import TopologicalSorter
from math import prod

import numpy as np

from .core import BudgetExceeded
from .posets import LabelPoset

MAX_LAYER_BITS = 26
MAX_MIDDLE_BITS = 32
_LO_BITS = 16


def chain_product(lp: LabelPoset, copies: int) -> LabelPoset:
    """``lp`` times a chain of ``copies`` elements: node ``c*size + x`` is in a
    down-set iff ``label(x) > c``."""
    size = lp.size
    span = (max(lp.levels) - min(lp.levels) + 1) if size else 1
    levels = tuple(lp.levels[x] + c * span for c in range(copies) for x in range(size))
    edges = {(c * size + h, c * size + lo) for c in range(copies) for h, lo in lp.cover_edges}
    edges |= {((c + 1) * size + x, c * size + x) for c in range(copies - 1) for x in range(size)}
    return LabelPoset(levels, frozenset(edges))


def count_labelings(lp: LabelPoset, j: int) -> int:
    """Number of admissible assignments of labels ``0..j-1``."""
    if j < 1:
        raise ValueError(f"alphabet size must be >= 1, got {j}")
    if j == 1 or lp.size == 0:
        return 1
    if j > 2:
        lp = chain_product(lp, j - 1)
    return count_down_sets(lp)


def count_down_sets(lp: LabelPoset) -> int:
    return prod(_count_component(lp, comp) for comp in _components(lp))


def _components(lp: LabelPoset) -> list:
    adj = [[] for _ in range(lp.size)]
    for h, lo in lp.cover_edges:
        adj[h].append(lo)
        adj[lo].append(h)
    seen = [False] * lp.size
    comps = []
    for start in range(lp.size):
        if seen[start]:
            continue
        seen[start] = True
        comp, todo = [], [start]
        while todo:
            x = todo.pop()
            comp.append(x)
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    todo.append(y)
        comps.append(sorted(comp))
    return comps


def _layering(nodes: list, edges: list):
    """Ranks with ``rank[high] = rank[low] + 1`` on every edge, or None."""
    adj = {x: [] for x in nodes}
    for h, lo in edges:
        adj[h].append((lo, -1))
        adj[lo].append((h, 1))
    rank = {nodes[0]: 0}
    todo = deque([nodes[0]])
    while todo:
        x = todo.popleft()
        for y, step in adj[x]:
            if y not in rank:
                rank[y] = rank[x] + step
                todo.append(y)
            elif rank[y] != rank[x] + step:
                return None
    low = min(rank.values())
    return {x: r - low for x, r in rank.items()}


def _count_component(lp: LabelPoset, comp: list) -> int:
    if len(comp) == 1:
        return 2
    members = set(comp)
    edges = [(h, lo) for h, lo in lp.cover_edges if h in members]
    rank = _layering(comp, edges)
    if rank is not None:
        return LayeredCounter(comp, edges, rank).count()
    return frontier_count(comp, edges)


# --- frontier DP -------------------------------------------------------------

def frontier_count(nodes: list, edges: list) -> int:
    below = {x: [] for x in nodes}
    pending_up = {x: 0 for x in nodes}
    for h, lo in edges:
        below[h].append(lo)
        pending_up[lo] += 1
    order = TopologicalSorter({x: below[x] for x in nodes}).static_order()
    states = {0: 1}
    for x in order:
        bit = 1 << x
        need = sum(1 << y for y in below[x])
        nxt = {}
        for s, c in states.items():
            nxt[s] = nxt.get(s, 0) + c
            if s & need == need:
                nxt[s | bit] = nxt.get(s | bit, 0) + c
        dead = 0
        if pending_up[x] == 0:
            dead |= bit
        for y in below[x]:
            pending_up[y] -= 1
            if pending_up[y] == 0:
                dead |= 1 << y
        if dead:
            states = {}
            for s, c in nxt.items():
                key = s & ~dead
                states[key] = states.get(key, 0) + c
        else:
            states = nxt
    return sum(states.values())


# --- layered DP ----------------------------------------------------------------

def _or_table(masks: list, dtype=np.int64) -> np.ndarray:
    """``table[T] = OR of masks[b] for bits b in T``."""
    table = np.zeros(1, dtype=dtype)
    for m in masks:
        table = np.concatenate([table, table | m])
    return table


def _missing_or_table(masks: list, dtype=np.int64) -> np.ndarray:
    """``table[T] = OR of masks[b] for bits b NOT in T``."""
    table = np.zeros(1, dtype=dtype)
    for m in masks:
        table = np.concatenate([table | m, table])
    return table


def _superset_sum(a: np.ndarray, bits: int) -> np.ndarray:
    a = a.copy()
    for b in range(bits):
        view = a.reshape(-1, 2, 1 << b)
        view[:, 0, :] += view[:, 1, :]
    return a


def _subset_sum(a: np.ndarray, bits: int) -> np.ndarray:
    a = a.copy()
    for b in range(bits):
        view = a.reshape(-1, 2, 1 << b)
        view[:, 1, :] += view[:, 0, :]
    return a


class LayeredCounter:
    """Transfer-matrix count over layers ``0..h-1`` where each edge joins a
    node of layer ``r+1`` (high) to one of layer ``r`` (low)."""

    def __init__(self, nodes, edges, rank):
        height = max(rank.values()) + 1
        self.layers = [[] for _ in range(height)]
        for x in sorted(nodes, key=lambda x: (rank[x], x)):
            self.layers[rank[x]].append(x)
        pos = {x: self.layers[rank[x]].index(x) for x in nodes}
        # need[r][i]: lower covers (bits of layer r-1) of node i of layer r
        self.need = [[0] * len(layer) for layer in self.layers]
        # up[r][i]: upper covers (bits of layer r+1) of node i of layer r
        self.up = [[0] * len(layer) for layer in self.layers]
        for h, lo in edges:
            self.need[rank[h]][pos[h]] |= 1 << pos[lo]
            self.up[rank[lo]][pos[lo]] |= 1 << pos[h]
        widths = [len(layer) for layer in self.layers]
        self.middle = max(range(height), key=lambda r: (widths[r], -r))
        if widths[self.middle] > MAX_MIDDLE_BITS or any(
                w > MAX_LAYER_BITS for r, w in enumerate(widths) if r != self.middle):
            raise BudgetExceeded(f"layer widths {widths} too large for the transfer DP")

    def count(self) -> int:
        estimate = self._run(np.float64)
        if estimate < 2.0 ** 60:
            return int(self._run(np.int64))
        return int(self._run(object))

    def _run(self, dtype):
        m, layers = self.middle, self.layers
        width = lambda r: len(layers[r])

        below = None
        if m > 0:
            g = np.ones(1 << width(0), dtype=dtype)
            for r in range(1, m):
                g = _superset_sum(g, width(r - 1))[_or_table(self.need[r])]
            below = _superset_sum(g, width(m - 1))

        above = None
        if m < len(layers) - 1:
            top = len(layers) - 1
            u = np.ones(1 << width(top), dtype=dtype)
            for r in range(top - 1, m, -1):
                full = (1 << width(r + 1)) - 1
                u = _subset_sum(u, width(r + 1))[full & ~_missing_or_table(self.up[r])]
            above = _subset_sum(u, width(m + 1))

        return self._combine(below, above, dtype)

    def _combine(self, below, above, dtype):
        m = self.middle
        w = len(self.layers[m])
        lo_bits = min(w, _LO_BITS)
        need, up = self.need[m], self.up[m]
        need_lo, need_hi = _or_table(need[:lo_bits]), _or_table(need[lo_bits:])
        miss_lo, miss_hi = _missing_or_table(up[:lo_bits]), _missing_or_table(up[lo_bits:])
        full_up = (1 << len(self.layers[m + 1])) - 1 if above is not None else 0
        total = dtype(0) if dtype is not object else 0
        for hi in range(1 << (w - lo_bits)):
            term = np.ones(1 << lo_bits, dtype=dtype)
            if below is not None:
                term = term * below[need_lo | need_hi[hi]]
            if above is not None:
                term = term * above[full_up & ~(miss_lo | miss_hi[hi])]
            total += term.sum()
        return total
