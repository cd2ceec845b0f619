"""Shuffling weight functions on subscripts.

A weight function ``phi`` on ``0..N-1`` is valid when, for every column
``ell``, the weights of ``ell, ell+n, ..., ell+(k-1)n`` are, as a multiset,
the weights of the block ``k*ell, ..., k*ell+k-1``, and the weights along
each block are strictly increasing.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .core import PreconditionError, ShuffleParams, make_params


class InvalidWeightFunction(PreconditionError):
    def __init__(self, condition: str, ell: int, detail: str):
        super().__init__(f"condition ({condition}) fails at ell={ell}: {detail}")
        self.condition = condition
        self.ell = ell


@dataclass(frozen=True)
class WeightFunction:
    values: tuple
    params: ShuffleParams

    def __getitem__(self, a: int) -> int:
        return self.values[a]

    def __len__(self) -> int:
        return len(self.values)

    def levels(self) -> list:
        return sorted(set(self.values))


def normalized(values: Sequence[int]) -> tuple:
    low = min(values)
    return tuple(v - low for v in values)


def validate(values: Sequence[int], params: ShuffleParams) -> WeightFunction:
    """Check both conditions, reporting the first failure ordered by
    (condition, ell)."""
    values = tuple(int(v) for v in values)
    if len(values) != params.N:
        raise PreconditionError(f"expected {params.N} weights, got {len(values)}")
    k, n = params.k, params.n
    for ell in range(n):
        column = Counter(values[a] for a in params.column(ell))
        block = Counter(values[a] for a in params.block(ell))
        if column != block:
            raise InvalidWeightFunction(
                "i", ell, f"column weights {sorted(column.elements())} != block weights {sorted(block.elements())}")
    for ell in range(n):
        block = [values[a] for a in params.block(ell)]
        if any(x >= y for x, y in zip(block, block[1:])):
            raise InvalidWeightFunction("ii", ell, f"block weights {block} not strictly increasing")
    return WeightFunction(values, params)


def _directed_cycles(succ: dict) -> list:
    """All cycles of a partial function, each listed from its smallest vertex,
    ordered by that vertex."""
    state = {}
    cycles = []
    for start in sorted(succ):
        path = []
        v = start
        while v in succ and v not in state:
            state[v] = start
            path.append(v)
            v = succ[v]
        if v in succ and state.get(v) == start:
            cyc = path[path.index(v):]
            m = cyc.index(min(cyc))
            cycles.append(cyc[m:] + cyc[:m])
    cycles.sort(key=lambda c: c[0])
    return cycles


def _cross_out(params: ShuffleParams, from_top: bool) -> list:
    """Run the column-graph algorithm; returns raw weights (0, 1, 2, ... when
    using the lowest cells, 0, -1, -2, ... when using the highest)."""
    k, n, N = params.k, params.n, params.N
    # cell (i, j) holds a = i + k*j, b = a % n; cells of column j are used in row order
    rows = [0 if not from_top else k - 1] * n
    step = 1 if not from_top else -1
    phi = [None] * N
    weight = 0
    remaining = N
    while remaining:
        succ = {j: (rows[j] + k * j) % n for j in range(n) if 0 <= rows[j] < k}
        for cycle in _directed_cycles(succ):
            for j in cycle:
                phi[rows[j] + k * j] = weight
                rows[j] += step
                remaining -= 1
        weight += step
    return phi


def algorithm_up(params: ShuffleParams) -> WeightFunction:
    return validate(normalized(_cross_out(params, from_top=False)), params)


def algorithm_down(params: ShuffleParams) -> WeightFunction:
    return validate(normalized(_cross_out(params, from_top=True)), params)


def base_k_digits(a: int, k: int, count: int) -> list:
    digits = []
    for _ in range(count):
        a, r = divmod(a, k)
        digits.append(r)
    return digits


def base_k_weight(params: ShuffleParams) -> WeightFunction:
    """Digit sum of the ``t`` lowest base-k digits; needs gcd(q, k) = 1."""
    if gcd(params.q, params.k) != 1:
        raise PreconditionError(f"base-k weight needs gcd(q, k) = 1, got q={params.q}, k={params.k}")
    values = [sum(base_k_digits(a, params.k, params.t)) for a in range(params.N)]
    return validate(values, params)


def generalized_weight(params: ShuffleParams) -> WeightFunction:
    """Low-digit sum plus digit ``t`` reduced mod gcd(k, q)."""
    g = gcd(params.q, params.k)
    if gcd(params.q // g, g) != 1:
        raise PreconditionError(
            f"generalized weight needs gcd(q/g, g) = 1 with g = gcd(q, k); q={params.q}, k={params.k}")
    values = []
    for a in range(params.N):
        digits = base_k_digits(a, params.k, params.t + 1)
        values.append(sum(digits[:-1]) + digits[-1] % g)
    return validate(values, params)


def symmetric_weight(params: ShuffleParams) -> WeightFunction:
    up, down = algorithm_up(params), algorithm_down(params)
    return validate(normalized([x + y for x, y in zip(up.values, down.values)]), params)


def is_symmetric(wf: WeightFunction) -> bool:
    N = len(wf)
    return len({wf[i] + wf[N - 1 - i] for i in range(N)}) == 1


METHODS = {
    "up": algorithm_up,
    "down": algorithm_down,
    "basek": base_k_weight,
    "general": generalized_weight,
    "symmetric": symmetric_weight,
}


def weight_function(params: ShuffleParams, method: str = "up") -> WeightFunction:
    try:
        build = METHODS[method]
    except KeyError:
        raise ValueError(f"unknown weight method {method!r}") from None
    return build(params)


def conjecture_scan(pairs) -> list:
    """Run the lowest-cell algorithm over ``(N, k)`` pairs and return the
    pairs whose weight function is not symmetric, with the weights."""
    failures = []
    for N, k in sorted(pairs):
        wf = algorithm_up(make_params(N, k))
        if not is_symmetric(wf):
            failures.append(((N, k), wf.values))
    return failures


def scan_pairs(max_n: int) -> list:
    return [(N, k) for N in range(2, max_n + 1) for k in range(2, N + 1) if N % k == 0]
