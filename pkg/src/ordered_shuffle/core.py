"""Decks, the ordered-card shuffle, orbits, and exhaustive oracles.

A deck is a tuple of non-negative integer labels, position 0 on top.  A
larger label outranks a smaller one, so during a shuffle the largest label
of each column lands on top of that column's block.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

Deck = tuple  # tuple[int, ...]

DEFAULT_BUDGET = 2 ** 24
BUDGET_ENV = "ORDERED_SHUFFLE_BUDGET"


class ShuffleError(ValueError):
    """Base class for errors raised by this package."""


class ParamsError(ShuffleError):
    pass


class PreconditionError(ShuffleError):
    pass


class BudgetExceeded(ShuffleError):
    pass


class DeckFormatError(ShuffleError):
    pass


def default_budget() -> int:
    value = os.environ.get(BUDGET_ENV)
    return int(value) if value else DEFAULT_BUDGET


@dataclass(frozen=True)
class ShuffleParams:
    """Deck of ``N = k**t * q = k * n`` cards split into ``k`` stacks of ``n``."""

    N: int
    k: int
    t: int
    q: int
    n: int

    def __post_init__(self):
        if self.k < 2 or self.N != self.k ** self.t * self.q or self.q % self.k == 0:
            raise ParamsError(f"inconsistent parameters {self}")
        if self.n * self.k != self.N:
            raise ParamsError(f"inconsistent parameters {self}")

    def column(self, ell: int) -> range:
        """Subscripts on top of the k stacks at step ``ell``."""
        return range(ell, self.N, self.n)

    def block(self, ell: int) -> range:
        """Positions that column ``ell`` is written into."""
        return range(self.k * ell, self.k * ell + self.k)


def make_params(N: int, k: int) -> ShuffleParams:
    if k < 2:
        raise ParamsError(f"need k >= 2, got k={k}")
    if N < 1 or N % k:
        raise ParamsError(f"k={k} does not divide N={N}")
    t, q = 0, N
    while q % k == 0:
        q //= k
        t += 1
    return ShuffleParams(N=N, k=k, t=t, q=q, n=N // k)


def parse_deck(text: str) -> Deck:
    """Parse ``"0121"`` or ``"0,1,12,1"`` into a deck."""
    text = text.strip()
    try:
        if "," in text:
            labels = tuple(int(part) for part in text.split(","))
        else:
            labels = tuple(int(ch) for ch in text)
    except ValueError:
        raise DeckFormatError(f"malformed deck string {text!r}") from None
    if not labels or min(labels) < 0:
        raise DeckFormatError(f"malformed deck string {text!r}")
    return labels


def format_deck(deck: Sequence[int]) -> str:
    if all(0 <= x < 10 for x in deck):
        return "".join(map(str, deck))
    return ",".join(map(str, deck))


def _check_length(deck: Sequence[int], params: ShuffleParams) -> None:
    if len(deck) != params.N:
        raise PreconditionError(f"deck has {len(deck)} cards, expected N={params.N}")


def shuffle_once(deck: Sequence[int], params: ShuffleParams, reverse_ties: bool = False) -> Deck:
    """One shuffle: sort each column with the largest label on top, then
    concatenate the columns.

    ``reverse_ties`` breaks ties between equal labels bottom stack first
    instead of top stack first; the resulting deck is the same either way.
    """
    _check_length(deck, params)
    k, n = params.k, params.n
    out = []
    for ell in range(n):
        rows = range(k - 1, -1, -1) if reverse_ties else range(k)
        cards = [(deck[ell + i * n], i) for i in rows]
        # stable sort keeps the row order among equal labels
        cards.sort(key=lambda card: -card[0])
        out.extend(label for label, _ in cards)
    return tuple(out)


def card_destinations(deck: Sequence[int], params: ShuffleParams) -> list:
    """``dest[i]`` is the position card ``i`` moves to, ties broken top stack first."""
    _check_length(deck, params)
    dest = [0] * params.N
    for ell in range(params.n):
        col = sorted(params.column(ell), key=lambda a: -deck[a])
        for i, a in enumerate(col):
            dest[a] = params.k * ell + i
    return dest


@dataclass(frozen=True)
class Orbit:
    settle: int
    period: int
    cycle_decks: tuple


def find_orbit(deck: Sequence[int], params: ShuffleParams) -> Orbit:
    _check_length(deck, params)
    seen = {}
    path = []
    current = tuple(deck)
    while current not in seen:
        seen[current] = len(path)
        path.append(current)
        current = shuffle_once(current, params)
    settle = seen[current]
    return Orbit(settle=settle, period=len(path) - settle, cycle_decks=tuple(path[settle:]))


# --- exhaustive oracles -----------------------------------------------------

_CHUNK = 1 << 17


def _guard(params: ShuffleParams, j: int, budget: int | None) -> int:
    if j < 1:
        raise PreconditionError(f"alphabet size must be >= 1, got {j}")
    budget = default_budget() if budget is None else budget
    total = j ** params.N
    if total > budget:
        raise BudgetExceeded(f"{j}**{params.N} = {total} decks exceeds budget {budget}")
    return total


def _decode(codes: np.ndarray, N: int, j: int) -> np.ndarray:
    digits = np.empty((codes.size, N), dtype=np.int8)
    rest = codes.copy()
    for pos in range(N - 1, -1, -1):
        digits[:, pos] = rest % j
        rest //= j
    return digits


def _encode(digits: np.ndarray, j: int) -> np.ndarray:
    codes = np.zeros(digits.shape[0], dtype=np.int64)
    for pos in range(digits.shape[1]):
        codes = codes * j + digits[:, pos]
    return codes


def deck_code(deck: Sequence[int], j: int) -> int:
    """Index of ``deck`` among all ``j**N`` decks in lexicographic order."""
    code = 0
    for x in deck:
        code = code * j + x
    return code


def code_deck(code: int, N: int, j: int) -> Deck:
    out = []
    for _ in range(N):
        code, r = divmod(code, j)
        out.append(r)
    return tuple(reversed(out))


def shuffle_table(params: ShuffleParams, j: int, budget: int | None = None) -> np.ndarray:
    """``table[c]`` is the code of the shuffle of the deck with code ``c``."""
    total = _guard(params, j, budget)
    k, n, N = params.k, params.n, params.N
    table = np.empty(total, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        digits = _decode(codes, N, j).reshape(-1, k, n)
        digits = -np.sort(-digits, axis=1)
        table[start:start + codes.size] = _encode(digits.transpose(0, 2, 1).reshape(-1, N), j)
    return table


@dataclass
class FunctionalGraph:
    """Shuffle map on all decks of one alphabet, with settle times and periods."""

    params: ShuffleParams
    j: int
    table: np.ndarray
    settle: np.ndarray
    period: np.ndarray  # 0 for decks off the periodic cycles

    def decks(self, codes) -> set:
        return {code_deck(int(c), self.params.N, self.j) for c in codes}


def functional_graph(params: ShuffleParams, j: int, budget: int | None = None) -> FunctionalGraph:
    table = shuffle_table(params, j, budget)
    total = table.size
    on_cycle = np.ones(total, dtype=bool)
    while True:
        image = np.zeros(total, dtype=bool)
        image[table[on_cycle]] = True
        if np.array_equal(image, on_cycle):
            break
        on_cycle = image

    settle = np.full(total, -1, dtype=np.int64)
    settle[on_cycle] = 0
    depth = 0
    while (settle < 0).any():
        depth += 1
        fresh = (settle < 0) & (settle[table] == depth - 1)
        settle[fresh] = depth

    period = np.zeros(total, dtype=np.int64)
    idx = np.flatnonzero(on_cycle)
    cur = table[idx]
    p = 1
    while idx.size:
        done = cur == idx
        period[idx[done]] = p
        idx, cur = idx[~done], table[cur[~done]]
        p += 1
    return FunctionalGraph(params, j, table, settle, period)


def brute_force_fixed_decks(params: ShuffleParams, j: int, budget: int | None = None) -> set:
    table = shuffle_table(params, j, budget)
    fixed = np.flatnonzero(table == np.arange(table.size))
    return {code_deck(int(c), params.N, j) for c in fixed}


def brute_force_periodic_decks(params: ShuffleParams, j: int, budget: int | None = None) -> set:
    g = functional_graph(params, j, budget)
    return g.decks(np.flatnonzero(g.settle == 0))


def max_settle(params: ShuffleParams, j: int, budget: int | None = None):
    """Largest number of shuffles any deck needs before it is periodic, with
    the lexicographically first deck attaining it."""
    g = functional_graph(params, j, budget)
    worst = int(np.argmax(g.settle))
    return int(g.settle[worst]), code_deck(worst, params.N, j)
