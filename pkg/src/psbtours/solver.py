"""Minimum-cost pyramidal tour with step-backs.

The DP places cities 2..n-1 in index order. After cities 1..k are placed the
partial tour is an ascending path 1 -> ... -> a and a descending path
d -> ... -> 1; the state is (k, a, d). Each step appends city k+1 to one of
the paths, or a step-back pair (k+1, k+2) to one of them:

    ascending single   a -> k+1                      a' = k+1
    ascending pair     a -> k+2 -> k+1               a' = k+1
    descending single  k+1 -> d                      d' = k+1
    descending pair    k+1 -> k+2 -> d               d' = k+1

and the tour closes with a -> n -> d. One of a, d is always k or k-1, so
there are O(n) states per k and O(n^2) overall.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidN, NonFiniteCost, TooLarge
from .tours import (
    ASC, ASC_SB_BEGIN, ASC_SB_END, DESC, DESC_SB_BEGIN, DESC_SB_END,
    Tour, TourEncoding, decode, enumerate_psb,
)

BRUTEFORCE_MAX_N = 11


@dataclass(frozen=True)
class CostMatrix:
    """Arc costs c[u][v] for cities 1..n, stored 0-based; the diagonal is unused."""

    n: int
    c: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 3:
            raise InvalidN(f"city count must be an integer >= 3, got {self.n!r}")
        if len(self.c) != self.n or any(len(row) != self.n for row in self.c):
            raise ValueError(f"cost matrix must be {self.n}x{self.n}")
        for u, row in enumerate(self.c):
            for v, w in enumerate(row):
                if u != v and (not math.isfinite(w) or w < 0):
                    raise NonFiniteCost(f"cost ({u + 1},{v + 1}) = {w!r} is not a finite nonnegative number")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]]) -> CostMatrix:
        return cls(len(rows), tuple(tuple(row) for row in rows))

    @classmethod
    def parse(cls, text: str) -> CostMatrix:
        """First line n, then n lines of n whitespace-separated numbers."""
        lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
        if not lines or len(lines[0]) != 1:
            raise ValueError("cost file must start with a line holding n")
        n = int(lines[0][0])
        rows = lines[1:]
        if len(rows) != n:
            raise ValueError(f"expected {n} cost rows, got {len(rows)}")
        return cls.from_rows([[_number(tok) for tok in row] for row in rows])

    @classmethod
    def from_json(cls, obj: dict) -> CostMatrix:
        m = cls.from_rows(obj["costs"])
        if "n" in obj and int(obj["n"]) != m.n:
            raise ValueError(f"n={obj['n']} does not match a {m.n}x{m.n} cost matrix")
        return m

    def to_json(self) -> dict:
        return {"n": self.n, "costs": [list(row) for row in self.c]}

    def cost(self, u: int, v: int) -> float:
        return self.c[u - 1][v - 1]

    def tour_cost(self, t: Tour) -> float:
        """Sum of arc costs, accumulated in ascending order of the tail city."""
        total = 0
        for u, v in t.edges():
            total += self.c[u - 1][v - 1]
        return total


def _number(tok: str):
    try:
        return int(tok)
    except ValueError:
        return float(tok)


def solve_dp(cm: CostMatrix) -> tuple[Tour, float]:
    """Optimal PSB tour in O(n^2); ties go to the lexicographically least encoding."""
    n, c = cm.n, cm.c

    def w(u, v):
        return c[u - 1][v - 1]

    last = n - 1  # last city that carries a mark

    # forward pass: reachable states per stage k
    stages: list[set[tuple[int, int]]] = [set() for _ in range(n)]
    stages[1].add((1, 1))
    for k in range(1, last):
        for a, d in stages[k]:
            stages[k + 1].add((k + 1, d))
            stages[k + 1].add((a, k + 1))
            if k + 2 <= last:
                stages[k + 2].add((k + 1, d))
                stages[k + 2].add((a, k + 1))

    # backward pass: g[k][(a, d)] = cheapest completion
    g: list[dict[tuple[int, int], float]] = [dict() for _ in range(n)]
    for a, d in stages[last]:
        g[last][(a, d)] = w(a, n) + w(n, d)
    for k in range(last - 1, 0, -1):
        nxt1 = g[k + 1]
        nxt2 = g[k + 2] if k + 2 <= last else None
        cur = g[k]
        for a, d in stages[k]:
            best = math.inf
            for cost, _, _, _ in _moves(w, k, a, d, nxt1, nxt2):
                if cost < best:
                    best = cost
            cur[(a, d)] = best

    # forward reconstruction; _moves yields options in mark order
    marks = []
    k, a, d = 1, 1, 1
    while k < last:
        nxt2 = g[k + 2] if k + 2 <= last else None
        for cost, step_marks, k2, state in _moves(w, k, a, d, g[k + 1], nxt2):
            if cost == g[k][(a, d)]:
                marks += step_marks
                k, (a, d) = k2, state
                break
        else:  # pragma: no cover - the minimum is always attained
            raise AssertionError("DP reconstruction lost the optimum")
    tour = decode(TourEncoding(n, tuple(marks)))
    return tour, cm.tour_cost(tour)


def _moves(w, k, a, d, nxt1, nxt2):
    """(total cost, marks, next k, next state) for each move from (k, a, d)."""
    b = k + 1
    yield w(a, b) + nxt1[(b, d)], (ASC,), b, (b, d)
    if nxt2 is not None:
        yield w(a, b + 1) + w(b + 1, b) + nxt2[(b, d)], (ASC_SB_END, ASC_SB_BEGIN), b + 1, (b, d)
    yield w(b, d) + nxt1[(a, b)], (DESC,), b, (a, b)
    if nxt2 is not None:
        yield w(b, b + 1) + w(b + 1, d) + nxt2[(a, b)], (DESC_SB_BEGIN, DESC_SB_END), b + 1, (a, b)


def solve_bruteforce(cm: CostMatrix) -> tuple[Tour, float]:
    """Enumerate every PSB tour; the first minimum in lexicographic order wins."""
    if cm.n > BRUTEFORCE_MAX_N:
        raise TooLarge(f"brute force is limited to n <= {BRUTEFORCE_MAX_N}, got {cm.n}")
    best = None
    for e in enumerate_psb(cm.n):
        t = decode(e)
        cost = cm.tour_cost(t)
        if best is None or cost < best[1]:
            best = (t, cost)
    return best
