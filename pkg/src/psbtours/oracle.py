"""Characteristic vectors, tour unions and the brute-force adjacency oracle.

Two vertices x, y of PSB(n) are non-adjacent exactly when the multigraph x ∪ y
splits into another pair of PSB tours z, t with x + y = z + t. The search here
walks every Hamiltonian cycle of the union; it is exponential and meant for
small n only.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

from .errors import SizeMismatch
from .tours import Tour, is_psb


@dataclass(frozen=True)
class EdgeMultiset:
    n: int
    counts: Counter = field(compare=False)

    def __post_init__(self):
        # drop zero entries so that equality only sees the support
        object.__setattr__(self, "counts", Counter({e: m for e, m in self.counts.items() if m}))

    def __eq__(self, other):
        if not isinstance(other, EdgeMultiset):
            return NotImplemented
        return self.n == other.n and self.counts == other.counts

    def __hash__(self):
        return hash((self.n, frozenset(self.counts.items())))

    def __add__(self, other: EdgeMultiset) -> EdgeMultiset:
        _same_n(self.n, other.n)
        return EdgeMultiset(self.n, self.counts + other.counts)

    def __sub__(self, other: EdgeMultiset) -> EdgeMultiset:
        """Multiset difference; raises ValueError if ``other`` is not contained."""
        _same_n(self.n, other.n)
        if any(self.counts[e] < m for e, m in other.counts.items()):
            raise ValueError("subtrahend is not a sub-multiset")
        return EdgeMultiset(self.n, self.counts - other.counts)

    def __contains__(self, edge) -> bool:
        return self.counts[edge] > 0

    def total(self) -> int:
        return sum(self.counts.values())

    def multiplicity(self, u: int, v: int) -> int:
        return self.counts[(u, v)]

    def items(self) -> list[tuple[int, int, int]]:
        return [(u, v, m) for (u, v), m in sorted(self.counts.items())]

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(t) for t in self.items()]}

    @classmethod
    def from_json(cls, obj: dict) -> EdgeMultiset:
        return cls(int(obj["n"]), Counter({(u, v): m for u, v, m in obj["edges"]}))

    def as_tour(self) -> Tour | None:
        """The tour whose characteristic vector this is, or None."""
        if self.total() != self.n or any(m != 1 for m in self.counts.values()):
            return None
        succ = [0] * self.n
        for u, v in self.counts:
            if succ[u - 1]:
                return None
            succ[u - 1] = v
        try:
            return Tour(self.n, tuple(succ))
        except ValueError:
            return None


def _same_n(a: int, b: int) -> None:
    if a != b:
        raise SizeMismatch(f"city counts differ: {a} vs {b}")


def char_vector(t: Tour) -> EdgeMultiset:
    return EdgeMultiset(t.n, Counter(t.edges()))


def union(x: Tour, y: Tour) -> EdgeMultiset:
    _same_n(x.n, y.n)
    return char_vector(x) + char_vector(y)


def hamiltonian_cycles(g: EdgeMultiset, psb_only: bool = True) -> Iterator[Tour]:
    """Hamiltonian cycles using edges of ``g``, each yielded once.

    With ``psb_only`` the walk from city 1 is pruned to moves a PSB tour can
    make: before reaching n only upward steps or a single step back by one,
    after n only downward steps or a single step up by one.
    """
    n = g.n
    out: dict[int, list[int]] = {}
    for (u, v) in sorted(g.counts):
        out.setdefault(u, []).append(v)
    path = [1]
    visited = bytearray(n + 1)
    visited[1] = 1

    def rec(city: int, past_top: bool) -> Iterator[Tour]:
        if len(path) == n:
            if 1 in out.get(city, ()):
                t = Tour.from_cycle(path)
                if not psb_only or is_psb(t):
                    yield t
            return
        for nxt in out.get(city, ()):
            if visited[nxt]:
                continue
            if psb_only:
                if not past_top and nxt < city - 1:
                    continue
                if past_top and nxt > city + 1:
                    continue
            visited[nxt] = 1
            path.append(nxt)
            yield from rec(nxt, past_top or nxt == n)
            path.pop()
            visited[nxt] = 0

    yield from rec(1, False)


def complementary_pairs(x: Tour, y: Tour) -> list[tuple[Tour, Tour]]:
    """All unordered pairs {z, t} != {x, y} of PSB tours with z + t = x + y.

    Each pair is reported once, ordered so that ``z`` has the smaller cycle.
    """
    _same_n(x.n, y.n)
    u = union(x, y)
    pairs = {}
    for z in hamiltonian_cycles(u):
        rest = (u - char_vector(z)).as_tour()
        if rest is None or not is_psb(rest):
            continue
        key = frozenset((z, rest))
        if key == frozenset((x, y)) or key in pairs:
            continue
        pairs[key] = tuple(sorted((z, rest), key=lambda t: t.cycle()))
    return sorted(pairs.values(), key=lambda p: (p[0].cycle(), p[1].cycle()))


def oracle_nonadjacent(x: Tour, y: Tour) -> bool:
    """Ground-truth non-adjacency of x and y in PSB(n) (exponential)."""
    _same_n(x.n, y.n)
    u = union(x, y)
    for z in hamiltonian_cycles(u):
        if z == x or z == y:
            continue
        rest = (u - char_vector(z)).as_tour()
        if rest is not None and is_psb(rest):
            return True
    return False
