"""Pyramidal tours with step-backs: tours, peaks, the 0/1/sb encoding.

Cities are numbered 1..n. A tour is a directed Hamiltonian cycle stored as a
successor map; the encoding assigns each city 2..n-1 an order mark.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import InvalidN, InvalidTour, MalformedEncoding, NotPsb


def check_n(n: int) -> None:
    if not isinstance(n, int) or n < 3:
        raise InvalidN(f"city count must be an integer >= 3, got {n!r}")


def _is_permutation(values: Sequence[int]) -> bool:
    n = len(values)
    seen = bytearray(n + 1)
    for v in values:
        if not 1 <= v <= n or seen[v]:
            return False
        seen[v] = 1
    return True


@dataclass(frozen=True)
class Tour:
    """Directed Hamiltonian cycle on cities 1..n.

    ``succ[i - 1]`` is the successor of city ``i``. Tours are rooted at city 1
    and oriented, so two tours are equal iff their successor maps are equal.
    """

    n: int
    succ: tuple[int, ...]

    def __post_init__(self):
        check_n(self.n)
        if len(self.succ) != self.n or not _is_permutation(self.succ):
            raise InvalidTour("successor map is not a permutation of 1..n")
        # one cycle through all cities
        seen, city = 0, 1
        while True:
            city = self.succ[city - 1]
            seen += 1
            if city == 1:
                break
        if seen != self.n:
            raise InvalidTour("successor map is not a single Hamiltonian cycle")

    @classmethod
    def from_cycle(cls, cities: Sequence[int]) -> Tour:
        cities = list(cities)
        n = len(cities)
        check_n(n)
        if cities[0] != 1:
            raise InvalidTour("city sequence must start at city 1")
        if not _is_permutation(cities):
            raise InvalidTour("city sequence must visit each of 1..n exactly once")
        succ = [0] * n
        for a, b in zip(cities, cities[1:] + cities[:1]):
            succ[a - 1] = b
        return cls(n, tuple(succ))

    @classmethod
    def parse(cls, text: str) -> Tour:
        """Parse the comma-separated form, e.g. ``1,2,5,4,7,8,6,3``."""
        try:
            cities = [int(tok) for tok in text.replace(" ", "").split(",") if tok]
        except ValueError as exc:
            raise InvalidTour(f"bad tour text {text!r}") from exc
        if len(cities) < 3:
            raise InvalidN(f"city count must be an integer >= 3, got {len(cities)}")
        return cls.from_cycle(cities)

    def cycle(self) -> list[int]:
        """City sequence starting at 1 (the closing return to 1 is implicit)."""
        out = [1]
        city = self.succ[0]
        while city != 1:
            out.append(city)
            city = self.succ[city - 1]
        return out

    def __str__(self) -> str:
        return ",".join(map(str, self.cycle()))

    def next(self, i: int, k: int = 1) -> int:
        for _ in range(k):
            i = self.succ[i - 1]
        return i

    def pred_map(self) -> tuple[int, ...]:
        pred = [0] * self.n
        for i, s in enumerate(self.succ, start=1):
            pred[s - 1] = i
        return tuple(pred)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, s) for i, s in enumerate(self.succ, start=1)]


class OrderMark(enum.Enum):
    """Per-city order mark; the value is the text token."""

    ASC = "1"
    ASC_SB_END = "1e"
    ASC_SB_BEGIN = "1b"
    DESC = "0"
    DESC_SB_BEGIN = "0b"
    DESC_SB_END = "0e"

    @property
    def order(self) -> int:
        return 1 if self in _ASCENDING else 0

    @property
    def is_stepback(self) -> bool:
        return self not in (OrderMark.ASC, OrderMark.DESC)

    @property
    def rank(self) -> int:
        return _RANK[self]

    def __lt__(self, other):
        if not isinstance(other, OrderMark):
            return NotImplemented
        return _RANK[self] < _RANK[other]


ASC, ASC_SB_END, ASC_SB_BEGIN = OrderMark.ASC, OrderMark.ASC_SB_END, OrderMark.ASC_SB_BEGIN
DESC, DESC_SB_BEGIN, DESC_SB_END = OrderMark.DESC, OrderMark.DESC_SB_BEGIN, OrderMark.DESC_SB_END

_ASCENDING = frozenset({ASC, ASC_SB_END, ASC_SB_BEGIN})
# enumeration order: Asc < AscSbEnd < AscSbBegin < Desc < DescSbBegin < DescSbEnd
_RANK = {m: r for r, m in enumerate(
    [ASC, ASC_SB_END, ASC_SB_BEGIN, DESC, DESC_SB_BEGIN, DESC_SB_END])}
_BY_TOKEN = {m.value: m for m in OrderMark}
# first mark of a step-back pair -> second mark
_PAIR = {ASC_SB_END: ASC_SB_BEGIN, DESC_SB_BEGIN: DESC_SB_END}


def check_marks(marks: Sequence[OrderMark]) -> None:
    """Raise MalformedEncoding unless every step-back mark sits in an adjacent pair."""
    k = 0
    while k < len(marks):
        m = marks[k]
        if not isinstance(m, OrderMark):
            raise MalformedEncoding(f"not an order mark: {m!r}")
        if m in _PAIR:
            if k + 1 >= len(marks) or marks[k + 1] is not _PAIR[m]:
                raise MalformedEncoding(
                    f"step-back mark {m.value!r} at city {k + 2} is not followed by "
                    f"{_PAIR[m].value!r}")
            k += 2
        elif m in (ASC_SB_BEGIN, DESC_SB_END):
            raise MalformedEncoding(f"step-back mark {m.value!r} at city {k + 2} has no partner")
        else:
            k += 1


@dataclass(frozen=True)
class TourEncoding:
    """Order marks for cities 2..n-1; ``marks[k]`` belongs to city ``k + 2``."""

    n: int
    marks: tuple[OrderMark, ...]

    def __post_init__(self):
        check_n(self.n)
        if not isinstance(self.marks, tuple):
            object.__setattr__(self, "marks", tuple(self.marks))
        if len(self.marks) != self.n - 2:
            raise MalformedEncoding(
                f"encoding for n={self.n} needs {self.n - 2} marks, got {len(self.marks)}")
        check_marks(self.marks)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> TourEncoding:
        """Parse space-separated tokens such as ``1 0 1e 1b 0 1``."""
        tokens = text.replace(",", " ").split()
        return cls.from_tokens(tokens, n)

    @classmethod
    def from_tokens(cls, tokens: Sequence[str], n: int | None = None) -> TourEncoding:
        try:
            marks = tuple(_BY_TOKEN[str(t)] for t in tokens)
        except KeyError as exc:
            raise MalformedEncoding(f"unknown mark token {exc.args[0]!r}") from None
        if n is None:
            n = len(marks) + 2
        return cls(n, marks)

    @classmethod
    def from_json(cls, obj: dict) -> TourEncoding:
        return cls.from_tokens(obj["marks"], int(obj["n"]))

    def to_json(self) -> dict:
        return {"n": self.n, "marks": self.tokens()}

    def tokens(self) -> list[str]:
        return [m.value for m in self.marks]

    def __str__(self) -> str:
        return " ".join(self.tokens())

    def __getitem__(self, city: int) -> OrderMark:
        """Mark of ``city`` (2..n-1)."""
        if not 2 <= city <= self.n - 1:
            raise IndexError(city)
        return self.marks[city - 2]

    def orders(self) -> tuple[int, ...]:
        return tuple(m.order for m in self.marks)

    def sort_key(self) -> tuple[int, ...]:
        return tuple(_RANK[m] for m in self.marks)


class PeakKind(enum.Enum):
    PROPER = "proper"
    ASC_STEP_BACK = "asc_step_back"
    DESC_STEP_BACK = "desc_step_back"


@dataclass(frozen=True)
class Peak:
    city: int
    kind: PeakKind


def classify_peaks(t: Tour) -> list[Peak]:
    """All peaks of ``t`` in increasing city order, with their kinds."""
    pred = t.pred_map()
    succ = t.succ
    peaks = []
    for i in range(2, t.n + 1):
        p, s = pred[i - 1], succ[i - 1]
        if not (p < i and s < i):
            continue
        if s == i - 1 and succ[s - 1] > i:
            kind = PeakKind.ASC_STEP_BACK
        elif p == i - 1 and pred[p - 1] > i:
            kind = PeakKind.DESC_STEP_BACK
        else:
            kind = PeakKind.PROPER
        peaks.append(Peak(i, kind))
    return peaks


def is_psb(t: Tour) -> bool:
    proper = [p.city for p in classify_peaks(t) if p.kind is PeakKind.PROPER]
    return proper == [t.n]


def encode(t: Tour) -> TourEncoding:
    if not is_psb(t):
        raise NotPsb(f"tour {t} is not a pyramidal tour with step-backs")
    seq = t.cycle()
    top = seq.index(t.n)
    marks: dict[int, OrderMark] = {}
    up, down = seq[1:top], seq[top + 1:]
    for a, b in zip(up, up[1:]):
        if b == a - 1:
            marks[b], marks[a] = ASC_SB_END, ASC_SB_BEGIN
    for a, b in zip(down, down[1:]):
        if b == a + 1:
            marks[a], marks[b] = DESC_SB_BEGIN, DESC_SB_END
    for c in up:
        marks.setdefault(c, ASC)
    for c in down:
        marks.setdefault(c, DESC)
    return TourEncoding(t.n, tuple(marks[c] for c in range(2, t.n)))


def chains(e: TourEncoding) -> tuple[list[int], list[int]]:
    """Ascending chain (1 .. n) and descending chain (n .. 1) of the decoded tour."""
    n, marks = e.n, e.marks
    up = [1]
    units: list[tuple[int, ...]] = []
    k = 0
    while k < n - 2:
        city, m = k + 2, marks[k]
        if m is ASC:
            up.append(city)
        elif m is ASC_SB_END:
            up += [city + 1, city]
            k += 1
        elif m is DESC:
            units.append((city,))
        elif m is DESC_SB_BEGIN:
            units.append((city, city + 1))
            k += 1
        else:
            raise MalformedEncoding(f"unpaired step-back mark at city {city}")
        k += 1
    up.append(n)
    down = [n]
    for u in reversed(units):
        down += u
    down.append(1)
    return up, down


def decode(e: TourEncoding) -> Tour:
    up, down = chains(e)
    return Tour.from_cycle(up + down[1:-1])


def count_psb(n: int) -> int:
    """Number of PSB tours on n cities, without enumerating them."""
    check_n(n)
    # a(m): mark sequences of length m; each slot is a single (2 ways) or a pair (2 ways)
    prev, cur = 1, 2
    for _ in range(n - 3):
        prev, cur = cur, 2 * cur + 2 * prev
    return cur


def enumerate_psb(n: int) -> Iterator[TourEncoding]:
    """Yield every PSB encoding for n cities in lexicographic mark order."""
    check_n(n)
    length = n - 2
    buf: list[OrderMark] = []

    def rec(k: int) -> Iterator[TourEncoding]:
        if k == length:
            yield TourEncoding(n, tuple(buf))
            return
        pair_fits = k + 1 < length
        for first in (ASC, ASC_SB_END, DESC, DESC_SB_BEGIN):
            if first in _PAIR:
                if not pair_fits:
                    continue
                buf.extend((first, _PAIR[first]))
                yield from rec(k + 2)
                del buf[-2:]
            else:
                buf.append(first)
                yield from rec(k + 1)
                buf.pop()

    yield from rec(0)


def random_encoding(n: int, rng: random.Random | None = None, stepback_rate: float = 0.3) -> TourEncoding:
    """Random valid encoding; not uniform over PSB tours."""
    check_n(n)
    rng = rng or random.Random()
    marks: list[OrderMark] = []
    length = n - 2
    while len(marks) < length:
        if len(marks) + 1 < length and rng.random() < stepback_rate:
            first = ASC_SB_END if rng.random() < 0.5 else DESC_SB_BEGIN
            marks += [first, _PAIR[first]]
        else:
            marks.append(ASC if rng.random() < 0.5 else DESC)
    return TourEncoding(n, tuple(marks))
