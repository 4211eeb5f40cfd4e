"""Combinatorial vertex-adjacency test for PSB(n).

Two PSB tours x, y are non-adjacent iff a pair of transition blocks (a left
block and a right block) cuts the encodings into three parts whose differences
allow another tour z to be assembled from x on one side and y on the other.
The test returns the witness pair (z, t) with z + t = x + y.

Both an exhaustive scan over all block pairs (cubic) and a linear-time scan
are provided; they return identical verdicts.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import IdenticalTours, InvalidBlockPair, SizeMismatch, WitnessAssemblyFailure
from .tours import (
    ASC, ASC_SB_BEGIN, ASC_SB_END, DESC, DESC_SB_BEGIN, DESC_SB_END,
    OrderMark, Tour, TourEncoding, decode, is_psb,
)


class BlockKind(enum.Enum):
    U11 = "U11"
    U00 = "U00"
    U1111 = "U1111"
    U0000 = "U0000"
    L1110 = "L1110"
    L1011 = "L1011"
    L0001 = "L0001"
    L0100 = "L0100"
    R1101 = "R1101"
    R0111 = "R0111"
    R0010 = "R0010"
    R1000 = "R1000"
    BOUNDARY_1 = "Boundary1"
    BOUNDARY_N = "BoundaryN"

    @property
    def width(self) -> int:
        return 1 if self in _SINGLE else 2


_SINGLE = {BlockKind.U11, BlockKind.U00, BlockKind.BOUNDARY_1, BlockKind.BOUNDARY_N}


@dataclass(frozen=True)
class Block:
    """A transition block; ``pos`` is its leftmost city.

    ``order`` is the common 0/1 order of the block's defining coordinate (the
    left one for L blocks, the right one for R blocks); None for the boundary
    cities 1 and n, which may play either order.
    """

    kind: BlockKind
    pos: int
    order: int | None

    @property
    def width(self) -> int:
        return self.kind.width

    @property
    def end(self) -> int:
        return self.pos + self.width - 1

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "pos": self.pos}


class CaseId(enum.IntEnum):
    CASE1 = 1  # left ascending, right ascending
    CASE2 = 2  # left descending, right descending
    CASE3 = 3  # left ascending, right descending
    CASE4 = 4  # left descending, right ascending


_CASE_ORDERS = {CaseId.CASE1: (1, 1), CaseId.CASE2: (0, 0), CaseId.CASE3: (1, 0), CaseId.CASE4: (0, 1)}


@dataclass(frozen=True)
class AdjacencyVerdict:
    adjacent: bool
    left: Block | None = None
    right: Block | None = None
    case: CaseId | None = None
    witness_z: Tour | None = None
    witness_t: Tour | None = None

    def to_json(self) -> dict:
        if self.adjacent:
            return {"adjacent": True}
        return {
            "adjacent": False,
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "case": int(self.case),
            "z": self.witness_z.cycle(),
            "t": self.witness_t.cycle(),
        }


# --- block patterns -------------------------------------------------------
#
# Rows are (x marks, y marks). A pattern entry is either a concrete mark or an
# order (0/1) for a tilde coordinate, which may or may not carry a step-back.

_ASC_PAIR = (ASC_SB_END, ASC_SB_BEGIN)
_DESC_PAIR = (DESC_SB_BEGIN, DESC_SB_END)

_DOUBLE_PATTERNS = {
    BlockKind.U1111: (_ASC_PAIR, _ASC_PAIR, 1),
    BlockKind.U0000: (_DESC_PAIR, _DESC_PAIR, 0),
    BlockKind.L1110: (_ASC_PAIR, (ASC, 0), 1),
    BlockKind.L1011: ((ASC, 0), _ASC_PAIR, 1),
    BlockKind.L0001: (_DESC_PAIR, (DESC, 1), 0),
    BlockKind.L0100: ((DESC, 1), _DESC_PAIR, 0),
    BlockKind.R1101: (_ASC_PAIR, (0, ASC), 1),
    BlockKind.R0111: ((0, ASC), _ASC_PAIR, 1),
    BlockKind.R0010: (_DESC_PAIR, (1, DESC), 0),
    BlockKind.R1000: ((1, DESC), _DESC_PAIR, 0),
}
_LEFT_DOUBLE = [BlockKind.U1111, BlockKind.U0000, BlockKind.L1110, BlockKind.L1011,
                BlockKind.L0001, BlockKind.L0100]
_RIGHT_DOUBLE = [BlockKind.U1111, BlockKind.U0000, BlockKind.R1101, BlockKind.R0111,
                 BlockKind.R0010, BlockKind.R1000]


def _entry_matches(entry, mark: OrderMark) -> bool:
    if isinstance(entry, OrderMark):
        return mark is entry
    return mark.order == entry


def _build_double_table(kinds):
    # (x_c, x_c+1, y_c, y_c+1) as mark ranks -> matching kind
    table = {}
    marks = list(OrderMark)
    for kind in kinds:
        px, py, _ = _DOUBLE_PATTERNS[kind]
        for a, b, c, d in itertools.product(marks, repeat=4):
            if all(_entry_matches(e, m) for e, m in zip(px + py, (a, b, c, d))):
                key = (a.rank, b.rank, c.rank, d.rank)
                assert key not in table, "block patterns overlap"
                table[key] = kind
    return table


_LEFT_TABLE = _build_double_table(_LEFT_DOUBLE)
_RIGHT_TABLE = _build_double_table(_RIGHT_DOUBLE)
_ASC_CODE, _DESC_CODE = ASC.rank, DESC.rank


def _codes(e: TourEncoding) -> list[int]:
    # 0..2 ascending marks, 3..5 descending marks
    rank = _RANKS
    return [rank[m] for m in e.marks]


_RANKS = {m: m.rank for m in OrderMark}


def _check_pair(x: TourEncoding, y: TourEncoding) -> None:
    if x.n != y.n:
        raise SizeMismatch(f"city counts differ: {x.n} vs {y.n}")


def find_blocks(x: TourEncoding, y: TourEncoding) -> tuple[list[Block], list[Block]]:
    """Candidate left and right blocks in ascending position order.

    The left list starts with the boundary city 1, the right list ends with
    the boundary city n.
    """
    _check_pair(x, y)
    n = x.n
    X, Y = _codes(x), _codes(y)
    left = [Block(BlockKind.BOUNDARY_1, 1, None)]
    right = []
    u11, u00 = BlockKind.U11, BlockKind.U00
    orders = {k: _DOUBLE_PATTERNS[k][2] for k in _DOUBLE_PATTERNS}
    for k in range(n - 2):
        a, b = X[k], Y[k]
        if a == b == _ASC_CODE:
            blk = Block(u11, k + 2, 1)
            left.append(blk)
            right.append(blk)
        elif a == b == _DESC_CODE:
            blk = Block(u00, k + 2, 0)
            left.append(blk)
            right.append(blk)
        elif k + 3 < n:
            key = (a, X[k + 1], b, Y[k + 1])
            kind = _LEFT_TABLE.get(key)
            if kind is not None:
                left.append(Block(kind, k + 2, orders[kind]))
            kind = _RIGHT_TABLE.get(key)
            if kind is not None:
                right.append(Block(kind, k + 2, orders[kind]))
    right.append(Block(BlockKind.BOUNDARY_N, n, None))
    return left, right


# --- case conditions ------------------------------------------------------

def _part_diffs(X: Sequence[int], Y: Sequence[int], ia: int, jb: int):
    """One pass over both encodings comparing the three parts.

    Returns (central 0/1 coincide, left differs, right differs, central
    ascending differs, central descending differs).
    """
    coincide, left, right, c_asc, c_desc = True, False, False, False, False
    c = 2
    for a, b in zip(X, Y):
        if c < ia:
            if a != b:
                left = True
        elif c > jb:
            if a != b:
                right = True
        elif a != b:
            if (a < 3) != (b < 3):
                coincide = False
            elif a < 3:
                c_asc = True
            else:
                c_desc = True
        c += 1
    return coincide, left, right, c_asc, c_desc


def _bounds(left: Block, right: Block) -> tuple[int, int]:
    """(i_a, j_b): first city after the left block, last city before the right one."""
    return left.pos + left.width, right.pos - 1


def _case_ok(case: int, left: bool, right: bool, c_asc: bool, c_desc: bool) -> bool:
    if case == 1:
        return c_asc and (left or c_desc or right)
    if case == 2:
        return c_desc and (left or c_asc or right)
    if case == 3:
        return (c_asc or right) and (c_desc or left)
    return (c_desc or right) and (c_asc or left)


# (left order, right order) -> cases in scan order; None stands for a boundary city
_CASES_BY_ORDERS = {
    (lo, ro): tuple(c for c in CaseId
                    if lo in (None, _CASE_ORDERS[c][0]) and ro in (None, _CASE_ORDERS[c][1]))
    for lo in (None, 0, 1) for ro in (None, 0, 1)
}


def _passing_case(X, Y, left: Block, right: Block) -> CaseId | None:
    ia = left.pos + left.width
    jb = right.pos - 1
    if jb < ia - 1:
        raise InvalidBlockPair(
            f"right block at {right.pos} does not lie right of left block at {left.pos}")
    coincide, ld, rd, ca, cd = _part_diffs(X, Y, ia, jb)
    if coincide:
        for case in _CASES_BY_ORDERS[left.order, right.order]:
            if _case_ok(case, ld, rd, ca, cd):
                return case
    return None


def passing_case(x: TourEncoding, y: TourEncoding, left: Block, right: Block) -> CaseId | None:
    """First case (1..4) whose conditions hold for the block pair, else None."""
    _check_pair(x, y)
    return _passing_case(_codes(x), _codes(y), left, right)


def check_case_conditions(x: TourEncoding, y: TourEncoding, left: Block, right: Block) -> bool:
    return passing_case(x, y, left, right) is not None


# --- witness --------------------------------------------------------------

def construct_witness(x: TourEncoding, y: TourEncoding, left: Block, right: Block,
                      case: CaseId) -> tuple[Tour, Tour]:
    """Assemble z from pieces of x and y, and t as the rest of x ∪ y."""
    _check_pair(x, y)
    n = x.n
    ia, jb = _bounds(left, right)
    X, Y = x.marks, y.marks
    asc_src = Y if case in (CaseId.CASE1, CaseId.CASE3) else X
    desc_src = X if case in (CaseId.CASE1, CaseId.CASE3) else Y
    right_src = X if case in (CaseId.CASE1, CaseId.CASE2) else Y
    lo, hi = max(ia, 2) - 2, min(jb, n - 1) - 1
    marks = list(X[:lo])
    for k in range(lo, hi):
        marks.append(asc_src[k] if X[k].order else desc_src[k])
    marks += right_src[max(hi, lo):]
    try:
        z = decode(TourEncoding(n, tuple(marks)))
    except ValueError as exc:
        raise WitnessAssemblyFailure(f"witness z is not a valid encoding: {exc}") from exc
    tx, ty = decode(x), decode(y)
    t = complement(tx, ty, z)
    if t is None or not is_psb(t) or z in (tx, ty):
        raise WitnessAssemblyFailure(
            f"blocks {left.kind.value}@{left.pos}, {right.kind.value}@{right.pos}, case {int(case)} "
            f"do not split x ∪ y into two new PSB tours")
    return z, t


def complement(x: Tour, y: Tour, z: Tour) -> Tour | None:
    """(x ∪ y) minus z as a tour, or None if z is not inside x ∪ y or the rest is no tour."""
    succ = []
    for a, b, c in zip(x.succ, y.succ, z.succ):
        if c == a:
            succ.append(b)
        elif c == b:
            succ.append(a)
        else:
            return None
    try:
        return Tour(x.n, tuple(succ))
    except ValueError:
        return None


# --- tests ----------------------------------------------------------------

def _validate(x: TourEncoding, y: TourEncoding) -> None:
    _check_pair(x, y)
    if x == y:
        raise IdenticalTours("adjacency is only defined for two distinct tours")


def _verdict(x, y, left, right, case) -> AdjacencyVerdict:
    z, t = construct_witness(x, y, left, right, case)
    return AdjacencyVerdict(False, left, right, case, z, t)


def scan_order(lefts: list[Block], rights: list[Block]) -> tuple[list[Block], list[Block]]:
    """Block order used by both tests: real blocks by position, boundary cities last."""
    real = [b for b in lefts if b.kind is not BlockKind.BOUNDARY_1]
    return real + [b for b in lefts if b.kind is BlockKind.BOUNDARY_1], rights


def test_nonadjacent_exhaustive(x: TourEncoding, y: TourEncoding) -> AdjacencyVerdict:
    """Try every (left, right) block pair with a full O(n) pass for each."""
    _validate(x, y)
    X, Y = _codes(x), _codes(y)
    lefts, rights = scan_order(*find_blocks(x, y))
    for left in lefts:
        for right in rights:
            if right.pos < left.pos + left.width:
                continue
            case = _passing_case(X, Y, left, right)
            if case is not None:
                return _verdict(x, y, left, right, case)
    return AdjacencyVerdict(True)


_INF = float("inf")


def _intersect(a, b):
    out = []
    for lo1, hi1 in a:
        for lo2, hi2 in b:
            lo, hi = max(lo1, lo2), min(hi1, hi2)
            if lo <= hi:
                out.append((lo, hi))
    return out


def _case_sets(A, D, M, ld):
    """For each case, intervals of j_b on which its difference conditions hold.

    ``A``/``D``: first ascending/descending central mismatch at or after i_a;
    ``M``: last mismatching city overall; ``ld``: the left part differs.
    """
    ca, cd = [(A, _INF)], [(D, _INF)]
    rd = [(-_INF, M - 1)]
    lft = [(-_INF, _INF)] if ld else []
    return {
        CaseId.CASE1: _intersect(ca, lft + cd + rd),
        CaseId.CASE2: _intersect(cd, lft + ca + rd),
        CaseId.CASE3: _intersect(ca + rd, cd + lft),
        CaseId.CASE4: _intersect(cd + rd, ca + lft),
    }


def test_nonadjacent_linear(x: TourEncoding, y: TourEncoding) -> AdjacencyVerdict:
    """Linear-time test returning exactly the verdict of the exhaustive scan.

    Suffix tables give, for any i_a, the first ascending/descending mismatch
    and the first 0/1 disagreement; for a fixed left block each case's
    condition is then a union of at most four j_b intervals, and the nearest
    right block of the right order inside them comes from another suffix
    table. Every left block costs O(1) after O(n) preprocessing.
    """
    _validate(x, y)
    n = x.n
    X, Y = _codes(x), _codes(y)
    lefts, rights = scan_order(*find_blocks(x, y))

    # next_*[c]: smallest city >= c with the property, n if none (c in 2..n)
    next_asc = [n] * (n + 1)
    next_desc = [n] * (n + 1)
    next_ord = [n] * (n + 1)
    last_mis = 0
    for c in range(n - 1, 1, -1):
        a, b = X[c - 2], Y[c - 2]
        next_asc[c], next_desc[c], next_ord[c] = next_asc[c + 1], next_desc[c + 1], next_ord[c + 1]
        if a != b:
            if not last_mis:
                last_mis = c
            if (a < 3) != (b < 3):
                next_ord[c] = c
            elif a < 3:
                next_asc[c] = c
            else:
                next_desc[c] = c
    # prefix: first mismatching city
    first_mis = next((c for c in range(2, n) if X[c - 2] != Y[c - 2]), n)

    # right_at[o][jb]: smallest jb' >= jb with a right block of order o (or a
    # boundary) at position jb' + 1
    by_pos: dict[int, Block] = {b.pos: b for b in rights}
    right_at = {0: [n] * (n + 1), 1: [n] * (n + 1)}
    for jb in range(n - 1, -1, -1):
        for o in (0, 1):
            right_at[o][jb] = right_at[o][jb + 1]
        b = by_pos.get(jb + 1)
        if b is not None:
            for o in (0, 1):
                if b.order in (None, o):
                    right_at[o][jb] = jb

    for left in lefts:
        ia = left.pos + left.width
        lo_bound = ia - 1
        # ia <= n for every block, so the suffix tables are defined there
        hi_bound = next_ord[ia] - 1
        A, D = next_asc[ia], next_desc[ia]
        ld = first_mis < ia
        best = None
        for case, ivs in _case_sets(A, D, last_mis, ld).items():
            lo_o, ro = _CASE_ORDERS[case]
            if left.order not in (None, lo_o):
                continue
            for lo, hi in ivs:
                lo = max(lo, lo_bound)
                hi = min(hi, hi_bound)
                if lo > hi:
                    continue
                jb = right_at[ro][int(lo)]
                if jb <= hi and (best is None or jb < best):
                    best = jb
        if best is not None:
            right = by_pos[best + 1]
            case = _passing_case(X, Y, left, right)
            if case is None:
                raise WitnessAssemblyFailure("linear scan selected a failing block pair")
            return _verdict(x, y, left, right, case)
    return AdjacencyVerdict(True)


# keep pytest from collecting the library functions as tests
test_nonadjacent_exhaustive.__test__ = False
test_nonadjacent_linear.__test__ = False
