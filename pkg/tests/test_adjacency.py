import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from psbtours import (
    IdenticalTours, InvalidBlockPair, SizeMismatch, Tour, TourEncoding, decode, encode, enumerate_psb,
    is_psb, random_encoding,
)
from psbtours.adjacency import (
    Block, BlockKind, CaseId, check_case_conditions, complement, construct_witness, find_blocks,
    passing_case, test_nonadjacent_exhaustive as exhaustive, test_nonadjacent_linear as linear,
)
from psbtours.oracle import char_vector, oracle_nonadjacent, union

LEFT = ("1 1e 1b 1 1", "1 1 1 1 0")
RIGHT = ("1 0 0 1 0", "1 0b 0e 0b 0e")


def encs(pair):
    return tuple(TourEncoding.parse(s) for s in pair)


def kinds_at(blocks):
    return {(b.kind, b.pos) for b in blocks}


def test_blocks_left_example():
    x, y = encs(LEFT)
    lefts, rights = find_blocks(x, y)
    assert {(BlockKind.U11, 2), (BlockKind.U11, 5)} <= kinds_at(lefts)
    assert {(BlockKind.U11, 2), (BlockKind.U11, 5)} <= kinds_at(rights)
    assert lefts[0].kind is BlockKind.BOUNDARY_1
    assert rights[-1].kind is BlockKind.BOUNDARY_N


def test_blocks_right_example():
    x, y = encs(RIGHT)
    lefts, rights = find_blocks(x, y)
    assert (BlockKind.U11, 2) in kinds_at(lefts)
    assert (BlockKind.R1000, 5) in kinds_at(rights)
    r = next(b for b in rights if b.pos == 5 and b.kind is BlockKind.R1000)
    assert (r.pos, r.end) == (5, 6)


def test_block_sides():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(3, 30)
        lefts, rights = find_blocks(random_encoding(n, rng), random_encoding(n, rng))
        assert not any(b.kind.value.startswith("R") for b in lefts)
        assert not any(b.kind.value.startswith("L") for b in rights)


def test_case_conditions_left_example():
    x, y = encs(LEFT)
    l, r = Block(BlockKind.U11, 2, 1), Block(BlockKind.U11, 5, 1)
    assert check_case_conditions(x, y, l, r)
    assert passing_case(x, y, l, r) is CaseId.CASE1


def test_case_conditions_right_example():
    x, y = encs(RIGHT)
    l, r = Block(BlockKind.U11, 2, 1), Block(BlockKind.R1000, 5, 0)
    assert check_case_conditions(x, y, l, r)
    assert passing_case(x, y, l, r) is CaseId.CASE3


def test_case_conditions_small_pair_fail():
    x, y = TourEncoding.parse("1 1"), TourEncoding.parse("0 0")
    lefts, rights = find_blocks(x, y)
    for l in lefts:
        for r in rights:
            try:
                assert not check_case_conditions(x, y, l, r)
            except InvalidBlockPair:
                pass


def test_inverted_blocks_rejected():
    x, y = encs(LEFT)
    with pytest.raises(InvalidBlockPair):
        check_case_conditions(x, y, Block(BlockKind.U11, 5, 1), Block(BlockKind.U11, 2, 1))


def test_witness_left_example():
    x, y = encs(LEFT)
    z, t = construct_witness(x, y, Block(BlockKind.U11, 2, 1), Block(BlockKind.U11, 5, 1), CaseId.CASE1)
    assert str(encode(z)) == "1 1 1 1 1"
    assert str(encode(t)) == "1 1e 1b 1 0"


def test_witness_right_example():
    x, y = encs(RIGHT)
    z, t = construct_witness(x, y, Block(BlockKind.U11, 2, 1), Block(BlockKind.R1000, 5, 0), CaseId.CASE3)
    assert str(z) == "1,2,7,5,6,4,3"
    assert str(t) == "1,2,5,7,6,3,4"


@pytest.mark.parametrize("test", [exhaustive, linear])
def test_verdicts_on_examples(test):
    x, y = encs(LEFT)
    v = test(x, y)
    assert not v.adjacent and v.case is CaseId.CASE1
    assert str(v.witness_z) == "1,2,3,4,5,6,7"
    x, y = encs(RIGHT)
    v = test(x, y)
    assert not v.adjacent and v.case is CaseId.CASE3
    assert (v.left.kind, v.left.pos, v.right.kind, v.right.pos) == (BlockKind.U11, 2, BlockKind.R1000, 5)
    assert str(v.witness_z) == "1,2,7,5,6,4,3"


def test_verdict_json():
    x, y = encs(RIGHT)
    j = linear(x, y).to_json()
    assert j["adjacent"] is False
    assert j["left"] == {"kind": "U11", "pos": 2}
    assert j["right"] == {"kind": "R1000", "pos": 5}
    assert j["case"] == 3
    adj = linear(TourEncoding.parse("1 1"), TourEncoding.parse("0 0")).to_json()
    assert adj["adjacent"] is True and "left" not in adj


def test_complement():
    x, y = (decode(e) for e in encs(LEFT))
    t = complement(x, y, Tour.parse("1,2,3,4,5,6,7"))
    assert t == Tour.parse("1,2,4,3,5,7,6")
    assert complement(x, y, Tour.parse("1,3,2,4,5,6,7")) is None


def _check_witness(x, y, v):
    z, t = v.witness_z, v.witness_t
    assert is_psb(z) and is_psb(t)
    assert char_vector(z) + char_vector(t) == union(decode(x), decode(y))
    assert {z, t} != {decode(x), decode(y)}


@pytest.mark.parametrize("n", [4, 5, 6])
def test_all_pairs_against_oracle(n):
    for x, y in itertools.combinations(list(enumerate_psb(n)), 2):
        v = exhaustive(x, y)
        assert linear(x, y) == v
        assert (not v.adjacent) == oracle_nonadjacent(decode(x), decode(y))
        if not v.adjacent:
            _check_witness(x, y, v)


@pytest.mark.parametrize("n, edges", [(3, 1), (4, 15), (5, 120), (6, 910)])
def test_adjacent_pair_counts(n, edges):
    vs = list(enumerate_psb(n))
    assert sum(linear(x, y).adjacent for x, y in itertools.combinations(vs, 2)) == edges


@settings(max_examples=300, deadline=None)
@given(st.integers(3, 60), st.integers(0, 2**32), st.floats(0.0, 0.9))
def test_linear_matches_exhaustive(n, seed, rate):
    rng = random.Random(seed)
    x, y = random_encoding(n, rng, rate), random_encoding(n, rng, rate)
    if x == y:
        return
    v = exhaustive(x, y)
    assert linear(x, y) == v
    assert exhaustive(y, x).adjacent == v.adjacent
    if not v.adjacent:
        _check_witness(x, y, v)


def test_near_identical_pairs():
    # pairs differing in a single coordinate exercise narrow central parts
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randint(4, 40)
        x = random_encoding(n, rng)
        toks = x.tokens()
        i = rng.randrange(len(toks))
        if toks[i] in ("1", "0"):
            toks[i] = "0" if toks[i] == "1" else "1"
        y = TourEncoding.from_tokens(toks)
        if x != y:
            assert linear(x, y) == exhaustive(x, y)


def test_errors():
    x = TourEncoding.parse("1 0 1")
    with pytest.raises(IdenticalTours):
        linear(x, x)
    with pytest.raises(IdenticalTours):
        exhaustive(x, x)
    with pytest.raises(SizeMismatch):
        linear(x, TourEncoding.parse("1 0"))
