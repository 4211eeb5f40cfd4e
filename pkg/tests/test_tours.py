import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from psbtours import (
    InvalidN, InvalidTour, MalformedEncoding, NotPsb, OrderMark, PeakKind, Tour, TourEncoding,
    classify_peaks, count_psb, decode, encode, enumerate_psb, is_psb, random_encoding,
)
from psbtours.tours import chains

from conftest import psb_by_filter

WORKED_TOUR = "1,2,5,4,7,8,6,3"
WORKED_ENC = "1 0 1e 1b 0 1"


def test_worked_tour_encodes():
    assert str(encode(Tour.parse(WORKED_TOUR))) == WORKED_ENC


def test_worked_tour_decodes():
    assert str(decode(TourEncoding.parse(WORKED_ENC))) == WORKED_TOUR


def test_worked_tour_peaks():
    peaks = {p.city: p.kind for p in classify_peaks(Tour.parse(WORKED_TOUR))}
    assert peaks == {5: PeakKind.ASC_STEP_BACK, 8: PeakKind.PROPER}


def test_chains_of_worked_tour():
    asc, desc = chains(TourEncoding.parse(WORKED_ENC))
    assert asc[0] == 1 and desc[-1] == 1


def test_descending_step_back():
    t = Tour.from_cycle([1, 2, 5, 3, 4, 1][:-1])
    assert is_psb(t)
    assert str(encode(t)) == "1 0b 0e"


def test_non_psb_rejected():
    t = Tour.from_cycle([1, 4, 2, 5, 3])
    assert not is_psb(t)
    with pytest.raises(NotPsb):
        encode(t)


@pytest.mark.parametrize("n, count", [(3, 2), (4, 6), (5, 16), (6, 44), (7, 120), (8, 328), (9, 896)])
def test_counts(n, count):
    assert count_psb(n) == count
    assert sum(1 for _ in enumerate_psb(n)) == count


@pytest.mark.parametrize("n", range(3, 9))
def test_enumeration_matches_filter(n):
    ours = {decode(e) for e in enumerate_psb(n)}
    assert ours == set(psb_by_filter(n))


def test_enumeration_order_is_lexicographic():
    encs = list(enumerate_psb(7))
    keys = [e.sort_key() for e in encs]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)


def test_mark_order():
    order = ["1", "1e", "1b", "0", "0b", "0e"]
    marks = [OrderMark(t) for t in order]
    assert sorted(reversed(marks)) == marks


@settings(max_examples=200, deadline=None)
@given(st.integers(3, 40), st.integers(0, 2**32))
def test_round_trip(n, seed):
    e = random_encoding(n, random.Random(seed))
    t = decode(e)
    assert is_psb(t)
    assert encode(t) == e
    assert decode(encode(t)) == t


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 30), st.integers(0, 2**32))
def test_text_and_json_round_trip(n, seed):
    e = random_encoding(n, random.Random(seed))
    assert TourEncoding.parse(str(e)) == e
    assert TourEncoding.from_json(json.loads(json.dumps(e.to_json()))) == e
    t = decode(e)
    assert Tour.parse(str(t)) == t


def test_only_proper_peak_is_n():
    for e in enumerate_psb(8):
        proper = [p.city for p in classify_peaks(decode(e)) if p.kind is PeakKind.PROPER]
        assert proper == [8]


@pytest.mark.parametrize("text", [
    "1 1b 0",      # begin without end
    "1e 1 0",      # end not followed by begin
    "1 0b",        # pair cut off at the end
    "1 x 0",       # unknown token
    "0e 0b 1",     # reversed pair
])
def test_malformed_encodings(text):
    with pytest.raises(MalformedEncoding):
        TourEncoding.parse(text)


def test_encoding_length_mismatch():
    with pytest.raises(ValueError):
        TourEncoding.parse("1 0", n=5)


@pytest.mark.parametrize("text", ["1,2,2", "2,1,3", "1,2,4", "", "1,a,3"])
def test_bad_tours(text):
    with pytest.raises(ValueError):
        Tour.parse(text)


def test_tour_must_be_single_cycle():
    with pytest.raises(InvalidTour):
        Tour(4, (2, 1, 4, 3))


def test_small_n_rejected():
    with pytest.raises(InvalidN):
        count_psb(2)
    with pytest.raises(InvalidN):
        list(enumerate_psb(1))
