import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from psbtours import InvalidN, NonFiniteCost, TooLarge, is_psb
from psbtours.solver import CostMatrix, solve_bruteforce, solve_dp


def random_matrix(n, rng, hi=50):
    return CostMatrix.from_rows([[0 if u == v else rng.randint(0, hi) for v in range(n)] for u in range(n)])


def test_uniform_costs_pick_least_encoding():
    cm = CostMatrix.from_rows([[0 if u == v else 1 for v in range(6)] for u in range(6)])
    tour, cost = solve_dp(cm)
    assert cost == 6
    assert str(tour) == "1,2,3,4,5,6"
    assert solve_bruteforce(cm) == (tour, cost)


def test_line_metric():
    n = 7
    rows = [[abs(u - v) for v in range(n)] for u in range(n)]
    rows[0][n - 1] = rows[n - 1][0] = n - 1
    _, cost = solve_dp(CostMatrix.from_rows(rows))
    assert cost == 2 * (n - 1)


@pytest.mark.parametrize("n", range(3, 10))
def test_dp_matches_bruteforce(n):
    rng = random.Random(n)
    for _ in range(15):
        cm = random_matrix(n, rng, hi=rng.choice([3, 100]))
        dp, bf = solve_dp(cm), solve_bruteforce(cm)
        assert dp == bf
        assert is_psb(dp[0]) and cm.tour_cost(dp[0]) == dp[1]


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 8), st.integers(0, 2**32), st.integers(1, 20))
def test_constant_shift(n, seed, delta):
    # adding delta to every arc adds n*delta to every tour
    cm = random_matrix(n, random.Random(seed))
    shifted = CostMatrix.from_rows([[0 if u == v else w + delta for v, w in enumerate(row)]
                                    for u, row in enumerate(cm.c)])
    tour, cost = solve_dp(cm)
    assert solve_dp(shifted) == (tour, cost + n * delta)


def test_large_dp_runs():
    rng = random.Random(1)
    tour, cost = solve_dp(random_matrix(150, rng))
    assert is_psb(tour) and cost >= 0


def test_parse_text_and_json(tmp_path):
    text = "3\n0 1 2\n3 0 4\n5 6 0\n"
    cm = CostMatrix.parse(text)
    assert cm.cost(2, 3) == 4
    assert CostMatrix.from_json(json.loads(json.dumps(cm.to_json()))) == cm
    assert CostMatrix.parse("3\n0 1.5 2\n3 0 4\n5 6 0").cost(1, 2) == 1.5


@pytest.mark.parametrize("text", ["", "3\n0 1 2\n3 0 4", "3 3\n0 1 2\n3 0 4\n5 6 0", "3\n0 1\n3 0 4\n5 6 0"])
def test_bad_files(text):
    with pytest.raises(ValueError):
        CostMatrix.parse(text)


def test_bad_values():
    with pytest.raises(NonFiniteCost):
        CostMatrix.from_rows([[0, 1, float("inf")], [1, 0, 1], [1, 1, 0]])
    with pytest.raises(NonFiniteCost):
        CostMatrix.from_rows([[0, -1, 1], [1, 0, 1], [1, 1, 0]])
    with pytest.raises(InvalidN):
        CostMatrix.from_rows([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        CostMatrix.from_json({"n": 4, "costs": [[0, 1, 1], [1, 0, 1], [1, 1, 0]]})


def test_bruteforce_limit():
    with pytest.raises(TooLarge):
        solve_bruteforce(random_matrix(12, random.Random(0)))
