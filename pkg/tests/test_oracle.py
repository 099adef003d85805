"""Criterion against the brute-force block enumeration in ``oracle.py``."""
import random
from fractions import Fraction as F

import pytest

from oracle import oracle, ordered_partitions
from toricdisp.certifier import Column, ValuationProblem, criterion, synthesize_witness

N_PROBLEMS = 240


def random_problem(rng):
    m = rng.randint(2, 5)
    nf = rng.randint(0, m)
    pt = (F(rng.randint(0, 8), 4), F(rng.randint(0, 8), 4))
    cols, seen = [], set()
    for j in range(m):
        spurious = j >= nf
        while True:
            v = (rng.randint(-2, 2), rng.randint(-2, 2))
            if any(v) and not (spurious and v in seen):
                break
        if spurious:
            seen.add(v)
        gap = F(rng.randint(0, 3), 2)
        off = v[0] * pt[0] + v[1] * pt[1] - gap
        cols.append(Column(v, off, spurious, spurious and rng.random() < 0.4))
    return ValuationProblem(2, cols), pt


def problems(count=N_PROBLEMS, seed=1):
    rng = random.Random(seed)
    return [random_problem(rng) for _ in range(count)]


def compare(problem, point):
    """``(agree, positive)``; positives must also synthesise a witness."""
    ours = criterion(problem, point)
    cols = [(c.direction, c.offset, c.spurious, c.strict) for c in problem.columns]
    ref = oracle(problem.matrix, cols, point)
    if (ours is None) != (ref is None):
        return False, False
    if ours is not None:
        synthesize_witness(problem, point, ours)
        synthesize_witness(problem, point, ref)
    return True, ours is not None


def test_ordered_partitions_count():
    # ordered Bell numbers
    assert [sum(1 for _ in ordered_partitions(range(k))) for k in range(5)] == [1, 1, 3, 13, 75]


def test_oracle_matches_hand_examples():
    ball = [((1, 0), 0, False, False), ((0, 1), 0, False, False), ((-1, -1), -1, True, False)]
    m = [[1, 0, -1], [0, 1, -1]]
    assert oracle(m, ball, (F(5, 12), F(5, 12))) == (F(5, 12),) * 3
    assert oracle(m, ball, (F(1, 4), F(1, 3))) is None


@pytest.mark.parametrize("chunk", range(4))
def test_random_agreement(chunk):
    batch = problems()[chunk::4]
    results = [compare(p, pt) for p, pt in batch]
    assert all(a for a, _ in results)
    assert any(pos for _, pos in results)
