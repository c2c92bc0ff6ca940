from __future__ import annotations

import random

import pytest

from eostrata import linalg
from eostrata.ff import NonInvertible, field

F9 = field(3, 2)


def rand_matrix(rng, r, c, F=F9, rank=None):
    if rank is None:
        return [[rng.randrange(F.q) for _ in range(c)] for _ in range(r)]
    A = rand_matrix(rng, r, rank, F)
    B = rand_matrix(rng, rank, c, F)
    return linalg.matmul(F, A, B)


@pytest.mark.parametrize("seed", range(20))
def test_rank_nullity(seed):
    rng = random.Random(seed)
    r, c = rng.randint(1, 7), rng.randint(1, 7)
    M = rand_matrix(rng, r, c, rank=rng.randint(0, min(r, c)))
    N = linalg.nullspace(F9, M, c)
    assert linalg.rank(F9, M) + len(N) == c
    for v in N:
        assert not any(linalg.matvec(F9, M, v))


@pytest.mark.parametrize("seed", range(20))
def test_inverse_solve_det(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    A = rand_matrix(rng, n, n)
    b = [rng.randrange(9) for _ in range(n)]
    if linalg.det(F9, A) == 0:
        with pytest.raises(NonInvertible):
            linalg.inverse(F9, A)
        return
    Ai = linalg.inverse(F9, A)
    assert linalg.matmul(F9, A, Ai) == linalg.identity(n)
    x = linalg.solve(F9, A, b)
    assert linalg.matvec(F9, A, x) == b


def test_det_is_multiplicative():
    rng = random.Random(1)
    for _ in range(30):
        A, B = rand_matrix(rng, 4, 4), rand_matrix(rng, 4, 4)
        assert linalg.det(F9, linalg.matmul(F9, A, B)) == F9.mul(linalg.det(F9, A), linalg.det(F9, B))


def test_solve_inconsistent_returns_none():
    assert linalg.solve(F9, [[1, 0], [1, 0]], [1, 2]) is None


@pytest.mark.parametrize("seed", range(15))
def test_subspace_intersection_dimension_formula(seed):
    rng = random.Random(seed)
    n = 6
    A = linalg.span(F9, rand_matrix(rng, rng.randint(0, 4), n))
    B = linalg.span(F9, rand_matrix(rng, rng.randint(0, 4), n))
    S = linalg.subspace_sum(F9, A, B)
    I = linalg.intersect(F9, A, B, n)
    assert len(S) + len(I) == len(A) + len(B)
    assert linalg.contains(F9, A, I) and linalg.contains(F9, B, I)
    assert linalg.contains(F9, S, A)


def test_frob_matrix_negative_exponent_inverts():
    rng = random.Random(4)
    F = field(3, 3)
    M = rand_matrix(rng, 3, 3, F)
    assert linalg.frob_matrix(F, linalg.frob_matrix(F, M, 1), -1) == M
    assert linalg.frob_matrix(F, M, F.k) == M
