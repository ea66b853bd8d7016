import random

import pytest

from _oracles import all_weight_filtrations, iso_conditions, random_nilpotent, shift_condition
from nilorbit.exact import GMatrix, Subspace
from nilorbit.hodge import NotNilpotentError, monodromy_weight_filtration, weight_conditions


def test_single_jordan_block():
    N = GMatrix([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    W = monodromy_weight_filtration(N, 0)
    assert [W.graded_dim(k) for k in range(-3, 4)] == [0, 1, 0, 1, 0, 1, 0]
    assert W[-2] == Subspace(3, [[0, 0, 1]])
    assert W[0] == Subspace(3, [[0, 1, 0], [0, 0, 1]])


def test_zero_N_is_pure():
    W = monodromy_weight_filtration(GMatrix.zeros(2, 2), 5)
    assert W[5].is_full() and W[4].is_zero()


def test_not_nilpotent():
    with pytest.raises(NotNilpotentError):
        monodromy_weight_filtration(GMatrix([[1, 0], [0, 0]]), 0)


@pytest.mark.parametrize("seed", range(25))
def test_matches_unique_search(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    N = random_nilpotent(n, rng)
    w = rng.randint(-2, 2)
    sols = all_weight_filtrations(N, w)
    assert len(sols) == 1
    W = monodromy_weight_filtration(N, w)
    for k, s in sols[0].items():
        assert W[k] == s


@pytest.mark.parametrize("seed", range(10))
def test_conditions_large_rank(seed):
    rng = random.Random(1000 + seed)
    n = rng.randint(5, 8)
    N = random_nilpotent(n, rng)
    w = rng.randint(-3, 3)
    W = monodromy_weight_filtration(N, w)
    assert shift_condition(N, W.__getitem__, w - n, w + n + 2)
    assert iso_conditions(N, W.__getitem__, w, n)
    assert weight_conditions(N, W.levels, w) == (True, True)


def test_weight_conditions_detect_bad_filtration():
    from nilorbit.exact import Filtration

    N = GMatrix([[0, 0], [1, 0]])
    bad = Filtration("increasing", {-1: Subspace.zero(2), 0: Subspace.full(2)}, 2)
    assert weight_conditions(N, bad, 0) != (True, True)
