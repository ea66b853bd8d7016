import random
from math import comb

import pytest

from nilorbit.corpus import (
    RECIPES,
    IllegalShapeError,
    check_manifest,
    direct_sum,
    example_names,
    get_example,
    jordan_orbit,
    random_split_orbit,
    random_unimodular,
)
from nilorbit.exact import GMatrix, GVector, Subspace
from nilorbit.hodge import exp_nilpotent, monodromy_weight_filtration, validate_orbit


@pytest.mark.parametrize("name", sorted(RECIPES))
def test_manifest(name):
    for prop, (expected, observed) in check_manifest(RECIPES[name]).items():
        assert expected == observed, prop


def test_names_and_lookup():
    assert "1.10-i" in example_names() and "1.10-2" in example_names()
    with pytest.raises(KeyError):
        get_example("no-such-example")


def test_example_2_data(ex_2):
    assert ex_2.rank == 4 and ex_2.weight == -1
    assert ex_2.N @ GVector([1, 0, 0, 0]) == GVector([0, 1, 0, 0])


@pytest.mark.parametrize("size", [1, 2, 3, 4])
def test_jordan_block_exp_is_integral(size):
    o = jordan_orbit(size, -1)
    pascal = GMatrix([[comb(i, j) for j in range(size)] for i in range(size)])
    # odd weight needs a conjugate pair of blocks
    assert exp_nilpotent(o.N) == GMatrix.block_diag([pascal] * (o.rank // size))
    assert validate_orbit(o).ok


def test_illegal_shape():
    with pytest.raises((IllegalShapeError, ValueError)):
        jordan_orbit(0, -1)


def test_direct_sum(ex_i):
    s = direct_sum([ex_i, ex_i])
    assert s.rank == 4
    assert s.N == GMatrix.block_diag([ex_i.N, ex_i.N])
    assert validate_orbit(s).ok


@pytest.mark.parametrize("seed", range(5))
def test_random_unimodular(seed):
    rng = random.Random(seed)
    U = random_unimodular(4, rng)
    assert U.is_integral() and U.inverse().is_integral()


def test_random_split_orbit_is_seeded():
    a, b = random_split_orbit(5), random_split_orbit(5)
    assert a.N == b.N and all(a.F[p] == b.F[p] for p in range(a.F.lo, a.F.hi + 1))
    assert a.rank <= 6


def test_size_one_block_is_pure():
    o = jordan_orbit(1, -1)
    W = monodromy_weight_filtration(o.N, -1)
    assert W[-1].is_full() and W[-2].is_zero()


def test_direct_sum_weight_filtration_is_blockwise():
    a, b = get_example("1.10-i"), jordan_orbit(3, -1)
    s = direct_sum([a, b])
    Ws = monodromy_weight_filtration(s.N, -1)
    Wa, Wb = monodromy_weight_filtration(a.N, -1), monodromy_weight_filtration(b.N, -1)
    for k in range(-6, 5):
        assert Ws.graded_dim(k) == Wa.graded_dim(k) + Wb.graded_dim(k)
        block = [list(v) + [0] * b.rank for v in Wa[k].basis] + [[0] * a.rank + list(v) for v in Wb[k].basis]
        assert Ws[k] == Subspace(s.rank, block) if block else Ws[k].is_zero()
