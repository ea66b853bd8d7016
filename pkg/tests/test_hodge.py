from fractions import Fraction

import pytest

from _oracles import check_splitting
from nilorbit.corpus import get_example, jordan_orbit, random_split_orbit
from nilorbit.exact import I, GMatrix, Subspace
from nilorbit.hodge import (
    NilpotentOrbit,
    PurityError,
    build_limit_mhs,
    check_kernel_injectivity,
    construct_alpha,
    deligne_splitting,
    exp_nilpotent,
    is_r_split,
    normalize_iota,
    primitive_decomposition,
    rational_alpha,
    rational_decomposition,
    validate_orbit,
)


def test_example_i_validates(ex_i):
    rep = validate_orbit(ex_i)
    assert rep.ok
    assert set(rep.as_dict()) == {"nilpotency", "integral_N", "transversality", "weight_negative",
                                  "filtration_exhaustive", "integral_exp_N"}


def test_validation_failures():
    bad = NilpotentOrbit.from_data([[1, 0], [0, 0]], -1, {0: [[1, 0]]})
    rep = validate_orbit(bad)
    assert not rep["nilpotency"].passed and not rep.ok
    # F^2 = F^1 = <e0> but N e0 = e1 is not in F^1
    bad2 = NilpotentOrbit.from_data([[0, 0], [1, 0]], -1, {2: [[1, 0]], 0: [[0, 1]]})
    assert not validate_orbit(bad2)["transversality"].passed
    half = NilpotentOrbit.from_data([[0, 0], [2, 0]], -1, {0: [[1, 0]]})
    assert validate_orbit(half)["integral_exp_N"].passed
    frac = NilpotentOrbit(2, -1, GMatrix([[0, 0], [1 / I, 0]]), half.F)
    assert not validate_orbit(frac)["integral_N"].passed


def test_example_i_limit_mhs(ex_i):
    mhs = build_limit_mhs(ex_i)
    assert mhs.hodge_numbers() == {-2: {(-1, -1): 1}, 0: {(0, 0): 1}}
    assert is_r_split(ex_i)
    assert check_kernel_injectivity(ex_i)
    split = deligne_splitting(ex_i)
    assert split[(0, 0)] == Subspace(2, [[1, 0]])
    assert split[(-1, -1)] == Subspace(2, [[0, 1]])


def test_example_2_purity_diagnosis(ex_2):
    assert validate_orbit(ex_2).ok
    with pytest.raises(PurityError) as info:
        build_limit_mhs(ex_2)
    err = info.value
    assert err.level == 0
    assert err.failing_levels == (0, -2)
    assert err.dim == 2 and err.filled == 0
    assert err.as_dict()["deficit"] == 2
    assert not is_r_split(ex_2)


def test_kernel_injectivity_failure():
    # Ker N = H contains the rational vector e0 of F^0
    o = NilpotentOrbit.from_data([[0, 0], [0, 0]], 0, {0: [[1, 0]], -1: [[0, 1]]})
    assert not check_kernel_injectivity(o)


def test_twisted_orbit():
    o = get_example("jordan-3-twisted")
    mhs = build_limit_mhs(o)
    assert not is_r_split(o)
    im = construct_alpha(mhs)
    assert im.iota == GMatrix([[1, -I, Fraction(-1, 2)], [0, 1, -I], [0, 0, 1]])
    assert im.vanishing_violations() == []
    norm = normalize_iota(im)
    assert norm.iota == GMatrix.identity(3)
    check_splitting(o)


def test_deligne_splitting_dimensions():
    o = random_split_orbit(3)
    split = deligne_splitting(o)
    assert sum(s.dim for s in split.values()) == o.rank
    total = Subspace.zero(o.rank)
    for s in split.values():
        total = total + s
    assert total.is_full()


def test_bigrading_shift_acts_as_N(ex_i):
    for o in (ex_i, get_example("jordan-3-twisted"), random_split_orbit(11)):
        mhs = build_limit_mhs(o)
        bg = primitive_decomposition(mhs)
        G = mhs.graded
        S = bg.shift_matrix()
        assert G.N_graded @ bg.basis == bg.basis @ S
        assert bg.basis @ bg.basis_inv == GMatrix.identity(o.rank)


def test_rational_decomposition_without_mhs(ex_2):
    bg = rational_decomposition(ex_2)
    assert not bg.has_hodge
    assert sorted(bg.levels()) == [0, 0, 1, 1]
    aq = rational_alpha(ex_2, bg)
    assert ex_2.N @ aq == aq @ bg.shift_matrix()


@pytest.mark.parametrize("seed", range(20))
def test_random_split_orbits(seed):
    o = random_split_orbit(seed)
    assert validate_orbit(o).ok
    assert is_r_split(o)
    check_splitting(o)


def test_unshifted_pairs():
    for size in (1, 2, 3):
        o = jordan_orbit(size, -1)
        assert validate_orbit(o).ok
        check_splitting(o)


def test_exp_nilpotent_pascal(ex_i):
    assert exp_nilpotent(ex_i.N) == GMatrix([[1, 0], [1, 1]])
    assert exp_nilpotent(ex_i.N, -1) @ exp_nilpotent(ex_i.N) == GMatrix.identity(2)
