import numpy as np
import pytest

from nilorbit.corpus import get_example
from nilorbit.estimates import ModeError, PolyMatrix, build_section_model, perturbation_bound_check


@pytest.fixture(scope="module")
def twisted():
    return build_section_model(get_example("jordan-3-twisted"))


def _shape(m):
    return (m.out_dim, m.phi2.shape[1])


def test_zero_perturbation(twisted):
    M = PolyMatrix.from_powers({1: np.zeros(_shape(twisted))}, _shape(twisted))
    rep = perturbation_bound_check(twisted, M, bound=2, n_re=4, n_y=5)
    assert rep.C_prime == 0.0 and rep.bounded


def test_linear_in_M(twisted):
    rng = np.random.default_rng(0)
    base = rng.normal(size=_shape(twisted)) + 1j * rng.normal(size=_shape(twisted))
    M = PolyMatrix.from_powers({1: base, 2: base}, _shape(twisted))
    one = perturbation_bound_check(twisted, M, bound=2, n_re=4, n_y=5)
    three = perturbation_bound_check(twisted, M.scaled(3), bound=2, n_re=4, n_y=5)
    assert three.C_prime == pytest.approx(3 * one.C_prime, rel=1e-12)
    assert one.C_prime > 0 and one.bounded
    ys = [y for y, _ in one.per_y]
    assert ys == sorted(ys) and len(ys) == 5


def test_matches_direct_evaluation(twisted):
    shape = _shape(twisted)
    M = PolyMatrix.from_powers({1: np.ones(shape)}, shape)
    rep = perturbation_bound_check(twisted, M, bound=1, n_re=2, n_y=3)
    h, z, k = rep.argmax_h, rep.argmax_z, rep.argmax_k
    t = np.exp(2j * np.pi * z)
    moved = M(t) @ twisted.evaluate_f0(h, z)
    lev = np.abs(moved[twisted.levels_out == k]).sum()
    a = twisted.level_norms_in(h)
    A = np.sum(a * z.imag ** np.arange(len(a)))
    assert rep.C_prime == pytest.approx(lev / abs(t) / A, rel=1e-9)


def test_rejects_bad_input(twisted, model_2):
    shape = _shape(twisted)
    with pytest.raises(ValueError):
        perturbation_bound_check(twisted, PolyMatrix((np.ones(shape),)))
    with pytest.raises(ValueError):
        perturbation_bound_check(twisted, PolyMatrix.from_powers({1: np.ones((1, 1))}, (1, 1)))
    with pytest.raises(ModeError):
        perturbation_bound_check(model_2, PolyMatrix.from_powers({1: np.ones((2, 2))}, (2, 2)))


def test_example_i_linear_perturbation(model_i):
    # the F^0 coordinate of h = a e0 + b e1 is a, and A = |b| + |a| y, so the
    # ratio peaks at b = 0 with value 1 / y
    M = PolyMatrix.from_powers({1: [[1.0]]}, (1, 1))
    rep = perturbation_bound_check(model_i, M)
    assert rep.bounded
    for y, v in rep.per_y:
        assert v == pytest.approx(1 / y, rel=1e-9)
    assert rep.C_prime == pytest.approx(0.5)
