import numpy as np
import pytest

from nilorbit.corpus import direct_sum, get_example
from nilorbit.estimates import (
    ModeError,
    NotInvariantTarget,
    build_section_model,
    estimate_epsilon,
    lattice_min_norm,
    strip_grid,
)

# frozen from the default run; the brute-force comparison in test_kernels
# pins the scanner itself
EPS_DEFAULT = 0.5710731717337529
EPS_DOUBLED = 0.5627969894987791


def test_strip_grid_shape():
    zs = strip_grid(2.0, 4096.0, 8, 12)
    assert len(zs) == 96
    assert zs[0] == 2j and zs[-1].imag == pytest.approx(4096.0)
    assert set(np.round(zs.real, 12)) == {k / 8 for k in range(8)}
    with pytest.raises(ValueError):
        strip_grid(2.0, 10.0, 0, 3)


def test_example_i_default(model_i):
    rep = estimate_epsilon(model_i)
    assert rep.epsilon == pytest.approx(EPS_DEFAULT, rel=1e-12)
    assert rep.part_ii_violations == 0
    assert rep.scanned == (41 ** 2 - 41) * 96


def test_example_i_doubled_grid(model_i):
    rep = estimate_epsilon(model_i, n_re=16, n_y=23)
    assert rep.epsilon == pytest.approx(EPS_DOUBLED, rel=1e-12)
    assert abs(rep.epsilon / EPS_DEFAULT - 1) < 0.05


def test_direct_sum_positive(ex_i):
    m = build_section_model(direct_sum([ex_i, ex_i]))
    rep = estimate_epsilon(m, bound=3, n_re=4, n_y=6)
    assert 0 < rep.epsilon <= estimate_epsilon(build_section_model(ex_i), bound=3, n_re=4, n_y=6).epsilon


def test_target_on_a_section_gives_zero(model_i):
    # v = phi(e0; 2i) = 2i: the section through e0 meets v at a grid point
    rep = estimate_epsilon(model_i, v=[2j], bound=4)
    assert rep.epsilon == pytest.approx(0.0, abs=1e-15)
    assert rep.argmin_z == 2j


def test_not_invariant_target():
    m = build_section_model(get_example("jordan-3-twisted"))
    v = np.zeros(m.out_dim, dtype=complex)
    v[int(np.argmax(m.levels_out))] = 1
    with pytest.raises(NotInvariantTarget):
        estimate_epsilon(m, v=v)
    with pytest.raises(ValueError):
        estimate_epsilon(m, v=np.zeros(m.out_dim + 1))


def test_rational_mode_refused(model_2):
    with pytest.raises(ModeError):
        estimate_epsilon(model_2)


def test_lattice_min_norm(model_i):
    ln = lattice_min_norm(model_i, 10)
    assert ln.E == 1.0 and ln.certified
    assert lattice_min_norm(model_i, 10, basis=[[2, 0], [0, 2]]).E == 2.0
    with pytest.raises(ValueError):
        lattice_min_norm(model_i, 0)
