import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilorbit.estimates import feasibility_search, find_eps2, sublemma_check, sublemma_report
from nilorbit.estimates.sublemma import parse_cmat, spectral_radius, system_matrix


def test_single_unknown():
    # m = 0: a <= eps a forces a = 0
    assert sublemma_check([[]], 0.9)
    assert not feasibility_search([[]], 0.9)[0]


def test_hand_cases():
    # 2x2 system with C' = 1: rho = e + sqrt(e^2 + e), equal to 1 at e = 1/3
    for e in (0.1, 0.45, 0.3):
        assert spectral_radius(system_matrix([[], [1.0]], e)) == pytest.approx(e + np.sqrt(e * e + e))
    assert sublemma_check("[[],[1.0]]", 0.1)
    assert not sublemma_check("[[],[1.0]]", 0.45)
    assert feasibility_search("[[],[1.0]]", 0.45)[0]
    assert not feasibility_search("[[],[1.0]]", 0.1)[0]


def test_find_eps2():
    bits = 20
    assert find_eps2([[], [1.0]], bits) == (2 ** bits // 3) / 2 ** bits


def _random_cmat(rng, m):
    return [[float(rng.uniform(0.05, 5.0)) for _ in range(i)] for i in range(m + 1)]


def test_random_agreement():
    rng = np.random.default_rng(2024)
    for _ in range(100):
        m = int(rng.integers(0, 6))
        cmat = _random_cmat(rng, m)
        eps2 = float(rng.uniform(0.001, 0.5))
        assert sublemma_check(cmat, eps2) != feasibility_search(cmat, eps2)[0]


@given(st.integers(0, 4), st.floats(0.01, 0.49), st.integers(0, 2 ** 31))
def test_monotone_in_eps(m, eps2, seed):
    cmat = _random_cmat(np.random.default_rng(seed), m)
    if sublemma_check(cmat, eps2):
        assert sublemma_check(cmat, eps2 / 2)


def test_report_fields():
    rep = sublemma_report([[], [1.0]], 0.45).as_dict()
    assert rep["only_zero_solution"] is False and rep["search_feasible"] is True
    assert rep["criteria_agree"] is True
    w = np.array(rep["search_witness"])
    M = system_matrix([[], [1.0]], 0.45)
    assert np.all(w >= 0) and np.all(w <= M @ w + 1e-12)


@pytest.mark.parametrize("bad", ["[[1.0]]", "[[],[0]]", "[[],[-1]]", "[[],[true]]", "[]", "nope",
                                 "[[],[\"x\"]]", "[[],[1e999]]"])
def test_malformed_cmat(bad):
    with pytest.raises(ValueError):
        parse_cmat(bad)


def test_eps2_range():
    with pytest.raises(ValueError):
        sublemma_check([[]], 1.0)
