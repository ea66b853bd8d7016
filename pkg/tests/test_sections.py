import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilorbit.corpus import example_names, get_example
from nilorbit.estimates import (
    PolyMatrix,
    build_section_model,
    level_norms,
    monodromy_consistency,
    monodromy_consistency_exact,
    norms,
    phi,
)
from nilorbit.exact import GScalar


@pytest.fixture(scope="module")
def corpus_models():
    return {name: build_section_model(get_example(name)) for name in example_names()}


def test_example_i_sections(model_i):
    z = 0.3 + 2j
    assert phi(model_i, [0, 1], z) == pytest.approx([1.0])
    assert phi(model_i, [1, 0], z) == pytest.approx([z])
    # deck move: exp(N) e0 = e0 + e1
    assert phi(model_i, [1, 0], z + 1) == pytest.approx(phi(model_i, [1, 1], z))


def test_example_2_fiber_coordinates(model_2):
    assert model_2.mode == "rational"
    z = 0.5 + 2j
    assert model_2.evaluate([1, 0, 0, 0], z) == pytest.approx([1j, 1j * z])
    for a in range(-2, 3):
        for b in range(-2, 3):
            # a f0 + b f1 gives (a, a z + b)
            assert model_2.evaluate([0, 0, a, b], z) == pytest.approx([a, a * z + b])


def _rational_points(rng, count):
    pts = []
    for _ in range(count):
        re = Fraction(rng.randint(-8, 8), rng.randint(1, 6))
        im = Fraction(rng.randint(3, 40), rng.randint(1, 4))
        pts.append(GScalar(re, im))
    return pts


@pytest.mark.parametrize("name", example_names())
def test_exact_matches_float(corpus_models, name):
    model = corpus_models[name]
    rng = random.Random(hash(name) % 1000)
    for z in _rational_points(rng, 10):
        h = [rng.randint(-5, 5) for _ in range(model.rank)]
        exact = np.array([complex(c) for c in model.evaluate_exact(h, z)])
        approx = model.evaluate(h, complex(z))
        scale = max(1.0, np.abs(exact).max(initial=0))
        assert np.abs(exact - approx).max(initial=0) <= 1e-12 * scale


@pytest.mark.parametrize("name", example_names())
def test_deck_invariance(corpus_models, name):
    model = corpus_models[name]
    rng = random.Random(7)
    for z in _rational_points(rng, 5):
        h = [rng.randint(-4, 4) for _ in range(model.rank)]
        assert monodromy_consistency_exact(model, h, z)
        assert monodromy_consistency(model, h, complex(z))


def test_kernel_vectors_give_constant_sections(corpus_models):
    for model in corpus_models.values():
        N = model.orbit.N.to_numpy().real
        for v in np.eye(model.rank, dtype=int):
            if not np.any(N @ v):
                assert model.evaluate(v, 0.2 + 3j) == pytest.approx(model.evaluate(v, 0.7 + 9j))


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=2), st.integers(-5, 5),
       st.floats(0, 1, exclude_max=True), st.floats(1.5, 1e4))
def test_homogeneity(h, c, x, y):
    model = build_section_model(get_example("1.10-i"))
    z = complex(x, y)
    ch = [c * a for a in h]
    assert norms(model, ch, z)["A"] == pytest.approx(abs(c) * norms(model, h, z)["A"])
    v = phi(model, h, z)
    assert level_norms(model, c * v) == pytest.approx(abs(c) * level_norms(model, v))


def test_norms_example_i(model_i):
    # e0 sits at kernel level 1, e1 at level 0
    res = norms(model_i, [2, -3], 0.1 + 4j)
    assert res["levels"] == [3.0, 2.0]
    assert res["A"] == pytest.approx(3 + 2 * 4)
    assert res["B"] == pytest.approx(2)
    with pytest.raises(ValueError):
        norms(model_i, [1, 0], 0.5 - 1j)


def test_perturbed_section():
    model = build_section_model(get_example("jordan-3-twisted"))
    shape = (model.out_dim, model.phi2.shape[1])
    M = PolyMatrix.from_powers({1: np.ones(shape)}, shape)
    z = 0.25 + 3j
    t = np.exp(2j * np.pi * z)
    h = [1, 2, -1]
    expected = model.evaluate(h, z) - t * np.ones(shape) @ model.evaluate_f0(h, z)
    assert phi(model, h, z, M) == pytest.approx(expected)
    assert M.divided(t) == pytest.approx(np.ones(shape))
    with pytest.raises(ValueError):
        PolyMatrix.from_powers({0: np.ones(shape)}, shape)
