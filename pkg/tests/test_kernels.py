import itertools

import numpy as np
import pytest

from nilorbit.corpus import get_example
from nilorbit.estimates import _pykernels, build_section_model, kernels, strip_grid
from nilorbit.estimates.epsilon import _T_numerators

try:
    from nilorbit.estimates import _ckernels
except ImportError:
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def _scan_args(name, B=3, v=None):
    m = build_section_model(get_example(name))
    Tn, DT = _T_numerators(m)
    N = np.array(m.orbit.N.to_int_lists(), dtype=np.int64)
    v = np.zeros(m.out_dim, dtype=complex) if v is None else v
    zs = strip_grid(2.0, 512.0, 4, 6)
    return m, (m.phi_num.real.astype(np.int64), m.phi_num.imag.astype(np.int64), m.denominator,
               m.levels_out, Tn, DT, m.levels_in, v, N, B, zs)


def _prune_args(name, target, B, rect, thr):
    m = build_section_model(get_example(name))
    return m, (m.phi_num.real.astype(np.int64), m.phi_num.imag.astype(np.int64), m.denominator,
               np.asarray(target, dtype=complex), B, rect, thr)


def brute_epsilon(m, B, zs, v):
    best = np.inf
    N = m.orbit.N.to_numpy().real
    for h in itertools.product(range(-B, B + 1), repeat=m.rank):
        if not np.any(N @ np.array(h)):
            continue
        a = m.level_norms_in(h)
        for z in zs:
            y = z.imag
            A = float(np.sum(a * y ** np.arange(len(a))))
            vals = m.evaluate(h, z) - v
            lev = np.zeros(int(m.levels_out.max()) + 1)
            np.add.at(lev, m.levels_out, np.abs(vals))
            best = min(best, float(np.max(lev * y ** np.arange(len(lev)))) / A)
    return best


@pytest.mark.parametrize("name", ["1.10-i", "jordan-3-twisted", "pair-1"])
def test_numpy_scan_matches_brute_force(name):
    m, args = _scan_args(name, B=2)
    best = _pykernels.scan_epsilon(*args)[0]
    assert best == pytest.approx(brute_epsilon(m, 2, args[-1], args[7]), rel=1e-12)


@needs_c
@pytest.mark.parametrize("name", ["1.10-i", "1.10-i-x2", "jordan-3-twisted", "pair-1", "random-7"])
def test_scan_backends_agree(name):
    _, args = _scan_args(name, B=2)
    a = _pykernels.scan_epsilon(*args)
    b = _ckernels.scan_epsilon(*args)
    assert a[0] == pytest.approx(b[0], rel=1e-12)
    assert tuple(a[1]) == tuple(b[1])
    assert a[2:] == b[2:]


def _brute_close(m, target, B, rect, thr):
    """Box vectors that come within thr of target at some sampled z in rect."""
    x0, x1, y0, y1 = rect
    zs = [complex(x, y) for x in np.linspace(x0, x1, 9)
          for y in np.geomspace(y0, y1, 40)]
    out = set()
    for h in itertools.product(range(-B, B + 1), repeat=m.rank):
        for z in zs:
            if np.abs(m.evaluate(h, z) - target).sum() < thr:
                out.add(h)
                break
    return out


@pytest.mark.parametrize("name,target,thr", [
    ("1.10-2", [1, 0.5 + 0.25j], 0.2),
    ("1.10-2", [0, 0.5 + 0.25j], 0.3),
    ("1.10-i", [0], 0.4),
    ("1.10-i", [3], 0.5),
])
def test_prune_is_sound(name, target, thr):
    rect = (0.0, 1.0, 2.0, 40.0)
    m, args = _prune_args(name, target, 2, rect, thr)
    cands, scanned, overflow = _pykernels.prune_box(*args)
    assert scanned == 5 ** m.rank and not overflow
    kept = {tuple(int(x) for x in c) for c in cands}
    assert _brute_close(m, np.asarray(target, dtype=complex), 2, rect, thr) <= kept


@needs_c
@pytest.mark.parametrize("name,target,thr", [
    ("1.10-2", [1, 0.5 + 0.25j], 0.2),
    ("1.10-2", [0, 0.5 + 0.25j], 5.0),
    ("pair-2", [0, 0], 1.0),
])
def test_prune_backends_agree(name, target, thr):
    _, args = _prune_args(name, target, 3, (0.0, 1.0, 2.0, 1e4), thr)
    a, b = _pykernels.prune_box(*args), _ckernels.prune_box(*args)
    assert a[1:] == b[1:]
    assert np.array_equal(a[0], b[0])


@needs_c
def test_prune_overflow_flag():
    _, args = _prune_args("1.10-2", [0, 0], 3, (0.0, 1.0, 2.0, 1e4), 1e9)
    for mod in (_pykernels, _ckernels):
        cands, _, overflow = mod.prune_box(*args, max_candidates=10)
        assert overflow and len(cands) == 10


def test_backend_switch():
    prev = kernels.use_backend("numpy")
    try:
        assert kernels.backend_name() == "numpy"
        with pytest.raises(ValueError):
            kernels.use_backend("fortran")
    finally:
        kernels.use_backend(prev)
    assert "numpy" in kernels.available_backends()
