"""Time the compiled and numpy lattice-box kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 3] [--bound 20]
"""

import argparse
import time

import numpy as np

from nilorbit.corpus import direct_sum, get_example
from nilorbit.estimates import _pykernels, build_section_model, strip_grid
from nilorbit.estimates.epsilon import _T_numerators

try:
    from nilorbit.estimates import _ckernels
except ImportError:
    _ckernels = None


def scan_args(model, bound, n_re, n_y):
    Tn, DT = _T_numerators(model)
    N = np.array(model.orbit.N.to_int_lists(), dtype=np.int64)
    return (model.phi_num.real.astype(np.int64), model.phi_num.imag.astype(np.int64), model.denominator,
            model.levels_out, Tn, DT, model.levels_in, np.zeros(model.out_dim, dtype=complex), N, bound,
            strip_grid(2.0, 4096.0, n_re, n_y))


def prune_args(model, bound):
    return (model.phi_num.real.astype(np.int64), model.phi_num.imag.astype(np.int64), model.denominator,
            np.array([0, 0.5 + 0.25j]), bound, (0.0, 1.0, 2.0, 1e6), 0.2)


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--bound", type=int, default=20)
    args = ap.parse_args()

    ex = get_example("1.10-i")
    cases = [
        ("scan_epsilon 1.10-i", "scan_epsilon", scan_args(build_section_model(ex), args.bound, 8, 12)),
        ("scan_epsilon 1.10-i x2", "scan_epsilon",
         scan_args(build_section_model(direct_sum([ex, ex])), max(args.bound // 4, 1), 8, 12)),
        ("prune_box 1.10-2", "prune_box", prune_args(build_section_model(get_example("1.10-2")), args.bound)),
    ]
    print(f"{'kernel':<26}{'numpy [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for label, name, kargs in cases:
        t_py, out_py = best_of(getattr(_pykernels, name), kargs, args.repeat)
        if _ckernels is None:
            print(f"{label:<26}{t_py:>12.4f}{'n/a':>12}{'':>10}")
            continue
        t_c, out_c = best_of(getattr(_ckernels, name), kargs, args.repeat)
        if name == "scan_epsilon":
            assert np.isclose(out_py[0], out_c[0], rtol=1e-12) and out_py[2:] == out_c[2:]
        else:
            assert np.array_equal(out_py[0], out_c[0]) and out_py[1:] == out_c[1:]
        print(f"{label:<26}{t_py:>12.4f}{t_c:>12.4f}{t_py / t_c:>9.1f}x")


if __name__ == "__main__":
    main()
