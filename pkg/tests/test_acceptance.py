"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import io
import random
import time
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from math import lcm

import numpy as np

from _oracles import all_weight_filtrations, check_splitting, iso_conditions, random_nilpotent, shift_condition
from nilorbit.cli import main
from nilorbit.corpus import direct_sum, example_names, get_example, random_split_orbit
from nilorbit.estimates import (
    build_section_model,
    certify_separation,
    estimate_epsilon,
    feasibility_search,
    find_accumulation,
    fit_constant,
    monodromy_consistency,
    monodromy_consistency_exact,
    sublemma_check,
    verify_witness,
)
from nilorbit.exact import GMatrix, GScalar, GVector, kernel, parse_gaussian
from nilorbit.hodge import is_r_split, monodromy_weight_filtration, validate_orbit, weight_conditions

GAMMA = "1/2+1/4i"


def verdict(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
    assert ok, detail


def test_criterion_01_accumulation(capsys):
    model = build_section_model(get_example("1.10-2"))
    t0 = time.perf_counter()
    w = find_accumulation(model, f"(1, {GAMMA})", tol=1e-9, r=1.05)
    elapsed = time.perf_counter() - t0
    ok = w is not None and len(w.entries) >= 20 and verify_witness(model, w)
    if ok:
        for n, e in enumerate(w.entries[:20], start=1):
            z = parse_gaussian(e.exact_z) if e.exact_z else None
            ok &= e.exact_zero and z is not None and z.im == n + Fraction(1, 4)
    ok &= elapsed < 1.0
    verdict(capsys, 1, ok, f"{len(w.entries) if w else 0} exact witnesses, Im z_n = n + 1/4 "
                           f"for n = 1..20, {elapsed:.2f} s")


def test_criterion_02_separation(capsys):
    runs = []
    for name, point, radius in [("1.10-2", f"(0, {GAMMA})", 0.2), ("1.10-i", "(0)", 0.4)]:
        model = build_section_model(get_example(name))
        t0 = time.perf_counter()
        rep = certify_separation(model, point, radius, bound=50, y_max=1e6)
        runs.append((name, rep, time.perf_counter() - t0))
    ok = all(rep.certified and not rep.intruders and dt < 10 for _, rep, dt in runs)
    verdict(capsys, 2, ok, "; ".join(f"{n}: certified={r.certified}, intruders={len(r.intruders)}, "
                                     f"{dt:.2f} s" for n, r, dt in runs))


def test_criterion_03_positivity(capsys):
    ex = get_example("1.10-i")
    t0 = time.perf_counter()
    model = build_section_model(ex)
    base = estimate_epsilon(model, bound=20, r=2.0, n_re=8, n_y=12)
    fine = estimate_epsilon(model, bound=20, r=2.0, n_re=16, n_y=23)
    double = estimate_epsilon(build_section_model(direct_sum([ex, ex])), bound=20, r=2.0, n_re=8, n_y=12)
    elapsed = time.perf_counter() - t0
    change = abs(fine.epsilon / base.epsilon - 1)
    ok = base.epsilon > 0 and change < 0.05 and double.epsilon > 0 and elapsed < 60
    verdict(capsys, 3, ok, f"eps = {base.epsilon:.6g}, doubled grid {fine.epsilon:.6g} ({100 * change:.2f}% change), "
                           f"direct sum {double.epsilon:.6g}, {elapsed:.1f} s")


def _vanishing_models():
    names = [n for n in example_names() if n != "1.10-2"]
    models = [build_section_model(get_example(n), normalize=True) for n in names]
    models += [build_section_model(random_split_orbit(s), normalize=True) for s in range(40)]
    return models


def test_criterion_04_vanishing(capsys):
    rng = random.Random(4)
    models = _vanishing_models()
    cases = failures = nonzero = 0
    while cases < 1000:
        m = rng.choice(models)
        top = int(m.levels_in.max())
        k = rng.randint(1, top + 1)
        rows = [m.T_exact.rows[i] for i in range(len(m.levels_in)) if m.levels_in[i] >= k]
        basis = kernel(GMatrix(rows)).basis if rows else [
            GVector([int(i == j) for i in range(m.rank)]) for j in range(m.rank)]
        h = GVector.zero(m.rank)
        for b in basis:
            d = lcm(*[a.re.denominator for a in b])
            h = h + GVector(b).scale(GScalar(d * rng.randint(-4, 4)))
        assert all(a.im == 0 and a.re.denominator == 1 for a in h)
        z = GScalar(Fraction(rng.randint(0, 15), 16), Fraction(rng.randint(5, 400), rng.randint(1, 4)))
        v = m.evaluate_exact(h, z)
        cases += 1
        failures += any(v[i] != 0 for i in range(len(v)) if m.levels_out[i] >= k)
        nonzero += any(v[i] != 0 for i in range(len(v)))
    verdict(capsys, 4, failures == 0, f"{cases} cases ({nonzero} with a nonzero section), "
                                      f"{failures} with a nonzero level >= k component")


def test_criterion_05_weight_oracle(capsys):
    t0 = time.perf_counter()
    bad = 0
    for seed in range(200):
        rng = random.Random(seed)
        N = random_nilpotent(rng.randint(1, 4), rng)
        w = rng.randint(-2, 2)
        sols = all_weight_filtrations(N, w)
        W = monodromy_weight_filtration(N, w)
        bad += len(sols) != 1 or any(W[k] != s for k, s in sols[0].items())
    large_bad = 0
    for seed in range(20):
        rng = random.Random(5000 + seed)
        n = rng.randint(5, 8)
        N = random_nilpotent(n, rng)
        w = rng.randint(-3, 3)
        W = monodromy_weight_filtration(N, w)
        large_bad += not (shift_condition(N, W.__getitem__, w - n, w + n + 2)
                          and iso_conditions(N, W.__getitem__, w, n)
                          and weight_conditions(N, W.levels, w) == (True, True))
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and large_bad == 0 and elapsed < 30
    verdict(capsys, 5, ok, f"200 rank <= 4 cases, {bad} mismatches; 20 rank 5-8 cases, "
                           f"{large_bad} condition failures; {elapsed:.1f} s")


def test_criterion_06_splittings(capsys):
    failures = []
    for seed in range(100):
        o = random_split_orbit(seed)
        try:
            assert validate_orbit(o).ok and is_r_split(o)
            check_splitting(o)
        except AssertionError:
            failures.append(seed)
    verdict(capsys, 6, not failures, f"100 random split orbits, failures: {failures or 'none'}")


def test_criterion_07_lemma(capsys):
    parts = []
    ok = True
    for shape in [(1, 1, 1), (2, 2, 1), (3, 2, 2)]:
        res = fit_constant(*shape, seeds=(0, 1, 2), trials=10_000)
        good = np.isfinite(res["C"]) and res["violations"] == 0 and res["drift"] < 0.1
        ok &= bool(good)
        parts.append(f"{shape}: C = {res['C']:.4g}, drift {100 * res['drift']:.2f}%, "
                     f"violations {res['violations']}")
    verdict(capsys, 7, ok, "; ".join(parts))


def test_criterion_08_sublemma(capsys):
    rng = np.random.default_rng(8)
    disagree = 0
    for _ in range(100):
        m = int(rng.integers(0, 6))
        cmat = [[float(rng.uniform(0.05, 5.0)) for _ in range(i)] for i in range(m + 1)]
        eps2 = float(rng.uniform(0.001, 0.5))
        disagree += sublemma_check(cmat, eps2) == feasibility_search(cmat, eps2)[0]
    hand = sublemma_check([[], [1.0]], 0.1) and not sublemma_check([[], [1.0]], 0.45)
    verdict(capsys, 8, disagree == 0 and hand,
            f"100 random instances, {disagree} disagreements; hand cases 0.1 -> true, 0.45 -> false: {hand}")


def test_criterion_09_deck_and_exactness(capsys):
    rng = random.Random(9)
    bad = checks = 0
    for name in example_names():
        m = build_section_model(get_example(name))
        for _ in range(20):
            h = [rng.randint(-6, 6) for _ in range(m.rank)]
            z = GScalar(Fraction(rng.randint(-10, 10), rng.randint(1, 8)),
                        Fraction(rng.randint(2, 100), rng.randint(1, 5)))
            exact = np.array([complex(c) for c in m.evaluate_exact(h, z)])
            approx = m.evaluate(h, complex(z))
            scale = max(1.0, float(np.abs(exact).max(initial=0)))
            close = float(np.abs(exact - approx).max(initial=0)) <= 1e-12 * scale
            bad += not (close and monodromy_consistency_exact(m, h, z)
                        and monodromy_consistency(m, h, complex(z)))
            checks += 1
    verdict(capsys, 9, bad == 0, f"{checks} (orbit, u, z) checks over {len(example_names())} corpus orbits, "
                                 f"{bad} failures")


def _cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue()


def test_criterion_10_cli(capsys):
    repeat = [
        ["estimate-epsilon", "--example", "1.10-i", "--bound", "5", "--seed", "1"],
        ["lemma25", "--n", "2", "--n1", "2", "--n2", "1", "--trials", "500", "--seed", "7"],
        ["find-accumulation", "--example", "1.10-2", "--target", f"(1, {GAMMA})"],
        ["sublemma", "--cmat", "[[],[1.0],[0.5,2.0]]"],
        ["certify-separation", "--example", "1.10-i", "--target", "(0)", "--radius", "0.4", "--bound", "10"],
    ]
    identical = all(_cli(a) == _cli(a) for a in repeat)
    matrix = [
        (0, ["validate", "--example", "1.10-i"]),
        (0, ["find-accumulation", "--example", "1.10-2", "--target", f"(1, {GAMMA})", "--tol", "1e-9"]),
        (0, ["certify-separation", "--example", "1.10-2", "--target", f"(0, {GAMMA})", "--radius", "0.2"]),
        (0, ["sublemma", "--cmat", "[[],[1.0]]", "--eps2", "0.1"]),
        (1, ["sublemma", "--cmat", "[[],[1.0]]", "--eps2", "0.45"]),
        (1, ["limit-mhs", "--example", "1.10-2"]),
        (1, ["find-accumulation", "--example", "1.10-i", "--target", "(1/2)"]),
        (1, ["certify-separation", "--example", "1.10-2", "--target", f"(1, {GAMMA})", "--radius", "0.2",
             "--bound", "5"]),
        (2, ["frobnicate"]),
        (2, ["validate", "--orbit", "/nonexistent.json"]),
        (2, ["estimate-epsilon", "--example", "1.10-2"]),
        (2, ["sublemma", "--cmat", "[[2]]"]),
    ]
    wrong = [a[0] for code, a in matrix if _cli(a)[0] != code]
    verdict(capsys, 10, identical and not wrong,
            f"{len(repeat)} repeated reports byte-identical: {identical}; "
            f"{len(matrix)} exit-code cases, wrong: {wrong or 'none'}")
