from fractions import Fraction

import numpy as np
import pytest

from nilorbit.estimates import certify_separation, find_accumulation, parse_point, verify_witness
from nilorbit.estimates.separation import min_distance
from nilorbit.exact import GScalar, parse_gaussian

GAMMA = "1/2+1/4i"


def test_parse_point():
    assert parse_point(f"(1, {GAMMA})", 2) == (GScalar(1), GScalar(Fraction(1, 2), Fraction(1, 4)))
    with pytest.raises(ValueError):
        parse_point("(1, 2, 3)", 2)


def test_example_2_accumulates(model_2):
    w = find_accumulation(model_2, f"(1, {GAMMA})", r=1.05)
    assert w is not None and len(w.entries) >= 20
    for n, e in enumerate(w.entries[:20], start=1):
        # h = f0 - n e1 meets the target at z = 1/2 + (n + 1/4) i
        assert e.h == (0, -n, 1, 0)
        assert e.exact_zero and e.distance == 0.0
        assert parse_gaussian(e.exact_z) == GScalar(Fraction(1, 2), n + Fraction(1, 4))
    assert verify_witness(model_2, w)


def test_tampered_witness_fails(model_2):
    from dataclasses import replace

    w = find_accumulation(model_2, f"(1, {GAMMA})", r=1.05, bound=3)
    bad = replace(w, entries=(replace(w.entries[0], h=(0, -1, 2, 0)),) + w.entries[1:])
    assert not verify_witness(model_2, bad)


def test_example_i_has_no_accumulation(model_i):
    assert find_accumulation(model_i, "(1/2)") is None
    w = find_accumulation(model_i, "(3)")
    assert [e.h for e in w.entries] == [(0, 3)]
    with pytest.raises(ValueError):
        find_accumulation(model_i, "(3)", tol=0)


def test_separation_example_2(model_2):
    rep = certify_separation(model_2, f"(0, {GAMMA})", 0.2)
    assert rep.certified and not rep.intruders and rep.in_invariant_part
    assert rep.through_point == ()


def test_separation_fails_off_invariant_part(model_2):
    rep = certify_separation(model_2, f"(1, {GAMMA})", 0.2)
    assert not rep.certified and not rep.in_invariant_part
    assert len(rep.intruders) == 49


def test_separation_example_i(model_i):
    rep = certify_separation(model_i, "(0)", 0.4, epsilon=0.57, lattice_norm=1.0)
    assert rep.certified
    assert rep.through_point == ((0, 0),)
    assert rep.heuristic_tail["flag"] == "heuristic" and rep.heuristic_tail["excludes_tail"]
    with pytest.raises(ValueError):
        certify_separation(model_i, "(0)", 0.0)


def test_min_distance_decides():
    rect = (0.0, 1.0, 2.0, 100.0)
    # Q(z) = z - (0.5 + 10i) vanishes inside the rectangle
    coef = np.array([[-(0.5 + 10j), 1]])
    assert min_distance(coef, rect, 1e-9)[0] == "below"
    # z^2 - 1: roots at +-1, distance to the rectangle is 2 from both sides
    coef = np.array([[-1, 0, 1]], dtype=complex)
    status, val, _ = min_distance(coef, rect, 1.0)
    assert status == "above" and val >= 1.0
