"""Cube groups of filtered groups: alternating products, the upper-face
factorization, corner completion, arrows, abelian specials."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilcube import cubegroups as cg
from nilcube import cubes as cb
from nilcube import groups as gr


@given(st.integers(0, 10_000), st.integers(0, 3))
@settings(max_examples=120, deadline=None)
def test_sigma_gray_equals_recursive(seed, n):
    rng = random.Random(seed)
    G, _ = gr.make_heisenberg(3)
    vals = [rng.randrange(G.order) for _ in range(1 << n)]
    assert cg.sigma(vals, n, G) == cg.sigma_recursive(vals, n, G)


def test_sigma_two_closed_form():
    G, _ = gr.make_heisenberg(2)
    rng = random.Random(3)
    for _ in range(50):
        g00, g10, g01, g11 = (rng.randrange(8) for _ in range(4))
        want = G.op(G.op(G.inv(g01), g11), G.op(G.inv(g10), g00))
        assert cg.sigma((g00, g10, g01, g11), 2, G) == want


def test_sigma_concatenation_identity():
    G, _ = gr.make_heisenberg(2)
    rng = random.Random(5)
    n = 2
    half = 1 << (n - 1)
    for _ in range(100):
        q1 = [rng.randrange(8) for _ in range(1 << n)]
        q2 = q1[half:] + [rng.randrange(8) for _ in range(half)]
        conc = q1[:half] + q2[half:]
        assert cg.sigma(conc, n, G) == G.op(cg.sigma(q2, n, G), cg.sigma(q1, n, G))


@given(st.integers(0, 10_000), st.integers(1, 3))
@settings(max_examples=150, deadline=None)
def test_factorize_multiply_out_round_trip(seed, n):
    rng = random.Random(seed)
    G, filt = gr.make_heisenberg(3)
    th = cg._thresholds(n, None)
    coeffs = [rng.choice(sorted(filt.subgroup(t))) for t in th]
    values = cg.multiply_out(coeffs, n, G)
    got = cg.factorize(values, filt)
    assert got == coeffs


def test_factorize_rejects_with_first_bad_vertex():
    A = gr.CyclicProduct((4,))
    filt = gr.maximal_degree_k_filtration(A, 1)
    # (0,1,0,2) has second-order difference 1 != 0
    res = cg.factorize([0, 1, 0, 2], filt)
    assert isinstance(res, cg.Reject)
    assert res.index == 3 and res.required_level == 2


def test_membership_three_ways_small():
    G = gr.CyclicProduct((4,))
    filt = gr.lower_central_series(G)
    for values in itertools.product(range(4), repeat=4):
        a = cg.is_cube(values, filt)
        b = cg.is_cube_by_equations(values, filt)
        from nilcube.poly import cube_to_binomial

        c = cube_to_binomial(values, filt) is not None
        assert a == b == c


def test_cube_counts():
    G, filt = gr.make_heisenberg(2)
    assert cg.count_cubes(filt, 2) == 8 * 8 * 8 * 2
    assert len(set(cg.enumerate_cubes(filt, 2))) == cg.count_cubes(filt, 2)
    assert cg.count_cubes(filt, 3) == 32768


def test_weighted_cubes_match_unit_weights():
    G, filt = gr.make_heisenberg(2)
    plain = set(cg.enumerate_cubes(filt, 2))
    weighted = set(cg.enumerate_cubes(filt, 2, weights=(1, 1)))
    assert plain == weighted
    # weight-0 in one direction frees that edge completely
    w0 = set(cg.enumerate_cubes(filt, 2, weights=(0, 1)))
    assert plain < w0


def test_complete_corner_matches_bruteforce_unique():
    G, filt = gr.make_heisenberg(2)
    rng = random.Random(11)
    n = 3
    for _ in range(60):
        th = cg._thresholds(n, None)
        coeffs = [rng.choice(sorted(filt.subgroup(t))) for t in th]
        full = cg.multiply_out(coeffs, n, G)
        corner = {i: full[i] for i in range((1 << n) - 1)}
        algo = cg.complete_corner(corner, n, filt)
        brute = [
            x for x in G.elements()
            if cg.is_cube(tuple(corner[i] for i in range((1 << n) - 1)) + (x,), filt)
        ]
        assert algo[-1] in brute
        assert set(q[-1] for q in cg.enumerate_completions(corner, n, filt)) == set(brute)


def test_complete_corner_rejects_bad_premise():
    A = gr.CyclicProduct((2,))
    filt = gr.lower_central_series(A)
    # lower face (0,1,0) is not a 1-step cube lower-face pattern at n=2:
    # premise face {v0=0} has values (0, 1) which is fine, but the 2-face
    # premise fails at n=3 when one 2-face is not a cube
    filt2 = gr.maximal_degree_k_filtration(A, 1)
    corner = {0: 0, 1: 1, 2: 0, 3: 0, 4: 1, 5: 1, 6: 1}
    with pytest.raises(cg.CornerError):
        cg.complete_corner(corner, 3, filt2)


def test_arrow_membership_splits():
    G, filt = gr.make_heisenberg(2)
    rng = random.Random(13)
    cubes2 = list(cg.enumerate_cubes(filt, 2))
    hits = 0
    for _ in range(200):
        q0 = rng.choice(cubes2)
        q1 = rng.choice(cubes2)
        direct = cg.is_cube(cg.arrow(q0, q1, 2, 1), filt)
        split = cg.arrow_membership(q0, q1, 2, 1, filt)
        assert direct == split
        hits += direct
    assert 0 < hits < 200


def test_standard_abelian_cube_three_characterizations():
    A = gr.CyclicProduct((3,))
    count = 0
    for values in itertools.product(range(3), repeat=4):
        if cg.is_standard_abelian_cube(values, A):
            count += 1
    assert count == 27  # x, h1, h2 free


def test_degree_k_cube_counts():
    A = gr.CyclicProduct((2,))
    n2 = sum(cg.is_degree_k_abelian_cube(v, A, 1) for v in itertools.product(range(2), repeat=4))
    n3 = sum(cg.is_degree_k_abelian_cube(v, A, 2) for v in itertools.product(range(2), repeat=8))
    low = sum(cg.is_degree_k_abelian_cube(v, A, 2) for v in itertools.product(range(2), repeat=4))
    assert n2 == 8
    assert n3 == 128
    assert low == 16  # dimension <= k: everything


def test_enumerate_cubes_equals_membership_scan():
    A = gr.CyclicProduct((3,))
    filt = gr.maximal_degree_k_filtration(A, 1)
    enumerated = set(cg.enumerate_cubes(filt, 2))
    scanned = {v for v in itertools.product(range(3), repeat=4) if cg.is_cube(v, filt)}
    assert enumerated == scanned
