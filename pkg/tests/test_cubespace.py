"""Cubespace constructions and the two axiom checkers."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilcube import cubegroups as cg
from nilcube import cubes as cb
from nilcube import groups as gr
from nilcube.cubespace import (
    ArrowCubespace,
    ExplicitCubespace,
    GroupCubespace,
    PointCubespace,
    ProductCubespace,
    SliceCubespace,
    abelian_Dk,
    check_axioms,
    check_parallelepiped_axioms,
    complete_corner_bruteforce,
    concatenate_cubes,
    ergodic_components,
    simplicial_extend,
    tricube_compose,
)


def test_d1z2_is_a_one_step_nilspace(d1z2):
    rep = check_axioms(d1z2, 3)
    assert rep.is_nilspace
    assert rep.step == 1
    assert rep.completion[2].unique
    assert not rep.completion[1].unique  # two completions of a 1-corner? no:
    # dimension-1 corners are single points, completed by every point


def test_d2z2_axioms_and_step(d2z2):
    rep = check_axioms(d2z2, 3)
    assert rep.is_nilspace
    assert rep.step == 2
    assert len(d2z2.cubes(2)) == 16  # every map {0,1}^2 -> Z/2
    assert len(d2z2.cubes(3)) == 128


def test_heisenberg_space_axioms(heis2_space):
    rep = check_axioms(heis2_space, 3, composition_budget=300_000)
    assert rep.is_nilspace
    assert rep.step == 2


def test_face_criterion_matches_factorization(heis2_space):
    # dimension 4 goes through the 3-face criterion; cross-check against
    # direct factorization on random maps and on genuine cubes
    X = heis2_space
    filt = X.filt
    rng = random.Random(23)
    cubes3 = sorted(X.cubes(3))
    for _ in range(40):
        q = [rng.randrange(8) for _ in range(16)]
        assert X.membership(4, q) == cg.is_cube(q, filt)
    th = cg._thresholds(4, None)
    for _ in range(25):
        coeffs = [rng.choice(sorted(filt.subgroup(t))) for t in th]
        q = cg.multiply_out(coeffs, 4, filt.group)
        assert X.membership(4, q)


def test_corner_enumeration_matches_definition(d1z2):
    # corners = maps on the punctured cube whose faces through 0 are cubes
    n = 2
    got = set(map(tuple, d1z2.corners(n)))
    want = set()
    for vals in itertools.product(range(2), repeat=3):
        ok = True
        for i in range(n):
            face = cb.Face.make(n, {i: 0})
            tbl = face.face_map().index_table()
            if not d1z2.membership(n - 1, tuple(vals[t] for t in tbl)):
                ok = False
        if ok:
            want.add(vals)
    assert got == want


def test_completions_against_bruteforce(heis2_space):
    rng = random.Random(5)
    cubes = sorted(heis2_space.cubes(2))
    for _ in range(30):
        q = rng.choice(cubes)
        corner = q[:-1]
        sols = complete_corner_bruteforce(heis2_space, 2, corner)
        assert q[-1] in sols
        assert sols == heis2_space.completions(2, corner)


def test_coset_space_membership_matches_projection(coset_space):
    # coset cubes computed by lifting search equal the projections of
    # group cubes
    X = coset_space
    assert X.size == 4
    proj = X.cosets.project
    for n in (1, 2):
        projected = {
            tuple(proj(g) for g in q) for q in cg.enumerate_cubes(X.filt, n)
        }
        direct = {
            vals
            for vals in itertools.product(range(X.size), repeat=1 << n)
            if X._lift(n, vals) is not None
        }
        assert projected == direct
        assert X.cubes(n) == frozenset(projected)


def test_coset_space_is_a_nilspace(coset_space):
    rep = check_axioms(coset_space, 3, composition_budget=200_000)
    assert rep.is_nilspace


def test_product_and_point_spaces(d1z2, d1z3):
    P = ProductCubespace(d1z2, d1z3)
    assert P.size == 6
    rep = check_axioms(P, 2)
    assert rep.is_nilspace
    for q in P.cubes(2):
        xs = [P.decode(p)[0] for p in q]
        ys = [P.decode(p)[1] for p in q]
        assert d1z2.membership(2, xs) and d1z3.membership(2, ys)
    pt = PointCubespace()
    assert check_axioms(pt, 3).is_nilspace


def test_arrow_space_of_d1z2_splits_in_two(d1z2):
    A = ArrowCubespace(d1z2, 1)
    assert A.size == 4
    comps = ergodic_components(A)
    assert sorted(len(c.points) for c in comps) == [2, 2]
    for c in comps:
        assert check_axioms(c, 2).is_nilspace


def test_slice_space_drops_step(d2z2):
    S = SliceCubespace(d2z2, 0)
    assert S.step == 1
    rep = check_axioms(S, 2)
    assert rep.is_nilspace
    # a slice of a degree-2 structure at 0 is the degree-1 structure
    d1 = abelian_Dk(gr.CyclicProduct((2,)), 1)
    assert S.cubes(2) == d1.cubes(2)


def test_explicit_space_round_trip(d1z2):
    tables = {n: d1z2.cubes(n) for n in (1, 2, 3)}
    E = ExplicitCubespace(2, tables, step=1)
    for n in (1, 2, 3):
        assert E.cubes(n) == d1z2.cubes(n)
    assert check_axioms(E, 3).is_nilspace


def test_parallelepiped_axioms_agree_with_nilspace_axioms(d1z2, d1z3, d2z2):
    for X in (d1z2, d1z3, d2z2):
        para = check_parallelepiped_axioms(X, 3)
        nil = check_axioms(X, 3)
        assert para.all_ok == nil.is_nilspace
        assert para.all_ok


def test_doctored_space_fails_closing(d1z2):
    tables = {n: set(d1z2.cubes(n)) for n in (1, 2)}
    removed = sorted(tables[2])[3]
    tables[2].discard(removed)
    bad = ExplicitCubespace(2, tables)
    para = check_parallelepiped_axioms(bad, 2)
    assert not para.all_ok
    nil = check_axioms(bad, 2)
    assert not nil.is_nilspace


def test_doctored_space_fails_ergodicity(d1z2):
    tables = {1: set(d1z2.cubes(1)), 2: set(d1z2.cubes(2))}
    tables[1].discard((0, 1))
    tables[1].discard((1, 0))
    bad = ExplicitCubespace(2, tables)
    assert not check_parallelepiped_axioms(bad, 2).full_p1
    assert not check_axioms(bad, 2).ergodic_ok


def test_simplicial_extension_of_an_edge_pattern(d1z2):
    # extend values on the three single-coordinate supports of {0,1}^2
    pattern = [(0, 0), (1, 0), (0, 1)]
    f = {(0, 0): 0, (1, 0): 1, (0, 1): 1}
    full = simplicial_extend(d1z2, 2, pattern, f)
    q = tuple(full[v] for v in cb.vertices(2))
    assert d1z2.membership(2, q)
    for v in pattern:
        assert full[v] == f[v]


def test_simplicial_extension_rejects_non_closed_pattern(d1z2):
    with pytest.raises(ValueError):
        simplicial_extend(d1z2, 2, [(1, 1)], {(1, 1): 0})


def test_concatenation(d1z3):
    cubes = sorted(d1z3.cubes(2))
    rng = random.Random(7)
    done = 0
    while done < 30:
        q1 = rng.choice(cubes)
        q2 = rng.choice(cubes)
        if q1[2:] != q2[:2]:
            continue
        out = concatenate_cubes(d1z3, q1, q2, 2)
        assert d1z3.membership(2, out)
        done += 1


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_tricube_composition_is_a_cube(seed):
    rng = random.Random(seed)
    X = abelian_Dk(gr.CyclicProduct((3,)), 1)
    n = 2
    # build a tricube morphism by extending random subcube data greedily:
    # start from a random 2-cube at v=(0,0) and complete the rest by
    # simplicial extension of the lambda-embedded pattern
    cubes = sorted(X.cubes(n))
    base = rng.choice(cubes)
    pattern = {}
    for w in cb.vertices(n):
        pattern[cb.tricube_lambda_embed(cb.tricube_embed((0, 0), w))] = base[cb.vertex_index(w)]
    full = simplicial_extend(X, 2 * n, pattern.keys(), pattern)
    t = {}
    for p in cb.tricube_points(n):
        t[p] = full[cb.tricube_lambda_embed(p)]
    out = tricube_compose(X, t, n)
    assert X.membership(n, out)
    assert out == tuple(t[cb.outer_point(v)] for v in cb.vertices(n))
