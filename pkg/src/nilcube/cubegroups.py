"""Cube groups of a finite filtered group.

A cube of dimension n over G is stored as a tuple of 2^n group element
indices, position j holding the value at the vertex with index j (colex
order).  Everything here is exact: membership is decided by the unique
upper-face factorization or by the alternating-product equations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from . import cubes
from .groups import FiniteGroup, Filtration, shift_filtration


def sigma(values: Sequence[int], n: int, G: FiniteGroup) -> int:
    """Gray alternating product: product over j = 2^n-1 down to 0 of
    g(gray(j)) with exponent (-1)^j."""
    out = 0
    for j in range((1 << n) - 1, -1, -1):
        g = values[cubes.gray_index(j)]
        out = G.op(out, g if j % 2 == 0 else G.inv(g))
    return out


def sigma_recursive(values: Sequence[int], n: int, G: FiniteGroup) -> int:
    """Reference implementation by the defining recursion
    sigma_n(g) = sigma_{n-1}(g(.,1))^{-1} sigma_{n-1}(g(.,0))."""
    if n == 0:
        return values[0]
    half = 1 << (n - 1)
    s0 = sigma_recursive(values[:half], n - 1, G)
    s1 = sigma_recursive(values[half:], n - 1, G)
    return G.op(G.inv(s1), s0)


def upper_face_vertices(n: int):
    """Defining vertices of the upper faces F(v) in colex order: simply
    all vertex indices 0..2^n-1."""
    return list(range(1 << n))


def face_members(v_idx: int, n: int):
    """Vertex indices w with supp(v) contained in supp(w)."""
    return [w for w in range(1 << n) if w & v_idx == v_idx]


def _thresholds(n: int, weights):
    """Required filtration level for the coefficient at F(v), per vertex:
    weight of v, or the weighted sum over supp(v)."""
    out = []
    for v in range(1 << n):
        if weights is None:
            out.append(bin(v).count("1"))
        else:
            out.append(sum(weights[i] for i in range(n) if (v >> i) & 1))
    return out


@dataclass
class Reject:
    """Factorization failure: the first coefficient outside its subgroup."""

    index: int
    coefficient: int
    required_level: int

    def __bool__(self):
        return False


def raw_coefficients(values: Sequence[int], n: int, G: FiniteGroup):
    """Upper-face coefficients by the left-quotient recursion, with no
    subgroup checks.  Every total map has exactly one coefficient tuple;
    membership is the question of where the coefficients live."""
    coeffs = [0] * (1 << n)
    # partial[w] = product so far of g_j over j <= current with v_j <= w
    partial = [0] * (1 << n)
    for i in range(1 << n):
        prefix = partial[i]
        g = G.op(G.inv(prefix), values[i])
        coeffs[i] = g
        if g != 0:
            for w in range(i, 1 << n):
                if w & i == i:
                    partial[w] = G.op(partial[w], g)
        else:
            pass
    return coeffs


def factorize(values: Sequence[int], filt: Filtration, weights=None):
    """Unique factorization of a map {0,1}^n -> G into upper-face
    coefficients, or a Reject naming the first coefficient that fails its
    subgroup condition."""
    n = (len(values) - 1).bit_length()
    assert len(values) == 1 << n
    G = filt.group
    thresholds = _thresholds(n, weights)
    coeffs = [0] * (1 << n)
    partial = [0] * (1 << n)
    for i in range(1 << n):
        g = G.op(G.inv(partial[i]), values[i])
        if g not in filt.subgroup(thresholds[i]):
            return Reject(i, g, thresholds[i])
        coeffs[i] = g
        if g != 0:
            for w in range(i, 1 << n):
                if w & i == i:
                    partial[w] = G.op(partial[w], g)
    return coeffs


def multiply_out(coeffs: Sequence[int], n: int, G: FiniteGroup):
    """Pointwise product q(w) = prod over v <= w (colex increasing) of
    the coefficient at F(v)."""
    values = [0] * (1 << n)
    for w in range(1 << n):
        acc = 0
        for v in range(w + 1):
            if w & v == v:
                acc = G.op(acc, coeffs[v])
        values[w] = acc
    return tuple(values)


def is_cube(values: Sequence[int], filt: Filtration, weights=None) -> bool:
    return not isinstance(factorize(values, filt, weights), Reject)


def is_cube_by_equations(values: Sequence[int], filt: Filtration) -> bool:
    """Membership via sigma_m(q o phi) in G_m for every canonical m-face
    map phi, m = 0..n."""
    n = (len(values) - 1).bit_length()
    G = filt.group
    full = frozenset(G.elements())
    for m in range(n + 1):
        Gm = filt.subgroup(m)
        if Gm == full:
            continue  # sigma always lands in the whole group
        for tbl in cubes.face_index_tables(m, n):
            sub = [values[t] for t in tbl]
            if sigma(sub, m, G) not in Gm:
                return False
    return True


def enumerate_cubes(filt: Filtration, n: int, weights=None):
    """All cubes of dimension n, generated from coefficient tuples."""
    G = filt.group
    thresholds = _thresholds(n, weights)
    pools = [sorted(filt.subgroup(t)) for t in thresholds]
    for coeffs in itertools.product(*pools):
        yield multiply_out(coeffs, n, G)


def count_cubes(filt: Filtration, n: int, weights=None) -> int:
    total = 1
    for t in _thresholds(n, weights):
        total *= len(filt.subgroup(t))
    return total


class CornerError(ValueError):
    pass


def corner_premise_violation(corner: dict, n: int, filt: Filtration):
    """Check that every (n-1)-face restriction containing 0^n is a cube;
    return the failing coordinate or None."""
    for i in range(n):
        face = cubes.Face.make(n, {i: 0})
        tbl = face.face_map().index_table()
        sub = [corner[t] for t in tbl]
        if not is_cube(sub, filt):
            return i
    return None


def complete_corner(corner: dict, n: int, filt: Filtration, _check_premise=True):
    """Complete a corner (values on all vertices except 1^n) to a cube.

    Follows the constructive completion argument: quotient out the last
    nontrivial filtration level, recurse, lift the factorization
    coefficients, and correct weight levels 1..d with upper-face factors.
    Returns the full value tuple; canonical in the sense that the same
    corner always yields the same completion.
    """
    if n < 1:
        raise CornerError("corners of dimension 0 are disallowed")
    top = (1 << n) - 1
    if _check_premise:
        bad = corner_premise_violation(corner, n, filt)
        if bad is not None:
            raise CornerError("corner premise fails on the face with coordinate %d = 0" % bad)
    G = filt.group
    d = filt.degree
    if d <= 0:
        # all cubes are constant
        return tuple(corner.get(j, corner[0]) for j in range(1 << n))

    from .groups import QuotientGroup, push_filtration

    Gd = filt.subgroup(d)
    Q = QuotientGroup(G, Gd)
    qfilt = push_filtration(filt, Q)
    qcorner = {j: Q.project(v) for j, v in corner.items()}
    qfull = complete_corner(qcorner, n, qfilt, _check_premise=False)
    # lift: factorize downstairs, lift coefficients into their levels
    qcoeffs = factorize(qfull, qfilt)
    assert not isinstance(qcoeffs, Reject)
    lifted = []
    thresholds = _thresholds(n, None)
    for i, gbar in enumerate(qcoeffs):
        lvl = filt.subgroup(min(thresholds[i], d))
        rep = min(g for g in lvl if Q.project(g) == gbar)
        lifted.append(rep)
    values = list(multiply_out(lifted, n, G))
    # match at 0 by a constant (degree-d) left factor
    c = G.op(corner[0], G.inv(values[0]))
    assert c in Gd
    values = [G.op(c, v) for v in values]
    # correct weight levels 1..min(d, n) with right upper-face factors
    for j in range(1, min(d, n) + 1):
        for v in range(1 << n):
            if v == top or bin(v).count("1") != j:
                continue
            g = G.op(G.inv(values[v]), corner[v])
            if g not in Gd:
                raise CornerError("corner values are inconsistent at vertex %d" % v)
            if g == 0:
                continue
            for w in range(1 << n):
                if w & v == v:
                    values[w] = G.op(values[w], g)
    # remaining corner vertices (weight > d) must agree automatically
    for v in range(1 << n):
        if v != top and values[v] != corner[v]:
            raise CornerError("corner is not completable: mismatch at vertex %d" % v)
    return tuple(values)


def enumerate_completions(corner: dict, n: int, filt: Filtration):
    """All cubes agreeing with the corner off 1^n: the canonical
    completion right-translated at 1^n by the level-n subgroup."""
    values = complete_corner(corner, n, filt)
    G = filt.group
    top = (1 << n) - 1
    out = []
    for g in sorted(filt.subgroup(n)):
        vals = list(values)
        vals[top] = G.op(values[top], g)
        out.append(tuple(vals))
    return out


def arrow(q0: Sequence[int], q1: Sequence[int], n: int, k: int):
    """The k-arrow <q0, q1>_k on {0,1}^{n+k}: q1 on the w = 1^k face,
    q0 elsewhere."""
    out = []
    top = (1 << k) - 1
    for w in range(1 << k):
        src = q1 if w == top else q0
        out.extend(src)
    return tuple(out)


def arrow_membership(q0, q1, n: int, k: int, filt: Filtration, weights=None) -> bool:
    """Membership of the k-arrow in Cu^{n+k}, decided by the filtered
    splitting: q0 a cube, and q0^{-1} q1 a cube of the shifted
    filtration (shift = sum of the final k weights)."""
    G = filt.group
    if weights is None:
        ell = k
        w0 = None
    else:
        assert len(weights) == n + k
        ell = sum(weights[n:])
        w0 = weights[:n]
    if not is_cube(q0, filt, w0):
        return False
    diff = tuple(G.op(G.inv(a), b) for a, b in zip(q0, q1))
    return is_cube(diff, shift_filtration(filt, ell), w0)


# ---------------------------------------------------------------------------
# abelian specials


def is_standard_abelian_cube(values: Sequence[int], A: FiniteGroup) -> bool:
    """Three equivalent tests, all evaluated, asserted to agree:
    (i) q(v) = x + v.h for some x and edge increments h;
    (ii) the modular law q(v or w) + q(v and w) = q(v) + q(w);
    (iii) every 2-face alternating sum vanishes."""
    n = (len(values) - 1).bit_length()
    # (i)
    x = values[0]
    h = [A.op(A.inv(x), values[1 << i]) for i in range(n)]
    rep = True
    for v in range(1 << n):
        acc = x
        for i in range(n):
            if (v >> i) & 1:
                acc = A.op(acc, h[i])
        if acc != values[v]:
            rep = False
            break
    # (ii)
    modular = True
    for v in range(1 << n):
        for w in range(1 << n):
            lhs = A.op(values[v | w], values[v & w])
            rhs = A.op(values[v], values[w])
            if lhs != rhs:
                modular = False
                break
        if not modular:
            break
    # (iii)
    sigma2 = True
    if n >= 2:
        for phi in cubes.enumerate_face_maps(2, n):
            tbl = phi.index_table()
            if sigma([values[t] for t in tbl], 2, A) != 0:
                sigma2 = False
                break
    assert rep == modular == sigma2, "abelian cube characterizations disagree"
    return rep


def is_degree_k_abelian_cube(values: Sequence[int], A: FiniteGroup, k: int) -> bool:
    """Cube of the maximal degree-k structure: every (k+1)-face has
    vanishing alternating sum.  Maps of dimension <= k are all cubes."""
    n = (len(values) - 1).bit_length()
    if n <= k:
        return True
    for phi in cubes.enumerate_face_maps(k + 1, n):
        tbl = phi.index_table()
        acc = 0
        for j, t in enumerate(tbl):
            x = values[t]
            acc = A.op(acc, x if bin(j).count("1") % 2 == 0 else A.inv(x))
        if acc != 0:
            return False
    return True
