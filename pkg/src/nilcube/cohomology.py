"""Cocycles on finite cubespaces, coboundaries and the boundary map,
abelian extensions and the model space M(rho), cross-section cocycles,
extension isomorphisms and validation, and the tricube alternating sum.

A cocycle of degree d takes values in a finite abelian group and is
stored as a table on the enumerated (d+1)-cubes (full value tuples in
colex vertex order).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import cubes as cb
from .cubespace import Cubespace
from .groups import FiniteAbelianGroup, solve_abelian_linear_system
from .structure import lift_cube_through

_TABLE_CAP = 1_000_000


@dataclass
class Cocycle:
    """Degree-d map on the (d+1)-cubes with the automorphism-sign and
    concatenation laws."""

    X: Cubespace
    k: int  # degree
    A: FiniteAbelianGroup
    table: Dict[tuple, int]

    def __call__(self, q) -> int:
        return self.table[tuple(q)]

    @property
    def domain_dim(self) -> int:
        return self.k + 1


def _check_table_size(X: Cubespace, n: int):
    if X.size ** (1 << n) > _TABLE_CAP and len(X.cubes(n)) > _TABLE_CAP:
        raise ValueError("cocycle table too large")


def zero_cocycle(X: Cubespace, k: int, A: FiniteAbelianGroup) -> Cocycle:
    return Cocycle(X, k, A, {q: 0 for q in X.cubes(k + 1)})


def cocycle_sub(r1: Cocycle, r2: Cocycle) -> Cocycle:
    assert r1.k == r2.k and r1.X is r2.X
    A = r1.A
    return Cocycle(r1.X, r1.k, A, {q: A.op(v, A.inv(r2.table[q])) for q, v in r1.table.items()})


def _sigma_abelian(A: FiniteAbelianGroup, vals: Sequence[int]) -> int:
    acc = 0
    for j, v in enumerate(vals):
        acc = A.op(acc, v if bin(j).count("1") % 2 == 0 else A.inv(v))
    return acc


def validate_cocycle(rho: Cocycle):
    """None, or a witness describing the first failing law."""
    X, A, n = rho.X, rho.A, rho.domain_dim
    dom = X.cubes(n)
    if set(rho.table) != dom:
        return ("domain", None)
    for theta in cb.automorphism_group(n):
        tbl = theta.to_morphism().index_table()
        r = theta.r()
        for q in dom:
            qq = tuple(q[t] for t in tbl)
            want = rho.table[q] if r % 2 == 0 else A.inv(rho.table[q])
            if rho.table[qq] != want:
                return ("automorphism", q, theta)
    half = 1 << (n - 1)
    for q1 in dom:
        hi = q1[half:]
        for q2 in dom:
            if q2[:half] != hi:
                continue
            c = q1[:half] + q2[half:]
            if c not in dom:
                continue
            if rho.table[c] != A.op(rho.table[q1], rho.table[q2]):
                return ("concatenation", q1, q2)
    return None


def coboundary_of(X: Cubespace, f: Sequence[int], k: int, A: FiniteAbelianGroup) -> Cocycle:
    """The degree-k coboundary q |-> sigma_{k+1}(f o q)."""
    _check_table_size(X, k + 1)
    table = {}
    for q in X.cubes(k + 1):
        table[q] = _sigma_abelian(A, [f[x] for x in q])
    return Cocycle(X, k, A, table)


def boundary(rho: Cocycle) -> Cocycle:
    """The boundary: (d rho)(q) = rho(q(.,0)) - rho(q(.,1)), one degree
    up.  Accepts degree -1 (tables on points)."""
    X, A = rho.X, rho.A
    n = rho.domain_dim + 1
    _check_table_size(X, n)
    half = 1 << (n - 1)
    table = {}
    for q in X.cubes(n):
        table[q] = A.op(rho.table[q[:half]], A.inv(rho.table[q[half:]]))
    return Cocycle(X, rho.k + 1, A, table)


def point_function_cocycle(X: Cubespace, f: Sequence[int], A: FiniteAbelianGroup) -> Cocycle:
    """Degree -1: a bare function on points, the domain of the boundary."""
    return Cocycle(X, -1, A, {(x,): f[x] for x in range(X.size)})


def is_coboundary(rho: Cocycle):
    """A function f with coboundary_of(f) = rho, or None.  Exact: the
    defining equations are integer-linear over A and solved by Smith
    normal form."""
    X, A = rho.X, rho.A
    eqs = []
    for q in X.cubes(rho.domain_dim):
        coeffs = [0] * X.size
        for j, x in enumerate(q):
            coeffs[x] += 1 if bin(j).count("1") % 2 == 0 else -1
        eqs.append((coeffs, rho.table[q]))
    f = solve_abelian_linear_system(A, X.size, eqs)
    if f is None:
        return None
    check = coboundary_of(X, f, rho.k, A)
    assert check.table == rho.table
    return f


def cocycles_equivalent(r1: Cocycle, r2: Cocycle) -> bool:
    return is_coboundary(cocycle_sub(r1, r2)) is not None


def enumerate_cocycles(X: Cubespace, k: int, A: FiniteAbelianGroup, cap: int = 1 << 20):
    """All valid degree-k cocycle tables by exhaustive enumeration
    (intended for tiny spaces)."""
    dom = sorted(X.cubes(k + 1))
    if A.order ** len(dom) > cap:
        raise ValueError("cocycle enumeration too large")
    out = []
    for vals in itertools.product(range(A.order), repeat=len(dom)):
        rho = Cocycle(X, k, A, dict(zip(dom, vals)))
        if validate_cocycle(rho) is None:
            out.append(rho)
    return out


def cohomology_classes(cocycles: Sequence[Cocycle]):
    """Group a list of cocycles into equivalence classes (difference a
    coboundary); returns the list of classes (lists of cocycles)."""
    classes: List[List[Cocycle]] = []
    for rho in cocycles:
        for cls in classes:
            if cocycles_equivalent(rho, cls[0]):
                cls.append(rho)
                break
        else:
            classes.append([rho])
    return classes


# ---------------------------------------------------------------------------
# extensions


@dataclass
class ExtensionData:
    """A degree-k extension: Y -> X with fibres a free A-orbit, fibre
    cube differences of degree k."""

    Y: Cubespace
    X: Cubespace
    pi: List[int]  # Y point -> X point
    A: FiniteAbelianGroup
    k: int
    act: Callable[[int, int], int]  # (a, y) -> y shifted by a


class ExtensionSpace(Cubespace):
    """The model extension M(rho) of a cocycle rho of degree d on X:
    points are pairs (x, z) in X x A.  A map f is a cube iff its base
    part is a cube of X and, on dimension d+1 (and on every (d+1)-face
    in higher dimensions), rho of the base equals minus the alternating
    sum of the fibre part."""

    provenance = "extension"

    def __init__(self, rho: Cocycle):
        self.rho = rho
        self.base = rho.X
        self.A = rho.A
        self.d = rho.k  # extension degree; special dimension is d+1
        if self.base.step is None:
            raise ValueError("the base needs a step bound")
        step = max(self.base.step + 1, self.d)
        super().__init__(self.base.size * self.A.order, step=step, dim_cap=step + 2)

    def encode(self, x: int, z: int) -> int:
        return x * self.A.order + z

    def decode(self, p: int):
        return divmod(p, self.A.order)

    def _special_ok(self, xs: tuple, zs: tuple) -> bool:
        return self.rho.table[xs] == self.A.inv(_sigma_abelian(self.A, zs))

    def _membership(self, n, values):
        xs = tuple(p // self.A.order for p in values)
        zs = tuple(p % self.A.order for p in values)
        if not self.base.membership(n, xs):
            return False
        d1 = self.d + 1
        if n < d1:
            return True
        if n == d1:
            return self._special_ok(xs, zs)
        for phi in cb.enumerate_face_maps(d1, n):
            tbl = phi.index_table()
            if not self._special_ok(tuple(xs[t] for t in tbl), tuple(zs[t] for t in tbl)):
                return False
        return True

    def as_extension_data(self) -> ExtensionData:
        pi = [p // self.A.order for p in range(self.size)]
        return ExtensionData(
            self, self.base, pi, self.A, self.d,
            lambda a, y: (y // self.A.order) * self.A.order + self.A.op(y % self.A.order, a),
        )

    def obvious_section(self) -> List[int]:
        return [self.encode(x, 0) for x in range(self.base.size)]


def build_extension(rho: Cocycle) -> ExtensionSpace:
    bad = validate_cocycle(rho)
    if bad is not None:
        raise ValueError("not a cocycle: %r" % (bad,))
    return ExtensionSpace(rho)


def validate_extension(ext: ExtensionData, n_max: int = 3):
    """None, or a witness: per dimension, cube projection must be onto
    the base cube set and each projection fibre must be exactly the
    degree-k perturbations of any one of its members."""
    from .cubegroups import enumerate_cubes
    from .groups import maximal_degree_k_filtration

    Y, X, A, k = ext.Y, ext.X, ext.A, ext.k
    afilt = maximal_degree_k_filtration(A, k)
    for y in range(Y.size):
        seen = {ext.act(a, y) for a in range(A.order)}
        if len(seen) != A.order or any(ext.pi[p] != ext.pi[y] for p in seen):
            return ("action", y)
    for n in range(1, n_max + 1):
        ycubes = Y.cubes(n)
        xcubes = X.cubes(n)
        by_proj: Dict[tuple, set] = {}
        for q in ycubes:
            pq = tuple(ext.pi[p] for p in q)
            if pq not in xcubes:
                return ("projection-not-cube", n, q)
            by_proj.setdefault(pq, set()).add(q)
        if set(by_proj) != xcubes:
            missing = sorted(xcubes - set(by_proj))[0]
            return ("projection-not-onto", n, missing)
        acubes = list(enumerate_cubes(afilt, n))
        for pq, qs in by_proj.items():
            ref = next(iter(qs))
            pert = {tuple(ext.act(a, y) for a, y in zip(av, ref)) for av in acubes}
            if pert != qs:
                return ("fibre-correspondence", n, pq)
    return None


def _fibre_difference(ext: ExtensionData, y1: int, y2: int) -> int:
    """The unique a with act(a, y1) = y2."""
    for a in range(ext.A.order):
        if ext.act(a, y1) == y2:
            return a
    raise ValueError("points are not in one fibre")


def cross_section_cocycle(ext: ExtensionData, s: Sequence[int], lift_checks: int = 2) -> Cocycle:
    """The cocycle generated by a cross section s of a degree-k
    extension: rho_s(q) = sigma_{k+1}(f o q') for any cube lift q' of q,
    with f(y) = s(pi(y)) - y.  Independence of the lift is spot-checked
    with differently ordered lift searches."""
    Y, X, A, k = ext.Y, ext.X, ext.A, ext.k
    if any(ext.pi[s[x]] != x for x in range(X.size)):
        raise ValueError("not a section")
    f = [_fibre_difference(ext, y, s[ext.pi[y]]) for y in range(Y.size)]
    fibres: Dict[int, List[int]] = {}
    for y in range(Y.size):
        fibres.setdefault(ext.pi[y], []).append(y)
    rev = {x: list(reversed(ys)) for x, ys in fibres.items()}
    table = {}
    for q in X.cubes(k + 1):
        lift = lift_cube_through(Y, lambda y: ext.pi[y], k + 1, q, fibres=fibres)
        if lift is None:
            raise ValueError("base cube does not lift")
        val = _sigma_abelian(A, [f[y] for y in lift])
        if lift_checks:
            lift2 = lift_cube_through(Y, lambda y: ext.pi[y], k + 1, q, fibres=rev)
            val2 = _sigma_abelian(A, [f[y] for y in lift2])
            assert val == val2, "cross-section value depends on the lift"
        table[q] = val
    rho = Cocycle(X, k, A, table)
    bad = validate_cocycle(rho)
    assert bad is None, bad
    return rho


def extension_iso(ext: ExtensionData, s: Sequence[int], n_max: int = 3):
    """The isomorphism theta: Y -> M(rho_s), theta(y) = (pi(y), y - s(pi(y))).
    Returns (theta, M); membership tables are checked to transport
    exactly up to n_max."""
    rho = cross_section_cocycle(ext, s)
    M = build_extension(rho)
    theta = []
    for y in range(ext.Y.size):
        z = _fibre_difference(ext, s[ext.pi[y]], y)
        theta.append(M.encode(ext.pi[y], z))
    assert sorted(theta) == list(range(M.size)), "not a bijection"
    for n in range(1, n_max + 1):
        img = {tuple(theta[y] for y in q) for q in ext.Y.cubes(n)}
        assert img == set(M.cubes(n)), "cube tables do not transport at dimension %d" % n
    return theta, M


# ---------------------------------------------------------------------------
# tricube sums


def tricube_sum(t: Dict[tuple, int], xi: Dict[tuple, int], k: int, A: FiniteAbelianGroup) -> int:
    """beta(t, xi) = sum over v of (-1)^|v| xi(t o psi_v) for a tricube
    map t and a table xi on the k-cubes."""
    acc = 0
    for v in cb.vertices(k):
        sub = tuple(t[cb.tricube_embed(v, w)] for w in cb.vertices(k))
        val = xi[sub]
        acc = A.op(acc, val if sum(v) % 2 == 0 else A.inv(val))
    return acc


def tricube_outer(t: Dict[tuple, int], k: int) -> tuple:
    """The outer-point reading t o omega_k."""
    return tuple(t[cb.outer_point(v)] for v in cb.vertices(k))
