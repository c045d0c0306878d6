"""Finite groups, filtrations, quotients, coset spaces, and exact linear
algebra over finite abelian groups.

Group elements are integer indices 0..order-1 with 0 the identity.
Structured groups (cyclic products, Heisenberg mod m) compute the law on
the fly; table groups materialize and validate the axioms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Iterable, Optional, Sequence


class FiniteGroup:
    """Base interface: order, op, inv, identity 0."""

    order: int

    def op(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    def elements(self):
        return range(self.order)

    def commutator(self, a: int, b: int) -> int:
        return self.op(self.op(self.inv(a), self.inv(b)), self.op(a, b))

    def power(self, a: int, e: int) -> int:
        if e < 0:
            return self.power(self.inv(a), -e)
        out = 0
        while e:
            if e & 1:
                out = self.op(out, a)
            a = self.op(a, a)
            e >>= 1
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.op(x, a)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(
            self.op(a, b) == self.op(b, a)
            for a in self.elements()
            for b in self.elements()
        )

    def validate(self):
        """Exhaustive associativity / identity / inverse check."""
        n = self.order
        for a in range(n):
            if self.op(a, 0) != a or self.op(0, a) != a:
                raise ValueError("identity axiom fails at %d" % a)
            ia = self.inv(a)
            if self.op(a, ia) != 0 or self.op(ia, a) != 0:
                raise ValueError("inverse axiom fails at %d" % a)
        for a in range(n):
            for b in range(n):
                ab = self.op(a, b)
                for c in range(n):
                    if self.op(ab, c) != self.op(a, self.op(b, c)):
                        raise ValueError("associativity fails at (%d,%d,%d)" % (a, b, c))


class TableGroup(FiniteGroup):
    def __init__(self, table: Sequence[Sequence[int]], validate: bool = True):
        self.table = [tuple(row) for row in table]
        self.order = len(self.table)
        self._inv = [None] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.table[a][b] == 0:
                    self._inv[a] = b
        if validate:
            self.validate()

    def op(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self._inv[a]


class CyclicProduct(FiniteGroup):
    """Direct product of cyclic groups Z/m1 x ... x Z/mr (abelian)."""

    def __init__(self, moduli: Sequence[int]):
        if not moduli or any(m < 1 for m in moduli):
            raise ValueError("moduli must be positive")
        self.moduli = tuple(moduli)
        self.order = 1
        for m in self.moduli:
            self.order *= m

    def tuple_of(self, a: int):
        out = []
        for m in self.moduli:
            out.append(a % m)
            a //= m
        return tuple(out)

    def index_of(self, t) -> int:
        a, mult = 0, 1
        for x, m in zip(t, self.moduli):
            a += (x % m) * mult
            mult *= m
        return a

    def op(self, a, b):
        ta, tb = self.tuple_of(a), self.tuple_of(b)
        return self.index_of(tuple(x + y for x, y in zip(ta, tb)))

    def inv(self, a):
        return self.index_of(tuple(-x for x in self.tuple_of(a)))


class Heisenberg(FiniteGroup):
    """Upper unitriangular 3x3 matrices over Z/m; (a,b,c) has a, b on the
    superdiagonal and c in the corner; (a,b,c)(a',b',c') =
    (a+a', b+b', c+c'+a*b')."""

    def __init__(self, m: int):
        if m < 2:
            raise ValueError("modulus must be at least 2")
        self.m = m
        self.order = m ** 3

    def tuple_of(self, x: int):
        m = self.m
        return (x % m, (x // m) % m, x // (m * m))

    def index_of(self, t) -> int:
        m = self.m
        a, b, c = (v % m for v in t)
        return a + m * b + m * m * c

    def op(self, x, y):
        a, b, c = self.tuple_of(x)
        d, e, f = self.tuple_of(y)
        return self.index_of((a + d, b + e, c + f + a * e))

    def inv(self, x):
        a, b, c = self.tuple_of(x)
        return self.index_of((-a, -b, -c + a * b))


def subgroup_closure(G: FiniteGroup, generators: Iterable[int]) -> frozenset:
    seen = {0}
    frontier = [0]
    gens = [g for g in generators]
    gens += [G.inv(g) for g in gens]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = G.op(x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)


def commutator_subgroup(G: FiniteGroup, H: frozenset, K: frozenset) -> frozenset:
    gens = {G.commutator(h, k) for h in H for k in K}
    return subgroup_closure(G, gens)


def is_normal(G: FiniteGroup, N: frozenset) -> bool:
    return all(G.op(G.op(g, n), G.inv(g)) in N for g in G.elements() for n in N)


@dataclass
class Filtration:
    """A chain G_0 >= G_1 >= ... of subgroups of `group`, eventually
    trivial, with [G_i, G_j] <= G_{i+j}.  chain[d] is G_d; indices past
    the stored chain are the trivial subgroup."""

    group: FiniteGroup
    chain: tuple

    def __post_init__(self):
        self.chain = tuple(frozenset(s) for s in self.chain)
        if not self.chain:
            raise ValueError("empty chain")
        # normalize: ensure the chain ends at the trivial subgroup
        if self.chain[-1] != frozenset({0}):
            self.chain = self.chain + (frozenset({0}),)

    def subgroup(self, d: int) -> frozenset:
        if d < 0:
            raise ValueError("negative filtration index")
        if d < len(self.chain):
            return self.chain[d]
        return frozenset({0})

    @property
    def degree(self) -> int:
        """Smallest k with G_{k+1} trivial."""
        d = len(self.chain) - 1
        while d > 0 and self.chain[d] == frozenset({0}):
            d -= 1
        if self.chain[d] == frozenset({0}):
            return -1 if self.chain[0] == frozenset({0}) else 0
        return d


def validate_filtration(filt: Filtration):
    """None if valid; otherwise a violation witness.

    Checks nesting, subgroup closure, and every pairwise commutator
    inclusion [G_i, G_j] <= G_{i+j} by exhaustive enumeration.
    """
    G = filt.group
    chain = filt.chain
    for d, S in enumerate(chain):
        if 0 not in S:
            return ("not-subgroup", d, None, None)
        for a in S:
            if G.inv(a) not in S:
                return ("not-subgroup", d, a, None)
            for b in S:
                if G.op(a, b) not in S:
                    return ("not-subgroup", d, a, b)
    for d in range(1, len(chain)):
        if not chain[d] <= chain[d - 1]:
            return ("not-nested", d, None, None)
    deg = len(chain)
    for i in range(deg):
        for j in range(deg):
            target = filt.subgroup(i + j)
            for g in chain[i]:
                for h in chain[j]:
                    if G.commutator(g, h) not in target:
                        return ("commutator", (i, j), g, h)
    return None


def lower_central_series(G: FiniteGroup) -> Filtration:
    full = frozenset(G.elements())
    chain = [full, full]
    while chain[-1] != frozenset({0}):
        nxt = commutator_subgroup(G, full, chain[-1])
        if nxt == chain[-1]:
            raise ValueError("lower central series does not reach the trivial subgroup")
        chain.append(nxt)
    return Filtration(G, tuple(chain))


def make_heisenberg(m: int):
    """Heisenberg group mod m with its lower central series."""
    G = Heisenberg(m)
    filt = lower_central_series(G)
    return G, filt


def maximal_degree_k_filtration(A: FiniteGroup, k: int) -> Filtration:
    if k < 0:
        raise ValueError("degree must be nonnegative")
    if not A.is_abelian():
        raise ValueError("the maximal degree-k filtration needs an abelian group")
    full = frozenset(A.elements())
    return Filtration(A, tuple([full] * (k + 1) + [frozenset({0})]))


def shift_filtration(filt: Filtration, ell: int) -> Filtration:
    """The shifted filtration with d-th term G_{d+ell}.  Its 0-th term may
    be a proper subgroup of the ambient group (non-ergodic cube sets)."""
    if ell < 0:
        raise ValueError("shift must be nonnegative")
    chain = tuple(filt.subgroup(d + ell) for d in range(len(filt.chain)))
    return Filtration(filt.group, chain)


class QuotientGroup(FiniteGroup):
    def __init__(self, G: FiniteGroup, N: frozenset):
        if not is_normal(G, N):
            raise ValueError("subgroup is not normal")
        self.base = G
        self.N = N
        cosets = {}
        for g in G.elements():
            coset = frozenset(G.op(g, n) for n in N)
            cosets.setdefault(min(coset), coset)
        # the identity coset contains 0, so sorting puts it at index 0
        reps = sorted(cosets)
        self.reps = reps
        self._index = {}
        for idx, rep in enumerate(reps):
            for g in cosets[rep]:
                self._index[g] = idx
        self.order = len(reps)

    def project(self, g: int) -> int:
        return self._index[g]

    def op(self, a, b):
        return self._index[self.base.op(self.reps[a], self.reps[b])]

    def inv(self, a):
        return self._index[self.base.inv(self.reps[a])]


def quotient(G: FiniteGroup, N: frozenset):
    Q = QuotientGroup(G, N)
    return Q, Q.project


def push_filtration(filt: Filtration, Q: QuotientGroup) -> Filtration:
    chain = tuple(frozenset(Q.project(g) for g in S) for S in filt.chain)
    return Filtration(Q, chain)


class CosetSpace:
    """Left cosets g*Gamma of a subgroup with the left G-action; points
    indexed by sorted minimal representatives, identity coset first."""

    def __init__(self, G: FiniteGroup, Gamma: frozenset):
        self.group = G
        self.Gamma = frozenset(Gamma)
        cosets = {}
        for g in G.elements():
            coset = frozenset(G.op(g, h) for h in self.Gamma)
            cosets.setdefault(min(coset), coset)
        # Gamma itself contains 0, so it sorts to index 0
        self.reps = sorted(cosets)
        self._index = {}
        for idx, rep in enumerate(self.reps):
            for g in cosets[rep]:
                self._index[g] = idx
        self.size = len(self.reps)

    def project(self, g: int) -> int:
        return self._index[g]

    def act(self, g: int, coset_idx: int) -> int:
        return self._index[self.group.op(g, self.reps[coset_idx])]


# ---------------------------------------------------------------------------
# finite abelian groups in invariant-factor form, and exact linear algebra


class FiniteAbelianGroup(FiniteGroup):
    """Z/d1 x ... x Z/dr with d1 | d2 | ... | dr."""

    def __init__(self, invariants: Sequence[int]):
        invs = [int(d) for d in invariants if int(d) > 1]
        for a, b in zip(invs, invs[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must divide in sequence")
        self.invariants = tuple(invs)
        self.order = 1
        for d in self.invariants:
            self.order *= d

    def tuple_of(self, a: int):
        out = []
        for d in self.invariants:
            out.append(a % d)
            a //= d
        return tuple(out)

    def index_of(self, t) -> int:
        a, mult = 0, 1
        for x, d in zip(t, self.invariants):
            a += (x % d) * mult
            mult *= d
        return a

    def op(self, a, b):
        return self.index_of(
            tuple(x + y for x, y in zip(self.tuple_of(a), self.tuple_of(b)))
        )

    def inv(self, a):
        return self.index_of(tuple(-x for x in self.tuple_of(a)))

    def scale(self, e: int, a: int) -> int:
        return self.index_of(tuple(e * x for x in self.tuple_of(a)))


def _prime_factors(n: int):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def abelian_invariants(G: FiniteGroup):
    """Invariant factors of a finite abelian group, from p-torsion counts."""
    if not G.is_abelian():
        raise ValueError("group is not abelian")
    n = G.order
    if n == 1:
        return ()
    primary = {}  # prime -> exponents of cyclic p-power factors, descending
    for p in _prime_factors(n):
        # s[i] = log_p #{x : p^i x = 0}; s[i] - s[i-1] counts the cyclic
        # p-factors of order >= p^i
        s = [0]
        while True:
            i = len(s)
            tor = sum(1 for a in G.elements() if G.power(a, p ** i) == 0)
            e = 0
            while p ** e < tor:
                e += 1
            assert p ** e == tor
            if e == s[-1]:
                break
            s.append(e)
        counts = [s[i] - s[i - 1] for i in range(1, len(s))]
        exps = []
        for i, c in enumerate(counts, start=1):
            nxt = counts[i] if i < len(counts) else 0
            exps.extend([i] * (c - nxt))
        primary[p] = sorted(exps, reverse=True)
    r = max(len(v) for v in primary.values())
    invariants = []
    for slot in range(r):
        d = 1
        for p, exps in primary.items():
            if slot < len(exps):
                d *= p ** exps[slot]
        invariants.append(d)
    invariants.reverse()  # smallest first, divisibility chain
    return tuple(invariants)


def smith_normal_form(M):
    """Integer Smith normal form with transforms: returns (U, D, V) with
    U*M*V = D, U and V unimodular, D diagonal with d1 | d2 | ...

    Plain row/column reduction; fine at the matrix sizes that arise here.
    """
    D = [list(row) for row in M]
    r = len(D)
    c = len(D[0]) if r else 0
    U = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    V = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def row_op(i, j, k):  # row_i += k * row_j
        D[i] = [a + k * b for a, b in zip(D[i], D[j])]
        U[i] = [a + k * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, k):  # col_i += k * col_j
        for row in D:
            row[i] += k * row[j]
        for row in V:
            row[i] += k * row[j]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(r, c):
        # find a pivot
        piv = None
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if D[i][j] != 0 and (best is None or abs(D[i][j]) < best):
                    best = abs(D[i][j])
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, r):
                if D[i][t] != 0:
                    q = D[i][t] // D[t][t]
                    row_op(i, t, -q)
                    if D[i][t] != 0:
                        swap_rows(i, t)
                        dirty = True
            for j in range(t + 1, c):
                if D[t][j] != 0:
                    q = D[t][j] // D[t][t]
                    col_op(j, t, -q)
                    if D[t][j] != 0:
                        swap_cols(j, t)
                        dirty = True
            if not dirty:
                break
        t += 1
    # fix divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(min(r, c) - 1):
            a, b = D[i][i], D[i + 1][i + 1]
            if b % (a if a else 1) != 0 or (a == 0 and b != 0):
                # fold D[i+1][i+1] into position i via a column add then re-reduce
                col_op(i, i + 1, 1)
                g = _ext_reduce(D, U, V, i)
                changed = True
    for i in range(min(r, c)):
        if D[i][i] < 0:
            D[i] = [-x for x in D[i]]
            U[i] = [-x for x in U[i]]
    return U, D, V


def _ext_reduce(D, U, V, t):
    """Re-eliminate the 2x2 block at t after a column mix (helper for the
    divisibility fix-up in smith_normal_form)."""
    r, c = len(D), len(D[0])

    def row_op(i, j, k):
        D[i] = [a + k * b for a, b in zip(D[i], D[j])]
        U[i] = [a + k * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, k):
        for row in D:
            row[i] += k * row[j]
        for row in V:
            row[i] += k * row[j]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    while True:
        piv = None
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if D[i][j] != 0 and (best is None or abs(D[i][j]) < best):
                    best = abs(D[i][j])
                    piv = (i, j)
        if piv is None:
            return
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        dirty = False
        for i in range(t + 1, r):
            if D[i][t] != 0:
                row_op(i, t, -(D[i][t] // D[t][t]))
                if D[i][t] != 0:
                    dirty = True
        for j in range(t + 1, c):
            if D[t][j] != 0:
                col_op(j, t, -(D[t][j] // D[t][t]))
                if D[t][j] != 0:
                    dirty = True
        if not dirty:
            return


def _solve_mod(e: int, b: int, d: int):
    """Solutions x of e*x = b (mod d), as (particular, modulus-of-kernel)
    or None."""
    if d == 1:
        return 0, 1
    g = gcd(e % d, d)
    if b % g != 0:
        return None
    if g == d:
        return 0, 1  # e = 0 mod d, b = 0 mod d: anything works, kernel is all
    ee, bb, dd = (e % d) // g, (b // g) % (d // g), d // g
    x = (bb * pow(ee, -1, dd)) % dd
    return x, dd


def solve_abelian_linear_system(A: FiniteAbelianGroup, num_unknowns: int, equations):
    """Solve integer-coefficient linear equations over A.

    `equations` is a list of (coeffs, const) with coeffs a length-r list
    of ints and const an element index of A.  Returns a list of element
    indices, or None if unsolvable.  Decided exactly via Smith normal
    form per invariant factor.
    """
    r = num_unknowns
    if not equations:
        return [0] * r
    if r == 0:
        return [] if all(eq[1] == 0 for eq in equations) else None
    M = [list(eq[0]) for eq in equations]
    U, D, V = smith_normal_form(M)
    consts = [A.tuple_of(eq[1]) for eq in equations]
    ncomp = len(A.invariants)
    # solve per invariant factor
    sol_components = []  # per component: list of length r residues
    for t in range(ncomp):
        d = A.invariants[t]
        c = [row[t] for row in consts]
        uc = [sum(U[i][j] * c[j] for j in range(len(c))) % d for i in range(len(c))]
        y = [0] * r
        ok = True
        for i in range(len(c)):
            e = D[i][i] if i < min(len(D), r) else 0
            if i < r:
                res = _solve_mod(e, uc[i], d)
                if res is None:
                    ok = False
                    break
                y[i] = res[0]
            elif uc[i] % d != 0:
                # equation row with no remaining unknown: 0 = const
                ok = False
                break
        if not ok:
            return None
        x = [sum(V[i][j] * y[j] for j in range(r)) % d for i in range(r)]
        sol_components.append(x)
    out = []
    for i in range(r):
        out.append(A.index_of(tuple(sol_components[t][i] for t in range(ncomp))))
    # final exact check
    for coeffs, const in equations:
        acc = 0
        for cf, x in zip(coeffs, out):
            acc = A.op(acc, A.scale(cf, x))
        if acc != const:
            raise AssertionError("solver produced a non-solution")
    return out
