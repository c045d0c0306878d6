"""Abstract cubespaces: a finite point set plus a per-dimension cube
membership oracle, with the nilspace / parallelepiped axiom checkers and
the generic constructions (products, cosets, arrow spaces, the slice at a
point, simplicial completion, concatenation, tricube composition,
ergodic components).

Cubes of dimension n are tuples of 2^n point indices in colex vertex
order.  Membership answers are memoized per dimension (write-once).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import cubes as cb
from . import cubegroups as cg
from .groups import CosetSpace, FiniteGroup, Filtration

_CACHE_LIMIT = 1 << 20


class Cubespace:
    """Base class.  Subclasses implement _membership(n, values) for
    n <= self.direct_cap; larger dimensions fall back to the
    (step+1)-face criterion when the step (or an upper bound for it) is
    known."""

    provenance = "abstract"

    def __init__(self, size: int, step: Optional[int] = None, dim_cap: Optional[int] = None):
        if size <= 0:
            raise ValueError("empty cubespaces are rejected")
        self.size = size
        self.step = step  # known step, or a safe upper bound
        self.direct_cap = dim_cap if dim_cap is not None else (step + 2 if step is not None else 3)
        self._member_cache: Dict[int, Dict[tuple, bool]] = {}
        self._cube_sets: Dict[int, frozenset] = {}

    # -- membership -------------------------------------------------------

    def _membership(self, n: int, values: tuple) -> bool:
        raise NotImplementedError

    def membership(self, n: int, values) -> bool:
        values = tuple(values)
        if len(values) != 1 << n:
            raise ValueError("cube of dimension %d needs %d values" % (n, 1 << n))
        if n == 0:
            return 0 <= values[0] < self.size
        if n in self._cube_sets:
            return values in self._cube_sets[n]
        cache = self._member_cache.setdefault(n, {})
        hit = cache.get(values)
        if hit is not None:
            return hit
        if n <= self.direct_cap:
            res = self._membership(n, values)
        elif self.step is not None and n >= self.step + 2:
            res = self._face_criterion(n, values)
        else:
            raise ValueError(
                "dimension %d exceeds cap %d and no step bound is known" % (n, self.direct_cap)
            )
        if len(cache) < _CACHE_LIMIT:
            cache[values] = res
        return res

    def _face_criterion(self, n: int, values: tuple) -> bool:
        """For spaces of step at most k, an n-cube (n >= k+2) is exactly a
        map whose (k+1)-face restrictions are all cubes."""
        k1 = self.step + 1
        for tbl in cb.face_index_tables(k1, n):
            sub = tuple(values[t] for t in tbl)
            if not self.membership(k1, sub):
                return False
        return True

    # -- enumeration ------------------------------------------------------

    def cubes(self, n: int) -> frozenset:
        """The full cube set of dimension n (cached)."""
        if n in self._cube_sets:
            return self._cube_sets[n]
        if n == 0:
            out = frozenset((x,) for x in range(self.size))
        else:
            out = frozenset(self._enumerate_cubes(n))
        self._cube_sets[n] = out
        return out

    def _enumerate_cubes(self, n: int):
        return self._scan_maps(n, corner=False)

    def _pruning_faces(self, n: int, include_top: bool):
        """Face index-tables grouped by their colex-largest vertex, used
        to prune depth-first scans.  Only proper faces below dimension n;
        optionally only faces avoiding the top vertex."""
        by_last: Dict[int, list] = {}
        maxdim = n - 1
        if self.step is not None:
            maxdim = min(maxdim, self.step + 1)
        for dim in range(1, maxdim + 1):
            for face in cb.enumerate_faces(n, dim):
                if not include_top and all(b == 1 for _c, b in face.fixed):
                    continue  # face contains the top vertex
                tbl = face.face_map().index_table()
                last = max(tbl)
                by_last.setdefault(last, []).append((dim, tbl))
        return by_last

    def _scan_maps(self, n: int, corner: bool):
        """DFS over vertex assignments in colex order with face pruning.
        With corner=True, the top vertex is omitted and only faces inside
        the corner domain are checked, yielding exactly the corners."""
        total = 1 << n
        domain = total - 1 if corner else total
        by_last = self._pruning_faces(n, include_top=not corner)
        out = []
        values = [0] * domain

        def rec(i):
            if i == domain:
                if not corner and not self.membership(n, tuple(values)):
                    return
                out.append(tuple(values[:total] if not corner else values))
                return
            for x in range(self.size):
                values[i] = x
                ok = True
                for dim, tbl in by_last.get(i, ()):
                    sub = tuple(values[t] for t in tbl)
                    if not self.membership(dim, sub):
                        ok = False
                        break
                if ok:
                    rec(i + 1)

        rec(0)
        return out

    def corners(self, n: int):
        """All corners: maps on {0,1}^n minus the top vertex whose
        restrictions to the (n-1)-faces through 0^n are cubes.  (Faces
        inside the corner domain are exactly the faces with a coordinate
        fixed to 0, and those sit inside premise faces.)"""
        if n < 1:
            raise ValueError("corners need dimension at least 1")
        return self._scan_maps(n, corner=True)

    def completions(self, n: int, corner_values: Sequence[int]):
        """Points closing a corner to a full cube."""
        corner_values = tuple(corner_values)
        if len(corner_values) != (1 << n) - 1:
            raise ValueError("corner of dimension %d needs %d values" % (n, (1 << n) - 1))
        return [x for x in range(self.size) if self.membership(n, corner_values + (x,))]


def complete_corner_bruteforce(X: Cubespace, n: int, corner_values, check_premise=True):
    """All completions of a corner, after validating the corner premise."""
    corner_values = tuple(corner_values)
    if check_premise:
        for i in range(n):
            face = cb.Face.make(n, {i: 0})
            tbl = face.face_map().index_table()
            sub = tuple(corner_values[t] for t in tbl)
            if not X.membership(n - 1, sub):
                raise ValueError("not a corner: the face with coordinate %d = 0 is not a cube" % i)
    return X.completions(n, corner_values)


# ---------------------------------------------------------------------------
# concrete spaces


class GroupCubespace(Cubespace):
    """The nilspace of a filtered group: cubes are the Host--Kra cubes."""

    provenance = "group"

    def __init__(self, filt: Filtration):
        self.filt = filt
        deg = max(filt.degree, 0)
        super().__init__(filt.group.order, step=deg, dim_cap=max(deg + 1, 1))
        # dimensions past deg+1 go through the face criterion, which hits
        # the cached cube sets instead of refactorizing large tuples

    def _membership(self, n, values):
        return cg.is_cube(values, self.filt)

    def _enumerate_cubes(self, n):
        return set(cg.enumerate_cubes(self.filt, n))


def abelian_Dk(A: FiniteGroup, k: int) -> Cubespace:
    """The degree-k structure on an abelian group."""
    from .groups import maximal_degree_k_filtration

    if not A.is_abelian():
        raise ValueError("degree-k structures need an abelian group")
    return GroupCubespace(maximal_degree_k_filtration(A, k))


class CosetCubespace(Cubespace):
    """Left coset space of a subgroup (not necessarily normal) with cubes
    the projections of the group cubes."""

    provenance = "coset"

    def __init__(self, filt: Filtration, Gamma):
        self.filt = filt
        self.cosets = CosetSpace(filt.group, Gamma)
        deg = max(filt.degree, 0)
        super().__init__(self.cosets.size, step=deg, dim_cap=deg + 2)

    def _membership(self, n, values):
        return self._lift(n, values) is not None

    def _lift(self, n, values):
        """Depth-first search for a group cube projecting to the given
        coset map: vertices in colex order, per-vertex Gamma corrections,
        pruned by the factorization-coefficient subgroup conditions."""
        G = self.filt.group
        reps = self.cosets.reps
        gammas = sorted(self.cosets.Gamma)
        th = cg._thresholds(n, None)
        total = 1 << n
        lift = [0] * total
        partial = [[0] * total]  # stack of partial-product arrays

        def rec(i):
            if i == total:
                return True
            base = reps[values[i]]
            par = partial[-1]
            for gm in gammas:
                cand = G.op(base, gm)
                coeff = G.op(G.inv(par[i]), cand)
                if coeff not in self.filt.subgroup(th[i]):
                    continue
                lift[i] = cand
                nxt = list(par)
                for w in range(i, total):
                    if w & i == i:
                        nxt[w] = G.op(nxt[w], coeff)
                partial.append(nxt)
                if rec(i + 1):
                    return True
                partial.pop()
            return False

        if rec(0):
            return tuple(lift)
        return None

    def _enumerate_cubes(self, n):
        proj = self.cosets.project
        return {tuple(proj(g) for g in q) for q in cg.enumerate_cubes(self.filt, n)}


class ProductCubespace(Cubespace):
    provenance = "product"

    def __init__(self, X: Cubespace, Y: Cubespace):
        self.X, self.Y = X, Y
        step = None
        if X.step is not None and Y.step is not None:
            step = max(X.step, Y.step)
        cap = min(X.direct_cap, Y.direct_cap)
        super().__init__(X.size * Y.size, step=step, dim_cap=cap)

    def encode(self, x: int, y: int) -> int:
        return x * self.Y.size + y

    def decode(self, p: int):
        return divmod(p, self.Y.size)

    def _membership(self, n, values):
        xs = tuple(p // self.Y.size for p in values)
        ys = tuple(p % self.Y.size for p in values)
        return self.X.membership(n, xs) and self.Y.membership(n, ys)

    def _enumerate_cubes(self, n):
        out = []
        for qx in self.X.cubes(n):
            for qy in self.Y.cubes(n):
                out.append(tuple(self.encode(a, b) for a, b in zip(qx, qy)))
        return out


class PointCubespace(Cubespace):
    """The one-point 0-step nilspace."""

    provenance = "point"

    def __init__(self):
        super().__init__(1, step=0, dim_cap=8)

    def _membership(self, n, values):
        return True


class ArrowCubespace(Cubespace):
    """X |><|_k X: pairs whose k-arrow is a cube of X.  k-step (for X of
    step <= k it can be non-ergodic)."""

    provenance = "arrow"

    def __init__(self, X: Cubespace, k: int):
        if k < 1:
            raise ValueError("arrow order must be positive")
        self.X, self.k = X, k
        step = X.step  # the arrow space never has larger step than X
        cap = (X.direct_cap - k) if X.step is None else X.step + 2
        super().__init__(X.size * X.size, step=step, dim_cap=max(cap, 1))

    def encode(self, x0: int, x1: int) -> int:
        return x0 * self.X.size + x1

    def decode(self, p: int):
        return divmod(p, self.X.size)

    def _membership(self, n, values):
        q0 = tuple(p // self.X.size for p in values)
        q1 = tuple(p % self.X.size for p in values)
        return self.X.membership(n + self.k, cg.arrow(q0, q1, n, self.k))

    def _enumerate_cubes(self, n):
        out = []
        for q0 in self.X.cubes(n):
            for q1 in self.X.cubes(n):
                pair = tuple(self.encode(a, b) for a, b in zip(q0, q1))
                if self._membership(n, pair):
                    out.append(pair)
        return out


class SliceCubespace(Cubespace):
    """The cubespace structure on X seen from a base point x: q is a cube
    iff the 1-arrow <x, q> is one.  Drops the step by one."""

    provenance = "partial"

    def __init__(self, X: Cubespace, x: int):
        if not 0 <= x < X.size:
            raise ValueError("base point out of range")
        self.X, self.x = X, x
        step = None if X.step is None else max(X.step - 1, 0)
        super().__init__(X.size, step=step, dim_cap=X.direct_cap - 1)

    def _membership(self, n, values):
        const = (self.x,) * (1 << n)
        return self.X.membership(n + 1, cg.arrow(const, tuple(values), n, 1))


class ExplicitCubespace(Cubespace):
    """Cube sets given as explicit tables (imported, doctored, or built
    by hand)."""

    provenance = "explicit"

    def __init__(self, size: int, tables: Dict[int, Iterable[tuple]], step: Optional[int] = None):
        dims = sorted(tables)
        if not dims:
            raise ValueError("need at least one cube table")
        self.tables = {n: frozenset(tuple(q) for q in tables[n]) for n in dims}
        super().__init__(size, step=step, dim_cap=max(dims))

    def _membership(self, n, values):
        if n not in self.tables:
            raise ValueError("no cube table for dimension %d" % n)
        return values in self.tables[n]

    def _enumerate_cubes(self, n):
        if n in self.tables:
            return self.tables[n]
        return super()._enumerate_cubes(n)


class RestrictedCubespace(Cubespace):
    """A subset of a cubespace with the induced cube sets (used for
    ergodic components and sub-bundles)."""

    provenance = "restricted"

    def __init__(self, X: Cubespace, points: Sequence[int]):
        self.X = X
        self.points = list(points)
        self._back = {p: i for i, p in enumerate(self.points)}
        super().__init__(len(self.points), step=X.step, dim_cap=X.direct_cap)

    def _membership(self, n, values):
        return self.X.membership(n, tuple(self.points[v] for v in values))


# ---------------------------------------------------------------------------
# axiom checking


@dataclass
class CompletionLevel:
    corners: int
    complete: bool
    unique: bool
    witness: Optional[tuple] = None


@dataclass
class AxiomReport:
    n_max: int
    composition_ok: bool
    composition_witness: Optional[tuple]
    composition_checks: int
    composition_sampled: bool
    ergodic_ok: bool
    ergodic_witness: Optional[tuple]
    completion: Dict[int, CompletionLevel]
    step: Optional[int]

    @property
    def is_nilspace(self) -> bool:
        return (
            self.composition_ok
            and self.ergodic_ok
            and all(lvl.complete for lvl in self.completion.values())
        )


def _all_morphisms(m: int, n: int):
    entries = [cb.CONST0, cb.CONST1]
    for i in range(m):
        entries.append(cb.Id(i))
        entries.append(cb.Refl(i))
    for coords in itertools.product(entries, repeat=n):
        yield cb.CubeMorphism(m, n, tuple(coords))


def check_axioms(X: Cubespace, n_max: int, composition_budget: int = 2_000_000, seed: int = 0):
    """Full nilspace axiom scan up to dimension n_max.

    Composition is checked over every morphism m -> n (m, n <= n_max)
    against the enumerated n-cubes; if the total work exceeds the budget
    the cube sets are subsampled deterministically and the report notes
    it.  Completion enumerates corners by pruned depth-first search and
    scans candidate closures; the inferred step is the smallest k with
    unique closing at dimension k+1.
    """
    rng = random.Random(seed)
    comp_ok, comp_wit = True, None
    checks = 0
    sampled = False
    for n in range(0, n_max + 1):
        cubeset = sorted(X.cubes(n))
        nmorph = sum((2 + 2 * m) ** n for m in range(n_max + 1))
        if nmorph * len(cubeset) > composition_budget:
            take = max(composition_budget // max(nmorph, 1), 1)
            cubeset = rng.sample(cubeset, min(take, len(cubeset)))
            sampled = True
        for m in range(0, n_max + 1):
            for phi in _all_morphisms(m, n):
                tbl = phi.index_table()
                for q in cubeset:
                    sub = tuple(q[t] for t in tbl)
                    checks += 1
                    if not X.membership(m, sub):
                        comp_ok = False
                        comp_wit = (n, q, phi.coords, m)
                        break
                if not comp_ok:
                    break
            if not comp_ok:
                break
        if not comp_ok:
            break

    erg_ok, erg_wit = True, None
    pairs = X.cubes(1)
    for x in range(X.size):
        for y in range(X.size):
            if (x, y) not in pairs:
                erg_ok, erg_wit = False, (x, y)
                break
        if not erg_ok:
            break

    completion: Dict[int, CompletionLevel] = {}
    for n in range(1, n_max + 1):
        corners = X.corners(n)
        complete, unique = True, True
        witness = None
        for c in corners:
            sols = X.completions(n, c)
            if not sols:
                complete = False
                witness = c
                unique = False
                break
            if len(sols) > 1:
                unique = False
        completion[n] = CompletionLevel(len(corners), complete, unique, witness)

    step = None
    for n in sorted(completion):
        lvl = completion[n]
        if lvl.complete and lvl.unique:
            step = n - 1
            break
    return AxiomReport(
        n_max, comp_ok, comp_wit, checks, sampled, erg_ok, erg_wit, completion, step
    )


@dataclass
class ParaReport:
    n_max: int
    full_p1: bool
    face_ok: bool
    symmetry_ok: bool
    equivalence_ok: bool
    closing_ok: bool
    witness: Optional[tuple]

    @property
    def all_ok(self) -> bool:
        return self.full_p1 and self.face_ok and self.symmetry_ok and self.equivalence_ok and self.closing_ok


def check_parallelepiped_axioms(X: Cubespace, n_max: int) -> ParaReport:
    """The four parallelepiped-structure axioms for P_m = Cu^m, m up to
    n_max: P_1 is everything, face restrictions, symmetries, the 1-arrow
    relation on P_{m-1} is an equivalence, and every corner closes."""
    full_p1 = len(X.cubes(1)) == X.size * X.size
    face_ok = symmetry_ok = equivalence_ok = closing_ok = True
    witness = None
    for m in range(2, n_max + 1):
        Pm = X.cubes(m)
        Pm1set = X.cubes(m - 1)
        Pm1 = sorted(Pm1set)
        for p in Pm:
            for phi in cb.enumerate_face_maps(m - 1, m):
                sub = tuple(p[t] for t in phi.index_table())
                if sub not in Pm1set:
                    face_ok, witness = False, ("face", m, p)
                    break
            if not face_ok:
                break
        for p in Pm:
            for theta in cb.automorphism_group(m):
                tbl = theta.to_morphism().index_table()
                if tuple(p[t] for t in tbl) not in Pm:
                    symmetry_ok, witness = False, ("symmetry", m, p, theta)
                    break
            if not symmetry_ok:
                break
        # the relation p ~ p' iff <p, p'>_1 in P_m
        def related(p, p2):
            return X.membership(m, p + p2)

        for p in Pm1:
            if not related(p, p):
                equivalence_ok, witness = False, ("reflexive", m, p)
                break
        if equivalence_ok:
            rel = {}
            for p in Pm1:
                rel[p] = {p2 for p2 in Pm1 if related(p, p2)}
            for p in Pm1:
                for p2 in rel[p]:
                    if p not in rel[p2]:
                        equivalence_ok, witness = False, ("symmetric", m, p, p2)
                        break
                    for p3 in rel[p2]:
                        if p3 not in rel[p]:
                            equivalence_ok, witness = False, ("transitive", m, p, p2, p3)
                            break
                    if not equivalence_ok:
                        break
                if not equivalence_ok:
                    break
        for c in X.corners(m):
            if not X.completions(m, c):
                closing_ok, witness = False, ("closing", m, c)
                break
        if witness is not None:
            break
    return ParaReport(n_max, full_p1, face_ok, symmetry_ok, equivalence_ok, closing_ok, witness)


# ---------------------------------------------------------------------------
# constructions


def ergodic_components(X: Cubespace):
    """Partition into classes of the Cu^1 relation; each part with the
    induced cubes is ergodic."""
    parent = list(range(X.size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    pairs = X.cubes(1)
    for (x, y) in pairs:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry
    comps: Dict[int, list] = {}
    for x in range(X.size):
        comps.setdefault(find(x), []).append(x)
    return [RestrictedCubespace(X, pts) for _r, pts in sorted(comps.items())]


def simplicial_extend(X: Cubespace, S: int, pattern: Iterable[tuple], f: Dict[tuple, int]):
    """Extend a morphism from a support-closed pattern inside {0,1}^S to
    a full S-cube, one minimal missing support at a time, each step a
    corner completion (smallest completion, for determinism).

    `pattern` lists the vertices of the pattern; `f` assigns points to
    exactly those vertices.  The result restricted to the pattern is f.
    """
    pattern = set(tuple(v) for v in pattern)
    if set(f) != pattern:
        raise ValueError("assignment domain must equal the pattern")
    supports = {frozenset(i for i, b in enumerate(v) if b) for v in pattern}
    # downward closure check
    for h in supports:
        for i in h:
            if h - {i} not in supports:
                raise ValueError("pattern is not support-closed")
    values = dict(f)
    have = set(supports)
    all_supports = [frozenset(c) for r in range(S + 1) for c in itertools.combinations(range(S), r)]
    for h in sorted(all_supports, key=lambda h: (len(h), sorted(h))):
        if h in have:
            continue
        # h is minimal missing: all proper subsets are present
        coords = sorted(h)
        m = len(coords)
        corner = []
        for j in range((1 << m) - 1):
            v = [0] * S
            for t, cidx in enumerate(coords):
                v[cidx] = (j >> t) & 1
            corner.append(values[tuple(v)])
        sols = complete_corner_bruteforce(X, m, corner, check_premise=False)
        if not sols:
            raise ValueError("pattern does not extend: no completion at support %s" % sorted(h))
        top = [0] * S
        for cidx in coords:
            top[cidx] = 1
        values[tuple(top)] = min(sols)
        have.add(h)
    return values


def concatenate_cubes(X: Cubespace, q1, q2, n: int):
    """Concatenate adjacent cubes along the last coordinate."""
    q1, q2 = tuple(q1), tuple(q2)
    half = 1 << (n - 1)
    if q1[half:] != q2[:half]:
        raise ValueError("cubes are not adjacent")
    if not (X.membership(n, q1) and X.membership(n, q2)):
        raise ValueError("concatenation needs two cubes")
    out = q1[:half] + q2[half:]
    assert X.membership(n, out), "concatenation failed to be a cube"
    return out


def is_tricube_morphism(X: Cubespace, t: Dict[tuple, int], n: int) -> bool:
    """t : T_n -> X is a tricube morphism iff each of the 2^n subcube
    readings t o psi_v is a cube."""
    for v in cb.vertices(n):
        sub = tuple(t[cb.tricube_embed(v, w)] for w in cb.vertices(n))
        if not X.membership(n, sub):
            return False
    return True


def tricube_compose(X: Cubespace, t: Dict[tuple, int], n: int):
    """The outer-point composition t o omega_n, produced by embedding the
    tricube simplicially in {0,1}^{2n}, extending, and restricting along
    the doubling morphism.  Raises if t is not a tricube morphism."""
    if not is_tricube_morphism(X, t, n):
        raise ValueError("not a tricube morphism: some subcube is not a cube")
    pattern = {}
    for pt, x in t.items():
        pattern[cb.tricube_lambda_embed(pt)] = x
    full = simplicial_extend(X, 2 * n, pattern.keys(), pattern)
    phi = cb.outer_composition_morphism(n)
    out = tuple(full[phi.apply(v)] for v in cb.vertices(n))
    assert out == tuple(t[cb.outer_point(v)] for v in cb.vertices(n))
    assert X.membership(n, out), "tricube composition failed to be a cube"
    return out
