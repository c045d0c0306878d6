"""Combinatorics of discrete cubes {0,1}^n.

Vertices are little-endian bit tuples; the integer index of a vertex has
bit i equal to v[i], so numeric order on indices is colex order on
vertices.  Morphisms between cubes are kept in per-output-coordinate
normal form: every coordinate of the image is constant 0, constant 1,
v[i] or 1-v[i] for some input coordinate i.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Optional, Sequence

Vertex = tuple  # tuple of 0/1 ints

CONST0 = ("c", 0)
CONST1 = ("c", 1)


def Id(i: int):
    return ("id", i)


def Refl(i: int):
    return ("refl", i)


def vertices(n: int):
    """All vertices of {0,1}^n in colex (= numeric index) order."""
    return [bits_of(j, n) for j in range(1 << n)]


def bits_of(j: int, n: int) -> Vertex:
    return tuple((j >> i) & 1 for i in range(n))


def vertex_index(v: Vertex) -> int:
    return sum(b << i for i, b in enumerate(v))


def weight(v: Vertex) -> int:
    return sum(v)


def support(v: Vertex):
    return frozenset(i for i, b in enumerate(v) if b)


@dataclass(frozen=True)
class CubeMorphism:
    """A morphism {0,1}^m -> {0,1}^n in normal form.

    coords[j] describes output coordinate j as one of ('c', 0), ('c', 1),
    ('id', i), ('refl', i) with i a 0-based input coordinate.
    """

    m: int
    n: int
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.n:
            raise ValueError("coords length must equal target dimension")
        for entry in self.coords:
            kind = entry[0]
            if kind == "c":
                if entry[1] not in (0, 1):
                    raise ValueError("bad constant entry %r" % (entry,))
            elif kind in ("id", "refl"):
                if not 0 <= entry[1] < self.m:
                    raise ValueError("input coordinate out of range in %r" % (entry,))
            else:
                raise ValueError("bad entry %r" % (entry,))

    def apply(self, v: Vertex) -> Vertex:
        if len(v) != self.m:
            raise ValueError("dimension mismatch: got %d, expected %d" % (len(v), self.m))
        out = []
        for entry in self.coords:
            kind, arg = entry
            if kind == "c":
                out.append(arg)
            elif kind == "id":
                out.append(v[arg])
            else:
                out.append(1 - v[arg])
        return tuple(out)

    def __call__(self, v: Vertex) -> Vertex:
        return self.apply(v)

    def vertex_table(self):
        """List of image vertices indexed by source vertex index."""
        return [self.apply(bits_of(j, self.m)) for j in range(1 << self.m)]

    def index_table(self):
        return [vertex_index(w) for w in self.vertex_table()]


def identity_morphism(n: int) -> CubeMorphism:
    return CubeMorphism(n, n, tuple(Id(i) for i in range(n)))


def validate_morphism(table, m: int, n: int) -> Optional[CubeMorphism]:
    """Check whether a total map {0,1}^m -> {0,1}^n is a cube morphism.

    `table` maps vertices to vertices (dict or callable).  Returns the
    normal form, or None if no affine map matches.  Each output
    coordinate must be constant, a coordinate of v, or its reflection;
    over the full domain the normal form is unique.
    """
    get = table.__getitem__ if hasattr(table, "__getitem__") else table
    doms = vertices(m)
    images = []
    for v in doms:
        w = tuple(get(v))
        if len(w) != n or any(b not in (0, 1) for b in w):
            return None
        images.append(w)
    coords = []
    for j in range(n):
        col = [w[j] for w in images]
        entry = None
        if all(b == col[0] for b in col):
            entry = ("c", col[0])
        else:
            for i in range(m):
                if all(col[t] == doms[t][i] for t in range(len(doms))):
                    entry = Id(i)
                    break
                if all(col[t] == 1 - doms[t][i] for t in range(len(doms))):
                    entry = Refl(i)
                    break
        if entry is None:
            return None
        coords.append(entry)
    return CubeMorphism(m, n, tuple(coords))


def compose_morphisms(phi: CubeMorphism, psi: CubeMorphism) -> CubeMorphism:
    """phi o psi, with psi: l -> m applied first and phi: m -> n second."""
    if psi.n != phi.m:
        raise ValueError("dimension mismatch in composition")
    coords = []
    for entry in phi.coords:
        kind, arg = entry
        if kind == "c":
            coords.append(entry)
            continue
        inner = psi.coords[arg]
        if inner[0] == "c":
            bit = inner[1] if kind == "id" else 1 - inner[1]
            coords.append(("c", bit))
        elif kind == "id":
            coords.append(inner)
        else:  # reflection of the inner entry
            coords.append(Id(inner[1]) if inner[0] == "refl" else Refl(inner[1]))
    return CubeMorphism(psi.m, phi.n, tuple(coords))


def j_sets(phi: CubeMorphism):
    """Per-input-coordinate sets J(i) of output coordinates that vary with
    v[i], plus their union.  phi is injective iff every J(i) is nonempty;
    it is a face map iff every J(i) is a singleton."""
    js = [set() for _ in range(phi.m)]
    for jout, entry in enumerate(phi.coords):
        if entry[0] in ("id", "refl"):
            js[entry[1]].add(jout)
    total = set().union(*js) if js else set()
    return [frozenset(s) for s in js], frozenset(total)


def is_injective_morphism(phi: CubeMorphism) -> bool:
    js, _ = j_sets(phi)
    return all(js_i for js_i in js)


def is_face_map(phi: CubeMorphism) -> bool:
    js, _ = j_sets(phi)
    return all(len(js_i) == 1 for js_i in js)


@dataclass(frozen=True)
class Face:
    """A face of {0,1}^n: the set of vertices with coordinates in `fixed`
    (a mapping coord -> bit) pinned."""

    n: int
    fixed: tuple  # sorted tuple of (coord, bit)

    @staticmethod
    def make(n: int, fixed: dict) -> "Face":
        return Face(n, tuple(sorted(fixed.items())))

    @property
    def codim(self) -> int:
        return len(self.fixed)

    @property
    def dim(self) -> int:
        return self.n - len(self.fixed)

    def free_coords(self):
        pinned = {c for c, _ in self.fixed}
        return [i for i in range(self.n) if i not in pinned]

    def contains(self, v: Vertex) -> bool:
        return all(v[c] == b for c, b in self.fixed)

    def vertices(self):
        return [v for v in vertices(self.n) if self.contains(v)]

    def face_map(self) -> CubeMorphism:
        """The canonical face map onto this face: free coordinates carry
        the inputs in increasing order."""
        fixed = dict(self.fixed)
        coords = []
        nxt = 0
        for j in range(self.n):
            if j in fixed:
                coords.append(("c", fixed[j]))
            else:
                coords.append(Id(nxt))
                nxt += 1
        return CubeMorphism(self.dim, self.n, tuple(coords))


def enumerate_faces(n: int, dim: int):
    """All faces of {0,1}^n of the given dimension."""
    out = []
    for pinned in itertools.combinations(range(n), n - dim):
        for bitsv in itertools.product((0, 1), repeat=n - dim):
            out.append(Face.make(n, dict(zip(pinned, bitsv))))
    return out


def enumerate_face_maps(m: int, n: int):
    """Canonical m-face maps into {0,1}^n; count C(n, n-m) * 2^(n-m)."""
    if m > n:
        raise ValueError("m must be at most n")
    maps = [f.face_map() for f in enumerate_faces(n, m)]
    assert len(maps) == comb(n, n - m) * (1 << (n - m))
    return maps


@lru_cache(maxsize=None)
def face_index_tables(m: int, n: int):
    """Index tables of the canonical m-face maps into {0,1}^n, memoized
    (hot path of the face-criterion membership test)."""
    return tuple(tuple(phi.index_table()) for phi in enumerate_face_maps(m, n))


@dataclass(frozen=True)
class CubeAutomorphism:
    """theta(v)[j] = v[perm[j]] xor flips[j]; the group is S_n x| (Z/2)^n."""

    perm: tuple
    flips: tuple

    @property
    def n(self) -> int:
        return len(self.perm)

    def apply(self, v: Vertex) -> Vertex:
        return tuple(v[p] ^ f for p, f in zip(self.perm, self.flips))

    def __call__(self, v):
        return self.apply(v)

    def r(self) -> int:
        """Number of reflections, i.e. ones in theta(0^n)."""
        return sum(self.flips)

    def to_morphism(self) -> CubeMorphism:
        coords = tuple(
            Refl(p) if f else Id(p) for p, f in zip(self.perm, self.flips)
        )
        return CubeMorphism(self.n, self.n, coords)

    def compose(self, other: "CubeAutomorphism") -> "CubeAutomorphism":
        """self o other (other applied first)."""
        # self(other(v))[j] = other(v)[perm[j]] ^ flips[j]
        #                   = v[other.perm[perm[j]]] ^ other.flips[perm[j]] ^ flips[j]
        perm = tuple(other.perm[p] for p in self.perm)
        flips = tuple(other.flips[p] ^ f for p, f in zip(self.perm, self.flips))
        return CubeAutomorphism(perm, flips)

    def inverse(self) -> "CubeAutomorphism":
        inv = [0] * self.n
        for j, p in enumerate(self.perm):
            inv[p] = j
        flips = tuple(self.flips[inv[i]] for i in range(self.n))
        return CubeAutomorphism(tuple(inv), flips)


def automorphism_group(n: int):
    """All n! * 2^n automorphisms of {0,1}^n."""
    out = []
    for perm in itertools.permutations(range(n)):
        for flips in itertools.product((0, 1), repeat=n):
            out.append(CubeAutomorphism(perm, flips))
    return out


def gray_index(j: int) -> int:
    return j ^ (j >> 1)


def gray_order(n: int):
    """The 2^n vertices in binary-reflected Gray order; consecutive
    entries differ in exactly one coordinate."""
    return [bits_of(gray_index(j), n) for j in range(1 << n)]


def _substitute(phi: CubeMorphism, positions, new_entry_fn) -> CubeMorphism:
    coords = list(phi.coords)
    for j in positions:
        coords[j] = new_entry_fn(coords[j])
    return CubeMorphism(phi.m, phi.n, tuple(coords))


def _case1_split(phi: CubeMorphism, src: int):
    """Split when both plain and reflected copies of input `src` occur:
    replace the plain entries by constant 0 in the first part and the
    reflected entries by constant 0 in the second."""
    id_pos = [j for j, e in enumerate(phi.coords) if e == ("id", src)]
    refl_pos = [j for j, e in enumerate(phi.coords) if e == ("refl", src)]
    part1 = _substitute(phi, id_pos, lambda _e: CONST0)
    part2 = _substitute(phi, refl_pos, lambda _e: CONST0)
    return [part1, part2]


def decompose_injective_morphism(phi: CubeMorphism):
    """For an injective phi with more varying output coordinates than
    inputs, produce (theta, parts) with theta an automorphism of the
    source cube and phi o theta the concatenation (in the last source
    coordinate) of 2 to 4 injective morphisms, each using strictly fewer
    varying output coordinates than phi.
    """
    js, total = j_sets(phi)
    if not all(js):
        raise ValueError("morphism is not injective")
    if len(total) <= phi.m:
        raise ValueError("morphism has no repeated coordinate to split on")
    m = phi.m
    src = max(range(m), key=lambda i: len(js[i]))
    assert len(js[src]) >= 2
    # Move the repeated input to the last slot.
    perm = list(range(m))
    perm[src], perm[m - 1] = perm[m - 1], perm[src]
    theta = CubeAutomorphism(tuple(perm), (0,) * m)
    phi2 = compose_morphisms(phi, theta.to_morphism())
    last = m - 1
    id_pos = [j for j, e in enumerate(phi2.coords) if e == ("id", last)]
    refl_pos = [j for j, e in enumerate(phi2.coords) if e == ("refl", last)]
    if not id_pos:
        # only reflections: flip the last source coordinate first
        flip = CubeAutomorphism(tuple(range(m)), tuple(0 if i != last else 1 for i in range(m)))
        theta = theta.compose(flip)
        phi2 = compose_morphisms(phi2, flip.to_morphism())
        id_pos = [j for j, e in enumerate(phi2.coords) if e == ("id", last)]
        refl_pos = [j for j, e in enumerate(phi2.coords) if e == ("refl", last)]
        assert id_pos and not refl_pos
    if refl_pos:
        parts = _case1_split(phi2, last)
    else:
        # only plain copies of the last input: three-step chain through a
        # mixed middle morphism, which itself splits as in the first case
        j0 = id_pos[0]
        rest = id_pos[1:]
        part1 = _substitute(phi2, [j0], lambda _e: CONST0)
        middle = _substitute(phi2, rest, lambda _e: Refl(last))
        part3 = _substitute(phi2, [j0], lambda _e: CONST1)
        parts = [part1] + _case1_split(middle, last) + [part3]
    # sanity: adjacency plus the concatenation identity
    for a, b in zip(parts, parts[1:]):
        for v in vertices(m - 1):
            assert a.apply(v + (1,)) == b.apply(v + (0,))
    for v in vertices(m - 1):
        assert parts[0].apply(v + (0,)) == phi2.apply(v + (0,))
        assert parts[-1].apply(v + (1,)) == phi2.apply(v + (1,))
    for p in parts:
        _, tot = j_sets(p)
        assert len(tot) < len(total)
        assert is_injective_morphism(p)
    return theta, parts


# ---------------------------------------------------------------------------
# tricubes

TRICUBE_VALUES = (-1, 0, 1)


def tricube_points(n: int):
    return list(itertools.product(TRICUBE_VALUES, repeat=n))


def tricube_embed(v: Vertex, w: Vertex):
    """psi_v(w)[j] = (2 v[j] - 1) * (1 - w[j]); maps {0,1}^n onto the
    subcube of T_n between the outer point 2v-1 and the centre."""
    if len(v) != len(w):
        raise ValueError("dimension mismatch")
    return tuple((2 * a - 1) * (1 - b) for a, b in zip(v, w))


def outer_point(v: Vertex):
    """omega_n(v) = psi_v(0^n) = 2v - 1 coordinatewise."""
    return tuple(2 * a - 1 for a in v)


def _lam(x: int):
    # lambda(1) = (1,0), lambda(0) = (0,0), lambda(-1) = (0,1)
    if x == 1:
        return (1, 0)
    if x == 0:
        return (0, 0)
    if x == -1:
        return (0, 1)
    raise ValueError("tricube coordinate must be in {-1,0,1}")


def tricube_lambda_embed(t):
    """The injective embedding lambda^n : T_n -> {0,1}^{2n}; its image is
    support-closed (simplicial)."""
    out = []
    for x in t:
        out.extend(_lam(x))
    return tuple(out)


def outer_composition_morphism(n: int) -> CubeMorphism:
    """The cube morphism v |-> lambda^n(omega_n(v)) from {0,1}^n into
    {0,1}^{2n}: coordinates (v1, 1-v1, v2, 1-v2, ...)."""
    coords = []
    for i in range(n):
        coords.append(Id(i))
        coords.append(Refl(i))
    return CubeMorphism(n, 2 * n, tuple(coords))


def is_tricube_cube(c, m: int, n: int) -> bool:
    """True iff the map c : {0,1}^m -> T_n factors as psi_v o phi for
    some vertex v and cube morphism phi."""
    get = c.__getitem__ if hasattr(c, "__getitem__") else c
    imgs = [tuple(get(v)) for v in vertices(m)]
    for v in vertices(n):
        # psi_v is injective; invert where possible
        inv = {tricube_embed(v, w): w for w in vertices(n)}
        pre = []
        ok = True
        for img in imgs:
            if img not in inv:
                ok = False
                break
            pre.append(inv[img])
        if not ok:
            continue
        table = dict(zip(vertices(m), pre))
        if validate_morphism(table, m, n) is not None:
            return True
    return False
