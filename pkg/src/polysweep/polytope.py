"""Face lattices of convex polytopes from exact vertex coordinates.

The hull construction is deliberately brute force: enumerate spanning
point subsets, keep the hyperplanes with every point on one closed side,
and close the facet vertex sets under intersection.  Exactness beats
asymptotics at the scale this library targets (roughly 24 vertices,
dimension 6).

Faces are stored as bitmasks over vertex indices; a face *is* its vertex
set, so deduplication and intersection are integer operations.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateSpan, NonVertexPoint, NotFullDimensional
from .exactnum import (
    QVector,
    affine_rank,
    dot,
    format_rational,
    hyperplane_through,
    parse_rational,
    side,
    vec_from,
)


@dataclass(frozen=True)
class VRep:
    """A polytope given by exact vertex coordinates."""

    dim: int
    vertices: tuple  # tuple[QVector, ...]

    def __post_init__(self):
        for v in self.vertices:
            if len(v) != self.dim:
                raise ValueError("vertex length does not match dim")


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class FaceLattice:
    """The full face poset of a polytope, graded by dimension.

    ``masks[i]`` is the vertex set of face ``i`` as a bitmask and
    ``dims[i]`` its dimension; faces are sorted by (dim, mask).  Index 0
    is the empty face (dim -1), the last index the polytope itself.
    Immutable after construction.
    """

    def __init__(self, dim: int, faces, coords: VRep | None = None):
        pairs = sorted(set(faces), key=lambda t: (t[1], t[0]))
        self.dim = dim
        self.masks = tuple(m for m, _ in pairs)
        self.dims = tuple(k for _, k in pairs)
        self.coords = coords
        self.index = {m: i for i, m in enumerate(self.masks)}
        if len(self.index) != len(self.masks):
            raise ValueError("duplicate face masks")
        by_dim: dict[int, list[int]] = {}
        for i, k in enumerate(self.dims):
            by_dim.setdefault(k, []).append(i)
        self.by_dim = {k: tuple(v) for k, v in by_dim.items()}
        if self.dims[0] != -1 or self.masks[0] != 0:
            raise ValueError("lattice must contain the empty face")
        if self.dims[-1] != dim:
            raise ValueError("lattice must contain a face of top dimension")
        self.full_mask = self.masks[-1]
        self.n_vertices = len(self.by_dim.get(0, ()))

    def __len__(self):
        return len(self.masks)

    def f_vector(self) -> tuple:
        """(f_-1, f_0, ..., f_d)."""
        return tuple(len(self.by_dim.get(k, ())) for k in range(-1, self.dim + 1))

    def vertices_of(self, i: int) -> list[int]:
        return list(_bits(self.masks[i]))

    def contains(self, i: int, j: int) -> bool:
        """Face i <= face j."""
        return self.masks[i] & self.masks[j] == self.masks[i]

    def faces_at_vertex(self, vi: int, k: int) -> list[int]:
        bit = 1 << vi
        return [i for i in self.by_dim.get(k, ()) if self.masks[i] & bit]

    def edge_endpoints(self, i: int) -> tuple[int, int]:
        vs = self.vertices_of(i)
        assert self.dims[i] == 1 and len(vs) == 2
        return vs[0], vs[1]

    def is_simple(self) -> bool:
        return all(
            len(self.faces_at_vertex(vi, 1)) == self.dim
            for vi in range(self.n_vertices)
        )

    def validate(self):
        """Structural checks: grading, intersection closure, singletons."""
        assert len(self.by_dim.get(-1, ())) == 1
        assert len(self.by_dim.get(self.dim, ())) == 1
        for i in self.by_dim.get(0, ()):
            assert self.masks[i].bit_count() == 1
        mask_set = set(self.masks)
        for a in self.masks:
            for b in self.masks:
                assert a & b in mask_set, "not closed under intersection"
        # every cover relation steps dimension by exactly one
        n = len(self.masks)
        for i in range(n):
            for j in range(n):
                if i == j or not self.contains(i, j):
                    continue
                covered = any(
                    k != i and k != j and self.contains(i, k) and self.contains(k, j)
                    for k in range(n)
                )
                if not covered:
                    assert self.dims[j] == self.dims[i] + 1, "lattice is not graded"
        return self


def hull_lattice(v: VRep, validate: bool = False) -> FaceLattice:
    """Face lattice of conv(vertices).

    Raises NotFullDimensional if the points do not span R^dim and
    NonVertexPoint(i) if point i lies in the hull of the others.
    """
    d, pts = v.dim, v.vertices
    n = len(pts)
    if n == 0:
        raise NotFullDimensional("no points")
    if affine_rank(pts) != d:
        raise NotFullDimensional(f"points span dimension {affine_rank(pts)}, not {d}")
    if d == 0:
        if n > 1:
            raise NonVertexPoint(1)
        return FaceLattice(0, [(0, -1), (1, 0)], coords=v)

    full = (1 << n) - 1
    facet_masks: set[int] = set()
    seen = set()
    for subset in itertools.combinations(range(n), d):
        try:
            h = hyperplane_through([pts[i] for i in subset], d)
        except DegenerateSpan:
            continue
        if h in seen:
            continue
        seen.add(h)
        sides = [side(h, p) for p in pts]
        if all(s >= 0 for s in sides) or all(s <= 0 for s in sides):
            facet_masks.add(sum(1 << i for i, s in enumerate(sides) if s == 0))

    for i in range(n):
        meet = full
        for m in facet_masks:
            if m >> i & 1:
                meet &= m
        if meet != 1 << i:
            raise NonVertexPoint(i)

    faces = {full, 0} | facet_masks
    frontier = set(facet_masks)
    while frontier:
        new = set()
        for f in frontier:
            for g in facet_masks:
                m = f & g
                if m not in faces:
                    new.add(m)
        faces |= new
        frontier = new

    def face_dim(mask: int) -> int:
        if mask == 0:
            return -1
        return affine_rank([pts[i] for i in _bits(mask)])

    lat = FaceLattice(d, [(m, face_dim(m)) for m in faces], coords=v)
    if validate:
        lat.validate()
    return lat


# ---------------------------------------------------------------------------
# Constructors.  All coordinates are exact rationals.


def make_simplex(d: int) -> VRep:
    """Standard d-simplex: origin plus the standard basis vectors."""
    if d < 0:
        raise ValueError("dimension must be >= 0")
    verts = [tuple(Fraction(0) for _ in range(d))]
    for i in range(d):
        verts.append(tuple(Fraction(1 if j == i else 0) for j in range(d)))
    return VRep(d, tuple(verts))


def make_cube(d: int) -> VRep:
    """Unit cube {0,1}^d."""
    if d < 0:
        raise ValueError("dimension must be >= 0")
    verts = [
        tuple(Fraction(b) for b in bits)
        for bits in itertools.product((0, 1), repeat=d)
    ]
    return VRep(d, tuple(verts))


def make_crosspolytope(d: int) -> VRep:
    """Convex hull of +-e_i."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    verts = []
    for i in range(d):
        for s in (1, -1):
            verts.append(tuple(Fraction(s if j == i else 0) for j in range(d)))
    return VRep(d, tuple(verts))


def make_polygon(n: int) -> VRep:
    """A convex rational n-gon: points (i, i^2) on the parabola."""
    if n < 3:
        raise ValueError("polygon needs at least 3 vertices")
    verts = [(Fraction(i), Fraction(i * i)) for i in range(n)]
    return VRep(2, tuple(verts))


def barycenter(v: VRep) -> QVector:
    n = len(v.vertices)
    return tuple(sum(p[j] for p in v.vertices) / n for j in range(v.dim))


def pyramid(p: VRep) -> VRep:
    """Embed p at height 0 and add an apex over the barycenter."""
    base = [tuple(x) + (Fraction(0),) for x in p.vertices]
    apex = tuple(barycenter(p)) + (Fraction(1),)
    return VRep(p.dim + 1, tuple(base + [apex]))


def product(p: VRep, q: VRep) -> VRep:
    """Cartesian product; vertex (i, j) gets index i * len(q) + j."""
    verts = [tuple(x) + tuple(y) for x in p.vertices for y in q.vertices]
    return VRep(p.dim + q.dim, tuple(verts))


def prism(p: VRep) -> VRep:
    return product(p, make_cube(1))


# ---------------------------------------------------------------------------
# Duality.


def dual(l: FaceLattice) -> FaceLattice:
    """Order-reversed lattice; dual vertex j is facet j of l (facets in
    mask order).  No coordinates attached."""
    facets = l.by_dim.get(l.dim - 1, ())
    dfaces = []
    for i in range(len(l.masks)):
        dmask = 0
        for j, fi in enumerate(facets):
            if l.contains(i, fi):
                dmask |= 1 << j
        dfaces.append((dmask, l.dim - 1 - l.dims[i]))
    return FaceLattice(l.dim, dfaces, coords=None)


def facet_hyperplanes(l: FaceLattice) -> list[tuple[QVector, Fraction]]:
    """Outward (normal, offset) per facet, in facet mask order:
    normal.x <= offset on the polytope, equality exactly on the facet.
    Cached on the lattice."""
    assert l.coords is not None
    cached = getattr(l, "_facet_hyperplanes", None)
    if cached is not None:
        return cached
    pts = l.coords.vertices
    out = []
    for fi in l.by_dim.get(l.dim - 1, ()):
        h = hyperplane_through([pts[i] for i in l.vertices_of(fi)], l.dim)
        normal, offset = h.normal, h.offset
        outside = next(
            i for i in range(len(pts)) if not l.masks[fi] >> i & 1
        )
        if dot(normal, pts[outside]) > offset:
            normal = tuple(-x for x in normal)
            offset = -offset
        out.append((normal, offset))
    l._facet_hyperplanes = out
    return out


def polar_dual(l: FaceLattice) -> VRep:
    """Exact polar dual geometry, one vertex per facet (in facet mask
    order, matching dual(l)'s vertex indexing).  The polytope is first
    translated to put its vertex barycenter at the origin."""
    assert l.coords is not None
    z = barycenter(l.coords)
    verts = []
    for normal, offset in facet_hyperplanes(l):
        b = offset - dot(normal, z)
        assert b > 0
        verts.append(tuple(x / b for x in normal))
    return VRep(l.dim, tuple(verts))


def is_eulerian(l: FaceLattice) -> bool:
    """Every interval of rank >= 1 has equally many elements of even and
    odd rank."""
    n = len(l.masks)
    for i in range(n):
        for j in range(n):
            if l.dims[j] - l.dims[i] < 1 or not l.contains(i, j):
                continue
            balance = 0
            for k in range(n):
                if l.contains(i, k) and l.contains(k, j):
                    balance += 1 if (l.dims[k] - l.dims[i]) % 2 == 0 else -1
            if balance != 0:
                return False
    return True


def lattice_isomorphic(a: FaceLattice, b: FaceLattice) -> bool:
    """Backtracking search for a vertex bijection mapping faces to faces."""
    if a.dim != b.dim or a.f_vector() != b.f_vector():
        return False

    def signature(l: FaceLattice, vi: int):
        bit = 1 << vi
        return tuple(
            sorted((l.dims[i], l.masks[i].bit_count())
                   for i in range(len(l.masks)) if l.masks[i] & bit)
        )

    siga = [signature(a, i) for i in range(a.n_vertices)]
    sigb = [signature(b, i) for i in range(b.n_vertices)]
    if sorted(siga) != sorted(sigb):
        return False
    bmasks = set(b.masks)

    def extend(perm: list[int], used: set[int]) -> bool:
        i = len(perm)
        if i == a.n_vertices:
            for m in a.masks:
                img = 0
                for v in _bits(m):
                    img |= 1 << perm[v]
                if img not in bmasks:
                    return False
            return True
        for j in range(b.n_vertices):
            if j in used or siga[i] != sigb[j]:
                continue
            perm.append(j)
            used.add(j)
            if extend(perm, used):
                return True
            perm.pop()
            used.remove(j)
        return False

    return extend([], set())


# ---------------------------------------------------------------------------
# Serialization.


def vrep_to_json(v: VRep) -> dict:
    return {
        "dim": v.dim,
        "vertices": [[format_rational(x) for x in p] for p in v.vertices],
    }


def vrep_from_json(obj: dict) -> VRep:
    return VRep(
        int(obj["dim"]),
        tuple(vec_from(parse_rational(x) for x in p) for p in obj["vertices"]),
    )


def load_vrep(path: str) -> VRep:
    with open(path) as f:
        return vrep_from_json(json.load(f))


def lattice_to_json(l: FaceLattice) -> dict:
    faces: dict[str, list] = {}
    for k in range(-1, l.dim + 1):
        faces[str(k)] = [sorted(_bits(l.masks[i])) for i in l.by_dim.get(k, ())]
    return {"dim": l.dim, "faces": faces}
