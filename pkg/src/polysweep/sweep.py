"""Hyperplane sweeps: generic directions, vertex figures, sections, and
the two sweep recursions for the cd-index.

A sweep orders the vertices by an exact linear functional.  At each
vertex v the machinery builds

* the vertex figure: the (d-1)-polytope cut from the tangent cone at v
  by a strictly supporting hyperplane pushed one unit inward, whose
  faces are the faces containing v, and
* the section: the vertex figure sliced by the sweep hyperplane through
  v, whose faces are the faces that v neither tops nor bottoms.

Both carry exact projected coordinates so the construction can recurse.
The depth of the cut never matters: every comparison the recursion makes
is decided by vertex heights and edge slopes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CrossCheckError, NotGeneric, NotSimple
from .exactnum import (
    QVector,
    dot,
    pivot_columns,
    solve_affine_functional,
    vsub,
)
from .flagvec import CDPolynomial, cd_index
from .polytope import FaceLattice, VRep, facet_hyperplanes

UPPER, MIDDLE, LOWER = "upper", "middle", "lower"


@dataclass(frozen=True)
class SweepDirection:
    """A functional p plus the height of every vertex.

    Heights are pairwise distinct (checked).  For induced directions on
    sub-polytopes the heights may differ from p.x by a common constant;
    only differences ever matter.
    """

    p: QVector
    heights: tuple  # Fraction per vertex index

    def __post_init__(self):
        if len(set(self.heights)) != len(self.heights):
            raise NotGeneric("two vertices have equal height")


@dataclass(frozen=True)
class SupportNormal:
    """A functional maximized uniquely over P at vertex v, chosen inside
    the normal cone so the edge slopes at v come out pairwise distinct."""

    v: int
    a: QVector


@dataclass(frozen=True)
class SubPolytope:
    """A vertex figure or section: derived lattice, exact coordinates,
    and the map back to the parent's faces."""

    lattice: FaceLattice
    direction: SweepDirection | None  # induced for figures, fresh for sections
    face_parent: tuple  # sub-face index -> parent face index
    vertex_face: int  # parent index of the face {v}
    slopes: tuple | None  # per sub-vertex, vertex figures only
    vi: int


def choose_direction(p0, v: VRep) -> SweepDirection:
    """Accept p0 if it separates all vertex heights, else walk the
    deterministic ladder p = (1, t, t^2, ...) for t = 2, 3, ..."""
    if p0 is not None:
        p0 = tuple(Fraction(x) for x in p0)
        heights = tuple(dot(p0, x) for x in v.vertices)
        if len(set(heights)) != len(heights):
            raise NotGeneric("supplied direction gives equal heights")
        return SweepDirection(p0, heights)
    if v.dim == 0:
        return SweepDirection((), (Fraction(0),))
    for t in range(2, 10000):
        p = tuple(Fraction(t) ** i for i in range(v.dim))
        heights = tuple(dot(p, x) for x in v.vertices)
        if len(set(heights)) == len(heights):
            return SweepDirection(p, heights)
    raise RuntimeError("direction ladder exhausted")  # pragma: no cover


def _edges_at(lat: FaceLattice, vi: int) -> list[int]:
    return lat.faces_at_vertex(vi, 1)


def _other_endpoint(lat: FaceLattice, edge: int, vi: int) -> int:
    u, w = lat.edge_endpoints(edge)
    return w if u == vi else u


def _slopes_for(lat, s, vi, a) -> dict:
    """Edge slope keys at vi for support functional a.

    slope(vw) = (h_w - h_v) / a.(x_v - x_w); the denominator is positive
    because a is strictly supporting, so the sign matches the edge
    orientation under the sweep.
    """
    pts = lat.coords.vertices
    out = {}
    for e in _edges_at(lat, vi):
        wi = _other_endpoint(lat, e, vi)
        den = dot(a, vsub(pts[vi], pts[wi]))
        assert den > 0
        out[e] = (s.heights[wi] - s.heights[vi]) / den
    return out


def support_normal(lat: FaceLattice, s: SweepDirection, vi: int) -> SupportNormal:
    """Sum of outward facet normals at vi, reweighted by (1, t, t^2, ...)
    until the edge slope keys at vi are pairwise distinct."""
    hyps = facet_hyperplanes(lat)
    facets = lat.by_dim[lat.dim - 1]
    normals = [
        hyps[k][0] for k, fi in enumerate(facets) if lat.masks[fi] >> vi & 1
    ]
    pts = lat.coords.vertices
    d = lat.dim
    for t in range(1, 10000):
        a = tuple(
            sum(Fraction(t) ** j * n[k] for j, n in enumerate(normals))
            for k in range(d)
        )
        av = dot(a, pts[vi])
        assert all(dot(a, pts[w]) < av for w in range(len(pts)) if w != vi)
        slopes = _slopes_for(lat, s, vi, a)
        if len(set(slopes.values())) == len(slopes):
            return SupportNormal(vi, a)
    raise RuntimeError("support normal ladder exhausted")  # pragma: no cover


def _project(points: list) -> tuple:
    """Restrict points to a coordinate subset on which their affine hull
    projects injectively; returns the projected points."""
    if len(points) == 1:
        return ((),)
    diffs = [list(vsub(p, points[0])) for p in points[1:]]
    cols = pivot_columns(diffs)
    return tuple(tuple(p[c] for c in cols) for p in points)


def vertex_figure(lat: FaceLattice, s: SweepDirection, vi: int) -> SubPolytope:
    """The vertex figure at vi, with exact coordinates and the induced
    sweep direction.

    Sub-vertex j sits on the j-th edge at v (edges in mask order) where
    it crosses the plane a.x = a.v - 1; its induced height is
    height(v) + slope(edge).  The figure's faces are the faces
    containing v, with dimension dropped by one.
    """
    d = lat.dim
    assert d >= 1
    pts = lat.coords.vertices
    n = support_normal(lat, s, vi)
    slopes = _slopes_for(lat, s, vi, n.a)
    edges = sorted(_edges_at(lat, vi), key=lambda e: lat.masks[e])
    edge_pos = {e: j for j, e in enumerate(edges)}

    ambient = []
    for e in edges:
        wi = _other_endpoint(lat, e, vi)
        t = 1 / dot(n.a, vsub(pts[vi], pts[wi]))
        ambient.append(
            tuple(pts[vi][k] + t * (pts[wi][k] - pts[vi][k]) for k in range(d))
        )
    coords = VRep(d - 1, _project(ambient))

    faces = []
    parents = {}
    vbit = 1 << vi
    for i in range(len(lat.masks)):
        if lat.masks[i] & vbit:
            qmask = 0
            for e in edges:
                if lat.contains(e, i):
                    qmask |= 1 << edge_pos[e]
            faces.append((qmask, lat.dims[i] - 1))
            parents[qmask] = i
    sub = FaceLattice(d - 1, faces, coords=coords)
    face_parent = tuple(parents[m] for m in sub.masks)

    heights = tuple(s.heights[vi] + slopes[e] for e in edges)
    # the induced heights are affine in the projected coordinates; the
    # solve doubles as a consistency check of the projection
    q, _offset = solve_affine_functional(coords.vertices, heights)
    direction = SweepDirection(q, heights)
    return SubPolytope(
        lattice=sub,
        direction=direction,
        face_parent=face_parent,
        vertex_face=lat.index[vbit],
        slopes=tuple(slopes[e] for e in edges),
        vi=vi,
    )


def classify_face(lat: FaceLattice, s: SweepDirection, vi: int, fi: int) -> str:
    """upper if v bottoms the face, lower if v tops it, middle otherwise.

    Equivalently: where the corresponding face of the truncated vertex
    figure sits relative to the sweep hyperplane through v.
    """
    assert lat.masks[fi] >> vi & 1 and lat.dims[fi] >= 1
    hs = [s.heights[w] for w in lat.vertices_of(fi)]
    hv = s.heights[vi]
    if hv == min(hs):
        return UPPER
    if hv == max(hs):
        return LOWER
    return MIDDLE


def is_extreme(lat: FaceLattice, s: SweepDirection, vi: int) -> bool:
    hv = s.heights[vi]
    return hv == min(s.heights) or hv == max(s.heights)


def sweep_section(
    lat: FaceLattice, s: SweepDirection, vi: int, qv: SubPolytope | None = None
) -> SubPolytope | None:
    """The vertex figure cut by the sweep hyperplane through v; None
    when v is the global minimum or maximum.

    Sub-vertex k sits inside the k-th middle 2-face at v (in mask
    order), at the exact point of the figure's edge with height equal to
    height(v).  Faces are the middle faces at v, dimension dropped by
    two.
    """
    d = lat.dim
    assert d >= 2
    if is_extreme(lat, s, vi):
        return None
    if qv is None:
        qv = vertex_figure(lat, s, vi)
    qlat = qv.lattice
    hv = s.heights[vi]
    qheights = qv.direction.heights

    middle_parent = [
        i
        for i in range(len(lat.masks))
        if lat.masks[i] >> vi & 1
        and lat.dims[i] >= 2
        and classify_face(lat, s, vi, i) == MIDDLE
    ]
    two_faces = sorted(
        (i for i in middle_parent if lat.dims[i] == 2), key=lambda i: lat.masks[i]
    )

    parent_to_sub = {qv.face_parent[j]: j for j in range(len(qlat.masks))}
    ambient = []
    for m in two_faces:
        qedge = parent_to_sub[m]
        j1, j2 = qlat.edge_endpoints(qedge)
        if qheights[j1] < qheights[j2]:
            j1, j2 = j2, j1  # j1 above, j2 below
        lam = (hv - qheights[j2]) / (qheights[j1] - qheights[j2])
        y1, y2 = qlat.coords.vertices[j1], qlat.coords.vertices[j2]
        ambient.append(tuple(y2[k] + lam * (y1[k] - y2[k]) for k in range(d - 1)))
    coords = VRep(d - 2, _project(ambient))

    faces = [(0, -1)]
    # the empty face inherits {v} as its parent, matching chain maps
    parents = {0: lat.index[1 << vi]}
    for i in middle_parent:
        rmask = 0
        for k, m in enumerate(two_faces):
            if lat.contains(m, i):
                rmask |= 1 << k
        faces.append((rmask, lat.dims[i] - 2))
        parents[rmask] = i
    sub = FaceLattice(d - 2, faces, coords=coords)
    face_parent = tuple(parents[m] for m in sub.masks)
    return SubPolytope(
        lattice=sub,
        direction=None,
        face_parent=face_parent,
        vertex_face=lat.index[1 << vi],
        slopes=None,
        vi=vi,
    )


def map_chain(sub: SubPolytope, chain: tuple) -> tuple:
    """Lift a chain of sub-polytope faces to the parent: prepend {v} and
    replace each face by its parent face."""
    return (sub.vertex_face,) + tuple(sub.face_parent[i] for i in chain)


# ---------------------------------------------------------------------------
# The two sweep formulas for the cd-index.


def cd_sweep(
    lat: FaceLattice, s: SweepDirection, deep: bool = False
) -> tuple[dict, CDPolynomial]:
    """Per-vertex cd-index contributions and their sum.

    The contribution at v is d times the section's cd-index plus c times
    the recursive per-vertex parts of the vertex figure, summed over its
    sub-vertices with positive slope; the last vertex swept contributes
    zero.  The section's cd-index comes from the flag route; with
    deep=True it is recomputed by a recursive sweep under a fresh
    direction and the two must agree.
    """
    d = lat.dim
    if d == 0:
        return {0: CDPolynomial.one()}, CDPolynomial.one()
    c = CDPolynomial.word("c")
    dw = CDPolynomial.word("d")
    per: dict[int, CDPolynomial] = {}
    top = max(range(lat.n_vertices), key=lambda i: s.heights[i])
    for vi in range(lat.n_vertices):
        if vi == top:
            per[vi] = CDPolynomial.zero()
            continue
        qv = vertex_figure(lat, s, vi)
        sub_per, _ = cd_sweep(qv.lattice, qv.direction, deep=deep)
        term = CDPolynomial.zero()
        for j in range(qv.lattice.n_vertices):
            if qv.slopes[j] > 0:
                term = term + c * sub_per[j]
        if d >= 2:
            rv = sweep_section(lat, s, vi, qv)
            if rv is not None:
                phi_r = cd_index(rv.lattice)
                if deep:
                    fresh = choose_direction(None, rv.lattice.coords)
                    _, swept = cd_sweep(rv.lattice, fresh, deep=True)
                    if swept != phi_r:
                        raise CrossCheckError(
                            f"section cd-index mismatch at vertex {vi}: "
                            f"sweep {swept} vs flag {phi_r}"
                        )
                term = term + dw * phi_r
        per[vi] = term
    total = CDPolynomial.zero()
    for t in per.values():
        total = total + t
    return per, total


def cd_sweep_symmetric(
    lat: FaceLattice, s: SweepDirection
) -> tuple[dict, CDPolynomial]:
    """Direction-averaged form: with Q the vertex figure and R the
    section, each vertex contributes (c Phi(Q) + (2d - c^2) Phi(R)) / 2,
    both cd-indices by the flag route.  Per-vertex parts may be
    half-integral; the total must be integral."""
    d = lat.dim
    if d == 0:
        return {0: CDPolynomial.one()}, CDPolynomial.one()
    half = Fraction(1, 2)
    c = CDPolynomial.word("c")
    dw = CDPolynomial.word("d")
    per: dict[int, CDPolynomial] = {}
    for vi in range(lat.n_vertices):
        qv = vertex_figure(lat, s, vi)
        term = (c * cd_index(qv.lattice)) * half
        if d >= 2:
            rv = sweep_section(lat, s, vi, qv)
            if rv is not None:
                phi_r = cd_index(rv.lattice)
                term = term + ((dw * 2 - c * c) * phi_r) * half
        per[vi] = term
    total = CDPolynomial.zero()
    for t in per.values():
        total = total + t
    if not total.is_integral():
        raise CrossCheckError(f"symmetric sweep total is not integral: {total}")
    return per, total


# ---------------------------------------------------------------------------
# Simple-polytope baseline: h by outdegrees, partition by minimal vertex.


def _check_simple(lat: FaceLattice):
    for vi in range(lat.n_vertices):
        if len(lat.faces_at_vertex(vi, 1)) != lat.dim:
            raise NotSimple(f"vertex {vi} lies in {len(lat.faces_at_vertex(vi, 1))} edges")


def simple_h_by_outdegree(lat: FaceLattice, s: SweepDirection) -> tuple:
    """h_i = number of vertices with i edges oriented upward."""
    _check_simple(lat)
    h = [0] * (lat.dim + 1)
    for vi in range(lat.n_vertices):
        out = sum(
            1
            for e in _edges_at(lat, vi)
            if s.heights[_other_endpoint(lat, e, vi)] > s.heights[vi]
        )
        h[out] += 1
    return tuple(h)


def min_vertex_partition(lat: FaceLattice, s: SweepDirection) -> dict:
    """Assign every nonempty face to its height-minimal vertex.  For a
    simple polytope the block at v has exactly 2^outdegree(v) faces."""
    _check_simple(lat)
    blocks: dict[int, list] = {vi: [] for vi in range(lat.n_vertices)}
    for i in range(len(lat.masks)):
        if lat.dims[i] < 0:
            continue
        vmin = min(lat.vertices_of(i), key=lambda w: s.heights[w])
        blocks[vmin].append(i)
    return blocks
