import math
from fractions import Fraction as F

import pytest

import polysweep as ps
from conftest import lat
from polysweep.errors import NonVertexPoint, NotFullDimensional
from polysweep.exactnum import vec
from polysweep.polytope import (
    FaceLattice,
    VRep,
    facet_hyperplanes,
    vrep_from_json,
    vrep_to_json,
)


def cube_f_oracle(d):
    """Counting oracle: the d-cube has 2^(d-k) C(d,k) faces of dim k."""
    return (1,) + tuple(2 ** (d - k) * math.comb(d, k) for k in range(d + 1))


def test_hull_square():
    assert lat("cube:2").f_vector() == (1, 4, 4, 1)


def test_hull_cube():
    assert cube_f_oracle(3) == (8, 12, 6, 1)[0:0] + (1, 8, 12, 6, 1)
    assert lat("cube:3").f_vector() == cube_f_oracle(3)
    assert lat("cube:4").f_vector() == cube_f_oracle(4)


def test_hull_square_pyramid():
    # apex over the unit square: 5 vertices, 8 edges, 5 facets
    l = ps.hull_lattice(ps.pyramid(ps.make_cube(2)))
    assert l.f_vector() == (1, 5, 8, 5, 1)


def test_constructors():
    assert lat("polygon:5").f_vector() == (1, 5, 5, 1)
    assert lat("cross:3").f_vector() == (1, 6, 12, 8, 1)
    assert lat("cube:1").f_vector() == (1, 2, 1)
    assert lat("simplex:0").f_vector() == (1, 1)


def test_pyramid_prism_product():
    assert len(ps.pyramid(ps.make_polygon(4)).vertices) == 5
    assert ps.hull_lattice(ps.prism(ps.make_polygon(3))).f_vector() == (1, 6, 9, 5, 1)
    square = ps.product(ps.make_cube(1), ps.make_cube(1))
    assert ps.hull_lattice(square).f_vector() == (1, 4, 4, 1)


def test_product_face_counts_convolve():
    # nonempty faces of P x Q are pairs of nonempty faces
    p, q = lat("simplex:2"), lat("cube:1")
    pq = ps.hull_lattice(ps.product(p.coords, q.coords))
    fp, fq, fpq = p.f_vector(), q.f_vector(), pq.f_vector()
    for k in range(pq.dim + 1):
        conv = sum(
            fp[i + 1] * fq[k - i + 1]
            for i in range(k + 1)
            if i <= p.dim and k - i <= q.dim
        )
        assert fpq[k + 1] == conv


def test_hull_rejects_non_vertex_points():
    square_plus_center = VRep(
        2, (vec(0, 0), vec(2, 0), vec(0, 2), vec(2, 2), vec(1, 1))
    )
    with pytest.raises(NonVertexPoint) as e:
        ps.hull_lattice(square_plus_center)
    assert e.value.index == 4
    edge_midpoint = VRep(2, (vec(0, 0), vec(2, 0), vec(1, 0), vec(0, 2)))
    with pytest.raises(NonVertexPoint):
        ps.hull_lattice(edge_midpoint)


def test_hull_rejects_flat_input():
    with pytest.raises(NotFullDimensional):
        ps.hull_lattice(VRep(2, (vec(0, 0), vec(1, 1), vec(2, 2))))


def test_hull_rejects_duplicate_points():
    with pytest.raises(NonVertexPoint):
        ps.hull_lattice(VRep(2, (vec(0, 0), vec(1, 0), vec(0, 1), vec(0, 0))))


def test_collinear_interior_point():
    with pytest.raises(NonVertexPoint):
        ps.hull_lattice(VRep(1, (vec(0), vec(2), vec(1))))


def test_one_dimensional_crosspolytope():
    assert ps.hull_lattice(ps.make_crosspolytope(1)).f_vector() == (1, 2, 1)


def test_lattice_structure_valid():
    for spec in ("cube:3", "cross:3", "polygon:5", "pyramid:polygon:4", "simplex:4"):
        lat(spec).validate()


def test_dim0_faces_are_singletons():
    l = lat("cross:4")
    for i in l.by_dim[0]:
        assert l.masks[i].bit_count() == 1


def test_dual_cube_is_octahedron():
    assert ps.lattice_isomorphic(ps.dual(lat("cube:3")), lat("cross:3"))
    assert not ps.lattice_isomorphic(ps.dual(lat("cube:3")), lat("cube:3"))


def test_dual_simplex_self():
    assert ps.lattice_isomorphic(ps.dual(lat("simplex:3")), lat("simplex:3"))


def test_dual_involution():
    # the double dual reindexes vertices, so compare up to isomorphism
    for spec in ("cube:3", "polygon:6", "pyramid:polygon:4"):
        l = lat(spec)
        dd = ps.dual(ps.dual(l))
        assert dd.f_vector() == l.f_vector()
        assert ps.lattice_isomorphic(dd, l)


def test_polar_dual_realizes_dual_lattice():
    for spec in ("cube:3", "simplex:3", "pyramid:polygon:4", "polygon:5"):
        l = lat(spec)
        polar = ps.hull_lattice(ps.polar_dual(l))
        dl = ps.dual(l)
        assert polar.masks == dl.masks and polar.dims == dl.dims


def test_facet_hyperplanes_outward():
    l = lat("cross:3")
    pts = l.coords.vertices
    for normal, offset in facet_hyperplanes(l):
        assert all(ps.dot(normal, p) <= offset for p in pts)


def test_is_eulerian():
    assert ps.is_eulerian(lat("cube:3"))
    assert ps.is_eulerian(lat("polygon:5"))


def test_deleted_facet_breaks_eulerian():
    l = lat("cube:3")
    victim = l.by_dim[2][0]
    pruned = FaceLattice(
        3,
        [(l.masks[i], l.dims[i]) for i in range(len(l.masks)) if i != victim],
        coords=l.coords,
    )
    # direct interval count oracle: [empty, P] now has 26 proper faces
    # + 2 ends: ranks -1..3 hold 1, 8, 12, 5, 1 elements -> imbalance 1
    counts = [0] * 5
    for k in pruned.dims:
        counts[k + 1] += 1
    assert counts == [1, 8, 12, 5, 1]
    assert sum(counts[0::2]) - sum(counts[1::2]) != 0
    assert not ps.is_eulerian(pruned)


def test_every_constructor_output_eulerian():
    for spec in (
        "simplex:3",
        "cube:3",
        "cross:3",
        "polygon:7",
        "pyramid:polygon:5",
        "prism:polygon:3",
        "product:simplex:2:simplex:2",
    ):
        assert ps.is_eulerian(lat(spec))


def test_vrep_json_roundtrip():
    v = VRep(2, (vec(0, 0), vec(1, 0), vec(F(1, 2), F(3, 7))))
    obj = vrep_to_json(v)
    assert obj["vertices"][2] == ["1/2", "3/7"]
    assert vrep_from_json(obj) == v
