"""Partitioning the complete truncation of a polytope.

The complete truncation is the simple polytope obtained by shaving every
face at rapidly decreasing depths; its faces correspond to chains of
proper nonempty faces, with the whole truncation corresponding to the
empty chain.  It is never built with coordinates here: once the shaving
depths are small, every comparison the construction needs is decided by
vertex heights (first order) or edge slopes at a vertex (second order),
both exact.

The partition assembles pre-blocks {G, top(G), bottom(G)} for the chains
without a vertex entry, files each "middle" chain under its top face,
and then merges pre-blocks along the recursive partitions of the vertex
figures and sections.  Each resulting block carries one cd-word; the
words sum to the cd-index.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CrossCheckError
from .flagvec import (
    CDPolynomial,
    FlagVector,
    ab_from_cd,
    ab_index,
    cd_index,
    flag_h,
    subsets_of,
)
from .polytope import FaceLattice
from .sweep import (
    MIDDLE,
    SubPolytope,
    SweepDirection,
    choose_direction,
    classify_face,
    is_extreme,
    map_chain,
    sweep_section,
    vertex_figure,
)

Chain = tuple  # tuple[int, ...]: lattice face indices, dimensions ascending


@dataclass(frozen=True)
class Block:
    """One block of the partition: a set of chains, one cd-word, and the
    vertex whose sweep step created it."""

    word: str
    owner: int
    faces: frozenset  # frozenset[Chain]

    def size_law(self) -> int:
        return 3 ** self.word.count("c") * 4 ** self.word.count("d")


def enumerate_chains(l: FaceLattice) -> list:
    """All chains of proper nonempty faces, including the empty chain."""
    proper = [i for i in range(len(l.masks)) if 0 <= l.dims[i] < l.dim]
    chains: list[Chain] = [()]
    stack: list[Chain] = [()]
    while stack:
        ch = stack.pop()
        last = ch[-1] if ch else None
        for i in proper:
            if last is not None and (
                l.dims[i] <= l.dims[last] or not l.contains(last, i)
            ):
                continue
            ext = ch + (i,)
            chains.append(ext)
            stack.append(ext)
    return chains


def chain_sigma(l: FaceLattice, chain: Chain) -> frozenset:
    return frozenset(l.dims[i] for i in chain)


def _has_vertex_entry(l: FaceLattice, chain: Chain) -> bool:
    return bool(chain) and l.dims[chain[0]] == 0


def _extreme_vertex(l: FaceLattice, s: SweepDirection, fi: int, want_max: bool) -> int:
    vs = l.vertices_of(fi)
    key = s.heights.__getitem__
    return max(vs, key=key) if want_max else min(vs, key=key)


class _Context:
    """Caches per (lattice, direction): vertex figures and edge slopes."""

    def __init__(self, lat: FaceLattice, s: SweepDirection):
        self.lat = lat
        self.s = s
        self._figs: dict[int, SubPolytope] = {}

    def figure(self, vi: int) -> SubPolytope:
        if vi not in self._figs:
            self._figs[vi] = vertex_figure(self.lat, self.s, vi)
        return self._figs[vi]

    def slope(self, vi: int, edge: int):
        """Slope key of an edge at vi, read off the vertex figure: the
        sub-vertex sitting on that edge carries it."""
        qv = self.figure(vi)
        for j in range(qv.lattice.n_vertices):
            if qv.face_parent[qv.lattice.by_dim[0][j]] == edge:
                return qv.slopes[j]
        raise KeyError(edge)


def _top_bottom(l, s, ctx: _Context, chain: Chain, want_top: bool) -> Chain:
    """Add the missing minimal label to a chain: a vertex of the chain's
    minimal face (extremal in height), or, when the chain already starts
    at a vertex v, an edge at v inside the next face (extremal in slope).
    """
    full = len(l.masks) - 1
    if not _has_vertex_entry(l, chain):
        f1 = chain[0] if chain else full
        v = _extreme_vertex(l, s, f1, want_top)
        return (l.index[1 << v],) + chain
    vi = l.vertices_of(chain[0])[0]
    rest = chain[1:]
    assert not rest or l.dims[rest[0]] >= 2, "label 1 already present"
    f2 = rest[0] if rest else full
    edges = [
        e for e in l.faces_at_vertex(vi, 1) if l.contains(e, f2)
    ]
    pick = (max if want_top else min)(edges, key=lambda e: ctx.slope(vi, e))
    return (chain[0], pick) + rest


def top_face(l: FaceLattice, s: SweepDirection, chain: Chain) -> Chain:
    return _top_bottom(l, s, _Context(l, s), chain, want_top=True)


def bottom_face(l: FaceLattice, s: SweepDirection, chain: Chain) -> Chain:
    return _top_bottom(l, s, _Context(l, s), chain, want_top=False)


def _classify_chain(l, s, chain: Chain) -> str:
    """Position of a truncation face of the vertex figure at the chain's
    vertex, relative to the sweep hyperplane: decided by the chain's
    minimal face."""
    vi = l.vertices_of(chain[0])[0]
    rest = chain[1:]
    if not rest:
        hv = s.heights[vi]
        if hv == min(s.heights):
            return "upper"
        if hv == max(s.heights):
            return "lower"
        return MIDDLE
    return classify_face(l, s, vi, rest[0])


def _partition(lat: FaceLattice, s: SweepDirection) -> list:
    """Recursive construction; returns (word, owner, chains) triples."""
    d = lat.dim
    if d == 0:
        return [("", 0, [()])]
    ctx = _Context(lat, s)
    chains = enumerate_chains(lat)

    members: dict[Chain, set] = {}
    key_of: dict[Chain, Chain] = {}

    def file_under(key: Chain, ch: Chain):
        prev = key_of.get(ch)
        if prev is not None and prev != key:
            raise CrossCheckError(f"chain {ch} filed under two pre-blocks")
        key_of[ch] = key
        members.setdefault(key, set()).add(ch)

    # pre-blocks {G, top(G), bottom(G)}, keyed by the bottom face, for
    # every chain without a vertex entry
    with_vertex = []
    for ch in chains:
        if _has_vertex_entry(lat, ch):
            with_vertex.append(ch)
            continue
        tau = _top_bottom(lat, s, ctx, ch, want_top=True)
        beta = _top_bottom(lat, s, ctx, ch, want_top=False)
        file_under(beta, beta)
        file_under(beta, tau)
        file_under(beta, ch)

    # middle chains join the pre-block of their top face
    for ch in with_vertex:
        cls = _classify_chain(lat, s, ch)
        if cls == "upper":
            if key_of.get(ch) != ch:
                raise CrossCheckError(f"upper face {ch} is not its own key")
        elif cls == "lower":
            if ch not in key_of:
                raise CrossCheckError(f"lower face {ch} was never filed")
        else:
            tau = _top_bottom(lat, s, ctx, ch, want_top=True)
            if key_of.get(tau) != tau:
                raise CrossCheckError(f"top face {tau} of middle {ch} not upper")
            file_under(tau, ch)

    if sum(len(v) for v in members.values()) != len(chains):
        raise CrossCheckError("pre-blocks do not cover the chains")

    # merge along the recursive partitions of the sections (word d...)
    # and of the vertex figures above the sweep plane (word c...)
    records = []
    top_v = max(range(lat.n_vertices), key=lambda i: s.heights[i])
    for vi in range(lat.n_vertices):
        if vi == top_v:
            continue
        qv = ctx.figure(vi)
        if d >= 2 and not is_extreme(lat, s, vi):
            rv = sweep_section(lat, s, vi, qv)
            fresh = choose_direction(None, rv.lattice.coords)
            for word, _, sub_chains in _partition(rv.lattice, fresh):
                keys = []
                for sc in sub_chains:
                    mid = map_chain(rv, sc)
                    keys.append(key_of[mid])
                records.append(("d" + word, vi, keys))
        for word, owner_w, sub_chains in _partition(qv.lattice, qv.direction):
            if qv.slopes[owner_w] > 0:
                keys = []
                for sc in sub_chains:
                    up = map_chain(qv, sc)
                    if key_of.get(up) != up:
                        raise CrossCheckError(
                            f"figure block face {up} is not an upper face"
                        )
                    keys.append(up)
                records.append(("c" + word, vi, keys))

    used = [k for _, _, keys in records for k in keys]
    if len(used) != len(set(used)) or set(used) != set(members):
        raise CrossCheckError("merges do not hit every pre-block exactly once")

    out = []
    for word, owner, keys in records:
        faces: list[Chain] = []
        for k in keys:
            faces.extend(members[k])
        out.append((word, owner, faces))
    return out


def build_partition(lat: FaceLattice, s: SweepDirection) -> list:
    """The full partition of the chains of P under the given sweep."""
    return [
        Block(word=w, owner=o, faces=frozenset(faces))
        for w, o, faces in _partition(lat, s)
    ]


# ---------------------------------------------------------------------------
# Verification.


@dataclass
class PartitionReport:
    ok: bool
    failures: list

    def __bool__(self):
        return self.ok


def verify_partition(blocks, chains, lat: FaceLattice) -> PartitionReport:
    """Check the four defining properties of the partition:

    1. the blocks are pairwise disjoint and cover all chains;
    2. each block has 3^(#c) * 4^(#d) faces;
    3. the block words sum to the cd-index computed by the flag route;
    4. within each block, the flag h-vector of the label sets expands to
       exactly the ab-expansion of the block's word.
    """
    failures = []
    seen: set = set()
    total = 0
    for b in blocks:
        total += len(b.faces)
        overlap = seen & b.faces
        if overlap:
            failures.append(f"block overlap on {sorted(overlap)[:3]}")
        seen |= b.faces
    if total != len(chains) or seen != set(chains):
        failures.append(
            f"cover failure: {total} faces in blocks vs {len(chains)} chains"
        )

    for b in blocks:
        if len(b.faces) != b.size_law():
            failures.append(
                f"size law: block {b.word} has {len(b.faces)} faces, "
                f"wants {b.size_law()}"
            )

    word_sum = CDPolynomial({})
    for b in blocks:
        word_sum = word_sum + CDPolynomial.word(b.word)
    phi = cd_index(lat)
    if word_sum != phi:
        failures.append(f"word sum {word_sum} != cd-index {phi}")

    d = lat.dim
    for b in blocks:
        counts: dict[frozenset, int] = {}
        for ch in b.faces:
            S = chain_sigma(lat, ch)
            counts[S] = counts.get(S, 0) + 1
        f_block = FlagVector(d, {S: counts.get(S, 0) for S in subsets_of(d)})
        psi_block = ab_index(flag_h(f_block))
        expected = ab_from_cd(CDPolynomial.word(b.word))
        if psi_block != expected:
            failures.append(
                f"block {b.word}: flag polynomial {psi_block} != {expected}"
            )
    return PartitionReport(ok=not failures, failures=failures)
