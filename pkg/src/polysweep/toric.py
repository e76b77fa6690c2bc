"""The toric h-vector, its g-vector, the c/d operators, and the extended
toric h-vector.

Vectors are plain tuples (h_0, ..., h_d).  The c and d operators act on
the right in the classical notation; here ``act_word`` applies the
letters of a word left to right starting from the seed (1), so that the
full cd-index of a polytope, applied to (1), returns its toric h-vector.
Intermediate vectors can be negative; symmetry and unimodality are facts
about final results only.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import CrossCheckError, NotInImage
from .flagvec import CDPolynomial, cd_index, cd_words, reverse_words
from .polytope import FaceLattice
from .sweep import SweepDirection, sweep_section, vertex_figure


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def normalize_vec(h) -> tuple:
    return tuple(_norm(x) for x in h)


def zeros(n: int) -> tuple:
    return (0,) * n


def vec_add(a, b) -> tuple:
    assert len(a) == len(b)
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b) -> tuple:
    assert len(a) == len(b)
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a) -> tuple:
    return tuple(c * x for x in a)


def g_from_h(h) -> tuple:
    """(g_0, ..., g_{floor(d/2)}) with g_0 = h_0, g_i = h_i - h_{i-1}."""
    d = len(h) - 1
    m = d // 2
    return tuple(h[0] if i == 0 else h[i] - h[i - 1] for i in range(m + 1))


def op_c(h) -> tuple:
    """Length d+1 -> d+2: reflect the g-vector, inserting a middle zero
    when d is odd."""
    d = len(h) - 1
    g = g_from_h(h)
    if d % 2 == 0:
        return g + g[::-1]
    return g + (0,) + g[::-1]


def op_d(h) -> tuple:
    """Length d+1 -> d+3: the middle g entry alone for even d, zero for
    odd d.  An empty input (a word too long to occur) gives (0, 0)."""
    n = len(h)
    if n == 0:
        return (0, 0)
    d = n - 1
    out = [0] * (d + 3)
    if d % 2 == 0:
        g = g_from_h(h)
        out[(d + 2) // 2] = g[d // 2]
    return tuple(out)


def act_word(seed, w: str) -> tuple:
    """Apply the letters of w to the seed vector, first letter first."""
    h = tuple(seed)
    for ch in w:
        h = op_c(h) if ch == "c" else op_d(h)
    return h


def toric_from_cd(phi: CDPolynomial, degree: int | None = None) -> tuple:
    """h = (1) Phi: sum of coeff * act_word((1), word).

    ``degree`` pins the answer length for a zero polynomial; otherwise it
    is inferred from the (homogeneous) polynomial.
    """
    if degree is None:
        degree = phi.homogeneous_degree()
    total = zeros(degree + 1)
    for w, c in phi.terms.items():
        assert CDPolynomial.word_degree(w) == degree
        total = vec_add(total, vec_scale(c, act_word((1,), w)))
    return normalize_vec(total)


def toric_dual_h(l: FaceLattice) -> tuple:
    """Toric h-vector of the dual: reverse the cd-index, then act on (1)."""
    return toric_from_cd(reverse_words(cd_index(l)), degree=l.dim)


# ---------------------------------------------------------------------------
# Definition route: the g/h recursion over the face lattice.


def _polymul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _x_minus_1_pow(m: int) -> list:
    out = [1]
    for _ in range(m):
        out = _polymul(out, [-1, 1])
    return out


def toric_h_definition(l: FaceLattice) -> tuple:
    """h(boundary of P) by the recursion
    h = sum over proper faces G of g(boundary of G) * (x-1)^(d-1-dim G),
    with g = h = 1 for the empty face, memoized face by face."""
    order = sorted(range(len(l.masks)), key=lambda i: l.dims[i])
    g_cache: dict[int, list] = {0: [1]}  # ascending coefficients
    h_full: tuple | None = None
    for fi in order:
        k = l.dims[fi]
        if k < 0:
            continue
        coeffs = [0] * (k + 1)
        for gj in order:
            if gj == fi or not l.contains(gj, fi):
                continue
            term = _polymul(g_cache[l.masks[gj]], _x_minus_1_pow(k - 1 - l.dims[gj]))
            for i, x in enumerate(term):
                coeffs[i] += x
        h = tuple(coeffs[k - i] for i in range(k + 1))
        if fi == len(l.masks) - 1:
            h_full = h
        g = g_from_h(h)
        g_cache[l.masks[fi]] = list(g)
    assert h_full is not None
    return normalize_vec(h_full)


# ---------------------------------------------------------------------------
# Sweep routes.  Sweeping P accumulates the toric h-vector of the dual
# of P, mirroring the cd-index sweep with words replaced by operators.


def toric_sweep(lat: FaceLattice, s: SweepDirection) -> tuple[dict, tuple]:
    """Per-vertex contributions to h(boundary of P dual) and their sum:
    op_d of the section's dual h plus op_c of the recursive per-vertex
    parts of the vertex figure over its upward sub-vertices."""
    d = lat.dim
    if d == 0:
        return {0: (1,)}, (1,)
    per: dict[int, tuple] = {}
    top = max(range(lat.n_vertices), key=lambda i: s.heights[i])
    for vi in range(lat.n_vertices):
        if vi == top:
            per[vi] = zeros(d + 1)
            continue
        qv = vertex_figure(lat, s, vi)
        sub_per, _ = toric_sweep(qv.lattice, qv.direction)
        acc = zeros(d + 1)
        for j in range(qv.lattice.n_vertices):
            if qv.slopes[j] > 0:
                acc = vec_add(acc, op_c(sub_per[j]))
        if d >= 2:
            rv = sweep_section(lat, s, vi, qv)
            if rv is not None:
                acc = vec_add(acc, op_d(toric_dual_h(rv.lattice)))
        per[vi] = acc
    total = zeros(d + 1)
    for t in per.values():
        total = vec_add(total, t)
    return per, normalize_vec(total)


def toric_sweep_symmetric(lat: FaceLattice, s: SweepDirection) -> tuple[dict, tuple]:
    """Direction-averaged form: each vertex contributes
    (h(dQ*)c + h(dR*)(2d - c^2)) / 2.  Entries may be half-integral per
    vertex; the total must be integral."""
    d = lat.dim
    if d == 0:
        return {0: (1,)}, (1,)
    half = Fraction(1, 2)
    per: dict[int, tuple] = {}
    for vi in range(lat.n_vertices):
        qv = vertex_figure(lat, s, vi)
        acc = op_c(toric_dual_h(qv.lattice))
        if d >= 2:
            rv = sweep_section(lat, s, vi, qv)
            if rv is not None:
                hr = toric_dual_h(rv.lattice)
                acc = vec_add(acc, vec_scale(2, op_d(hr)))
                acc = vec_sub(acc, op_c(op_c(hr)))
        per[vi] = normalize_vec(half * x for x in acc)
    total = zeros(d + 1)
    for t in per.values():
        total = vec_add(total, t)
    total = normalize_vec(total)
    if any(isinstance(x, Fraction) for x in total):
        raise CrossCheckError(f"symmetric toric total is not integral: {total}")
    return per, total


# ---------------------------------------------------------------------------
# Extended toric h-vector.


def d_prefixed_words(degree: int) -> list:
    """The empty word plus every cd-word of degree <= ``degree`` whose
    first letter is d."""
    out = [""]
    for k in range(2, degree + 1):
        out.extend(w for w in cd_words(k) if w.startswith("d"))
    return out


def extended_toric(phi: CDPolynomial, degree: int | None = None) -> dict:
    """h^w = (1) Phi^w for each word w in the d-prefixed family, where
    Phi^w collects the terms of Phi ending in w, suffix removed."""
    if degree is None:
        degree = phi.homogeneous_degree()
    out = {}
    for w in d_prefixed_words(degree):
        k = CDPolynomial.word_degree(w)
        if w:
            parts = {
                u[: len(u) - len(w)]: c
                for u, c in phi.terms.items()
                if u.endswith(w)
            }
        else:
            parts = dict(phi.terms)
        out[w] = toric_from_cd(CDPolynomial(parts), degree=degree - k)
    return out


def invert_c(s) -> tuple:
    """The unique symmetric h with op_c(h) = s.

    s must mirror to itself and, for odd target degree, have middle
    entry zero; otherwise NotInImage.
    """
    n = len(s)
    if n < 2:
        raise NotInImage("input too short")
    d = n - 2
    if tuple(s) != tuple(reversed(s)):
        raise NotInImage(f"not mirror-symmetric: {s}")
    m = d // 2
    if d % 2 == 1 and s[m + 1] != 0:
        raise NotInImage(f"odd-degree middle entry must be zero: {s}")
    h = [0] * (d + 1)
    acc = 0
    for i in range(m + 1):
        acc += s[i]
        h[i] = acc
        h[d - i] = acc
    return normalize_vec(h)


def reconstruct_cd(hhat: dict, degree: int) -> CDPolynomial:
    """Rebuild the cd-index from the d-prefixed vector family.

    Every word is the empty word, starts with d (given), or is c.w'; in
    the last case h^{cw'} = invert_c(h^{w'} - op_d(h^{dw'})).  The
    coefficient of each degree-d word is the single entry of its vector.
    """
    given = {("" if k == "1" else k): tuple(v) for k, v in hhat.items()}
    table: dict[str, tuple] = {"": tuple(given[""])}
    if len(table[""]) != degree + 1:
        raise ValueError("entry for the empty word has the wrong length")
    for k in range(1, degree + 1):
        for w in cd_words(k):
            if w.startswith("d"):
                table[w] = given.get(w, zeros(degree - k + 1))
                if len(table[w]) != degree - k + 1:
                    raise ValueError(f"entry for {w} has the wrong length")
            else:
                rest = w[1:]
                # h^{dw'} starts with d, so it is given (zero if absent
                # or if its degree would exceed the total degree)
                hd = given.get("d" + rest, zeros(degree - k))
                table[w] = invert_c(vec_sub(table[rest], op_d(hd)))
    terms = {}
    for w in cd_words(degree):
        (coeff,) = table[w]
        if coeff:
            terms[w] = coeff
    return CDPolynomial(terms)


# ---------------------------------------------------------------------------
# Predicates used by the verification suites.


def is_symmetric(h) -> bool:
    return tuple(h) == tuple(reversed(h))


def is_unimodal(h) -> bool:
    mid = len(h) // 2
    up = all(h[i] <= h[i + 1] for i in range(mid))
    down = all(h[i] >= h[i + 1] for i in range(mid, len(h) - 1))
    return up and down
