"""Closed-form complete partitions of the polarity graphs and the general
odd/even/polarity constructions for arbitrary triangular systems.

Every family scheme knows three things in closed form: which class a
vertex belongs to, the unique cross edge between two distinct classes, and
the loop vertex inside a single class.  Verification never trusts these
formulas; it checks them against the graphs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .gf import FieldCtx, QuadBasis, find_normal_element
from .graphs import Partition
from .adg import ADGSpec, PolaritySpec

SYMMETRY_EXHAUSTIVE_LIMIT = 1_000_000
SYMMETRY_SAMPLES = 100_000


# ---------------------------------------------------------------------------
# family schemes
# ---------------------------------------------------------------------------

class PlaneScheme:
    """Classes keyed by (x, y): x in GF(q^2), y in GF(q); the class holds
    the q vertices (x, a*beta + y*beta^q)."""

    family = "plane"

    def __init__(self, ctx: FieldCtx, basis: QuadBasis | None = None):
        self.ctx = ctx
        self.basis = basis or find_normal_element(ctx)
        self.q = self.basis.q
        self.r = ctx.order * self.q  # q^3
        self.class_size = self.q

    def class_of_coords(self, coords):
        x, u = coords
        _, t = self.basis.decompose_beta(u)
        return x * self.q + self.basis.subfield_index(t)

    def class_key(self, cid):
        return (cid // self.q, self.basis.subfield[cid % self.q])

    def class_members(self, cid):
        x, y = self.class_key(cid)
        b = self.basis
        return [(x, b.recompose_beta(a, y)) for a in b.subfield]

    def loop_vertex(self, cid):
        x, y = self.class_key(cid)
        ctx, b = self.ctx, self.basis
        s_x, t_x = b.decompose_beta(ctx.pow(x, self.q + 1))
        assert s_x == t_x
        return (x, b.recompose_beta(ctx.sub(s_x, y), y))

    def unique_edge(self, cid1, cid2):
        """The one cross edge between distinct classes, else the loop vertex."""
        if cid1 == cid2:
            return self.loop_vertex(cid1)
        ctx, b = self.ctx, self.basis
        x, y = self.class_key(cid1)
        z, w = self.class_key(cid2)
        s, t = b.decompose_beta(ctx.mul(x, b.conj(z)))
        return (
            (x, b.recompose_beta(ctx.sub(s, w), y)),
            (z, b.recompose_beta(ctx.sub(t, y), w)),
        )


class GQScheme:
    """Classes keyed by (p1, p2), each holding the q vertices (p1, p2, a)."""

    family = "gq"

    def __init__(self, ctx: FieldCtx, e: int):
        self.ctx = ctx
        self.e = e
        self.q = ctx.order
        self.r = self.q ** 2
        self.class_size = self.q

    def class_of_coords(self, coords):
        return coords[0] * self.q + coords[1]

    def class_key(self, cid):
        return (cid // self.q, cid % self.q)

    def class_members(self, cid):
        p1, p2 = self.class_key(cid)
        return [(p1, p2, a) for a in range(self.q)]

    def loop_vertex(self, cid):
        ctx = self.ctx
        p1, p2 = self.class_key(cid)
        fe1 = ctx.frob_table(self.e + 1)
        third = ctx.add(ctx.mul(fe1[p1], ctx.mul(p1, p1)), fe1[p2])
        return (p1, p2, third)

    def unique_edge(self, cid1, cid2):
        if cid1 == cid2:
            return self.loop_vertex(cid1)
        ctx = self.ctx
        p1, p2 = self.class_key(cid1)
        r1, r2 = self.class_key(cid2)
        fe1 = ctx.frob_table(self.e + 1)
        a = ctx.add(ctx.mul(ctx.mul(p1, p1), fe1[r1]), fe1[r2])
        b = ctx.add(ctx.mul(fe1[p1], ctx.mul(r1, r1)), fe1[p2])
        return ((p1, p2, a), (r1, r2, b))


class GHScheme:
    """Classes keyed by (p1, p2, p3), each holding the q^2 vertices
    (p1, p2, p3, a, b)."""

    family = "gh"

    def __init__(self, ctx: FieldCtx, e: int):
        self.ctx = ctx
        self.e = e
        self.q = ctx.order
        self.r = self.q ** 3
        self.class_size = self.q ** 2

    def class_of_coords(self, coords):
        q = self.q
        return (coords[0] * q + coords[1]) * q + coords[2]

    def class_key(self, cid):
        q = self.q
        return (cid // (q * q), (cid // q) % q, cid % q)

    def class_members(self, cid):
        p1, p2, p3 = self.class_key(cid)
        q = self.q
        return [(p1, p2, p3, a, b) for a in range(q) for b in range(q)]

    def loop_vertex(self, cid):
        ctx = self.ctx
        p1, p2, p3 = self.class_key(cid)
        fe1 = ctx.frob_table(self.e + 1)
        p13 = ctx.pow(p1, 3)
        f = fe1[p1]
        a = ctx.sub(ctx.mul(p13, f), fe1[p2])
        b = ctx.sub(ctx.mul(p13, ctx.mul(f, f)), fe1[p3])
        return (p1, p2, p3, a, b)

    def unique_edge(self, cid1, cid2):
        if cid1 == cid2:
            return self.loop_vertex(cid1)
        ctx = self.ctx
        p1, p2, p3 = self.class_key(cid1)
        r1, r2, r3 = self.class_key(cid2)
        fe1 = ctx.frob_table(self.e + 1)
        t = fe1[r1]
        p13 = ctx.pow(p1, 3)
        a = ctx.sub(ctx.mul(p13, t), fe1[r2])
        b = ctx.sub(ctx.mul(p13, ctx.mul(t, t)), fe1[r3])
        c = fe1[ctx.sub(ctx.mul(p1, t), p2)]
        d = fe1[ctx.sub(ctx.mul(ctx.mul(p1, p1), t), p3)]
        return ((p1, p2, p3, a, b), (r1, r2, r3, c, d))


def scheme_partition(scheme, spec: ADGSpec) -> Partition:
    """Materialize a family scheme as a Partition over polarity-graph ids."""
    class_of = [scheme.class_of_coords(spec.id_to_coords(v))
                for v in range(spec.side_size)]
    return Partition(class_of, scheme.r)


def class_key_sidecar(scheme):
    """class id -> key coordinates, for the JSON sidecar next to partitions."""
    return {str(cid): list(scheme.class_key(cid)) for cid in range(scheme.r)}


# ---------------------------------------------------------------------------
# point-line symmetry
# ---------------------------------------------------------------------------

def is_point_line_symmetric(spec: ADGSpec, seed=0):
    """Whether every f_j is invariant under swapping l_i with p_i.

    Exhaustive over the full domain per function while it stays below
    SYMMETRY_EXHAUSTIVE_LIMIT tuples, sampled above.  Returns (ok, witness);
    the witness is (j, lvals, pvals) for the first violation.
    """
    ctx = spec.ctx
    q = ctx.order
    fns = spec.compiled()
    for i, fn in enumerate(fns):
        nargs = i + 1  # f_{i+2} reads l_1..l_{i+1}, p_1..p_{i+1}
        domain = q ** (2 * nargs)
        if domain <= SYMMETRY_EXHAUSTIVE_LIMIT:
            tuples = range(domain)

            def decode(t):
                vals = []
                for _ in range(2 * nargs):
                    vals.append(t % q)
                    t //= q
                return tuple(vals[:nargs]), tuple(vals[nargs:])

            candidates = (decode(t) for t in tuples)
        else:
            rng = random.Random(seed)
            candidates = (
                (tuple(rng.randrange(q) for _ in range(nargs)),
                 tuple(rng.randrange(q) for _ in range(nargs)))
                for _ in range(SYMMETRY_SAMPLES)
            )
        for lv, pv in candidates:
            if fn(lv, pv) != fn(pv, lv):
                return False, (i + 2, lv, pv)
    return True, None


# ---------------------------------------------------------------------------
# general constructions for triangular systems
# ---------------------------------------------------------------------------

def _mixed_radix(coords, base):
    n = 0
    for c in coords:
        n = n * base + c
    return n


@dataclass
class BipartitePairing:
    """Point-class and line-class keys paired into joint classes."""

    r: int
    point_class: object  # coords -> class id
    line_class: object


def general_odd_partition(spec: ADGSpec, pairing=None):
    """Pair point classes (fixed odd coordinates) with line classes (fixed
    l_1 and even coordinates) into a complete partition of the bipartite
    graph; m must be odd.

    The pairing maps point-key encodings to line-key encodings and defaults
    to the identity.  Returns (Partition over bipartite ids, r).
    """
    m = spec.m
    if m % 2 == 0:
        raise ValueError("odd construction needs odd m")
    q = spec.ctx.order
    half = (m + 1) // 2
    r = q ** half
    point_idx = tuple(range(0, m, 2))        # p_1, p_3, ..., p_m
    line_idx = (0,) + tuple(range(1, m - 1, 2))  # l_1, l_2, l_4, ..., l_{m-1}
    if pairing is None:
        pairing = list(range(r))
    if sorted(pairing) != list(range(r)):
        raise ValueError("pairing is not a bijection on class keys")
    inverse = [0] * r
    for pk, lk in enumerate(pairing):
        inverse[lk] = pk

    ns = spec.side_size
    class_of = [0] * (2 * ns)
    for v in range(ns):
        coords = spec.id_to_coords(v)
        class_of[v] = _mixed_radix([coords[i] for i in point_idx], q)
    for v in range(ns):
        coords = spec.id_to_coords(v)
        lk = _mixed_radix([coords[i] for i in line_idx], q)
        class_of[ns + v] = inverse[lk]
    return Partition(class_of, r), r


def general_even_partition(spec: ADGSpec, basis: QuadBasis | None = None):
    """Complete partition of the bipartite graph for even m over GF(q^2),
    splitting the last coordinate over the {1, mu} basis.

    Point classes fix the odd coordinates and the 1-component of the last;
    line classes fix l_1, the even coordinates below m, and the
    mu-component of the last.  Returns (Partition, r, basis).
    """
    m = spec.m
    if m % 2 != 0:
        raise ValueError("even construction needs even m")
    ctx = spec.ctx
    basis = basis or find_normal_element(ctx)
    q = basis.q
    q2 = ctx.order
    r = q ** (m + 1)
    point_idx = tuple(range(0, m - 1, 2))       # p_1, p_3, ..., p_{m-1}
    line_idx = (0,) + tuple(range(1, m - 2, 2))  # l_1, l_2, ..., l_{m-2}

    def point_key(coords):
        s, _ = basis.decompose_mu(coords[m - 1])
        n = _mixed_radix([coords[i] for i in point_idx], q2)
        return n * q + basis.subfield_index(s)

    def line_key(coords):
        _, t = basis.decompose_mu(coords[m - 1])
        n = _mixed_radix([coords[i] for i in line_idx], q2)
        return n * q + basis.subfield_index(t)

    ns = spec.side_size
    class_of = [0] * (2 * ns)
    for v in range(ns):
        class_of[v] = point_key(spec.id_to_coords(v))
        class_of[ns + v] = line_key(spec.id_to_coords(v))
    return Partition(class_of, r), r, basis


class GeneralPolarityScheme:
    """Theorem-style classes on the polarity graph of a point-line-symmetric
    even-m system: key (x_1, y_2, ..., y_m) with y_i the beta^q coordinate."""

    family = "generic"

    def __init__(self, spec: ADGSpec, basis: QuadBasis | None = None):
        if spec.m % 2 != 0:
            raise ValueError("polarity construction needs even m")
        ok, witness = is_point_line_symmetric(spec)
        if not ok:
            raise ValueError(f"adjacency functions are not point-line-symmetric: {witness}")
        self.spec = spec
        self.ctx = spec.ctx
        self.basis = basis or find_normal_element(spec.ctx)
        self.q = self.basis.q
        self.m = spec.m
        self.r = self.ctx.order * self.q ** (spec.m - 1)
        self.class_size = self.q ** (spec.m - 1)

    def class_of_coords(self, coords):
        n = coords[0]
        for u in coords[1:]:
            _, t = self.basis.decompose_beta(u)
            n = n * self.q + self.basis.subfield_index(t)
        return n

    def class_key(self, cid):
        ys = []
        for _ in range(self.m - 1):
            ys.append(self.basis.subfield[cid % self.q])
            cid //= self.q
        ys.reverse()
        return (cid, *ys)


def general_polarity_partition(spec: ADGSpec, basis: QuadBasis | None = None):
    """Partition of the conjugation polarity graph into q^(m+1) classes of
    size q^(m-1); optimally complete by construction, verified elsewhere.

    Returns (Partition over point ids, scheme).
    """
    scheme = GeneralPolarityScheme(spec, basis)
    return scheme_partition(scheme, spec), scheme
