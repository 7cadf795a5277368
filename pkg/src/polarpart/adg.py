"""Algebraically defined bipartite graphs, polarities, and polarity graphs.

A spec over GF(q) with dimension m carries adjacency functions f_2..f_m;
point (p_1..p_m) and line [l_1..l_m] are adjacent iff
l_j + p_j = f_j(l_1, p_1, ..., l_{j-1}, p_{j-1}) for every j.  Given a point
and l_1, the system solves forward coordinate by coordinate, so every point
lies on exactly q lines (and dually), which is what makes implicit neighbor
enumeration cheap.

Adjacency functions are small expression trees (not opaque callables) so
specs serialize into reports and symmetry checks can sweep their domain.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .gf import FieldCtx, make_field, prime_power
from .graphs import ImplicitGraph

# -- expression trees --------------------------------------------------------
# ("var", "p"|"l", i)   1-based coordinate reference
# ("const", c)          field constant by encoding
# ("add"|"sub"|"mul", a, b)
# ("neg", a)
# ("pow", a, n)         integer n >= 0


def var_p(i):
    return ("var", "p", i)


def var_l(i):
    return ("var", "l", i)


def const(c):
    return ("const", c)


def add(a, b):
    return ("add", a, b)


def sub(a, b):
    return ("sub", a, b)


def mul(a, b):
    return ("mul", a, b)


def neg(a):
    return ("neg", a)


def powi(a, n):
    return ("pow", a, n)


def expr_to_json(e):
    return list(e[:1]) + [expr_to_json(x) if isinstance(x, tuple) else x for x in e[1:]]


def expr_from_json(obj):
    return tuple(expr_from_json(x) if isinstance(x, list) else x for x in obj)


def compile_expr(e, ctx: FieldCtx):
    """Closure (lvals, pvals) -> element; coordinates are 0-indexed tuples."""
    op = e[0]
    if op == "var":
        i = e[2] - 1
        if e[1] == "l":
            return lambda lv, pv: lv[i]
        return lambda lv, pv: pv[i]
    if op == "const":
        c = e[1]
        ctx._chk(c)
        return lambda lv, pv: c
    if op == "neg":
        f = compile_expr(e[1], ctx)
        t = [ctx.neg(u) for u in range(ctx.order)]
        return lambda lv, pv: t[f(lv, pv)]
    if op == "pow":
        f = compile_expr(e[1], ctx)
        n = e[2]
        t = [ctx.pow(u, n) for u in range(ctx.order)]
        return lambda lv, pv: t[f(lv, pv)]
    f = compile_expr(e[1], ctx)
    g = compile_expr(e[2], ctx)
    o = {"add": ctx.add, "sub": ctx.sub, "mul": ctx.mul}[op]
    return lambda lv, pv: o(f(lv, pv), g(lv, pv))


def eval_expr(e, ctx, lvals, pvals):
    return compile_expr(e, ctx)(lvals, pvals)


def max_var_index(e):
    if e[0] == "var":
        return e[2]
    return max((max_var_index(x) for x in e[1:] if isinstance(x, tuple)), default=0)


# -- specs -------------------------------------------------------------------

@dataclass(frozen=True)
class ADGSpec:
    """Bipartite graph over two copies of GF(q)^m with triangular adjacency."""

    ctx: FieldCtx
    m: int
    fs: tuple  # fs[i] is the expression for f_{i+2}

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("dimension must be >= 2")
        if len(self.fs) != self.m - 1:
            raise ValueError(f"need {self.m - 1} adjacency functions, got {len(self.fs)}")
        for i, f in enumerate(self.fs):
            if max_var_index(f) > i + 1:
                raise ValueError(f"f_{i + 2} reads coordinates past index {i + 1}")

    def compiled(self):
        fns = getattr(self, "_fns", None)
        if fns is None:
            fns = [compile_expr(f, self.ctx) for f in self.fs]
            object.__setattr__(self, "_fns", fns)
        return fns

    def to_json(self):
        return {
            "field": self.ctx.to_json(),
            "m": self.m,
            "fs": [expr_to_json(f) for f in self.fs],
        }

    @classmethod
    def from_json(cls, obj):
        fj = obj["field"]
        ctx = make_field(fj["p"], fj["k"])
        return cls(ctx, obj["m"], tuple(expr_from_json(f) for f in obj["fs"]))

    # -- incidence ----------------------------------------------------------

    def line_through(self, pvals, l1):
        """The unique line with first coordinate l1 through the point."""
        ctx_sub = self.ctx.sub
        fns = self.compiled()
        lv = [l1]
        for j, fn in enumerate(fns):
            lv.append(ctx_sub(fn(lv, pvals), pvals[j + 1]))
        return tuple(lv)

    def point_on(self, lvals, p1):
        """The unique point with first coordinate p1 on the line."""
        ctx_sub = self.ctx.sub
        fns = self.compiled()
        pv = [p1]
        for j, fn in enumerate(fns):
            pv.append(ctx_sub(fn(lvals, pv), lvals[j + 1]))
        return tuple(pv)

    def neighbors_of_point(self, pvals):
        """All q lines through a point, by ascending first coordinate."""
        return [self.line_through(pvals, l1) for l1 in range(self.ctx.order)]

    def neighbors_of_line(self, lvals):
        return [self.point_on(lvals, p1) for p1 in range(self.ctx.order)]

    def incident(self, pvals, lvals):
        ctx = self.ctx
        for j, fn in enumerate(self.compiled()):
            if ctx.add(lvals[j + 1], pvals[j + 1]) != fn(lvals, pvals):
                return False
        return True

    # -- vertex ids: mixed radix, big-endian, points before lines ------------

    def coords_to_id(self, coords):
        q = self.ctx.order
        n = 0
        for c in coords:
            n = n * q + c
        return n

    def id_to_coords(self, n):
        q = self.ctx.order
        out = [0] * self.m
        for i in range(self.m - 1, -1, -1):
            out[i] = n % q
            n //= q
        return tuple(out)

    @property
    def side_size(self):
        return self.ctx.order ** self.m

    def all_coords(self):
        for n in range(self.side_size):
            yield self.id_to_coords(n)

    def bipartite_graph(self) -> ImplicitGraph:
        """Implicit incidence graph: point ids 0..q^m-1, then line ids."""
        ns = self.side_size

        def neighbors(v):
            if v < ns:
                return [ns + self.coords_to_id(l) for l in self.neighbors_of_point(self.id_to_coords(v))]
            lv = self.id_to_coords(v - ns)
            return [self.coords_to_id(p) for p in self.neighbors_of_line(lv)]

        return ImplicitGraph(2 * ns, neighbors)


# -- polarities ---------------------------------------------------------------

@dataclass(frozen=True)
class PolaritySpec:
    """Coordinate permutation with per-coordinate Frobenius twists.

    point_to_line[i] = (src, j) sets line coordinate i+1 to p_{src+1}^(p^j);
    line_to_point is the inverse direction.  Composing the two must be the
    identity (checked by check_polarity, not assumed).
    """

    point_to_line: tuple
    line_to_point: tuple

    def apply_point(self, ctx, pvals):
        return tuple(ctx.frob_table(j)[pvals[src]] for src, j in self.point_to_line)

    def apply_line(self, ctx, lvals):
        return tuple(ctx.frob_table(j)[lvals[src]] for src, j in self.line_to_point)

    def to_json(self):
        return {
            "point_to_line": [list(r) for r in self.point_to_line],
            "line_to_point": [list(r) for r in self.line_to_point],
        }


@dataclass
class PolarityCheck:
    ok: bool
    mode: str
    swaps_sides: bool
    involution: bool
    preserves_adjacency: bool
    checked_incidences: int
    witness: tuple | None

    def to_json(self):
        return {
            "ok": self.ok,
            "mode": self.mode,
            "swaps_sides": self.swaps_sides,
            "involution": self.involution,
            "preserves_adjacency": self.preserves_adjacency,
            "checked_incidences": self.checked_incidences,
            "witness": list(self.witness) if self.witness else None,
        }


def check_polarity(spec: ADGSpec, pol: PolaritySpec, mode="exhaustive",
                   samples=100_000, seed=0) -> PolarityCheck:
    """Verify pi swaps sides, squares to the identity, preserves adjacency.

    Exhaustive mode walks every point and every incidence; sampled mode
    draws `samples` random incidences with the given seed.
    """
    ctx = spec.ctx
    m = spec.m
    if len(pol.point_to_line) != m or len(pol.line_to_point) != m:
        raise ValueError("polarity dimension mismatch")
    swaps = True  # structural: apply_point emits line coords and vice versa

    if mode == "exhaustive":
        points = spec.all_coords()
    elif mode == "sampled":
        rng = random.Random(seed)
        q = ctx.order
        points = (tuple(rng.randrange(q) for _ in range(m)) for _ in range(samples))
    else:
        raise ValueError(f"unknown mode {mode!r}")

    involution = True
    preserves = True
    witness = None
    checked = 0
    if mode == "sampled":
        rng2 = random.Random(seed + 1)
    for p in points:
        l_img = pol.apply_point(ctx, p)
        if pol.apply_line(ctx, l_img) != p:
            involution = False
            witness = ("involution", p)
            break
        if mode == "exhaustive":
            lines = spec.neighbors_of_point(p)
        else:
            lines = [spec.line_through(p, rng2.randrange(ctx.order))]
        for lv in lines:
            checked += 1
            if not spec.incident(pol.apply_line(ctx, lv), pol.apply_point(ctx, p)):
                preserves = False
                witness = ("adjacency", p, lv)
                break
        if not preserves:
            break
        # inverse-direction involution, on the polar line
        if pol.apply_point(ctx, pol.apply_line(ctx, l_img)) != l_img:
            involution = False
            witness = ("involution-line", l_img)
            break
    ok = swaps and involution and preserves
    return PolarityCheck(ok, mode, swaps, involution, preserves, checked, witness)


class PolarityGraph:
    """Polarity graph on the point side: p ~ r iff r lies on pi(p).

    The self-incidence (absolute point) is excluded from neighbor lists
    and recorded as a loop instead.
    """

    def __init__(self, spec: ADGSpec, pol: PolaritySpec):
        self.spec = spec
        self.pol = pol
        self.n = spec.side_size

    def neighbors_coords(self, pvals):
        lv = self.pol.apply_point(self.spec.ctx, pvals)
        return [r for r in self.spec.neighbors_of_line(lv) if r != pvals]

    def is_absolute(self, pvals):
        lv = self.pol.apply_point(self.spec.ctx, pvals)
        return self.spec.incident(pvals, lv)

    def degree_of(self, pvals):
        return len(self.neighbors_coords(pvals))

    def implicit(self) -> ImplicitGraph:
        spec = self.spec

        def neighbors(v):
            return [spec.coords_to_id(r) for r in self.neighbors_coords(spec.id_to_coords(v))]

        def is_loop(v):
            return self.is_absolute(spec.id_to_coords(v))

        return ImplicitGraph(self.n, neighbors, is_loop)

    def absolute_points(self):
        """Exhaustive absolute-point scan; only sensible when n is small."""
        return [p for p in self.spec.all_coords() if self.is_absolute(p)]


def build_polarity_graph(spec: ADGSpec, pol: PolaritySpec, mode="exhaustive",
                         seed=0) -> PolarityGraph:
    """Check the polarity, then wrap it; raises if the check fails."""
    chk = check_polarity(spec, pol, mode=mode, seed=seed)
    if not chk.ok:
        raise ValueError(f"polarity check failed: {chk.witness}")
    return PolarityGraph(spec, pol)


# -- bulk (vectorized) adjacency ----------------------------------------------

def _np():
    import numpy
    return numpy


def _bulk_tables(ctx: FieldCtx):
    np = _np()
    cached = getattr(ctx, "_np_tables", None)
    if cached is None:
        q = ctx.order
        if ctx._add_t is None:
            raise ValueError("bulk evaluation needs a table-backed field")
        cached = {
            "add": np.array(ctx._add_t, dtype=np.int16),
            "sub": np.array(ctx._sub_t, dtype=np.int16),
            "mul": np.array(ctx._mul_t, dtype=np.int16),
            "neg": np.array(ctx._neg_t, dtype=np.int16),
        }
        ctx._np_tables = cached
    return cached


def eval_expr_bulk(e, ctx, lv, pv):
    """Evaluate an expression on numpy coordinate arrays."""
    np = _np()
    t = _bulk_tables(ctx)
    op = e[0]
    if op == "var":
        arr = lv if e[1] == "l" else pv
        return arr[e[2] - 1]
    if op == "const":
        return np.int16(e[1])
    if op == "neg":
        return t["neg"][eval_expr_bulk(e[1], ctx, lv, pv)]
    if op == "pow":
        vec = np.array([ctx.pow(u, e[2]) for u in range(ctx.order)], dtype=np.int16)
        return vec[eval_expr_bulk(e[1], ctx, lv, pv)]
    a = eval_expr_bulk(e[1], ctx, lv, pv)
    b = eval_expr_bulk(e[2], ctx, lv, pv)
    return t[op][a, b]


def count_absolute_bulk(pg: PolarityGraph, chunk=1 << 20) -> int:
    """Absolute-point count by a vectorized scan over all q^m points."""
    np = _np()
    spec, pol = pg.spec, pg.pol
    ctx = spec.ctx
    t = _bulk_tables(ctx)
    q = ctx.order
    m = spec.m
    frobs = {j: np.array(ctx.frob_table(j), dtype=np.int16)
             for j in {j for _, j in pol.point_to_line}}
    total = 0
    n = spec.side_size
    for lo in range(0, n, chunk):
        ids = np.arange(lo, min(lo + chunk, n), dtype=np.int64)
        pv = []
        rest = ids
        for i in range(m - 1, -1, -1):
            pv.append((rest % q).astype(np.int16))
            rest = rest // q
        pv.reverse()
        lv = [frobs[j][pv[src]] for src, j in pol.point_to_line]
        mask = np.ones(len(ids), dtype=bool)
        for j, f in enumerate(spec.fs):
            lhs = t["add"][lv[j + 1], pv[j + 1]]
            rhs = np.broadcast_to(eval_expr_bulk(f, ctx, lv, pv), lhs.shape)
            mask &= lhs == rhs
        total += int(mask.sum())
    return total


# -- the concrete families -----------------------------------------------------

def plane_family(q: int):
    """Biaffine-plane graph over GF(q^2) with the conjugation polarity.

    m = 2 with the single equation p_2 + l_2 = p_1*l_1; the polarity is
    coordinatewise q-th power.
    """
    pp = prime_power(q)
    if pp is None:
        raise ValueError(f"{q} is not a prime power")
    p, d = pp
    ctx = make_field(p, 2 * d)
    spec = ADGSpec(ctx, 2, (mul(var_p(1), var_l(1)),))
    pol = PolaritySpec(((0, d), (1, d)), ((0, d), (1, d)))
    return spec, pol


def gq_family(e: int, allow_small_e=False):
    """Biaffine generalized-quadrangle graph over GF(2^(2e+1)), with polarity.

    Equations p_2 + l_2 = p_1*l_1 and p_3 + l_3 = p_1^2*l_1.  The polarity
    twists coordinates by the 2^(e+1) and 2^e Frobenius powers.  e = 0 is
    outside the stated range and allowed only behind the override flag;
    the polarity check still runs either way.
    """
    if e < 1 and not allow_small_e:
        raise ValueError("gq family needs e >= 1 (pass the small-e override to try e = 0)")
    if e < 0:
        raise ValueError("e must be >= 0")
    ctx = make_field(2, 2 * e + 1)
    spec = ADGSpec(ctx, 3, (
        mul(var_p(1), var_l(1)),
        mul(powi(var_p(1), 2), var_l(1)),
    ))
    pol = PolaritySpec(
        ((0, e + 1), (2, e), (1, e + 1)),
        ((0, e), (2, e), (1, e + 1)),
    )
    return spec, pol


def gh_adjacency_spec(q: int) -> ADGSpec:
    """Hexagon-type system p_2+l_2 = p_1 l_1, ..., p_5+l_5 = p_1^3 l_1^2 over GF(q), q = 3^eta."""
    pp = prime_power(q)
    if pp is None or pp[0] != 3:
        raise ValueError(f"{q} is not a power of 3")
    ctx = make_field(3, pp[1])
    return ADGSpec(ctx, 5, (
        mul(var_p(1), var_l(1)),
        mul(powi(var_p(1), 2), var_l(1)),
        mul(powi(var_p(1), 3), var_l(1)),
        mul(powi(var_p(1), 3), powi(var_l(1), 2)),
    ))


def gh_family(e: int, allow_small_e=False):
    """Biaffine generalized-hexagon graph over GF(3^(2e+1)), with polarity."""
    if e < 1 and not allow_small_e:
        raise ValueError("gh family needs e >= 1 (pass the small-e override to try e = 0)")
    if e < 0:
        raise ValueError("e must be >= 0")
    spec = gh_adjacency_spec(3 ** (2 * e + 1))
    pol = PolaritySpec(
        ((0, e + 1), (3, e), (4, e), (1, e + 1), (2, e + 1)),
        ((0, e), (3, e), (4, e), (1, e + 1), (2, e + 1)),
    )
    return spec, pol


def gh_original_family(q: int):
    """The hexagon system with the cross-term last equation, plus the
    change-of-coordinates phi onto gh_adjacency_spec(q).

    phi acts per side: on points it shears coordinates 3..5, on lines only
    the fifth.  It is a bijection; adjacency preservation is a checkable
    claim, not an assumption.
    """
    pp = prime_power(q)
    if pp is None or pp[0] != 3:
        raise ValueError(f"{q} is not a power of 3")
    ctx = make_field(3, pp[1])
    spec = ADGSpec(ctx, 5, (
        mul(var_p(1), var_l(1)),
        mul(var_p(1), var_l(2)),
        mul(var_p(1), var_l(3)),
        sub(mul(var_p(2), var_l(3)), mul(var_p(3), var_l(2))),
    ))

    def phi(side, coords):
        c1, c2, c3, c4, c5 = coords
        if side == "P":
            return (
                c1,
                c2,
                ctx.add(c3, ctx.mul(c1, c2)),
                ctx.add(c4, ctx.add(ctx.mul(c1, c3), ctx.mul(ctx.mul(c1, c1), c2))),
                ctx.add(ctx.neg(c5), ctx.sub(ctx.mul(ctx.mul(c2, c2), c1), ctx.mul(c2, c3))),
            )
        if side == "L":
            return (c1, c2, c3, c4, ctx.add(ctx.neg(c5), ctx.mul(c2, c3)))
        raise ValueError(f"side must be 'P' or 'L', got {side!r}")

    return spec, phi


def generic_conjugation_polarity(spec: ADGSpec) -> PolaritySpec:
    """Coordinatewise q-th power polarity for a point-line-symmetric spec
    over GF(q^2); rejects specs that fail the symmetry check."""
    from .partitions import is_point_line_symmetric

    if spec.ctx.k % 2 != 0:
        raise ValueError("conjugation polarity needs a quadratic extension field")
    ok, witness = is_point_line_symmetric(spec)
    if not ok:
        raise ValueError(f"adjacency functions are not point-line-symmetric: {witness}")
    d = spec.ctx.k // 2
    rules = tuple((i, d) for i in range(spec.m))
    return PolaritySpec(rules, rules)
