"""Claim checking: partition verdicts, counting bounds, LUW relations,
brute-force oracles, and the per-family verification reports.

Everything here distrusts the closed-form constructions: counts come from
the graphs, verdicts from pair-edge matrices, and formulas are re-checked
against actual adjacency.  Large instances that cannot materialize run a
seeded sampled protocol and say so in the report.
"""

from __future__ import annotations

import math
import random

from . import adg, partitions as parts
from .gf import prime_power
from .graphs import (
    Graph, Partition, contains_C4, degree, degree_multiset, edge_count,
    even_cycle_free_upto, find_even_cycle, girth, loop_count, materialize,
    pair_edge_matrix,
)

ORACLE_MAX_N = 12
DEFAULT_MATERIALIZE_LIMIT = 2_000_000

# sample sizes for the streaming (non-materializable) protocol
SAMPLED_INCIDENCES = 100_000
SAMPLED_CLASS_PAIRS = 100_000
SAMPLED_FULL_SWEEPS = 200
SAMPLED_WITHIN = 10_000
SAMPLED_DEGREES = 10_000
SAMPLED_SYMMETRY = 10_000
SAMPLED_CYCLE_ROOTS = {2: 200, 3: 30, 4: 3, 5: 1}


def binom_upper_bound(edges: int) -> int:
    """Largest r with C(r, 2) <= edges, i.e. floor(sqrt(2e + 1/4) + 1/2)."""
    return (1 + math.isqrt(1 + 8 * edges)) // 2


def proposition_bound(n: int, delta: int, r: int) -> bool:
    """Necessary condition for a complete partition into r parts:
    floor(n/r) * Delta >= r - 1."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return (n // r) * delta >= r - 1


def ratio_eq6(psi_lower: int, edges: int) -> float:
    """psi / sqrt(2 e); >= 1/sqrt(2) for all triangular systems, and just
    above 1 for optimally complete graphs."""
    if edges <= 0:
        raise ValueError("edges must be positive")
    return psi_lower / math.sqrt(2 * edges)


# ---------------------------------------------------------------------------
# partition verdicts
# ---------------------------------------------------------------------------

def verdict(g: Graph, part: Partition):
    """complete / achromatic / optimally_complete flags plus witnesses.

    Loops never count as within-class edges.  Witnesses name the first
    failing pair or within-class edge so reports stay actionable.
    """
    mat = pair_edge_matrix(g, part)
    r = part.r
    witnesses = []
    complete = True
    all_single = True
    for i in range(r):
        row = mat.cross[i]
        for j in range(i + 1, r):
            if row[j] == 0:
                complete = False
                witnesses.append(("missing_pair", i, j))
            elif row[j] > 1:
                all_single = False
                witnesses.append(("multi_edge_pair", i, j, row[j]))
    within_total = mat.total_within()
    if within_total:
        cls = part.class_of
        for u, v in g.edges():
            if cls[u] == cls[v]:
                witnesses.append(("within_edge", cls[u], u, v))
                break
    achromatic = complete and within_total == 0
    optimally_complete = (
        complete and all_single and within_total == 0
        and edge_count(g) == r * (r - 1) // 2
    )
    return {
        "complete": complete,
        "achromatic": achromatic,
        "optimally_complete": optimally_complete,
    }, witnesses, mat


# ---------------------------------------------------------------------------
# brute-force oracles (tiny graphs)
# ---------------------------------------------------------------------------

def chromatic_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    order = sorted(range(g.n), key=lambda v: -len(g.adj[v]))
    colors = {}

    def rec(i, k):
        if i == len(order):
            return True
        v = order[i]
        used = {colors[u] for u in g.adj[v] if u in colors}
        # symmetry breaking: at most one brand-new color per vertex
        limit = min(k, max(colors.values(), default=-1) + 2)
        for c in range(limit):
            if c not in used:
                colors[v] = c
                if rec(i + 1, k):
                    return True
                del colors[v]
        return False

    for k in range(1, g.n + 1):
        colors.clear()
        if rec(0, k):
            return k
    return g.n


def _psi_chi_a(g: Graph):
    """Exact (psi, chi_a) by enumerating vertex partitions with incremental
    cross-pair bookkeeping; exponential, guarded by ORACLE_MAX_N."""
    n = g.n
    if n > ORACLE_MAX_N:
        raise ValueError(f"oracle ceiling is {ORACLE_MAX_N} vertices, got {n}")
    if n == 0:
        return 0, 0
    e = edge_count(g)
    cap = min(n, binom_upper_bound(e))
    adj = g.adj
    cls = [-1] * n
    paircnt = {}
    best = {"psi": 0, "chi_a": 0}
    state = {"connected": 0, "within": 0}

    def rec(v, used):
        if used + (n - v) <= best["chi_a"] and used + (n - v) <= best["psi"]:
            return
        if v == n:
            if state["connected"] == used * (used - 1) // 2:
                if used > best["psi"]:
                    best["psi"] = used
                if state["within"] == 0 and used > best["chi_a"]:
                    best["chi_a"] = used
            return
        upper = min(used + 1, cap)
        for c in range(upper):
            touched = []
            within_added = 0
            for u in adj[v]:
                cu = cls[u]
                if cu < 0:
                    continue
                if cu == c:
                    within_added += 1
                else:
                    key = (cu, c) if cu < c else (c, cu)
                    k = paircnt.get(key, 0)
                    paircnt[key] = k + 1
                    touched.append(key)
                    if k == 0:
                        state["connected"] += 1
            state["within"] += within_added
            cls[v] = c
            rec(v + 1, max(used, c + 1))
            cls[v] = -1
            state["within"] -= within_added
            for key in touched:
                k = paircnt[key] - 1
                paircnt[key] = k
                if k == 0:
                    state["connected"] -= 1

    rec(0, 0)
    return best["psi"], best["chi_a"]


def brute_force_psi(g: Graph) -> int:
    return _psi_chi_a(g)[0]


def brute_force_chi_a(g: Graph) -> int:
    psi, chi_a = _psi_chi_a(g)
    chi = chromatic_number(g)
    assert chi <= chi_a <= psi, (chi, chi_a, psi)
    return chi_a


# ---------------------------------------------------------------------------
# LUW relation checks (materialized graphs)
# ---------------------------------------------------------------------------

def luw_report(g_bip: Graph, gp: Graph, absolute_ids, kmax=3):
    """Degree relation, incidence reconciliation, cycle transfer, and girth
    halving between a bipartite graph and its polarity graph.

    Point v of the polarity graph is vertex v of the bipartite graph (the
    point side comes first in the id layout).
    """
    absolute = set(absolute_ids)
    n_pi = len(absolute)
    degree_ok = True
    degree_witness = None
    for v in range(gp.n):
        expect = degree(g_bip, v) - (1 if v in absolute else 0)
        if degree(gp, v) != expect:
            degree_ok = False
            degree_witness = (v, degree(gp, v), expect)
            break
    e_bip = edge_count(g_bip)
    e_gp = edge_count(gp)
    reconciled = e_bip == 2 * e_gp + n_pi
    literal = e_gp == e_bip - n_pi
    transfers = {}
    for k in range(2, kmax + 1):
        bip_witness = find_even_cycle(g_bip, k)
        if bip_witness is None:
            gp_witness = find_even_cycle(gp, k)
            transfers[2 * k] = {
                "bipartite_free": True,
                "polarity_free": gp_witness is None,
                "witness": list(gp_witness) if gp_witness else None,
            }
        else:
            transfers[2 * k] = {"bipartite_free": False, "polarity_free": None,
                                "witness": None}
    transfer_ok = all(t["polarity_free"] for t in transfers.values()
                      if t["bipartite_free"])
    g_bip_girth = girth(g_bip)
    gp_girth = girth(gp)
    girth_ok = gp_girth >= g_bip_girth / 2
    return {
        "degree_relation_ok": degree_ok,
        "degree_witness": degree_witness,
        "incidences": e_bip,
        "polarity_edges": e_gp,
        "absolute": n_pi,
        "reconciled_ok": reconciled,
        "literal_difference_form": literal,
        "cycle_transfer": transfers,
        "cycle_transfer_ok": transfer_ok,
        "bipartite_girth": g_bip_girth if g_bip_girth != math.inf else "inf",
        "polarity_girth": gp_girth if gp_girth != math.inf else "inf",
        "girth_halving_ok": girth_ok,
        "ok": degree_ok and reconciled and transfer_ok and girth_ok,
    }


# ---------------------------------------------------------------------------
# family bundles
# ---------------------------------------------------------------------------

FORBIDDEN = {"plane": (2,), "gq": (2, 3), "gh": (2, 3, 4, 5), "generic": ()}


def family_bundle(family, *, q=None, e=None, allow_small_e=False, spec_json=None):
    """Construct (spec, pol, scheme, params) for a named family."""
    if family == "plane":
        if q is None:
            raise ValueError("plane family needs --q")
        spec, pol = adg.plane_family(q)
        scheme = parts.PlaneScheme(spec.ctx)
        return spec, pol, scheme, {"q": q}
    if family == "gq":
        if e is None:
            raise ValueError("gq family needs --e")
        spec, pol = adg.gq_family(e, allow_small_e=allow_small_e)
        scheme = parts.GQScheme(spec.ctx, e)
        return spec, pol, scheme, {"e": e, "q": spec.ctx.order}
    if family == "gh":
        if e is None:
            raise ValueError("gh family needs --e")
        spec, pol = adg.gh_family(e, allow_small_e=allow_small_e)
        scheme = parts.GHScheme(spec.ctx, e)
        return spec, pol, scheme, {"e": e, "q": spec.ctx.order}
    if family == "generic":
        if spec_json is None:
            raise ValueError("generic family needs a spec file")
        spec = adg.ADGSpec.from_json(spec_json)
        pol = adg.generic_conjugation_polarity(spec)
        scheme = parts.GeneralPolarityScheme(spec)
        return spec, pol, scheme, {"m": spec.m, "order": spec.ctx.order}
    raise ValueError(f"unknown family {family!r}")


def expected_degree_spectrum(scheme, q):
    """vertex-degree -> count for the polarity graph of each family."""
    n = None
    if scheme.family == "plane":
        return {q * q: q ** 4 - q ** 3, q * q - 1: q ** 3}
    if scheme.family == "gq":
        return {q: q ** 3 - q ** 2, q - 1: q ** 2}
    if scheme.family == "gh":
        return {q: q ** 5 - q ** 3, q - 1: q ** 3}
    return None


# ---------------------------------------------------------------------------
# exhaustive (materialized) family verification
# ---------------------------------------------------------------------------

def _check_unique_edges(g: Graph, spec, scheme):
    """Closed-form cross edge and loop vertex against the real graph."""
    if not hasattr(scheme, "unique_edge"):
        return True, None  # general construction: verdicts carry the proof
    r = scheme.r
    for c1 in range(r):
        lv = scheme.loop_vertex(c1)
        if scheme.class_of_coords(lv) != c1:
            return False, ("loop_vertex_class", c1)
        if spec.coords_to_id(lv) not in g.loops:
            return False, ("loop_vertex_not_absolute", c1)
        for c2 in range(c1 + 1, r):
            a, b = scheme.unique_edge(c1, c2)
            if scheme.class_of_coords(a) != c1 or scheme.class_of_coords(b) != c2:
                return False, ("edge_endpoint_class", c1, c2)
            if not g.has_edge(spec.coords_to_id(a), spec.coords_to_id(b)):
                return False, ("edge_formula_not_edge", c1, c2)
    return True, None


def verify_family_exhaustive(family, *, q=None, e=None, seed=0,
                             materialize_limit=DEFAULT_MATERIALIZE_LIMIT,
                             allow_small_e=False, spec_json=None,
                             with_luw=True, graph=None, partition=None):
    """Full verification of a materializable family instance.

    When graph/partition are supplied (from files) they are verified in
    place of freshly constructed ones, so tampering is detectable.
    """
    spec, pol, scheme, params = family_bundle(
        family, q=q, e=e, allow_small_e=allow_small_e, spec_json=spec_json)
    ctx = spec.ctx
    qq = params.get("q", ctx.order)
    pol_check = adg.check_polarity(spec, pol, mode="exhaustive")
    report = {
        "family": family,
        "params": params,
        "mode": "exhaustive",
        "field": ctx.to_json(),
        "polarity": pol_check.to_json(),
        "seeds": [seed],
        "witnesses": [],
    }
    if not pol_check.ok:
        report["ok"] = False
        report["witnesses"].append(("polarity", pol_check.witness))
        return report

    pg = adg.PolarityGraph(spec, pol)
    if graph is None:
        g = materialize(pg.implicit(), materialize_limit)
    else:
        g = graph
    if partition is None:
        part = parts.scheme_partition(scheme, spec)
    else:
        part = partition

    n_pi = loop_count(g)
    report["counts"] = {
        "n": g.n,
        "edges": edge_count(g),
        "loops": n_pi,
        "absolute": n_pi,
        "edge_count_method": "exact",
    }
    report["degree_multiset"] = {str(k): v for k, v in sorted(degree_multiset(g).items())}
    spectrum = expected_degree_spectrum(scheme, qq)
    degrees_ok = spectrum is None or degree_multiset(g) == spectrum
    verd, witnesses, mat = verdict(g, part)
    report["partition"] = {"r": part.r, "class_size": getattr(scheme, "class_size", None)}
    report["verdicts"] = verd
    report["witnesses"].extend(witnesses[:20])

    unique_ok, unique_witness = _check_unique_edges(g, spec, scheme)
    if not unique_ok:
        report["witnesses"].append(unique_witness)
    loops_per_class = [0] * scheme.r
    for v in g.loops:
        loops_per_class[part.class_of[v]] += 1
    loops_ok = all(c == 1 for c in loops_per_class) and n_pi == scheme.r

    cycles = {}
    cycles_ok = True
    for k in FORBIDDEN[family]:
        w = contains_C4(g) if k == 2 else find_even_cycle(g, k)
        cycles[f"C{2 * k}"] = "pass" if w is None else "fail"
        if w is not None:
            cycles_ok = False
            report["witnesses"].append((f"C{2 * k}", list(w)))
    report["cycles"] = cycles

    e_g = edge_count(g)
    dmax = max((len(a) for a in g.adj), default=0)
    bub = binom_upper_bound(e_g)
    prop_next = proposition_bound(g.n, dmax, part.r + 1)
    certified = verd["complete"] and (bub == part.r or not prop_next)
    report["bounds"] = {
        "binom_ub": bub,
        "prop1_holds_at_r": proposition_bound(g.n, dmax, part.r),
        "prop1_fails_at_r_plus_1": not prop_next,
        "eq6_ratio": ratio_eq6(part.r, e_g) if verd["complete"] and e_g else None,
        "psi": part.r if certified else None,
        "chi_a": part.r if certified and verd["achromatic"] else None,
        "certified": certified,
    }
    report["checks"] = {
        "degrees_ok": degrees_ok,
        "unique_edges_ok": unique_ok,
        "loops_one_per_class": loops_ok,
    }
    if with_luw:
        g_bip = materialize(spec.bipartite_graph(), 4 * materialize_limit)
        kmax = max(FORBIDDEN[family], default=2)
        report["luw"] = luw_report(g_bip, g, sorted(g.loops), kmax=min(kmax, 3))
    else:
        report["luw"] = None

    ok = (
        verd["optimally_complete"] and degrees_ok and unique_ok and loops_ok
        and cycles_ok and certified
        and (report["luw"] is None or report["luw"]["ok"])
    )
    report["ok"] = ok
    return report


# ---------------------------------------------------------------------------
# sampled (streaming) verification for instances too large to materialize
# ---------------------------------------------------------------------------

def _sampled_even_cycle(pg: adg.PolarityGraph, k, num_roots, rng):
    """Meet-in-the-middle 2k-cycle search from randomly chosen roots."""
    spec = pg.spec
    q = spec.ctx.order
    m = spec.m
    for _ in range(num_roots):
        root = tuple(rng.randrange(q) for _ in range(m))
        by_end = {}
        stack = [(root, (root,))]
        while stack:
            v, path = stack.pop()
            if len(path) == k + 1:
                inner = path[1:-1]
                bucket = by_end.setdefault(v, [])
                for other in bucket:
                    if not set(inner) & set(other):
                        return path + tuple(reversed(other))
                bucket.append(inner)
                continue
            for u in pg.neighbors_coords(v):
                if u not in path:
                    stack.append((u, path + (u,)))
    return None


def verify_family_sampled(family, *, e=None, seed=0,
                          class_pair_samples=SAMPLED_CLASS_PAIRS,
                          full_sweeps=SAMPLED_FULL_SWEEPS,
                          within_samples=SAMPLED_WITHIN,
                          degree_samples=SAMPLED_DEGREES,
                          cycle_roots=None,
                          allow_small_e=False):
    """Seeded streaming verification of a gh-sized instance.

    Closed-form unique edges are confirmed by direct substitution on
    sampled class pairs plus full one-edge sweeps on a subsample; within-
    class and degree checks are sampled; the absolute-point count is an
    exact vectorized scan over all points.
    """
    spec, pol, scheme, params = family_bundle(family, e=e, allow_small_e=allow_small_e)
    ctx = spec.ctx
    q = ctx.order
    m = spec.m
    rng = random.Random(seed)
    cycle_roots = dict(SAMPLED_CYCLE_ROOTS if cycle_roots is None else cycle_roots)

    pol_check = adg.check_polarity(spec, pol, mode="sampled",
                                   samples=SAMPLED_INCIDENCES, seed=seed)
    report = {
        "family": family,
        "params": params,
        "mode": "sampled",
        "field": ctx.to_json(),
        "polarity": pol_check.to_json(),
        "seeds": [seed],
        "witnesses": [],
    }
    if not pol_check.ok:
        report["ok"] = False
        report["witnesses"].append(("polarity", pol_check.witness))
        return report

    pg = adg.PolarityGraph(spec, pol)
    n = spec.side_size
    n_pi = adg.count_absolute_bulk(pg)
    incidences = n * q  # each point lies on exactly q lines (forward solve)
    edges = (incidences - n_pi) // 2
    report["counts"] = {
        "n": n,
        "edges": edges,
        "loops": n_pi,
        "absolute": n_pi,
        "edge_count_method": "derived",
    }

    # loop vertices: the formula output must be absolute, for every class
    loops_ok = n_pi == scheme.r
    loop_formula_ok = True
    for cid in range(scheme.r):
        lvtx = scheme.loop_vertex(cid)
        if scheme.class_of_coords(lvtx) != cid or not pg.is_absolute(lvtx):
            loop_formula_ok = False
            report["witnesses"].append(("loop_vertex", cid))
            break

    # sampled unique-edge substitution
    adjacency_ok = True
    substitution_checked = 0
    for _ in range(class_pair_samples):
        c1 = rng.randrange(scheme.r)
        c2 = rng.randrange(scheme.r)
        if c1 == c2:
            vtx = scheme.loop_vertex(c1)
            if not pg.is_absolute(vtx):
                adjacency_ok = False
                report["witnesses"].append(("loop_not_absolute", c1))
                break
        else:
            a, b = scheme.unique_edge(c1, c2)
            lv = pol.apply_point(ctx, a)
            if (scheme.class_of_coords(a) != c1 or scheme.class_of_coords(b) != c2
                    or not spec.incident(b, lv)):
                adjacency_ok = False
                report["witnesses"].append(("unique_edge_formula", c1, c2))
                break
        substitution_checked += 1

    # full one-edge sweeps on a subsample of class pairs
    sweep_ok = True
    sweeps_done = 0
    for _ in range(full_sweeps):
        c1 = rng.randrange(scheme.r)
        c2 = rng.randrange(scheme.r)
        if c1 == c2:
            continue
        expected = scheme.unique_edge(c1, c2)
        key2 = scheme.class_key(c2)
        found = []
        for member in scheme.class_members(c1):
            for nb in pg.neighbors_coords(member):
                if nb[:len(key2)] == key2:
                    found.append((member, nb))
        if found != [expected]:
            sweep_ok = False
            report["witnesses"].append(("sweep_pair", c1, c2, len(found)))
            break
        sweeps_done += 1

    # within-class sampling: no non-loop edges inside a class
    within_ok = True
    for _ in range(within_samples):
        cid = rng.randrange(scheme.r)
        members = scheme.class_members(cid)
        v = members[rng.randrange(len(members))]
        key = scheme.class_key(cid)
        for nb in pg.neighbors_coords(v):
            if nb[:len(key)] == key:
                within_ok = False
                report["witnesses"].append(("within_edge", cid, v, nb))
                break
        if not within_ok:
            break

    # degree spot checks against the two-value spectrum
    spectrum_ok = True
    seen_degrees = {}
    for _ in range(degree_samples):
        v = tuple(rng.randrange(q) for _ in range(m))
        d = pg.degree_of(v)
        seen_degrees[d] = seen_degrees.get(d, 0) + 1
        expect = q - 1 if pg.is_absolute(v) else q
        if d != expect:
            spectrum_ok = False
            report["witnesses"].append(("degree", v, d, expect))
            break
    report["degree_multiset"] = {str(k): v for k, v in sorted(seen_degrees.items())}

    # sampled adjacency symmetry of the implicit graph
    symmetry_ok = True
    for _ in range(SAMPLED_SYMMETRY):
        v = tuple(rng.randrange(q) for _ in range(m))
        nbs = pg.neighbors_coords(v)
        if not nbs:
            continue
        u = nbs[rng.randrange(len(nbs))]
        if v not in pg.neighbors_coords(u):
            symmetry_ok = False
            report["witnesses"].append(("symmetry", v, u))
            break

    cycles = {}
    cycles_ok = True
    for k in FORBIDDEN[family]:
        w = _sampled_even_cycle(pg, k, cycle_roots.get(k, 1), rng)
        cycles[f"C{2 * k}"] = "pass-sampled" if w is None else "fail"
        if w is not None:
            cycles_ok = False
            report["witnesses"].append((f"C{2 * k}", [list(x) for x in w]))
    report["cycles"] = cycles

    r = scheme.r
    bub = binom_upper_bound(edges)
    prop_next = proposition_bound(n, q, r + 1)
    certified = not prop_next or bub == r
    report["partition"] = {"r": r, "class_size": scheme.class_size}
    report["verdicts"] = {
        "complete": adjacency_ok and sweep_ok,
        "achromatic": adjacency_ok and sweep_ok and within_ok,
        "optimally_complete": (adjacency_ok and sweep_ok and within_ok
                               and edges == r * (r - 1) // 2),
        "sampled": True,
    }
    report["bounds"] = {
        "binom_ub": bub,
        "prop1_holds_at_r": proposition_bound(n, q, r),
        "prop1_fails_at_r_plus_1": not prop_next,
        "eq6_ratio": ratio_eq6(r, edges),
        "psi": r if certified else None,
        "chi_a": r if certified else None,
        "certified": certified,
        "max_degree_method": "structural: one line per first coordinate",
    }
    report["checks"] = {
        "substitution_pairs": substitution_checked,
        "full_sweeps": sweeps_done,
        "within_samples": within_samples,
        "degree_samples": degree_samples,
        "loop_formula_all_classes": loop_formula_ok,
        "loops_match_class_count": loops_ok,
        "symmetry_ok": symmetry_ok,
        "cycle_roots": {f"C{2 * k}": v for k, v in sorted(cycle_roots.items())},
    }
    report["luw"] = {
        "incidences": incidences,
        "polarity_edges": edges,
        "absolute": n_pi,
        "reconciled_ok": incidences == 2 * edges + n_pi,
        "degree_relation": "sampled via degree spot checks",
    }
    report["ok"] = (
        adjacency_ok and sweep_ok and within_ok and spectrum_ok and loops_ok
        and loop_formula_ok and symmetry_ok and cycles_ok and certified
        and report["verdicts"]["optimally_complete"]
    )
    return report


def verify_family(family, *, q=None, e=None, mode=None, seed=0,
                  materialize_limit=DEFAULT_MATERIALIZE_LIMIT,
                  allow_small_e=False, spec_json=None, with_luw=True,
                  graph=None, partition=None, **sampled_kwargs):
    """Dispatch to the exhaustive or sampled protocol.

    mode=None picks exhaustive when the vertex set fits under the
    materialization ceiling and sampled otherwise.
    """
    spec, _, _, _ = family_bundle(family, q=q, e=e, allow_small_e=allow_small_e,
                                  spec_json=spec_json)
    fits = spec.side_size <= materialize_limit
    if mode is None:
        mode = "exhaustive" if fits else "sampled"
    if mode == "exhaustive":
        if not fits:
            raise ValueError(
                f"{spec.side_size} vertices exceed the materialization "
                f"ceiling {materialize_limit}; use sampled mode")
        return verify_family_exhaustive(
            family, q=q, e=e, seed=seed, materialize_limit=materialize_limit,
            allow_small_e=allow_small_e, spec_json=spec_json, with_luw=with_luw,
            graph=graph, partition=partition)
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    if family not in ("gh",):
        raise ValueError(f"sampled mode is only wired for the gh family, not {family}")
    return verify_family_sampled(family, e=e, seed=seed,
                                 allow_small_e=allow_small_e, **sampled_kwargs)


# ---------------------------------------------------------------------------
# change-of-coordinates isomorphism check (hexagon systems)
# ---------------------------------------------------------------------------

def verify_gh_original(q, materialize_limit=DEFAULT_MATERIALIZE_LIMIT):
    """Exhaustively confirm phi maps the cross-term hexagon system onto the
    power-form one: bijective per side, every edge preserved."""
    spec_orig, phi = adg.gh_original_family(q)
    spec_gh = adg.gh_adjacency_spec(q)
    ns = spec_orig.side_size
    if 2 * ns > 2 * materialize_limit:
        raise ValueError(f"{2 * ns} vertices exceed the ceiling for the exhaustive map check")
    point_images = set()
    line_images = set()
    for coords in spec_orig.all_coords():
        point_images.add(phi("P", coords))
        line_images.add(phi("L", coords))
    bijective = len(point_images) == ns and len(line_images) == ns
    preserved = True
    witness = None
    edges_checked = 0
    for p in spec_orig.all_coords():
        fp = phi("P", p)
        for lv in spec_orig.neighbors_of_point(p):
            if not spec_gh.incident(fp, phi("L", lv)):
                preserved = False
                witness = (p, lv)
                break
            edges_checked += 1
        if not preserved:
            break
    report = {
        "family": "gh-original",
        "params": {"q": q},
        "mode": "exhaustive",
        "field": spec_orig.ctx.to_json(),
        "counts": {"n": 2 * ns, "edges": edges_checked, "loops": 0, "absolute": 0,
                   "edge_count_method": "exact"},
        "bijective_points": len(point_images) == ns,
        "bijective_lines": len(line_images) == ns,
        "edges_checked": edges_checked,
        "edges_expected": q ** 6,
        "adjacency_preserved": preserved,
        "witnesses": [] if witness is None else [("phi_edge", witness)],
        "seeds": [],
    }
    if 2 * ns <= 1000:
        g = materialize(spec_orig.bipartite_graph(), materialize_limit)
        gv = girth(g)
        report["girth"] = gv if gv != math.inf else "inf"
    report["ok"] = bijective and preserved and edges_checked == q ** 6
    return report


# ---------------------------------------------------------------------------
# bipartite partitions from the general constructions
# ---------------------------------------------------------------------------

def verify_bipartite_partition(spec, part: Partition, r,
                               materialize_limit=DEFAULT_MATERIALIZE_LIMIT):
    """Materialize the bipartite graph and check the partition is complete;
    reports the psi ratio from the verified counts."""
    g = materialize(spec.bipartite_graph(), materialize_limit)
    verd, witnesses, mat = verdict(g, part)
    e_g = edge_count(g)
    return {
        "n": g.n,
        "edges": e_g,
        "r": r,
        "verdicts": verd,
        "eq6_ratio": ratio_eq6(r, e_g) if verd["complete"] else None,
        "witnesses": witnesses[:20],
        "ok": verd["complete"],
    }


# ---------------------------------------------------------------------------
# witness ledger for the f(r, H) records
# ---------------------------------------------------------------------------

WITNESS_SHAPE = {
    "plane": lambda q: (q ** 3, q, ["C4"]),
    "gq": lambda q: (q ** 2, q, ["C4", "C6"]),
    "gh": lambda q: (q ** 3, q ** 2, ["C4", "C6", "C8", "C10"]),
}


def witness_record(family, *, q=None, e=None, seed=0, report=None):
    """(r, k)-graph ledger entry for a family instance.

    Runs the family verification if no report is supplied; refuses to emit
    a record unless the partition verified complete.  Cycle verdicts carry
    their pass / pass-sampled flag verbatim.
    """
    if report is None:
        kwargs = {"q": q} if family == "plane" else {"e": e}
        report = verify_family(family, seed=seed, with_luw=False, **kwargs)
    if not report["verdicts"]["complete"]:
        raise ValueError("partition did not verify complete; no witness record")
    qv = report["params"]["q"]
    r, k, forbidden = WITNESS_SHAPE[family](qv)
    return {
        "family": family,
        "q": qv,
        "r": r,
        "k": k,
        "forbidden": forbidden,
        "cycles": report["cycles"],
        "mode": report["mode"],
        "note": "constructive witness only; no asymptotic claim",
    }
