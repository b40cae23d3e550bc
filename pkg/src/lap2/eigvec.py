"""Constructive eigenvectors for the Laplacian eigenvalue 2.

Every builder returns an :class:`EigenCertificate` that has already been
checked vertex by vertex in exact arithmetic. When a construction that a
theorem promises does not verify, a :class:`~lap2.errors.Falsification`
subclass is raised instead of quietly falling back to linear algebra.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    CaseExhausted,
    ConstructionExhausted,
    GlueUndefined,
    NoPerfectMatching,
    NotTree,
    PatternFailed,
    PreconditionFailed,
)
from .exact import integral_multiplicity, nullspace_2, verify_eigenpair
from .graph import Graph, classify, cycle_edges, is_connected, one_edge_connect, unicyclic_decompose
from .matching import Matching, maximum_matching

PROVENANCES = ("TreeMatching", "BrokenSunSearch", "PendantPairRecursion", "Glue", "ZeroPattern", "Nullspace")


@dataclass(frozen=True)
class EigenCertificate:
    graph: Graph
    vector: tuple[Fraction, ...]
    provenance: str
    eigenvalue: int = 2

    @property
    def alphabet(self) -> str:
        vals = {abs(x) for x in self.vector}
        if len(vals) == 1 and 0 not in vals:
            return "PlusMinusR"
        if set(self.vector) <= {-1, 0, 1}:
            return "ZeroOnePattern"
        return "General"

    def __getitem__(self, v: int) -> Fraction:
        return self.vector[v]

    def verify(self) -> bool:
        return verify_eigenpair(self.graph, self.eigenvalue, self.vector)

    def to_dict(self) -> dict:
        from .io import graph_to_graph6, rational_str

        return {
            "graph": graph_to_graph6(self.graph),
            "eigenvalue": self.eigenvalue,
            "vector": [rational_str(x) for x in self.vector],
            "provenance": self.provenance,
            "alphabet": self.alphabet,
        }


def _certify(g: Graph, vec: Sequence, provenance: str, fail=ConstructionExhausted) -> EigenCertificate:
    vector = tuple(Fraction(x) for x in vec)
    if not verify_eigenpair(g, 2, vector):
        raise fail(f"{provenance}: vector {[str(x) for x in vector]} fails the eigen-equation")
    return EigenCertificate(g, vector, provenance)


# -- trees -----------------------------------------------------------------


def _tree_rule_values(g: Graph, m: Matching) -> list[int]:
    """Propagate +1 from vertex 0: flip across matched edges, copy otherwise."""
    mate = m.partner()
    val = [0] * g.n
    val[0] = 1
    q = deque([0])
    seen = {0}
    while q:
        x = q.popleft()
        for y in g.adj[x]:
            if y in seen:
                continue
            seen.add(y)
            val[y] = -val[x] if mate[x] == y else val[x]
            q.append(y)
    return val


def tree_pm_eigenvector(t: Graph, m: Matching | None = None) -> EigenCertificate:
    if t.m != t.n - 1 or not is_connected(t):
        raise NotTree("tree_pm_eigenvector needs a tree")
    m = m or maximum_matching(t)
    if not m.perfect or any(not t.has_edge(*e) for e in m.edges):
        raise NoPerfectMatching("matching is not a perfect matching of the tree")
    return _certify(t, _tree_rule_values(t, m), "TreeMatching")


# -- broken suns -----------------------------------------------------------


def _require_pm_and_mult(g: Graph) -> Matching:
    m = maximum_matching(g)
    if not m.perfect:
        raise PreconditionFailed("graph has no perfect matching")
    if integral_multiplicity(g, 2) < 1:
        raise PreconditionFailed("2 is not a Laplacian eigenvalue")
    return m


def broken_sun_eigenvector(g: Graph) -> EigenCertificate:
    """Delete a non-matching cycle edge, apply the tree +-1 rule, keep the
    first candidate that still satisfies the eigen-equation on g."""
    try:
        parts = unicyclic_decompose(g)
    except Exception as exc:
        raise PreconditionFailed(f"not a broken sun: {exc}") from exc
    if any(p.order > 2 for p in parts):
        raise PreconditionFailed("not a broken sun: an attached tree has order > 2")
    m = _require_pm_and_mult(g)
    cycle = [p.root for p in parts]
    matched = set(m.edges)
    for e in cycle_edges(cycle):
        if e in matched:
            continue
        t = g.remove_edges(e)
        vals = _tree_rule_values(t, m)
        if verify_eigenpair(g, 2, vals):
            return _certify(g, vals, "BrokenSunSearch")
    raise ConstructionExhausted("no non-matching cycle edge gives a +-1 eigenvector")


def contract_broken_sun(g: Graph, k: int, l: int) -> tuple[Graph, list[int]]:
    """Remove cycle positions k, k+1 and l, l+1 (all degree 2) and bridge the
    gaps; equivalent to identifying u_{k-1}, u_k, u_{k+1} into u_{k-1} and
    u_l, u_{l+1}, u_{l+2} into u_{l+2}.

    Positions refer to the canonical cycle order. Returns the contracted
    graph (relabelled) and the list mapping its vertices back to g.
    """
    cyc = classify(g).cycles[0]
    L = len(cyc)
    drop = {cyc[k % L], cyc[(k + 1) % L], cyc[l % L], cyc[(l + 1) % L]}
    if len(drop) != 4 or any(g.degree(v) != 2 for v in drop):
        raise PreconditionFailed("contraction needs four distinct degree-2 cycle vertices")
    keep_cycle = [v for v in cyc if v not in drop]
    bridge = [(keep_cycle[i], keep_cycle[(i + 1) % len(keep_cycle)]) for i in range(len(keep_cycle))]
    h, back = g.induced(v for v in range(g.n) if v not in drop)
    pos = {old: new for new, old in enumerate(back)}
    extra = [(pos[a], pos[b]) for a, b in bridge if not h.has_edge(pos[a], pos[b])]
    return h.add_edges(*extra), back


def contraction_lift(g: Graph, k: int, l: int, x_small: Sequence[Fraction]) -> list[Fraction]:
    """Lift an eigenvector of the contracted broken sun back to g.

    Uses the two case tables of the induction step (l >= k+3 and l = k+2);
    positions are cycle positions in canonical order, pendants receive the
    negative of their neighbour's value.
    """
    cyc = classify(g).cycles[0]
    L = len(cyc)
    _, back = contract_broken_sun(g, k, l)
    val_old = {old: Fraction(x_small[new]) for new, old in enumerate(back)}

    def x(i: int) -> Fraction:
        return val_old[cyc[i % L]]

    if l < k + 2 or l - k > L - 4:
        raise PreconditionFailed("need k + 2 <= l <= k + g - 4")
    y: dict[int, Fraction] = {}
    if l >= k + 3:
        for i in range(k + 2, l):
            y[i % L] = -x(i)
        y[k % L], y[(k + 1) % L] = x(k + 2), -x(k - 1)
        y[l % L], y[(l + 1) % L] = -x(l + 2), x(l - 1)
    else:
        y[k % L], y[(k + 1) % L] = x(k + 4), -x(k - 1)
        y[(k + 2) % L], y[(k + 3) % L] = -x(k + 4), x(k - 1)
    out = [Fraction(0)] * g.n
    for i in range(L):
        out[cyc[i]] = y[i] if i in y else x(i)
    for v in range(g.n):
        if g.degree(v) == 1:
            out[v] = -out[g.adj[v][0]]
    return out


# -- unicyclic C(T_1, ..., T_g) --------------------------------------------


def unicyclic_eigenvector(g: Graph) -> EigenCertificate:
    """Strip pendant pairs (u, v) from deepest tree vertices until a broken sun
    remains, certify the base, then extend with v -> x(w), u -> -x(w)."""
    try:
        parts = unicyclic_decompose(g)
    except Exception as exc:
        raise PreconditionFailed(f"not unicyclic: {exc}") from exc
    _require_pm_and_mult(g)
    if all(p.order <= 2 for p in parts):
        base = broken_sun_eigenvector(g)
        return EigenCertificate(g, base.vector, "PendantPairRecursion")

    alive = set(range(g.n))
    stripped: list[tuple[int, int, int]] = []  # (u, v, w) in removal order
    # per tree: remaining vertices with depth
    trees = {p.root: p for p in parts}
    remaining = {p.root: set(p.vertices) for p in parts}
    while True:
        big = [r for r in sorted(remaining) if len(remaining[r]) >= 3]
        if not big:
            break
        r = big[0]
        p = trees[r]
        dmax = max(p.depth[x] for x in remaining[r])
        u = min(x for x in remaining[r] if p.depth[x] == dmax)
        v = p.parent[u]
        live_deg = lambda z: sum(1 for y in g.adj[z] if y in alive)
        if live_deg(u) != 1 or live_deg(v) != 2 or v == r:
            raise ConstructionExhausted(
                f"deepest vertex {u} is not a pendant on a degree-2 vertex"
            )
        w = p.parent[v]
        stripped.append((u, v, w))
        alive -= {u, v}
        remaining[r] -= {u, v}

    base_g, back = g.induced(alive)
    try:
        base = broken_sun_eigenvector(base_g)
    except PreconditionFailed as exc:
        raise ConstructionExhausted(f"stripped base graph lost the eigenvalue: {exc}") from exc
    vec: list[Fraction | None] = [None] * g.n
    for new, old in enumerate(back):
        vec[old] = base.vector[new]
    for u, v, w in reversed(stripped):
        vec[v] = vec[w]
        vec[u] = -vec[w]
    return _certify(g, vec, "PendantPairRecursion")


# -- gluing across a one-edge connection -----------------------------------


def glue_eigenvectors(
    g1: Graph, x: EigenCertificate, g2: Graph, y: EigenCertificate, u: int, v: int
) -> EigenCertificate:
    """X' = (X, x(u)/y(v) * Y) on g1 joined to g2 by the edge uv."""
    if not verify_eigenpair(g1, 2, x.vector) or not verify_eigenpair(g2, 2, y.vector):
        raise PreconditionFailed("input vectors are not eigenvectors for 2")
    joined = one_edge_connect(g1, g2, u, v)
    xu, yv = x.vector[u], y.vector[v]
    if yv != 0:
        c = xu / yv
        vec = list(x.vector) + [c * t for t in y.vector]
    elif xu == 0:
        vec = list(x.vector) + [Fraction(0)] * g2.n
    else:
        raise GlueUndefined(f"y(v) = 0 but x(u) = {xu}")
    return _certify(joined, vec, "Glue")


# -- no perfect matching: the 0, 1, 0, -1 pattern ---------------------------


def pattern_preconditions(g: Graph) -> list[int] | None:
    """Cycle of a qualifying broken sun rotated to start at a degree-3 vertex,
    or None when the graph does not qualify."""
    try:
        parts = unicyclic_decompose(g)
    except Exception:
        return None
    if any(p.order > 2 for p in parts):
        return None
    cyc = [p.root for p in parts]
    if len(cyc) % 4:
        return None
    heavy = [i for i, v in enumerate(cyc) if g.degree(v) == 3]
    if not heavy:
        return None
    gaps = [(heavy[(j + 1) % len(heavy)] - heavy[j] - 1) % len(cyc) for j in range(len(heavy))]
    if len(heavy) == 1:
        gaps = [len(cyc) - 1]
    if any(gp % 2 == 0 for gp in gaps):
        return None
    if maximum_matching(g).perfect:
        return None
    s = heavy[0]
    return cyc[s:] + cyc[:s]


def pattern_eigenvector_no_pm(g: Graph) -> EigenCertificate:
    cyc = pattern_preconditions(g)
    if cyc is None:
        raise PreconditionFailed(
            "needs a broken sun without perfect matching, girth = 0 mod 4 and "
            "odd runs of degree-2 vertices between degree-3 cycle vertices"
        )
    pattern = (0, 1, 0, -1)
    vec = [Fraction(0)] * g.n
    for i, v in enumerate(cyc):
        vec[v] = Fraction(pattern[i % 4])
    for v in range(g.n):
        if g.degree(v) == 1:
            vec[v] = -vec[g.adj[v][0]]
    return _certify(g, vec, "ZeroPattern", fail=PatternFailed)


def _join_by_cases(g1, x, g2, y, u, v, provenance) -> EigenCertificate:
    joined = one_edge_connect(g1, g2, u, v)
    xu, yv = x[u], y[v]
    X, Y = list(x), list(y)
    if xu == 0 and yv == 0:
        vec = X + Y
    elif yv == 0:
        vec = [Fraction(0)] * g1.n + Y
    elif xu == 0:
        vec = X + [Fraction(0)] * g2.n
    elif xu == yv:
        vec = X + Y
    elif xu == -yv:
        vec = X + [-t for t in Y]
    else:
        vec = X + [xu / yv * t for t in Y]
    return _certify(joined, vec, provenance, fail=CaseExhausted)


def bicyclic_no_pm_eigenvector(g1: Graph, g2: Graph, u: int, v: int) -> EigenCertificate:
    """Eigenvector for g1 joined to g2 when g1 is a broken sun without a
    perfect matching that has eigenvalue 2.

    Both sides pattern-eligible: the 0,1,0,-1 vectors are combined by the
    case table (X,Y), (X,0), (0,Y), (X,-Y). Otherwise g2 must be unicyclic
    with a perfect matching and eigenvalue 2, and its +-1 vector is used.
    """
    if pattern_preconditions(g1) is not None:
        x = pattern_eigenvector_no_pm(g1).vector
    else:
        try:
            parts = unicyclic_decompose(g1)
        except Exception as exc:
            raise PreconditionFailed(f"first graph not unicyclic: {exc}") from exc
        if any(p.order > 2 for p in parts) or maximum_matching(g1).perfect:
            raise PreconditionFailed("first graph must be a broken sun without perfect matching")
        basis = nullspace_2(g1)
        if not basis:
            raise PreconditionFailed("first graph lacks eigenvalue 2")
        x = tuple(basis[0])
    if pattern_preconditions(g2) is not None:
        y = pattern_eigenvector_no_pm(g2).vector
        prov = "ZeroPattern" if pattern_preconditions(g1) is not None else "Glue"
    else:
        y = unicyclic_eigenvector(g2).vector
        prov = "Glue"
    return _join_by_cases(g1, x, g2, y, u, v, prov)


# -- fallback ----------------------------------------------------------------


def nullspace_certificate(g: Graph) -> EigenCertificate:
    basis = nullspace_2(g)
    if not basis:
        raise PreconditionFailed("2 is not a Laplacian eigenvalue")
    return _certify(g, basis[0], "Nullspace")


def auto_certificate(g: Graph) -> EigenCertificate:
    """Pick the construction matching the graph's class and matching status."""
    cls = classify(g)
    if integral_multiplicity(g, 2) < 1:
        raise PreconditionFailed("2 is not a Laplacian eigenvalue")
    pm = maximum_matching(g).perfect
    if cls.kind == "Tree":
        if pm:
            return tree_pm_eigenvector(g)
        return nullspace_certificate(g)
    if cls.kind == "Unicyclic":
        broken = all(p.order <= 2 for p in unicyclic_decompose(g))
        if pm:
            return broken_sun_eigenvector(g) if broken else unicyclic_eigenvector(g)
        if pattern_preconditions(g) is not None:
            return pattern_eigenvector_no_pm(g)
        return nullspace_certificate(g)
    if cls.kind == "Bicyclic" and "join" in g.meta:
        from .graph import split_join

        g1, g2, u, v = split_join(g)
        for a, b, ua, vb, swap in ((g1, g2, u, v, False), (g2, g1, v, u, True)):
            try:
                cert = bicyclic_no_pm_eigenvector(a, b, ua, vb)
            except (PreconditionFailed, GlueUndefined):
                continue
            if swap:
                vec = cert.vector[a.n:] + cert.vector[: a.n]
                return _certify(g, vec, cert.provenance)
            return _certify(g, cert.vector, cert.provenance)
        try:
            x, y = auto_certificate(g1), auto_certificate(g2)
            return _certify(g, glue_eigenvectors(g1, x, g2, y, u, v).vector, "Glue")
        except (PreconditionFailed, GlueUndefined):
            pass
    return nullspace_certificate(g)
