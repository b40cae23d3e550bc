"""Maximum cardinality matching (Edmonds' blossom algorithm) and the
cycle-edge queries used by the eigenvector constructions."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import NotCyclic
from .graph import Edge, Graph, classify, cycle_edges, norm_edge


@dataclass(frozen=True)
class Matching:
    n: int
    edges: tuple[Edge, ...]

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def perfect(self) -> bool:
        return 2 * self.size == self.n

    def partner(self) -> list[int]:
        mate = [-1] * self.n
        for u, v in self.edges:
            mate[u], mate[v] = v, u
        return mate

    def __contains__(self, e) -> bool:
        return norm_edge(*e) in set(self.edges)

    def to_dict(self) -> dict:
        return {"edges": [list(e) for e in self.edges], "size": self.size, "perfect": self.perfect}


def maximum_matching(g: Graph) -> Matching:
    """Edmonds' blossom algorithm, O(n^3).

    Free vertices are processed in index order and neighbours are scanned
    in sorted order, so the result is a deterministic function of ``g``.
    """
    n, adj = g.n, g.adj
    match = [-1] * n

    def lca(a: int, b: int, base: list[int], p: list[int]) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = p[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = p[match[b]]

    def mark_path(v, b, child, base, p, blossom):
        while base[v] != b:
            blossom[base[v]] = blossom[base[match[v]]] = True
            p[v] = child
            child = match[v]
            v = p[match[v]]

    def find_path(root: int) -> int:
        used = [False] * n
        p = [-1] * n
        base = list(range(n))
        used[root] = True
        q = deque([root])
        while q:
            v = q.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and p[match[to]] != -1):
                    cur = lca(v, to, base, p)
                    blossom = [False] * n
                    mark_path(v, cur, to, base, p, blossom)
                    mark_path(to, cur, v, base, p, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif p[to] == -1:
                    p[to] = v
                    if match[to] == -1:
                        return _augment(to, p)
                    used[match[to]] = True
                    q.append(match[to])
        return -1

    def _augment(v: int, p: list[int]) -> int:
        end = v
        while v != -1:
            pv = p[v]
            ppv = match[pv]
            match[v], match[pv] = pv, v
            v = ppv
        return end

    for r in range(n):
        if match[r] == -1:
            find_path(r)
    edges = sorted({norm_edge(u, match[u]) for u in range(n) if match[u] != -1})
    return Matching(n, tuple(edges))


def forced_leaf_matching(g: Graph) -> Matching | None:
    """Greedy pendant/support pairing for forests and unicyclic graphs.

    Returns the perfect matching it finds, or None when the forced
    pairing gets stuck. For graphs with at most one cycle this decides
    perfect-matching existence exactly.
    """
    alive = [True] * g.n
    deg = g.degrees
    out: list[Edge] = []
    leaves = deque(v for v in range(g.n) if deg[v] == 1)
    if any(d == 0 for d in deg) and g.n > 0:
        return None
    while leaves:
        u = leaves.popleft()
        if not alive[u]:
            continue
        if deg[u] == 0:
            return None
        v = next(w for w in g.adj[u] if alive[w])
        alive[u] = alive[v] = False
        out.append(norm_edge(u, v))
        for x in (u, v):
            for w in g.adj[x]:
                if alive[w]:
                    deg[w] -= 1
                    if deg[w] == 0:
                        return None
                    if deg[w] == 1:
                        leaves.append(w)
    rest = [v for v in range(g.n) if alive[v]]
    if not rest:
        return Matching(g.n, tuple(sorted(out)))
    # what is left has min degree 2; with one cycle that means a bare cycle
    if len(rest) % 2:
        return None
    start = rest[0]
    cyc = [start]
    prev, cur = -1, start
    while True:
        nxt = [w for w in g.adj[cur] if alive[w] and w != prev]
        if not nxt or nxt[0] == start:
            break
        prev, cur = cur, nxt[0]
        cyc.append(cur)
    if len(cyc) != len(rest):
        return None
    out.extend(norm_edge(cyc[i], cyc[i + 1]) for i in range(0, len(cyc), 2))
    return Matching(g.n, tuple(sorted(out)))


def non_matching_cycle_edges(g: Graph, m: Matching) -> list[list[Edge]]:
    cls = classify(g)
    if cls.kind not in ("Unicyclic", "Bicyclic"):
        raise NotCyclic(f"graph is {cls.kind}")
    in_m = set(m.edges)
    return [[e for e in cycle_edges(c) if e not in in_m] for c in cls.cycles]
