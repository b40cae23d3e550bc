"""Immutable simple graphs, Laplacians and the structural queries the rest of
the package builds on (cycle extraction, class detection, one-edge joins)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Sequence

from .errors import (
    Disconnected,
    DuplicateEdge,
    IndexOutOfRange,
    LoopEdge,
    NotUnicyclic,
    UnsupportedBicyclic,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]
    meta: dict[str, Any] = field(default_factory=dict, compare=False, hash=False, repr=False)

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nb: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return tuple(tuple(sorted(x)) for x in nb)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_set

    def remove_edges(self, *drop: Edge) -> Graph:
        gone = {norm_edge(*e) for e in drop}
        missing = gone - self.edge_set
        if missing:
            raise IndexOutOfRange(f"edges {sorted(missing)} not in graph")
        return Graph(self.n, tuple(e for e in self.edges if e not in gone))

    def add_edges(self, *extra: Edge) -> Graph:
        return build_graph(self.n, list(self.edges) + [tuple(e) for e in extra])

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph relabelled 0..k-1 in increasing vertex order.

        Returns the subgraph and the list mapping new index -> old vertex.
        """
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        sub = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return Graph(len(keep), tuple(sorted(sub))), keep

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"n": self.n, "edges": [list(e) for e in self.edges]}
        if self.meta:
            d["meta"] = self.meta
        return d


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def build_graph(n: int, edges: Iterable[Sequence[int]], meta: dict | None = None) -> Graph:
    if n < 1:
        raise IndexOutOfRange(f"vertex count must be >= 1, got {n}")
    seen: set[Edge] = set()
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise LoopEdge(f"self-loop at {u}")
        ne = norm_edge(u, v)
        if ne in seen:
            raise DuplicateEdge(f"duplicate edge {ne}")
        seen.add(ne)
    return Graph(n, tuple(sorted(seen)), dict(meta or {}))


def laplacian(g: Graph) -> list[list[int]]:
    L = [[0] * g.n for _ in range(g.n)]
    for i, nb in enumerate(g.adj):
        L[i][i] = len(nb)
        for j in nb:
            L[i][j] = -1
    return L


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, q = [s], deque([s])
        while q:
            x = q.popleft()
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    q.append(y)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


def two_core(g: Graph) -> set[int]:
    """Vertices left after repeatedly stripping degree <= 1 vertices."""
    deg = g.degrees
    alive = [True] * g.n
    q = deque(v for v in range(g.n) if deg[v] <= 1)
    while q:
        v = q.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for w in g.adj[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] == 1:
                    q.append(w)
    return {v for v in range(g.n) if alive[v]}


def _orient_cycle(g: Graph, verts: set[int]) -> tuple[int, ...]:
    # start at min vertex, step toward its smaller cycle neighbour
    start = min(verts)
    nbrs = sorted(w for w in g.adj[start] if w in verts)
    order = [start]
    prev, cur = start, nbrs[0]
    while cur != start:
        order.append(cur)
        nxt = [w for w in g.adj[cur] if w in verts and w != prev]
        prev, cur = cur, nxt[0]
    return tuple(order)


@dataclass(frozen=True)
class GraphClass:
    kind: str  # "Tree" | "Unicyclic" | "Bicyclic" | "Other"
    cycles: tuple[tuple[int, ...], ...] = ()

    @property
    def girths(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cycles)


def classify(g: Graph) -> GraphClass:
    if not is_connected(g):
        raise Disconnected("classify requires a connected graph")
    if g.m == g.n - 1:
        return GraphClass("Tree")
    if g.m == g.n:
        return GraphClass("Unicyclic", (_orient_cycle(g, two_core(g)),))
    if g.m == g.n + 1:
        core = two_core(g)
        sub = [e for e in g.edges if e[0] in core and e[1] in core]
        core_g = Graph(g.n, tuple(sub))
        # bridges of the core are the connecting path; what remains is the two cycles
        bridges = [e for e in sub if _is_bridge(core_g, e)]
        rest = Graph(g.n, tuple(e for e in sub if e not in set(bridges)))
        cyc = []
        for comp in components(rest):
            if len(comp) < 3:
                continue
            cyc.append(set(comp))
        if len(cyc) != 2 or any(
            sum(1 for e in rest.edges if e[0] in c) != len(c) for c in cyc
        ):
            raise UnsupportedBicyclic("the two cycles share vertices")
        cycles = sorted((_orient_cycle(rest, c) for c in cyc), key=lambda c: c[0])
        return GraphClass("Bicyclic", tuple(cycles))
    return GraphClass("Other")


def _is_bridge(g: Graph, e: Edge) -> bool:
    u, v = e
    seen = {u}
    q = deque([u])
    while q:
        x = q.popleft()
        for y in g.adj[x]:
            if (x, y) in ((u, v), (v, u)):
                continue
            if y == v:
                return False
            if y not in seen:
                seen.add(y)
                q.append(y)
    return True


def cycle_edges(cycle: Sequence[int]) -> list[Edge]:
    k = len(cycle)
    return [norm_edge(cycle[i], cycle[(i + 1) % k]) for i in range(k)]


def one_edge_connect(g1: Graph, g2: Graph, u: int, v: int) -> Graph:
    if not (0 <= u < g1.n):
        raise IndexOutOfRange(f"u={u} not a vertex of the first graph")
    if not (0 <= v < g2.n):
        raise IndexOutOfRange(f"v={v} not a vertex of the second graph")
    n1 = g1.n
    edges = list(g1.edges) + [(a + n1, b + n1) for a, b in g2.edges] + [(u, n1 + v)]
    meta = {"join": [u, n1 + v], "n1": n1, "parts": [g1.meta, g2.meta]}
    return Graph(n1 + g2.n, tuple(sorted(edges)), meta)


def split_join(g: Graph) -> tuple[Graph, Graph, int, int]:
    """Inverse of one_edge_connect using the recorded join metadata."""
    if "join" not in g.meta:
        raise KeyError("graph carries no join metadata")
    n1 = g.meta["n1"]
    a, b = g.meta["join"]
    left = [e for e in g.edges if e[1] < n1]
    right = [(x - n1, y - n1) for x, y in g.edges if x >= n1]
    parts = g.meta.get("parts", [{}, {}])
    return (
        Graph(n1, tuple(left), dict(parts[0])),
        Graph(g.n - n1, tuple(right), dict(parts[1])),
        a,
        b - n1,
    )


@dataclass(frozen=True)
class RootedPart:
    """One attached tree T_i of a unicyclic graph."""

    root: int
    vertices: tuple[int, ...]  # sorted, includes root
    parent: dict[int, int] = field(compare=False, hash=False, repr=False)
    depth: dict[int, int] = field(compare=False, hash=False, repr=False)

    @property
    def order(self) -> int:
        return len(self.vertices)


def unicyclic_decompose(g: Graph) -> list[RootedPart]:
    cls = classify(g)
    if cls.kind != "Unicyclic":
        raise NotUnicyclic(f"graph is {cls.kind}")
    return _decompose_on_cycle(g, cls.cycles[0])


def _decompose_on_cycle(g: Graph, cycle: Sequence[int]) -> list[RootedPart]:
    on_cycle = set(cycle)
    parts = []
    for r in cycle:
        parent, depth = {r: -1}, {r: 0}
        q = deque([r])
        while q:
            x = q.popleft()
            for y in g.adj[x]:
                if y in on_cycle or y in parent:
                    continue
                parent[y] = x
                depth[y] = depth[x] + 1
                q.append(y)
        parts.append(RootedPart(r, tuple(sorted(parent)), parent, depth))
    return parts


def is_broken_sun(g: Graph) -> bool:
    try:
        parts = unicyclic_decompose(g)
    except (NotUnicyclic, Disconnected):
        return False
    return all(p.order <= 2 for p in parts)
