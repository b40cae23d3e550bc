"""Generators and exhaustive enumerators for cycles, sun and broken sun
graphs, C(T_1, ..., T_g) unicyclic graphs and their one-edge joins."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterator, Union

from .errors import InvalidSpec
from .graph import Graph, build_graph, one_edge_connect, unicyclic_decompose
from .matching import forced_leaf_matching

TREE_CAP = 8


@dataclass(frozen=True)
class Cycle:
    g: int

    def to_dict(self) -> dict[str, Any]:
        return {"variant": "Cycle", "g": self.g}


@dataclass(frozen=True)
class Sun:
    g: int

    def to_dict(self) -> dict[str, Any]:
        return {"variant": "Sun", "g": self.g}


@dataclass(frozen=True)
class BrokenSun:
    g: int
    mask: tuple[int, ...]  # sorted cycle positions that carry a pendant

    def to_dict(self) -> dict[str, Any]:
        return {"variant": "BrokenSun", "g": self.g, "mask": list(self.mask)}

    @property
    def bits(self) -> int:
        return sum(1 << i for i in self.mask)


@dataclass(frozen=True)
class UnicyclicTrees:
    g: int
    trees: tuple[tuple[int, ...], ...]  # parent arrays, root at index 0 with parent -1

    def to_dict(self) -> dict[str, Any]:
        return {"variant": "UnicyclicTrees", "g": self.g, "trees": [list(t) for t in self.trees]}


@dataclass(frozen=True)
class Join:
    left: "FamilySpec"
    right: "FamilySpec"
    u: int
    v: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "variant": "Join",
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
            "u": self.u,
            "v": self.v,
        }


FamilySpec = Union[Cycle, Sun, BrokenSun, UnicyclicTrees, Join]


def spec_from_dict(d: dict[str, Any]) -> FamilySpec:
    try:
        variant = d["variant"]
        if variant == "Cycle":
            spec: FamilySpec = Cycle(int(d["g"]))
        elif variant == "Sun":
            spec = Sun(int(d["g"]))
        elif variant == "BrokenSun":
            mask = d.get("mask", [])
            if isinstance(mask, int):
                mask = [i for i in range(int(d["g"])) if mask >> i & 1]
            spec = BrokenSun(int(d["g"]), tuple(sorted(int(i) for i in mask)))
        elif variant == "UnicyclicTrees":
            spec = UnicyclicTrees(int(d["g"]), tuple(tuple(int(p) for p in t) for t in d["trees"]))
        elif variant == "Join":
            spec = Join(spec_from_dict(d["left"]), spec_from_dict(d["right"]), int(d["u"]), int(d["v"]))
        else:
            raise InvalidSpec(f"unknown variant {variant!r}")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidSpec):
            raise
        raise InvalidSpec(f"malformed family spec: {exc}") from exc
    validate(spec)
    return spec


def _check_parent_array(t: tuple[int, ...]) -> None:
    if not t or t[0] != -1:
        raise InvalidSpec(f"tree {list(t)}: root must be index 0 with parent -1")
    for i, p in enumerate(t[1:], start=1):
        if not 0 <= p < len(t) or p == i:
            raise InvalidSpec(f"tree {list(t)}: bad parent {p} at {i}")
    for i in range(len(t)):
        seen, x = set(), i
        while x != 0:
            if x in seen:
                raise InvalidSpec(f"tree {list(t)}: parent array has a cycle")
            seen.add(x)
            x = t[x]


def validate(spec: FamilySpec) -> None:
    if isinstance(spec, Join):
        validate(spec.left)
        validate(spec.right)
        return
    if spec.g < 3:
        raise InvalidSpec(f"girth must be >= 3, got {spec.g}")
    if isinstance(spec, BrokenSun):
        if any(not 0 <= i < spec.g for i in spec.mask) or len(set(spec.mask)) != len(spec.mask):
            raise InvalidSpec(f"mask {list(spec.mask)} invalid for g={spec.g}")
    if isinstance(spec, UnicyclicTrees):
        if len(spec.trees) != spec.g:
            raise InvalidSpec(f"need {spec.g} trees, got {len(spec.trees)}")
        for t in spec.trees:
            _check_parent_array(t)


def generate(spec: FamilySpec) -> Graph:
    validate(spec)
    if isinstance(spec, Join):
        left, right = generate(spec.left), generate(spec.right)
        g = one_edge_connect(left, right, spec.u, spec.v)
        g.meta["family"] = spec.to_dict()
        return g
    g = spec.g
    edges = [(i, (i + 1) % g) for i in range(g)]
    n = g
    if isinstance(spec, Sun):
        edges += [(i, g + i) for i in range(g)]
        n = 2 * g
    elif isinstance(spec, BrokenSun):
        for k, i in enumerate(spec.mask):
            edges.append((i, g + k))
        n = g + len(spec.mask)
    elif isinstance(spec, UnicyclicTrees):
        for root, t in enumerate(spec.trees):
            index = {0: root}
            for j in range(1, len(t)):
                index[j] = n
                n += 1
            for j in range(1, len(t)):
                edges.append((index[t[j]], index[j]))
    return build_graph(n, edges, {"family": spec.to_dict()})


# -- dihedral canonical forms ---------------------------------------------


def dihedral_images(seq: tuple) -> Iterator[tuple]:
    k = len(seq)
    rev = seq[::-1]
    for s in range(k):
        yield seq[s:] + seq[:s]
        yield rev[s:] + rev[:s]


def canonical_mask(bits: int, g: int) -> int:
    """Smallest integer among the dihedral images of a g-bit pendant mask."""
    seq = tuple(bits >> i & 1 for i in range(g))
    return min(sum(b << i for i, b in enumerate(img)) for img in dihedral_images(seq))


def enumerate_broken_suns(g: int, filter: str = "any") -> Iterator[Graph]:
    if filter not in ("any", "perfect_matching", "no_perfect_matching"):
        raise ValueError(f"unknown filter {filter!r}")
    if g < 3:
        raise InvalidSpec("girth must be >= 3")
    for bits in range(1 << g):
        if canonical_mask(bits, g) != bits:
            continue
        graph = generate(BrokenSun(g, tuple(i for i in range(g) if bits >> i & 1)))
        if filter != "any":
            has_pm = forced_leaf_matching(graph) is not None
            if has_pm != (filter == "perfect_matching"):
                continue
        yield graph


# -- rooted trees ----------------------------------------------------------


@lru_cache(maxsize=None)
def rooted_trees(k: int) -> tuple[tuple[int, ...], ...]:
    """All rooted unlabelled trees on k vertices as parent arrays.

    Canonical level sequences in the Beyer-Hedetniemi successor order
    (path first, star last).
    """
    if k < 1:
        return ()
    if k <= 2:
        return (tuple([-1] + [0] * (k - 1)),)
    levels = list(range(1, k + 1))
    out = []
    while True:
        out.append(_levels_to_parents(levels))
        p = max((i for i in range(1, k) if levels[i] != 2), default=None)
        if p is None:
            break
        q = max(i for i in range(p) if levels[i] == levels[p] - 1)
        for i in range(p, k):
            levels[i] = levels[i - (p - q)]
    return tuple(out)


def _levels_to_parents(levels: list[int]) -> tuple[int, ...]:
    parents = [-1]
    last_at = {levels[0]: 0}
    for i in range(1, len(levels)):
        parents.append(last_at[levels[i] - 1])
        last_at[levels[i]] = i
    return tuple(parents)


@lru_cache(maxsize=None)
def _tree_catalog(cap: int) -> tuple[tuple[int, ...], ...]:
    return tuple(t for k in range(1, cap + 1) for t in rooted_trees(k))


def _free_tree_code(g: Graph) -> str:
    """Canonical string of a free tree: smallest AHU code over its centres."""
    n = g.n
    deg = g.degrees
    layer = [v for v in range(n) if deg[v] <= 1]
    left = n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for w in g.adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt

    def code(v: int, parent: int) -> str:
        return "(" + "".join(sorted(code(w, v) for w in g.adj[v] if w != parent)) + ")"

    return min(code(c, -1) for c in layer)


def free_trees(n: int) -> list[Graph]:
    """All unlabelled trees on n vertices, one representative each."""
    seen: dict[str, Graph] = {}
    for t in rooted_trees(n):
        g = build_graph(n, [(p, i) for i, p in enumerate(t) if p >= 0], {"family": {"variant": "Tree"}})
        seen.setdefault(_free_tree_code(g), g)
    return list(seen.values())


def enumerate_unicyclic(n_max: int, g: int, tree_cap: int = TREE_CAP, n_min: int | None = None) -> Iterator[Graph]:
    """C(T_1, ..., T_g) with n_min <= sum |T_i| <= n_max, one graph per
    arrangement of rooted trees up to rotation and reflection of the cycle."""
    if g < 3:
        raise InvalidSpec("girth must be >= 3")
    n_min = g if n_min is None else max(n_min, g)
    catalog = _tree_catalog(min(tree_cap, max(n_max - g + 1, 1)))
    sizes = [len(t) for t in catalog]

    def rec(prefix: list[int], budget: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == g:
            yield tuple(prefix)
            return
        # keep room for one vertex per remaining cycle position
        room = budget - (g - len(prefix) - 1)
        for tid, s in enumerate(sizes):
            if s > room:
                break
            prefix.append(tid)
            yield from rec(prefix, budget - s)
            prefix.pop()

    for arr in rec([], n_max):
        if sum(sizes[t] for t in arr) < n_min:
            continue
        if min(dihedral_images(arr)) != arr:
            continue
        yield generate(UnicyclicTrees(g, tuple(catalog[t] for t in arr)))


def odd_tree_count(g: Graph) -> int:
    return sum(1 for part in unicyclic_decompose(g) if part.order % 2)


# -- vertex orbits ---------------------------------------------------------


def _tree_code(part, marked: int | None) -> str:
    children: dict[int, list[int]] = {v: [] for v in part.vertices}
    for v in part.vertices:
        if v != part.root:
            children[part.parent[v]].append(v)

    def code(v: int) -> str:
        inner = "".join(sorted(code(c) for c in children[v]))
        return "(" + ("*" if v == marked else "") + inner + ")"

    return code(part.root)


def vertex_orbits(g: Graph) -> list[list[int]]:
    """Automorphism orbits of a unicyclic graph, each sorted, ordered by
    smallest member.

    A vertex is identified by the arrangement of rooted-tree codes around
    the cycle read from its own tree in both directions; two vertices share
    an orbit exactly when these codes agree.
    """
    parts = unicyclic_decompose(g)
    plain = [_tree_code(p, None) for p in parts]
    L = len(parts)
    keys: dict[tuple, list[int]] = {}
    for i, p in enumerate(parts):
        for x in p.vertices:
            mine = _tree_code(p, x)
            fwd = (mine,) + tuple(plain[(i + j) % L] for j in range(1, L))
            bwd = (mine,) + tuple(plain[(i - j) % L] for j in range(1, L))
            keys.setdefault(min(fwd, bwd), []).append(x)
    return sorted((sorted(v) for v in keys.values()), key=lambda o: o[0])


def join_choices(g1: Graph, g2: Graph, same: bool = False) -> list[tuple[int, int]]:
    """Join vertex pairs (u, v) up to automorphisms of each side; when the
    two sides are the same graph, (u, v) and (v, u) count once."""
    r1 = [o[0] for o in vertex_orbits(g1)]
    r2 = [o[0] for o in vertex_orbits(g2)] if not same else r1
    if same:
        return [(a, b) for i, a in enumerate(r1) for b in r1[i:]]
    return [(a, b) for a in r1 for b in r2]
