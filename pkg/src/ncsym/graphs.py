"""Labeled multigraphs with loops, deletion/contraction, and small enumerations.

Vertices are ``1..d`` in a fixed order.  Every edge carries a stable id that
survives deletion, contraction and relabeling; the position of an edge in
``Graph.edges`` is the total order used for broken circuits.
"""
from __future__ import annotations

import json
from collections import Counter
from itertools import combinations, combinations_with_replacement, permutations
from typing import Iterable, Iterator, NamedTuple, Sequence

from . import config
from .lattice import Perm, SetPartition


class Edge(NamedTuple):
    u: int
    v: int
    id: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def pair(self) -> tuple[int, int]:
        return (self.u, self.v)


class Graph:
    """Ordered-vertex multigraph; equality ignores edge ids and edge order."""

    __slots__ = ("d", "edges", "_key")

    def __init__(self, d: int, edges: Iterable = ()):
        if d < 0:
            raise ValueError("vertex count must be nonnegative")
        out = []
        for n, e in enumerate(edges):
            if isinstance(e, Edge):
                u, v, eid = e
            else:
                u, v = e
                eid = n
            if not (1 <= u <= d and 1 <= v <= d):
                raise ValueError(f"edge {(u, v)} has an endpoint outside 1..{d}")
            if u > v:
                u, v = v, u
            out.append(Edge(u, v, eid))
        if len({e.id for e in out}) != len(out):
            raise ValueError("duplicate edge ids")
        self.d = d
        self.edges = tuple(out)
        self._key = (d, tuple(sorted(e.pair() for e in out)))

    def key(self) -> tuple:
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Graph({self.d}, {[e.pair() for e in self.edges]})"

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def pairs(self) -> list[tuple[int, int]]:
        return [e.pair() for e in self.edges]

    def has_loop(self) -> bool:
        return any(e.is_loop for e in self.edges)

    def nonloop_edges(self) -> list[Edge]:
        return [e for e in self.edges if not e.is_loop]

    def is_simple(self) -> bool:
        pairs = self.pairs()
        return not self.has_loop() and len(set(pairs)) == len(pairs)

    def edge(self, eid: int) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(f"no edge with id {eid}")

    def position(self, eid: int) -> int:
        for n, e in enumerate(self.edges):
            if e.id == eid:
                return n
        raise KeyError(f"no edge with id {eid}")

    def neighbors(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in range(1, self.d + 1)}
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * (self.d + 1)
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg[1:]

    def reorder_edges(self, order: Sequence[int]) -> "Graph":
        """Same graph, edges listed in the given id order."""
        by_id = {e.id: e for e in self.edges}
        if sorted(order) != sorted(by_id):
            raise ValueError("order must be a permutation of the edge ids")
        return Graph(self.d, [by_id[i] for i in order])

    def renumbered(self) -> "Graph":
        """Fresh ids 0..|E|-1 in list order."""
        return Graph(self.d, self.pairs())

    # serialization ---------------------------------------------------------
    def to_json(self) -> dict:
        return {"d": self.d, "edges": [list(p) for p in self.pairs()]}

    @classmethod
    def from_json(cls, data) -> "Graph":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["d"]), [tuple(e) for e in data["edges"]])

    def to_text(self) -> str:
        return "\n".join([f"d {self.d}"] + [f"e {u} {v}" for u, v in self.pairs()]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        d = None
        edges = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            tok = line.split()
            if tok[0] == "d" and len(tok) == 2:
                d = int(tok[1])
            elif tok[0] == "e" and len(tok) == 3:
                edges.append((int(tok[1]), int(tok[2])))
            else:
                raise ValueError(f"line {lineno}: cannot parse {line!r}")
        if d is None:
            raise ValueError("missing 'd <n>' line")
        return cls(d, edges)


def parse_graph(text: str) -> Graph:
    """Accept either the JSON or the line-oriented text format."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return Graph.from_json(stripped)
    return Graph.from_text(text)


# deletion, contraction, relabeling -------------------------------------------

def delete_edge(G: Graph, eid: int) -> Graph:
    G.edge(eid)
    return Graph(G.d, [e for e in G.edges if e.id != eid])


def contraction_map(d: int, k: int, l: int):
    """Vertex map for contracting {k, l} (k < l): l merges into k, labels above l drop by one."""
    def f(x: int) -> int:
        if x == l:
            return k
        return x - 1 if x > l else x
    return f


def contract_edge(G: Graph, eid: int) -> Graph:
    e = G.edge(eid)
    if e.is_loop:
        return delete_edge(G, eid)
    f = contraction_map(G.d, e.u, e.v)
    return Graph(G.d - 1, [Edge(f(x.u), f(x.v), x.id) for x in G.edges if x.id != eid])


def relabel(delta: Perm, G: Graph) -> Graph:
    if delta.degree != G.d:
        raise ValueError(f"degree mismatch: {delta.degree} != {G.d}")
    return Graph(G.d, [Edge(delta(e.u), delta(e.v), e.id) for e in G.edges])


# families --------------------------------------------------------------------

def empty(d: int) -> Graph:
    return Graph(d, [])


def path(d: int) -> Graph:
    return Graph(d, [(i, i + 1) for i in range(1, d)])


def cycle(d: int) -> Graph:
    """C_1 is a loop and C_2 a double edge."""
    if d < 1:
        raise ValueError("cycle needs d >= 1")
    if d == 1:
        return Graph(1, [(1, 1)])
    return Graph(d, [(i, i + 1) for i in range(1, d)] + [(d, 1)])


def complete(d: int) -> Graph:
    return Graph(d, combinations(range(1, d + 1), 2))


def complete_minus_edge(d: int) -> Graph:
    """K_d without the edge v_{d-1} v_d."""
    if d < 2:
        raise ValueError("complete_minus_edge needs d >= 2")
    return Graph(d, [p for p in combinations(range(1, d + 1), 2) if p != (d - 1, d)])


def complement(G: Graph) -> Graph:
    if not G.is_simple():
        raise ValueError("complement is defined for simple graphs only")
    present = set(G.pairs())
    return Graph(G.d, [p for p in combinations(range(1, G.d + 1), 2) if p not in present])


def disjoint_union(G: Graph, H: Graph) -> Graph:
    """H's vertices are labeled after G's."""
    off = G.d
    return Graph(G.d + H.d, G.pairs() + [(u + off, v + off) for u, v in H.pairs()])


def add_isolated_vertex(G: Graph) -> Graph:
    return disjoint_union(G, empty(1))


def indifference(intervals: Iterable[tuple[int, int]], d: int | None = None) -> Graph:
    """Edges v_i v_j for every i < j lying in a common interval [k, l]."""
    intervals = [tuple(iv) for iv in intervals]
    for k, l in intervals:
        if k < 1 or l < k:
            raise ValueError(f"malformed interval [{k}, {l}]")
    top = max((l for _, l in intervals), default=0)
    if d is None:
        d = top
    if top > d:
        raise ValueError(f"interval endpoint {top} exceeds d = {d}")
    pairs = set()
    for k, l in intervals:
        pairs.update(combinations(range(k, l + 1), 2))
    return Graph(d, sorted(pairs))


def indifference_graphs(d: int) -> Iterator[Graph]:
    """Every indifference graph on [d] in its natural labeling.

    Vertex i is adjacent to every j in (i, r_i] for a nondecreasing
    sequence r_i >= i, so there are Catalan(d) of them.
    """
    def rec(i: int, lo: int, reach: list[int]):
        if i > d:
            yield Graph(d, [(u, v) for u in range(1, d + 1) for v in range(u + 1, reach[u - 1] + 1)])
            return
        for r in range(max(lo, i), d + 1):
            reach.append(r)
            yield from rec(i + 1, r, reach)
            reach.pop()

    yield from rec(1, 1, [])


def attach_complete(G: Graph, m: int) -> Graph:
    """G + K_m: new vertices v_{d+1}..v_{d+m-1}, clique on [d, d+m-1]."""
    if m < 1:
        raise ValueError("attach_complete needs m >= 1")
    if G.d < 1:
        raise ValueError("attach_complete needs a nonempty graph")
    d = G.d
    return Graph(d + m - 1, G.pairs() + list(combinations(range(d, d + m), 2)))


def k_alpha_chain(alpha: Sequence[int]) -> Graph:
    """Cliques of sizes alpha_1, alpha_2, ... glued in sequence at single vertices."""
    if not alpha or any(a < 1 for a in alpha):
        raise ValueError(f"{alpha} is not a composition")
    G = complete(alpha[0])
    for a in alpha[1:]:
        G = attach_complete(G, a)
    return G


def diamond() -> Graph:
    return indifference([(1, 3), (2, 4)])


def attach_diamond(G: Graph) -> Graph:
    """G + D: a diamond on [d, d+3] whose first vertex is v_d."""
    if G.d < 1:
        raise ValueError("attach_diamond needs a nonempty graph")
    d = G.d
    extra = indifference([(d, d + 2), (d + 1, d + 3)], d + 3)
    return Graph(d + 3, G.pairs() + extra.pairs())


def star(d: int) -> Graph:
    return Graph(d, [(1, j) for j in range(2, d + 1)])


# colorings and partitions ------------------------------------------------------

def stable_partitions(G: Graph) -> Iterator[SetPartition]:
    """Vertex partitions with no edge inside a block."""
    if G.has_loop():
        return
    adj = G.neighbors()
    d = G.d
    blocks: list[list[int]] = []

    def rec(v: int):
        if v > d:
            yield SetPartition(blocks, d)
            return
        for b in blocks:
            if not adj[v].intersection(b):
                b.append(v)
                yield from rec(v + 1)
                b.pop()
        blocks.append([v])
        yield from rec(v + 1)
        blocks.pop()

    if d == 0:
        return
    yield from rec(1)


def proper_coloring_count(G: Graph, n: int) -> int:
    """Exhaustive backtracking count of proper colorings with n colors."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    config.check(n ** G.d, config.guards().colorings, "n**d colorings")
    if G.has_loop():
        return 0
    adj = G.neighbors()
    color = [0] * (G.d + 1)

    def rec(v: int) -> int:
        if v > G.d:
            return 1
        total = 0
        for c in range(1, n + 1):
            if all(color[w] != c for w in adj[v] if w < v):
                color[v] = c
                total += rec(v + 1)
        color[v] = 0
        return total

    return rec(1)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n + 1))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def components_partition(G: Graph, S: Iterable[int]) -> SetPartition:
    """pi(S): connected components of the spanning subgraph with edge ids S."""
    uf = _UnionFind(G.d)
    for eid in S:
        e = G.edge(eid)
        uf.union(e.u, e.v)
    groups: dict[int, list[int]] = {}
    for v in range(1, G.d + 1):
        groups.setdefault(uf.find(v), []).append(v)
    return SetPartition(groups.values(), G.d)


def edge_subsets(G: Graph) -> Iterator[frozenset[int]]:
    config.check(G.num_edges, config.guards().subsets, "edge count for subset enumeration")
    ids = [e.id for e in G.edges]
    for r in range(len(ids) + 1):
        for S in combinations(ids, r):
            yield frozenset(S)


# broken circuits ---------------------------------------------------------------

def is_circuit(G: Graph, S: Iterable[int]) -> bool:
    """Edge set of a closed walk with distinct vertices and edges."""
    S = list(S)
    if not S:
        return False
    es = [G.edge(i) for i in S]
    deg: Counter = Counter()
    uf = _UnionFind(G.d)
    for e in es:
        deg[e.u] += 1
        deg[e.v] += 1
        uf.union(e.u, e.v)
    if any(k != 2 for k in deg.values()):
        return False
    return len({uf.find(v) for v in deg}) == 1


def broken_circuits(G: Graph) -> list[frozenset[int]]:
    """Every circuit minus its largest edge (brute force over edge subsets)."""
    pos = {e.id: n for n, e in enumerate(G.edges)}
    out = set()
    for S in edge_subsets(G):
        if is_circuit(G, S):
            top = max(S, key=pos.__getitem__)
            out.add(S - {top})
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def broken_circuit_complex(G: Graph) -> Iterator[frozenset[int]]:
    """All edge subsets containing no broken circuit, w.r.t. the list order.

    A set contains a broken circuit with top edge g exactly when its edges
    below g already connect the endpoints of g, so the search walks the
    edges in order and prunes as soon as that happens.
    """
    config.check(G.num_edges, config.guards().subsets, "edge count for broken circuits")
    edges = G.edges
    n = len(edges)

    def rec(t: int, parent: list[int], chosen: list[int]):
        if t == n:
            yield frozenset(chosen)
            return
        g = edges[t]

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        ru, rv = find(g.u), find(g.v)
        if ru == rv:
            return
        yield from rec(t + 1, parent, chosen)
        merged = list(parent)
        merged[rv] = ru
        chosen.append(g.id)
        yield from rec(t + 1, merged, chosen)
        chosen.pop()

    yield from rec(0, list(range(G.d + 1)), [])


# orientations --------------------------------------------------------------------

class Orientation(NamedTuple):
    d: int
    arcs: tuple[tuple[int, int], ...]  # (tail, head), aligned with the edge list


def _is_acyclic(d: int, arcs: Sequence[tuple[int, int]]) -> bool:
    indeg = [0] * (d + 1)
    out: list[list[int]] = [[] for _ in range(d + 1)]
    for t, h in arcs:
        out[t].append(h)
        indeg[h] += 1
    stack = [v for v in range(1, d + 1) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen == d


def acyclic_orientations(G: Graph) -> Iterator[Orientation]:
    if G.has_loop():
        return
    config.check(G.num_edges, config.guards().orientations, "non-loop edges for orientations")
    edges = G.edges
    for mask in range(1 << len(edges)):
        arcs = tuple((e.u, e.v) if not (mask >> n) & 1 else (e.v, e.u)
                     for n, e in enumerate(edges))
        if _is_acyclic(G.d, arcs):
            yield Orientation(G.d, arcs)


def sinks(D: Orientation) -> frozenset[int]:
    tails = {t for t, _ in D.arcs}
    return frozenset(v for v in range(1, D.d + 1) if v not in tails)


def count_unique_sink(G: Graph, v0: int) -> int:
    return sum(1 for D in acyclic_orientations(G) if sinks(D) == {v0})


def sink_distribution(G: Graph) -> dict[int, int]:
    return dict(sorted(Counter(len(sinks(D)) for D in acyclic_orientations(G)).items()))


# isomorphism and enumeration -------------------------------------------------------

def _multiplicity(G: Graph) -> list[list[int]]:
    A = [[0] * (G.d + 1) for _ in range(G.d + 1)]
    for u, v, _ in G.edges:
        A[u][v] += 1
        if u != v:
            A[v][u] += 1
    return A


def is_isomorphic(G: Graph, H: Graph) -> bool:
    """Exact test by permutation search, pruned by degree and loop counts."""
    if G.d != H.d or G.num_edges != H.num_edges:
        return False
    config.check(G.d, config.guards().isomorphism, "vertex count for isomorphism search")
    A, B = _multiplicity(G), _multiplicity(H)
    dg, dh = G.degrees(), H.degrees()
    sig_g = [(dg[v - 1], A[v][v]) for v in range(1, G.d + 1)]
    sig_h = [(dh[v - 1], B[v][v]) for v in range(1, H.d + 1)]
    if sorted(sig_g) != sorted(sig_h):
        return False
    image = [0] * (G.d + 1)
    used = [False] * (G.d + 1)

    def rec(v: int) -> bool:
        if v > G.d:
            return True
        for w in range(1, H.d + 1):
            if used[w] or sig_h[w - 1] != sig_g[v - 1]:
                continue
            if all(A[v][u] == B[w][image[u]] for u in range(1, v)):
                image[v] = w
                used[w] = True
                if rec(v + 1):
                    return True
                used[w] = False
        return False

    return rec(1)


def canonical_form(G: Graph) -> tuple:
    """Lexicographically least sorted edge list over all relabelings (small d only)."""
    config.check(G.d, config.guards().isomorphism, "vertex count for canonical form")
    best = None
    pairs = G.pairs()
    for perm in permutations(range(1, G.d + 1)):
        img = tuple(sorted(tuple(sorted((perm[u - 1], perm[v - 1]))) for u, v in pairs))
        if best is None or img < best:
            best = img
    return (G.d, best)


def all_graphs(d: int, max_edges: int, loops: bool = False, multi: bool = False,
               connected: bool = False) -> list[Graph]:
    """One representative per isomorphism class, edge count <= max_edges."""
    slots = [(i, j) for i in range(1, d + 1) for j in range(i, d + 1) if loops or i != j]
    seen = set()
    out = []
    for r in range(max_edges + 1):
        pool = combinations_with_replacement(slots, r) if multi else combinations(slots, r)
        for chosen in pool:
            G = Graph(d, chosen)
            if connected and not is_connected(G):
                continue
            cf = canonical_form(G)
            if cf not in seen:
                seen.add(cf)
                out.append(G)
    return out


def is_connected(G: Graph) -> bool:
    if G.d == 0:
        return True
    return len(components_partition(G, [e.id for e in G.edges])) == 1


def _tree_code(adj: dict[int, list[int]], root: int, parent: int) -> str:
    return "(" + "".join(sorted(_tree_code(adj, c, root) for c in adj[root] if c != parent)) + ")"


def _tree_canonical(G: Graph) -> str:
    adj: dict[int, list[int]] = {v: [] for v in range(1, G.d + 1)}
    for u, v, _ in G.edges:
        adj[u].append(v)
        adj[v].append(u)
    # peel leaves to find the center(s)
    remaining = set(adj)
    deg = {v: len(adj[v]) for v in adj}
    layer = [v for v in adj if deg[v] <= 1]
    while len(remaining) > 2:
        nxt = []
        for v in layer:
            remaining.discard(v)
            for w in adj[v]:
                if w in remaining:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    return min(_tree_code(adj, c, 0) for c in remaining)


def enumerate_trees(d: int) -> list[Graph]:
    """One tree per isomorphism class on d vertices (grown leaf by leaf)."""
    if d < 1:
        raise ValueError("d must be positive")
    config.check(d, config.guards().isomorphism, "tree size")
    level = [Graph(1, [])]
    for n in range(2, d + 1):
        seen = {}
        for T in level:
            for v in range(1, n):
                S = Graph(n, T.pairs() + [(v, n)])
                seen.setdefault(_tree_canonical(S), S)
        level = [seen[k] for k in sorted(seen)]
    return level


def random_graph(rng, d: int, max_edges: int, loops: bool = True, multi: bool = True) -> Graph:
    """Seeded random multigraph for sampling tests and CLI suites."""
    slots = [(i, j) for i in range(1, d + 1) for j in range(i, d + 1) if loops or i != j]
    k = rng.randint(0, max_edges)
    if multi:
        chosen = [rng.choice(slots) for _ in range(k)]
    else:
        chosen = rng.sample(slots, min(k, len(slots)))
    return Graph(d, chosen)
