"""Simple graphs, tournaments and the graph-side facts used by the triple-system code."""

from __future__ import annotations

import enum
import itertools
from collections import deque
from functools import cached_property, reduce
from math import comb, gcd
from typing import Iterable, Iterator

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "__dict__")

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        es = set()
        for e in edges:
            u, v = tuple(e)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} out of range for n={n}")
            es.add(_edge(u, v))
        self.n = n
        self.edges: frozenset[Edge] = frozenset(es)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, e) -> bool:
        u, v = e
        return u != v and _edge(u, v) in self.edges

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def components(self) -> list[list[int]]:
        """Connected components (isolated vertices included), each sorted."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def induced(self, vertices: Iterable[int]) -> Graph:
        vs = sorted(set(vertices))
        idx = {v: i for i, v in enumerate(vs)}
        return Graph(len(vs), ((idx[u], idx[v]) for u, v in self.edges if u in idx and v in idx))

    def complement(self) -> Graph:
        return Graph(self.n, (e for e in itertools.combinations(range(self.n), 2) if e not in self.edges))

    def relabel(self, perm) -> Graph:
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def union(self, other: Graph) -> Graph:
        n = max(self.n, other.n)
        return Graph(n, itertools.chain(self.edges, other.edges))


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def turan_bipartite(n: int) -> Graph:
    """Complete bipartite graph with parts ``floor(n/2)`` and ``ceil(n/2)``."""
    return complete_bipartite(n // 2, n - n // 2)


def book_graph(k: int) -> Graph:
    """``k`` triangles sharing the edge 01 (spine), leaves ``2..k+1``."""
    return Graph(k + 2, [(0, 1)] + [(s, 2 + i) for i in range(k) for s in (0, 1)])


def triangle_free(g: Graph) -> bool:
    adj = g.adj
    for u, v in g.edges:
        if adj[u] & adj[v]:
            return False
    return True


# -- tournaments -------------------------------------------------------------


class Tournament:
    """Orientation of the complete graph on ``0..k-1``; ``beats(i, j)`` means i -> j."""

    __slots__ = ("k", "arcs")

    def __init__(self, k: int, arcs: Iterable[tuple[int, int]]):
        arcs = frozenset((int(i), int(j)) for i, j in arcs)
        for i, j in arcs:
            if i == j or not (0 <= i < k and 0 <= j < k):
                raise ValueError(f"bad arc {(i, j)}")
            if (j, i) in arcs:
                raise ValueError(f"pair {i},{j} oriented both ways")
        if len(arcs) != comb(k, 2):
            raise ValueError("tournament must orient every pair exactly once")
        self.k = k
        self.arcs = arcs

    def __repr__(self) -> str:
        return f"Tournament(k={self.k})"

    def beats(self, i: int, j: int) -> bool:
        return (i, j) in self.arcs

    def outdegree(self, i: int) -> int:
        return sum(1 for a, _ in self.arcs if a == i)

    def is_transitive(self) -> bool:
        for a, b, c in itertools.combinations(range(self.k), 3):
            if (self.beats(a, b) and self.beats(b, c) and self.beats(c, a)) or (
                self.beats(b, a) and self.beats(c, b) and self.beats(a, c)
            ):
                return False
        return True


def tournament_transitive(k: int) -> Tournament:
    """Transitive tournament where vertex ``i`` has outdegree ``i`` (i beats every j < i)."""
    return Tournament(k, ((i, j) for i in range(k) for j in range(i)))


def all_tournaments(k: int) -> Iterator[Tournament]:
    pairs = list(itertools.combinations(range(k), 2))
    for bits in range(1 << len(pairs)):
        yield Tournament(k, ((i, j) if bits >> t & 1 else (j, i) for t, (i, j) in enumerate(pairs)))


# -- path-2 graph and its equality cases -----------------------------------


def path2_graph(g: Graph) -> Graph:
    """T(G): x ~ y iff some z has xz, zy in G."""
    edges = set()
    for z in range(g.n):
        edges.update(itertools.combinations(sorted(g.adj[z]), 2))
    return Graph(g.n, edges)


class EqualityClass(enum.Enum):
    L1 = "L1"
    L2 = "L2"
    L3 = "L3"
    L4 = "L4"
    STRICT = "Strict"


def _bipartite_sides(g: Graph, comp: list[int]) -> tuple[list[int], list[int]] | None:
    color = {comp[0]: 0}
    queue = deque([comp[0]])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in color:
                color[w] = 1 - color[u]
                queue.append(w)
            elif color[w] == color[u]:
                return None
    a = sorted(v for v in comp if color[v] == 0)
    b = sorted(v for v in comp if color[v] == 1)
    return a, b


def _component_shape(g: Graph, comp: list[int]) -> tuple[str, int, int]:
    """Describe a component as ('K', a, b) for complete bipartite K_{a,b} (a <= b),
    ('K-', d, d) for K_{d,d} minus one edge, or ('other', 0, 0)."""
    if len(comp) == 1:
        return ("K", 0, 1)
    sides = _bipartite_sides(g, comp)
    if sides is None:
        return ("other", 0, 0)
    a, b = sides
    m = sum(1 for u in comp for w in g.adj[u] if u < w)
    lo, hi = sorted((len(a), len(b)))
    if m == lo * hi:
        return ("K", lo, hi)
    if lo == hi and lo >= 2 and m == lo * hi - 1:
        return ("K-", lo, hi)
    return ("other", 0, 0)


def g13_deficit(g: Graph) -> int:
    """|E(G)| - floor(n/2) - |E(T(G))|; never positive."""
    return len(g.edges) - g.n // 2 - len(path2_graph(g).edges)


def classify_g13(g: Graph) -> tuple[int, EqualityClass]:
    """Deficit of the path-2 inequality and which equality structure G has.

    The structural class is decided from the component shapes alone, so it can
    be cross-checked against the deficit.
    """
    deficit = g13_deficit(g)
    n = g.n
    shapes = [_component_shape(g, c) for c in g.components()]
    kinds = [s[0] for s in shapes]
    if deficit == 0 and "other" not in kinds and "K-" not in kinds:
        unbalanced = [s for s in shapes if s[1] != s[2]]
        if n % 2 == 0 and not unbalanced:
            return deficit, EqualityClass.L1
        if n % 2 == 1 and len(unbalanced) == 1 and unbalanced[0][2] == unbalanced[0][1] + 1:
            return deficit, EqualityClass.L2
    if deficit == -1 and n % 2 == 0 and "other" not in kinds:
        minus = [s for s in shapes if s[0] == "K-"]
        off = [s for s in shapes if s[0] == "K" and s[1] != s[2]]
        if len(minus) == 1 and not off:
            return deficit, EqualityClass.L3
        if not minus and len(off) == 2 and all(s[2] == s[1] + 1 for s in off):
            return deficit, EqualityClass.L4
    return deficit, EqualityClass.STRICT


def is_maximal_matching(g: Graph, matching: Iterable[Edge]) -> bool:
    used: set[int] = set()
    for u, v in matching:
        if (u, v) not in g or u in used or v in used:
            return False
        used.update((u, v))
    return all(u in used or v in used for u, v in g.edges)


def path2_matching_bound(g: Graph, matching: list[Edge]) -> bool:
    """Check |E(T(G))| >= |E(G)| - len(matching) for a maximal matching; return equality."""
    if not is_maximal_matching(g, matching):
        raise ValueError("matching is not a maximal matching of G")
    t = len(path2_graph(g).edges)
    bound = len(g.edges) - len(matching)
    if t < bound:
        raise AssertionError(f"path-2 bound violated: {t} < {bound}")
    return t == bound


def greedy_maximal_matching(g: Graph, order: Iterable[Edge] | None = None) -> list[Edge]:
    used: set[int] = set()
    out = []
    for u, v in (g.sorted_edges() if order is None else order):
        if u not in used and v not in used:
            used.update((u, v))
            out.append((u, v))
    return out


def distances_from(g: Graph, s: int) -> list[int]:
    dist = [-1] * g.n
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def remote_pairs(g: Graph) -> list[Edge]:
    """Pairs at distance greater than 2 (disconnected pairs included)."""
    out = []
    for u in range(g.n):
        dist = distances_from(g, u)
        out.extend((u, v) for v in range(u + 1, g.n) if dist[v] < 0 or dist[v] > 2)
    return out


# -- decomposition divisibility --------------------------------------------


def degree_gcd(g: Graph) -> int:
    return reduce(gcd, g.degrees(), 0)


def decomposition_divisibility(h: Graph, n: int) -> bool:
    """Necessary conditions for decomposing E(K_n) into copies of H."""
    if not h.edges:
        raise ValueError("H must have at least one edge")
    return comb(n, 2) % len(h.edges) == 0 and (n - 1) % degree_gcd(h) == 0


def decomposition_divisibility_dense(h: Graph, g: Graph) -> bool:
    """Necessary conditions for decomposing E(G) into copies of H."""
    if not h.edges:
        raise ValueError("H must have at least one edge")
    return len(g.edges) % len(h.edges) == 0 and degree_gcd(g) % degree_gcd(h) == 0


# -- edge-list files ---------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Same layout as ``.3uh``: comments, an ``n m`` header, then ``m`` lines ``u v``."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or len(lines[0]) != 2:
        raise ValueError("expected an 'n m' header line")
    n, m = int(lines[0][0]), int(lines[0][1])
    rows = lines[1:]
    if len(rows) != m or any(len(r) != 2 for r in rows):
        raise ValueError(f"header announces {m} edges, found {len(rows)} rows")
    return Graph(n, ((int(u), int(v)) for u, v in rows))


def format_edge_list(g: Graph) -> str:
    return "\n".join([f"{g.n} {len(g.edges)}"] + [f"{u} {v}" for u, v in g.sorted_edges()]) + "\n"
