"""Detection of the four triangle configurations and related structure.

All finders are anchored: they start from a pair or vertex shared by two of
the triples and complete the pattern locally, so the cost follows the number
of contiguous (or intersecting) triple pairs rather than all triple subsets.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .core import Pair, Triple, TripleSystem, make_triple, pairs_of
from .graphs import Graph, path2_graph


class Config(enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    APlus = "A+"
    BPlus = "B+"

    def __str__(self) -> str:
        return self.value

    @property
    def size(self) -> int:
        return 4 if self in (Config.APlus, Config.BPlus) else 3

    @classmethod
    def parse(cls, text: str) -> Config:
        key = text.strip().replace("⁺", "+")
        aliases = {"APLUS": "A+", "BPLUS": "B+"}
        key = aliases.get(key.upper(), key.upper())
        for c in cls:
            if c.value == key:
                return c
        raise ValueError(f"unknown configuration {text!r}")


BASIC = (Config.A, Config.B, Config.C, Config.D)
EXTENDED = (Config.APlus, Config.BPlus)

# pattern templates, 0-based
PATTERNS: dict[Config, tuple[Triple, ...]] = {
    Config.A: ((0, 1, 3), (0, 2, 4), (1, 2, 5)),
    Config.B: ((0, 1, 4), (0, 2, 3), (1, 2, 3)),
    Config.C: ((0, 1, 3), (0, 2, 3), (1, 2, 3)),
    Config.D: ((0, 1, 2), (0, 2, 3), (1, 2, 4)),
    Config.APlus: ((0, 1, 2), (0, 1, 3), (0, 2, 4), (1, 2, 5)),
    Config.BPlus: ((0, 1, 2), (0, 1, 4), (0, 2, 3), (1, 2, 3)),
}


def pattern_system(c: Config) -> TripleSystem:
    ts = PATTERNS[c]
    return TripleSystem(max(max(t) for t in ts) + 1, ts)


def parse_configs(spec: str | Iterable[Config | str]) -> frozenset[Config]:
    """Accepts ``"A,B"``, ``"ABD"``, or an iterable of names / members."""
    if isinstance(spec, str):
        spec = spec.strip()
        if not spec:
            return frozenset()
        if "," in spec:
            parts = spec.split(",")
        else:
            parts, i = [], 0
            while i < len(spec):
                if i + 1 < len(spec) and spec[i + 1] in "+⁺":
                    parts.append(spec[i : i + 2])
                    i += 2
                else:
                    parts.append(spec[i])
                    i += 1
        return frozenset(Config.parse(p) for p in parts)
    return frozenset(c if isinstance(c, Config) else Config.parse(c) for c in spec)


def config_label(S: Iterable[Config]) -> str:
    order = {c: i for i, c in enumerate(Config)}
    return "".join(c.value for c in sorted(S, key=order.__getitem__))


@dataclass(frozen=True, order=True)
class Occurrence:
    config: Config = field(compare=False)
    triples: tuple[Triple, ...]

    def vertices(self) -> set[int]:
        return {v for t in self.triples for v in t}


# -- anchored finders --------------------------------------------------------


def _iter_c(F: TripleSystem) -> Iterator[tuple[Triple, ...]]:
    seen: set[tuple[int, ...]] = set()
    ts = F.triple_set
    for p, lst in F.pair_index.items():
        for t1, t2 in itertools.combinations(lst, 2):
            q = tuple(sorted(set(t1) | set(t2)))
            if q in seen:
                continue
            seen.add(q)
            inside = [t for t in itertools.combinations(q, 3) if t in ts]
            yield from itertools.combinations(inside, 3)


def _iter_d(F: TripleSystem) -> Iterator[tuple[Triple, ...]]:
    idx = F.pair_index
    for center in F.triples:
        for p1, p2 in itertools.combinations(pairs_of(center), 2):
            for t1 in idx[p1]:
                if t1 == center:
                    continue
                a = _third(t1, p1)
                for t2 in idx[p2]:
                    if t2 == center:
                        continue
                    if _third(t2, p2) != a:
                        yield (center, t1, t2)


def _iter_b(F: TripleSystem) -> Iterator[tuple[Triple, ...]]:
    idx = F.pair_index
    for (x, y), lst in idx.items():
        for t1, t2 in itertools.combinations(lst, 2):
            a, b = sorted((_third(t1, (x, y)), _third(t2, (x, y))))
            for t3 in idx.get((a, b), ()):
                c = _third(t3, (a, b))
                if c != x and c != y:
                    yield (t1, t2, t3)


def _outer(F: TripleSystem, u: int, v: int, tri: tuple[int, int, int]) -> list[tuple[int, Triple]]:
    p = (u, v) if u < v else (v, u)
    out = []
    for t in F.pair_index.get(p, ()):
        w = _third(t, p)
        if w not in tri:
            out.append((w, t))
    return out


def _shadow_triangles(F: TripleSystem) -> Iterator[tuple[int, int, int]]:
    adj: list[set[int]] = [set() for _ in range(F.n)]
    for u, v in F.pair_index:
        adj[u].add(v)
        adj[v].add(u)
    for u, v in sorted(F.pair_index):
        for w in sorted(adj[u] & adj[v]):
            if w > v:
                yield (u, v, w)


def _iter_a(F: TripleSystem) -> Iterator[tuple[Triple, ...]]:
    """Each A has a unique middle triangle xyz in the shadow; enumerate those."""
    for x, y, z in _shadow_triangles(F):
        tri = (x, y, z)
        e1 = _outer(F, x, y, tri)
        if not e1:
            continue
        e2 = _outer(F, x, z, tri)
        if not e2:
            continue
        e3 = _outer(F, y, z, tri)
        if not e3:
            continue
        for a, t1 in e1:
            for b, t2 in e2:
                if a == b:
                    continue
                for c, t3 in e3:
                    if c != a and c != b:
                        yield (t1, t2, t3)


def _iter_a_plus(F: TripleSystem) -> Iterator[tuple[Triple, ...]]:
    ts = F.triple_set
    for t1, t2, t3 in _iter_a(F):
        mid = tuple(sorted((set(t1) & set(t2)) | (set(t1) & set(t3)) | (set(t2) & set(t3))))
        if mid in ts:
            yield (mid, t1, t2, t3)


def _iter_b_plus(F: TripleSystem) -> Iterator[tuple[Triple, ...]]:
    ts = F.triple_set
    for t1, t2, t3 in _iter_b(F):
        x, y = sorted(set(t1) & set(t2))
        a, b = sorted((set(t1) | set(t2)) - {x, y})
        for s in (x, y):
            extra = make_triple((a, b, s))
            if extra in ts:
                yield (t1, t2, t3, extra)


def _third(t: Triple, p: Pair) -> int:
    for v in t:
        if v != p[0] and v != p[1]:
            return v
    raise ValueError(f"{p} is not a pair of {t}")


_FINDERS = {
    Config.A: _iter_a,
    Config.B: _iter_b,
    Config.C: _iter_c,
    Config.D: _iter_d,
    Config.APlus: _iter_a_plus,
    Config.BPlus: _iter_b_plus,
}


def iter_occurrences(F: TripleSystem, c: Config) -> Iterator[Occurrence]:
    for ts in _FINDERS[c](F):
        yield Occurrence(c, tuple(sorted(ts)))


def find_occurrences(F: TripleSystem, c: Config | str) -> list[Occurrence]:
    """Every set of triples of ``F`` forming configuration ``c``, sorted, each once."""
    c = c if isinstance(c, Config) else Config.parse(c)
    return sorted(set(iter_occurrences(F, c)))


def count_occurrences(F: TripleSystem, c: Config | str) -> int:
    return len(find_occurrences(F, c))


def is_free(F: TripleSystem, S: Iterable[Config | str] | str) -> bool:
    for c in sorted(parse_configs(S), key=lambda c: c.value):
        if next(_FINDERS[c](F), None) is not None:
            return False
    return True


def first_occurrence(F: TripleSystem, S: Iterable[Config | str] | str) -> Occurrence | None:
    for c in sorted(parse_configs(S), key=lambda c: c.value):
        hit = next(_FINDERS[c](F), None)
        if hit is not None:
            return Occurrence(c, tuple(sorted(hit)))
    return None


# -- general triangles (edges of any size) ----------------------------------


@dataclass(frozen=True, order=True)
class GeneralTriangle:
    edges: tuple[tuple[int, ...], ...]
    cycle: tuple[int, int, int]


def hypergraph_triangles(edges: Iterable[Iterable[int]], first_only: bool = False) -> list[GeneralTriangle]:
    """3-cycles: distinct vertices x1,x2,x3 and distinct edges E1,E2,E3 with
    {x1,x2} in E1, {x2,x3} in E2, {x3,x1} in E3. One witness cycle per edge set."""
    es = sorted({tuple(sorted(e)) for e in edges})
    pidx: dict[Pair, list[int]] = {}
    for i, e in enumerate(es):
        for p in itertools.combinations(e, 2):
            pidx.setdefault(p, []).append(i)
    adj: dict[int, set[int]] = {}
    for u, v in pidx:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    found: dict[tuple[int, ...], tuple[int, int, int]] = {}
    for u, v in sorted(pidx):
        for w in sorted(adj[u] & adj[v]):
            if w <= v:
                continue
            for i in pidx[(u, v)]:
                for j in pidx[(v, w)]:
                    if j == i:
                        continue
                    for k in pidx[(u, w)]:
                        if k == i or k == j:
                            continue
                        key = tuple(sorted((i, j, k)))
                        if key not in found:
                            found[key] = (u, v, w)
                            if first_only:
                                return [GeneralTriangle(tuple(es[x] for x in key), (u, v, w))]
    return sorted(GeneralTriangle(tuple(es[x] for x in key), cyc) for key, cyc in found.items())


def find_general_triangles(F: TripleSystem) -> list[GeneralTriangle]:
    return hypergraph_triangles(F.triples)


# -- contiguity, clusters and crowns ---------------------------------------


def contiguity_components(F: TripleSystem) -> list[list[Triple]]:
    parent = {t: t for t in F.triples}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    for lst in F.pair_index.values():
        r0 = find(lst[0])
        for t in lst[1:]:
            r = find(t)
            if r != r0:
                parent[r] = r0
    groups: dict[Triple, list[Triple]] = {}
    for t in F.triples:
        groups.setdefault(find(t), []).append(t)
    return sorted(groups.values())


@dataclass(frozen=True)
class ComponentClass:
    kind: str  # "Cluster", "Crown" or "Other"
    k: int = 0

    def __str__(self) -> str:
        return f"Crown({self.k})" if self.kind == "Crown" else self.kind


CLUSTER = ComponentClass("Cluster")
OTHER = ComponentClass("Other")


def classify_component(component: Iterable[Iterable[int]]) -> ComponentClass:
    ts = sorted({make_triple(t) for t in component})
    if not ts:
        return OTHER
    verts = {v for t in ts for v in t}
    if len(verts) == 4 and len(ts) >= 3:
        return CLUSTER
    common = set(ts[0])
    for t in ts[1:]:
        common &= set(t)
    if len(common) >= 2:
        return ComponentClass("Crown", len(ts))
    return OTHER


def dfree_by_components(F: TripleSystem) -> bool:
    return all(classify_component(c).kind != "Other" for c in contiguity_components(F))


@dataclass(frozen=True)
class LinkProfile:
    triangles: int
    stars: int
    other: int  # components that are neither triangles nor stars


def link_profile(F: TripleSystem, x: int) -> LinkProfile:
    """Component shapes of the link of ``x`` on the other ``n - 1`` vertices."""
    adj: dict[int, set[int]] = {v: set() for v in range(F.n) if v != x}
    for t in F.vertex_index[x]:
        u, w = (v for v in t if v != x)
        adj[u].add(w)
        adj[w].add(u)
    seen: set[int] = set()
    tri = stars = other = 0
    for s in adj:
        if s in seen:
            continue
        comp, stack = [s], [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        m = sum(len(adj[u]) for u in comp) // 2
        k = len(comp)
        if k == 3 and m == 3:
            tri += 1
        elif m == k - 1 and (k <= 2 or max(len(adj[u]) for u in comp) == k - 1):
            stars += 1
        else:
            other += 1
    return LinkProfile(tri, stars, other)


def dfree_by_links(F: TripleSystem) -> bool:
    return all(link_profile(F, x).other == 0 for x in range(F.n))


def star_count_size(F: TripleSystem) -> Fraction:
    """(1/3) * sum over x of (n - 1 - st(F[x])); equals |F| when F is D-free."""
    total = 0
    for x in range(F.n):
        prof = link_profile(F, x)
        if prof.other:
            raise ValueError(f"link of vertex {x} is not a disjoint union of triangles and stars")
        total += F.n - 1 - prof.stars
    return Fraction(total, 3)


def cd_free_by_own_pairs(F: TripleSystem) -> bool:
    idx = F.pair_index
    return all(sum(1 for p in pairs_of(t) if len(idx[p]) == 1) >= 2 for t in F.triples)


# -- AC-free structure -------------------------------------------------------


def is_five_ring(triples: Sequence[Triple]) -> bool:
    """Five triples on five vertices with every vertex in exactly three of them.

    The complementary pairs then form a 2-regular graph on five vertices, i.e. a
    5-cycle, which is exactly the five-ring."""
    if len(set(triples)) != 5:
        return False
    deg: dict[int, int] = {}
    for t in triples:
        for v in t:
            deg[v] = deg.get(v, 0) + 1
    return len(deg) == 5 and all(d == 3 for d in deg.values())


def five_rings(F: TripleSystem) -> list[tuple[Triple, ...]]:
    """All sub-systems of ``F`` isomorphic to the five-ring.

    Consecutive triples of a ring are contiguous, so every ring's vertex set is
    the union of a contiguity path of three triples."""
    ts = F.triple_set
    candidates: set[tuple[int, ...]] = set()
    idx = F.pair_index
    for t2 in F.triples:
        nbrs = [t for p in pairs_of(t2) for t in idx[p] if t != t2]
        for t1, t3 in itertools.combinations(nbrs, 2):
            vs = set(t1) | set(t2) | set(t3)
            if len(vs) == 5:
                candidates.add(tuple(sorted(vs)))
    out = set()
    for vs in candidates:
        inside = [t for t in itertools.combinations(vs, 3) if t in ts]
        for sub in itertools.combinations(inside, 5):
            if is_five_ring(sub):
                out.add(tuple(sorted(sub)))
    return sorted(out)


@dataclass(frozen=True)
class ACPartition:
    rings: tuple[tuple[Triple, ...], ...]
    R: tuple[Triple, ...]
    F1: tuple[Triple, ...]
    F2: tuple[Triple, ...]
    G_R: Graph
    G1: Graph
    G2: Graph
    G3: Graph
    G4: Graph
    G40: Graph
    G41: Graph
    G42: Graph

    def parts(self) -> tuple[Graph, Graph, Graph, Graph, Graph]:
        return (self.G_R, self.G1, self.G2, self.G3, self.G4)


def ac_pair_partition(F: TripleSystem) -> ACPartition:
    """Split triples into ring / one-own-pair / two-own-pair classes and the
    pairs of K_n into G_R, G1, G2, G3 = T(G1) and the remainder G4."""
    if not is_free(F, (Config.A, Config.C)):
        raise ValueError("ac_pair_partition needs an {A,C}-free system")
    n = F.n
    idx = F.pair_index
    rings = five_rings(F)
    R = sorted({t for ring in rings for t in ring})
    Rset = set(R)
    F1, F2, g1, g2 = [], [], [], []
    for t in F.triples:
        if t in Rset:
            continue
        own = [p for p in pairs_of(t) if len(idx[p]) == 1]
        if len(own) == 1:
            F1.append(t)
            g1.append(own[0])
        elif len(own) >= 2:
            F2.append(t)
            g2.extend(own[:2])  # pairs_of is lexicographic
        else:
            raise AssertionError(f"triple {t} outside five-rings has no own pair")
    G_R = Graph(n, (p for t in R for p in pairs_of(t)))
    G1 = Graph(n, g1)
    G2 = Graph(n, g2)
    G3 = path2_graph(G1)
    used = G_R.edges | G1.edges | G2.edges | G3.edges
    rest = [p for p in itertools.combinations(range(n), 2) if p not in used]
    G4 = Graph(n, rest)
    G40 = Graph(n, (p for p in rest if p not in idx))
    G41 = Graph(n, (p for p in rest if len(idx.get(p, ())) == 1))
    G42 = Graph(n, (p for p in rest if len(idx.get(p, ())) >= 2))
    return ACPartition(tuple(rings), tuple(R), tuple(F1), tuple(F2), G_R, G1, G2, G3, G4, G40, G41, G42)


# -- Q4-families -------------------------------------------------------------


@dataclass(frozen=True)
class Q4Family:
    n: int
    Q: frozenset = frozenset()
    T: frozenset = frozenset()
    E: frozenset = frozenset()

    @classmethod
    def build(cls, n: int, Q=(), T=(), E=()) -> Q4Family:
        norm = lambda xs: frozenset(tuple(sorted(x)) for x in xs)
        return cls(n, norm(Q), norm(T), norm(E))

    def members(self) -> list[tuple[int, ...]]:
        return sorted(self.Q | self.T | self.E)


def validate_q4(q: Q4Family) -> bool:
    for group, size in ((q.Q, 4), (q.T, 3), (q.E, 2)):
        for m in group:
            if len(set(m)) != size or len(m) != size or min(m) < 0 or max(m) >= q.n:
                return False
    members = q.members()
    for h1, h2 in itertools.combinations(members, 2):
        if len(set(h1) & set(h2)) > 1:
            return False
    return not hypergraph_triangles(members, first_only=True)


def q4_sigma(q: Q4Family) -> Fraction:
    return 8 * len(q.Q) + Fraction(7, 2) * len(q.T) + len(q.E)


def q4_from_system(F: TripleSystem) -> Q4Family:
    """The 4-sets carrying at least three triples become Q; other triples go to T."""
    quads = set()
    for occ in _iter_c(F):
        quads.add(tuple(sorted({v for t in occ for v in t})))
    covered = {t for q in quads for t in itertools.combinations(q, 3)}
    return Q4Family.build(F.n, quads, (t for t in F.triples if t not in covered))
