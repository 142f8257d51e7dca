"""Triple systems: the data model, basic derived objects and isomorphism testing."""

from __future__ import annotations

import itertools
import json
from collections import Counter
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from .graphs import Graph

Triple = tuple[int, int, int]
Pair = tuple[int, int]

CANONICAL_LIMIT = 12


def make_triple(vertices: Iterable[int]) -> Triple:
    vs = tuple(vertices)
    if len(vs) != 3 or len(set(vs)) != 3:
        raise ValueError(f"not a 3-element vertex set: {vs!r}")
    a, b, c = sorted(int(v) for v in vs)
    return (a, b, c)


def pairs_of(t: Sequence[int]) -> tuple[Pair, Pair, Pair]:
    a, b, c = t
    return ((a, b), (a, c), (b, c))


class PairDegreeIndex(dict):
    """Maps each covered pair ``(x, y)`` with ``x < y`` to the triples containing it."""

    def degree(self, x: int, y: int) -> int:
        return len(self.get((x, y) if x < y else (y, x), ()))


class TripleSystem:
    """An immutable 3-uniform hypergraph on vertices ``0..n-1``.

    Triples are stored sorted and deduplicated; iteration follows that order.
    """

    __slots__ = ("n", "triples", "__dict__")

    def __init__(self, n: int, triples: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        ts = set()
        for t in triples:
            tr = make_triple(t)
            if tr[0] < 0 or tr[2] >= n:
                raise ValueError(f"triple {tuple(t)!r} has a vertex outside [0, {n})")
            ts.add(tr)
        self.n = n
        self.triples: tuple[Triple, ...] = tuple(sorted(ts))

    def __repr__(self) -> str:
        return f"TripleSystem(n={self.n}, triples={list(self.triples)})"

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)

    def __contains__(self, t) -> bool:
        return tuple(sorted(t)) in self.triple_set

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TripleSystem):
            return NotImplemented
        return self.n == other.n and self.triples == other.triples

    def __hash__(self) -> int:
        return hash((self.n, self.triples))

    @cached_property
    def triple_set(self) -> frozenset[Triple]:
        return frozenset(self.triples)

    @cached_property
    def pair_index(self) -> PairDegreeIndex:
        idx = PairDegreeIndex()
        for t in self.triples:
            for p in pairs_of(t):
                idx.setdefault(p, []).append(t)
        return idx

    @cached_property
    def vertex_index(self) -> tuple[tuple[Triple, ...], ...]:
        inc: list[list[Triple]] = [[] for _ in range(self.n)]
        for t in self.triples:
            for v in t:
                inc[v].append(t)
        return tuple(tuple(x) for x in inc)

    def degree(self, v: int) -> int:
        return len(self.vertex_index[v])

    def degrees(self) -> list[int]:
        return [len(x) for x in self.vertex_index]

    def vertices_used(self) -> set[int]:
        return {v for t in self.triples for v in t}

    # value-semantics helpers
    def add(self, *triples: Iterable[int]) -> TripleSystem:
        return TripleSystem(self.n, itertools.chain(self.triples, triples))

    def remove(self, *triples: Iterable[int]) -> TripleSystem:
        drop = {make_triple(t) for t in triples}
        return TripleSystem(self.n, (t for t in self.triples if t not in drop))

    def relabel(self, perm: Sequence[int], n: int | None = None) -> TripleSystem:
        return TripleSystem(self.n if n is None else n, ((perm[a], perm[b], perm[c]) for a, b, c in self.triples))

    def subsystem(self, triples: Iterable[Triple]) -> TripleSystem:
        return TripleSystem(self.n, triples)

    def with_vertex_count(self, n: int) -> TripleSystem:
        return TripleSystem(n, self.triples)


def build_system(n: int, triples: Iterable[Iterable[int]]) -> TripleSystem:
    return TripleSystem(n, triples)


def complete_system(n: int) -> TripleSystem:
    return TripleSystem(n, itertools.combinations(range(n), 3))


def _check_vertex(F: TripleSystem, *vs: int) -> None:
    for v in vs:
        if not (0 <= v < F.n):
            raise ValueError(f"vertex {v} outside [0, {F.n})")


def pair_degree(F: TripleSystem, x: int, y: int) -> int:
    _check_vertex(F, x, y)
    if x == y:
        raise ValueError("pair degree needs two distinct vertices")
    return F.pair_index.degree(x, y)


def own_pairs(F: TripleSystem, T: Iterable[int]) -> list[Pair]:
    """Pairs of ``T`` contained in no other triple of ``F``."""
    t = make_triple(T)
    if t not in F.triple_set:
        raise ValueError(f"{t} is not a triple of the system")
    return [p for p in pairs_of(t) if len(F.pair_index[p]) == 1]


def shadow(F: TripleSystem) -> Graph:
    return Graph(F.n, F.pair_index.keys())


def link(F: TripleSystem, x: int) -> Graph:
    """Link of ``x`` as a graph on all ``n`` vertices (``x`` itself is isolated)."""
    _check_vertex(F, x)
    return Graph(F.n, (tuple(v for v in t if v != x) for t in F.vertex_index[x]))


# -- canonical form ----------------------------------------------------------


class CanonicalLimitError(ValueError):
    pass


def _refine(cells: list[list[int]], inc: list[list[Pair]], n: int) -> list[list[int]]:
    """Equitable refinement of an ordered partition; the result depends only on
    the isomorphism type of (system, partition)."""
    cells = [list(c) for c in cells]
    while True:
        color = [0] * n
        for i, c in enumerate(cells):
            for v in c:
                color[v] = i
        out: list[list[int]] = []
        changed = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            sig = {}
            for v in c:
                sig[v] = tuple(sorted((min(color[a], color[b]), max(color[a], color[b])) for a, b in inc[v]))
            groups: dict[tuple, list[int]] = {}
            for v in c:
                groups.setdefault(sig[v], []).append(v)
            if len(groups) > 1:
                changed = True
            for key in sorted(groups):
                out.append(groups[key])
        cells = out
        if not changed:
            return cells


def _orbit_of(v: int, generators: list[list[int]], n: int) -> set[int]:
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for g in generators:
            w = g[u]
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def canonical_labeling(F: TripleSystem, limit: int = CANONICAL_LIMIT) -> tuple[bytes, list[int]]:
    """Canonical string and a labeling ``perm`` with ``F.relabel(perm)`` canonical.

    Individualization-refinement: every leaf of the search tree is a labeling,
    the minimum serialized relabeled triple list over all leaves is returned.
    Subtrees equivalent under automorphisms found along the way are skipped.
    """
    n = F.n
    if n > limit:
        raise CanonicalLimitError(f"canonical form limited to n <= {limit} (got n={n})")
    inc: list[list[Pair]] = [[] for _ in range(n)]
    for a, b, c in F.triples:
        inc[a].append((b, c))
        inc[b].append((a, c))
        inc[c].append((a, b))

    best: list = [None, None]  # string, labeling
    autos: list[list[int]] = []

    def leaf(cells: list[list[int]]) -> None:
        lab = [0] * n
        for i, c in enumerate(cells):
            lab[c[0]] = i
        key = bytes(itertools.chain((n,), *sorted(tuple(sorted((lab[a], lab[b], lab[c]))) for a, b, c in F.triples)))
        if best[0] is None or key < best[0]:
            best[0], best[1] = key, lab
        elif key == best[0]:
            inv = [0] * n
            for v, l in enumerate(best[1]):
                inv[l] = v
            g = [inv[lab[v]] for v in range(n)]
            if any(g[v] != v for v in range(n)):
                autos.append(g)

    def visit(cells: list[list[int]], prefix: list[int]) -> None:
        cells = _refine(cells, inc, n)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), -1)
        if target < 0:
            leaf(cells)
            return
        tried: list[int] = []
        for v in sorted(cells[target]):
            if tried:
                fixing = [g for g in autos if all(g[p] == p for p in prefix)]
                if fixing and any(w in _orbit_of(v, fixing, n) for w in tried):
                    continue
            rest = [u for u in cells[target] if u != v]
            visit(cells[:target] + [[v], rest] + cells[target + 1 :], prefix + [v])
            tried.append(v)

    visit([list(range(n))] if n else [], [])
    if n == 0:
        return bytes((0,)), []
    return best[0], best[1]


def canonical_form(F: TripleSystem, limit: int = CANONICAL_LIMIT) -> bytes:
    return canonical_labeling(F, limit)[0]


def canonical_system(F: TripleSystem, limit: int = CANONICAL_LIMIT) -> TripleSystem:
    return F.relabel(canonical_labeling(F, limit)[1])


def invariant_signature(F: TripleSystem) -> tuple:
    """Cheap isomorphism invariant: sizes, degree sequence, pair-degree multiset."""
    pair_degs = Counter(len(v) for v in F.pair_index.values())
    return (F.n, len(F), tuple(sorted(F.degrees())), tuple(sorted(pair_degs.items())))


def are_isomorphic(F1: TripleSystem, F2: TripleSystem, limit: int = CANONICAL_LIMIT) -> bool:
    if invariant_signature(F1) != invariant_signature(F2):
        return False
    return canonical_form(F1, limit) == canonical_form(F2, limit)


# -- I/O ---------------------------------------------------------------------


def _normalize_labels(n_decl: int, rows: list[list[str]]) -> tuple[int, list[Triple]]:
    labels = [x for r in rows for x in r]
    try:
        ints = [int(x) for x in labels]
    except ValueError:
        ints = None
    if ints is not None and all(0 <= v < n_decl for v in ints):
        return n_decl, [make_triple(map(int, r)) for r in rows]
    if ints is not None:
        order = sorted(set(ints))
        key = {str(v): i for i, v in enumerate(order)}
        key.update({x: key[str(int(x))] for x in labels})
    else:
        order = sorted(set(labels))
        key = {v: i for i, v in enumerate(order)}
    n = max(n_decl, len(order))
    return n, [make_triple(key[x] for x in r) for r in rows]


def parse_3uh(text: str) -> TripleSystem:
    """Parse the ``.3uh`` text format: ``n m`` then ``m`` lines of three labels."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty .3uh input")
    header = lines[0]
    if len(header) != 2:
        raise ValueError(f"bad header line {' '.join(header)!r}; expected 'n m'")
    n_decl, m = int(header[0]), int(header[1])
    rows = lines[1:]
    if len(rows) != m:
        raise ValueError(f"header announces {m} triples, found {len(rows)}")
    for r in rows:
        if len(r) != 3:
            raise ValueError(f"bad triple line {' '.join(r)!r}")
    n, triples = _normalize_labels(n_decl, rows)
    return TripleSystem(n, triples)


def format_3uh(F: TripleSystem, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {ln}" for ln in comment.splitlines())
    out.append(f"{F.n} {len(F)}")
    out.extend(f"{a} {b} {c}" for a, b, c in F.triples)
    return "\n".join(out) + "\n"


def to_json(F: TripleSystem) -> dict:
    return {"n": F.n, "triples": [list(t) for t in F.triples]}


def from_json(data: dict) -> TripleSystem:
    return TripleSystem(int(data["n"]), data["triples"])


def read_system(path: str | Path) -> TripleSystem:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        return from_json(json.loads(text))
    return parse_3uh(text)


def write_system(F: TripleSystem, path: str | Path, comment: str | None = None) -> None:
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(json.dumps(to_json(F)) + "\n")
    else:
        path.write_text(format_3uh(F, comment))
