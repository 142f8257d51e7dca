"""Generators for the extremal triple systems and their building blocks.

Vertex conventions (0-based):

* matching-based systems use the pairs ``e_i = {2i, 2i+1}``; an unmatched
  vertex, when present, is ``n - 1``;
* in the transitive tournament ``e_i`` beats ``e_j`` iff ``i > j`` (so ``e_0``
  has outdegree 0, ``e_1`` outdegree 1, ...);
* extensions append the new vertices ``n, n+1, ...`` to an ``n``-vertex system.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .core import TripleSystem, canonical_form, make_triple
from .designs import FULL_PACKING_MAX_N, find_k4_packing
from .graphs import Graph, Tournament, book_graph, tournament_transitive


class DecompositionUnavailable(RuntimeError):
    """A required K4 decomposition is neither supplied nor searchable at this size."""


# -- triangle-free and earlier constructions ---------------------------------


def gyarfas(n: int, k: int) -> TripleSystem:
    """F_{n,k}: pairs A_i = {2i, 2i+1}, B = {2k, ..., n-1}, all triples A_i + b."""
    if k < 1 or 2 * k >= n:
        raise ValueError(f"need 1 <= k and 2k < n (got n={n}, k={k})")
    return TripleSystem(n, ((2 * i, 2 * i + 1, b) for i in range(k) for b in range(2 * k, n)))


def optimal_k(n: int) -> list[int]:
    """All k with 2k < n maximizing k(n - 2k)."""
    if n < 3:
        raise ValueError("F_{n,k} needs n >= 3")
    ks = range(1, (n - 1) // 2 + 1)
    best = max(k * (n - 2 * k) for k in ks)
    return [k for k in ks if k * (n - 2 * k) == best]


def full_star(n: int) -> TripleSystem:
    """All triples through vertex 0."""
    if n < 3:
        raise ValueError("full star needs n >= 3")
    return TripleSystem(n, ((0, a, b) for a, b in itertools.combinations(range(1, n), 2)))


def complete_3partite(n: int) -> TripleSystem:
    """Transversal triples of a balanced 3-partition into consecutive blocks."""
    if n < 3:
        raise ValueError("complete 3-partite system needs n >= 3")
    sizes = (n // 3, (n + 1) // 3, (n + 2) // 3)
    parts, start = [], 0
    for s in sizes:
        parts.append(range(start, start + s))
        start += s
    return TripleSystem(n, itertools.product(*parts))


def tournament_construction(T: Tournament, odd_extra: bool = False) -> TripleSystem:
    """F_T on ``2k`` (or ``2k + 1``) vertices for a tournament on ``k`` matching edges."""
    k = T.k
    n = 2 * k + (1 if odd_extra else 0)
    triples = []
    for i, j in T.arcs:
        triples.append((2 * i, 2 * i + 1, 2 * j))
        triples.append((2 * i, 2 * i + 1, 2 * j + 1))
    if odd_extra:
        triples.extend((2 * i, 2 * i + 1, n - 1) for i in range(k))
    return TripleSystem(n, triples)


def transitive_ft(n: int) -> TripleSystem:
    return tournament_construction(tournament_transitive(n // 2), odd_extra=n % 2 == 1)


def ft_plus(n: int) -> TripleSystem:
    """F_T^+ for even n: add e_0 + 2 and e_0 + 3 to the transitive F_T."""
    if n < 4 or n % 2:
        raise ValueError("ft_plus needs even n >= 4")
    return transitive_ft(n).add((0, 1, 2), (0, 1, 3))


def ft_pm(n: int) -> TripleSystem:
    """F_T^± for odd n: swap u+e_0, u+e_1 (u unmatched) for e_0+2, e_0+3."""
    if n < 5 or n % 2 == 0:
        raise ValueError("ft_pm needs odd n >= 5")
    u = n - 1
    return transitive_ft(n).remove((0, 1, u), (2, 3, u)).add((0, 1, 2), (0, 1, 3))


def turan_star(n: int) -> TripleSystem:
    """F*_n: apex 0 joined to the edges of a balanced complete bipartite graph on 1..n-1."""
    if n < 2:
        raise ValueError("turan_star needs n >= 2")
    h = (n - 1) // 2
    left = range(1, 1 + h)
    right = range(1 + h, n)
    return TripleSystem(n, ((0, a, b) for a in left for b in right))


def five_ring() -> TripleSystem:
    return TripleSystem(5, [(i, (i + 1) % 5, (i + 2) % 5) for i in range(5)])


# -- extensions and the class of extremal AC-free systems --------------------


def two_extension(F: TripleSystem) -> TripleSystem:
    n = F.n
    p, q = n, n + 1
    return TripleSystem(n + 2, itertools.chain(F.triples, ((p, q, v) for v in range(n))))


def four_extension(F: TripleSystem) -> TripleSystem:
    n = F.n
    p, q, r, s = n, n + 1, n + 2, n + 3
    new = [(p, q, v) for v in range(n)] + [(r, s, v) for v in range(n)] + [(p, q, r), (q, r, s)]
    return TripleSystem(n + 4, itertools.chain(F.triples, new))


def compositions_12(k: int) -> list[tuple[int, ...]]:
    """Ordered sequences of 1s and 2s summing to ``k`` (1 = 2-extension, 2 = 4-extension)."""
    if k == 0:
        return [()]
    out = [(1,) + rest for rest in compositions_12(k - 1)]
    if k >= 2:
        out += [(2,) + rest for rest in compositions_12(k - 2)]
    return out


def apply_extensions(F: TripleSystem, steps: Iterable[int]) -> TripleSystem:
    for s in steps:
        F = two_extension(F) if s == 1 else four_extension(F)
    return F


def class_F_members(n: int) -> list[tuple[str, TripleSystem]]:
    """Every (base, extension sequence) member of the class, before deduplication."""
    out = []
    if n % 2 == 0:
        if n < 2:
            raise ValueError("class F needs even n >= 2 or odd n >= 5")
        for k in range(0, (n - 2) // 2 + 1):
            base = turan_star(n - 2 * k)
            for seq in compositions_12(k):
                label = f"F*_{n - 2 * k}" + "".join("+2" if s == 1 else "+4" for s in seq)
                out.append((label, apply_extensions(base, seq)))
    else:
        if n < 5:
            raise ValueError("class F needs even n >= 2 or odd n >= 5")
        for seq in compositions_12((n - 5) // 2):
            label = "ring" + "".join("+2" if s == 1 else "+4" for s in seq)
            out.append((label, apply_extensions(five_ring(), seq)))
    return out


def enumerate_class_F(n: int) -> list[TripleSystem]:
    """Isomorphism classes of the class, one canonical representative each."""
    seen: dict[bytes, TripleSystem] = {}
    for _, F in class_F_members(n):
        key = canonical_form(F, limit=max(n, 12))
        seen.setdefault(key, F)
    return [seen[k] for k in sorted(seen)]


@lru_cache(maxsize=None)
def fibonacci(k: int) -> int:
    if k < 1:
        raise ValueError("Fibonacci index starts at 1")
    a, b = 1, 1
    for _ in range(k - 1):
        a, b = b, a + b
    return a


def class_F_count_formula(n: int) -> int:
    if n % 2 == 0:
        return 2 * fibonacci(n // 2) - 1
    return fibonacci((n - 3) // 2)


# -- ABD-free systems built from K4 blocks -----------------------------------


def k4_union(n: int, blocks: Iterable[Sequence[int]]) -> TripleSystem:
    """All four triples inside each 4-set."""
    return TripleSystem(n, (t for q in blocks for t in itertools.combinations(sorted(q), 3)))


def lattice_q44() -> TripleSystem:
    """Q^{4x4}: cell (i, j) is vertex 4i + j; each row and column carries a K4^3."""
    rows = [[4 * i + j for j in range(4)] for i in range(4)]
    cols = [[4 * i + j for i in range(4)] for j in range(4)]
    return k4_union(16, rows + cols)


def lattice_q44_blocks() -> list[tuple[int, ...]]:
    return [tuple(4 * i + j for j in range(4)) for i in range(4)] + [tuple(4 * i + j for i in range(4)) for j in range(4)]


def small_abd_extremals(n: int) -> dict[str, TripleSystem]:
    """The complete list of extremal ABD-free systems for n = 8, 9, 10."""
    if n == 8:
        return {
            "F_{8,2}": gyarfas(8, 2),
            "Q_8^2": k4_union(8, [(0, 1, 2, 3), (3, 4, 5, 6)]),
            "Q_8^3": k4_union(8, [(0, 1, 2, 3), (4, 5, 6, 7)]),
        }
    if n == 9:
        return {
            "F_{9,2}": gyarfas(9, 2),
            "Q_9^2": k4_union(9, [(0, 1, 2, 3), (0, 4, 5, 6)]).add((1, 7, 8), (4, 7, 8)),
        }
    if n == 10:
        return {
            "F_{10,2}": gyarfas(10, 2),
            "F_{10,3}": gyarfas(10, 3),
            "Q_10^3": k4_union(10, [(0, 1, 2, 3), (0, 4, 5, 6), (0, 7, 8, 9)]),
            "Q_10^4": k4_union(10, [(0, 1, 2, 3), (3, 4, 5, 6), (6, 7, 8, 9)]),
        }
    raise ValueError(f"the small ABD list covers n = 8, 9, 10 only (got {n})")


# -- D-free systems: clusters, crowns and residue-class assembly -------------


def cluster(vertices: Sequence[int], full: bool = True, n: int | None = None) -> TripleSystem:
    vs = sorted(set(vertices))
    if len(vs) != 4:
        raise ValueError("a cluster lives on exactly 4 vertices")
    ts = list(itertools.combinations(vs, 3))
    if not full:
        ts = ts[1:]
    return TripleSystem(max(vs) + 1 if n is None else n, ts)


def crown(pair: Sequence[int], leaves: Iterable[int], n: int | None = None) -> TripleSystem:
    x, y = pair
    leaves = sorted(set(leaves))
    if x == y or x in leaves or y in leaves or not leaves:
        raise ValueError("a crown needs a pair and at least one distinct leaf")
    vmax = max(x, y, *leaves)
    return TripleSystem(vmax + 1 if n is None else n, ((x, y, z) for z in leaves))


def complement_spec(n: int, forbid_b: bool = False) -> Graph:
    """The leftover graph (complement of the K4-decomposed part) for each residue of n mod 12.

    ``forbid_b`` selects the variant used when B must also be avoided; it only
    differs for n = 6, 9 (mod 12).
    """
    r = n % 12
    if r in (1, 4):
        return Graph(n)
    if r in (0, 3):
        return Graph(n, (e for i in range(0, n, 3) for e in ((i, i + 1), (i, i + 2), (i + 1, i + 2))))
    if r in (2, 8):
        return Graph(n, ((i, i + 1) for i in range(0, n, 2)))
    if r in (5, 11):
        if n < 5:
            raise ValueError(f"n={n} is too small for the matching-plus-star leftover")
        m = n - 5
        edges = [(i, i + 1) for i in range(0, m, 2)] + [(m, m + j) for j in range(1, 5)]
        return Graph(n, edges)
    if r in (6, 9):
        if not forbid_b:
            if n < 6:
                raise ValueError(f"n={n} is too small for the triangles-plus-book leftover")
            m = n - 6
            tri = [e for i in range(0, m, 3) for e in ((i, i + 1), (i, i + 2), (i + 1, i + 2))]
            book = [(m + u, m + v) for u, v in book_graph(4).edges]
            return Graph(n, tri + book)
        if n < 9:
            raise ValueError(f"n={n} is too small for the triangles-plus-windmill leftover")
        m = n - 9
        tri = [e for i in range(0, m, 3) for e in ((i, i + 1), (i, i + 2), (i + 1, i + 2))]
        c = m
        wind = []
        for j in range(4):
            a, b = m + 1 + 2 * j, m + 2 + 2 * j
            wind += [(c, a), (c, b), (a, b)]
        return Graph(n, tri + wind)
    # r in (7, 10): triangular prism plus isolated vertices
    if n < 6:
        raise ValueError(f"n={n} is too small for the prism leftover")
    prism = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5)]
    return Graph(n, prism)


def complement_divisibility(n: int, gbar: Graph) -> bool:
    """|E(Ḡ)| = C(n,2) (mod 6) and deg_Ḡ(v) = n - 1 (mod 3) for every vertex."""
    return (len(gbar.edges) - comb(n, 2)) % 6 == 0 and all((d - (n - 1)) % 3 == 0 for d in gbar.degrees())


def leftover_extras(gbar: Graph) -> list[tuple[int, int, int]]:
    """Triples carried by the leftover graph: one per triangle component, and a
    full crown on every book component; stars and matchings carry nothing."""
    extras: list[tuple[int, int, int]] = []
    adj = gbar.adj
    for comp in gbar.components():
        edges = [(u, v) for u in comp for v in adj[u] if u < v]
        if len(comp) == 3 and len(edges) == 3:
            extras.append(tuple(comp))
            continue
        spine = [(u, v) for u, v in edges if len(adj[u] & adj[v]) == len(comp) - 2]
        if len(comp) >= 4 and spine and len(edges) == 2 * (len(comp) - 2) + 1:
            x, y = spine[0]
            extras.extend(make_triple((x, y, z)) for z in comp if z not in (x, y))
            continue
        # triangle-rich components (prism, windmill): take edge-disjoint triangles greedily
        used: set[tuple[int, int]] = set()
        for a, b, c in itertools.combinations(comp, 3):
            es = {(a, b), (a, c), (b, c)}
            if all(e in gbar.edges for e in es) and not es & used:
                extras.append((a, b, c))
                used |= es
    return sorted(extras)


def assemble_dfree(
    n: int,
    blocks: Iterable[Sequence[int]],
    extras: Iterable[Iterable[int]] = (),
) -> TripleSystem:
    """Four triples in each (pairwise edge-disjoint) K4 block plus extra triples.

    The extras must use pairs outside the blocks; each contiguity component of
    the result must be a cluster or a crown for it to be D-free.
    """
    blocks = [tuple(sorted(q)) for q in blocks]
    seen: set[tuple[int, int]] = set()
    for q in blocks:
        if len(set(q)) != 4:
            raise ValueError(f"block {q} is not a 4-set")
        for e in itertools.combinations(q, 2):
            if e in seen:
                raise ValueError(f"blocks overlap on pair {e}")
            seen.add(e)
    extras = [make_triple(t) for t in extras]
    for t in extras:
        for e in itertools.combinations(t, 2):
            if e in seen:
                raise ValueError(f"extra triple {t} reuses block pair {e}")
    return TripleSystem(n, itertools.chain(k4_union(n, blocks).triples, extras))


def dbd_target_size(n: int, forbid_b: bool = False) -> int:
    r = n % 12
    if r in (1, 4):
        return n * (n - 1) // 3
    if r in (7, 10):
        return n * (n - 1) // 3 - 4
    if r in (0, 2, 3, 8):
        return n * (n - 2) // 3
    if r in (5, 11):
        return n * (n - 2) // 3 - 1
    return n * (n - 2) // 3 - (1 if forbid_b else 0)


def dfree_construction(
    n: int,
    forbid_b: bool = False,
    blocks: Sequence[Sequence[int]] | None = None,
    limit: int = 5_000_000,
) -> TripleSystem:
    """Residue-class D-free (or BD-free) system: K4 decomposition of the
    complement of ``complement_spec(n)`` plus the leftover triples.

    Without supplied ``blocks`` the decomposition is searched for when
    n <= 16; otherwise :class:`DecompositionUnavailable` is raised. The search
    may also prove that no decomposition exists (e.g. n = 7).
    """
    gbar = complement_spec(n, forbid_b)
    g = gbar.complement()
    if blocks is None:
        if n > FULL_PACKING_MAX_N:
            raise DecompositionUnavailable(f"decomposition not available at desk scale (n={n})")
        blocks = find_k4_packing(g, require_full=True, limit=limit)
        if blocks is None:
            raise DecompositionUnavailable(f"no K4 decomposition of K_{n} minus the leftover graph exists")
    else:
        pairs = [e for q in blocks for e in itertools.combinations(sorted(q), 2)]
        if len(pairs) != len(set(pairs)) or set(pairs) != set(g.edges):
            raise ValueError("blocks do not decompose K_n minus the leftover graph")
    return assemble_dfree(n, blocks, leftover_extras(gbar))


# -- BCD-free systems from H_m -----------------------------------------------


def h_m_layout(m: int) -> tuple[list[tuple[int, int]], list[int]]:
    """Pairs A_i = {2i, 2i+1} for i < C(m,2) and the set B of the last m vertices."""
    if m < 2:
        raise ValueError("H_m needs m >= 2")
    p = comb(m, 2)
    return [(2 * i, 2 * i + 1) for i in range(p)], list(range(2 * p, m * m))


def h_m_graph(m: int) -> Graph:
    pairs, B = h_m_layout(m)
    edges = set()
    for a in pairs:
        edges.update(itertools.combinations(sorted(a + tuple(B)), 2))
    return Graph(m * m, edges)


def bcd_construction(n: int, m: int, blocks: Sequence[Sequence[int]]) -> TripleSystem:
    """H^n_m: each block is a copy of H_m given as the images of its vertices
    0..m^2-1; it contributes the triples A_i + b."""
    h = h_m_graph(m)
    pairs, B = h_m_layout(m)
    seen: set[tuple[int, int]] = set()
    triples = []
    for phi in blocks:
        phi = list(phi)
        if len(phi) != m * m or len(set(phi)) != m * m or min(phi) < 0 or max(phi) >= n:
            raise ValueError(f"block {phi} is not an injective map of {m * m} vertices into [0, {n})")
        for u, v in h.edges:
            e = tuple(sorted((phi[u], phi[v])))
            if e in seen:
                raise ValueError("blocks are not edge-disjoint")
            seen.add(e)
        triples.extend((phi[a], phi[b], phi[x]) for a, b in pairs for x in B)
    if len(seen) != comb(n, 2):
        raise ValueError("blocks do not cover every pair of K_n")
    return TripleSystem(n, triples)


def bcd_size_formula(n: int, m: int) -> Fraction:
    return Fraction(1, 2) * Fraction(m, m + 1) * comb(n, 2)

