"""Exact K4-packing search on small graphs (Steiner systems S(2,4,n) and friends)."""

from __future__ import annotations

import itertools
from math import comb
from typing import Sequence

from .graphs import Graph, complete_graph

Block = tuple[int, int, int, int]

FULL_PACKING_MAX_N = 16


class SearchLimitExceeded(RuntimeError):
    """The node budget ran out before the search finished (not a proof of anything)."""


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def k4_divisible(g: Graph) -> bool:
    return len(g.edges) % 6 == 0 and all(d % 3 == 0 for d in g.degrees())


def _is_complete(g: Graph) -> bool:
    return len(g.edges) == comb(g.n, 2)


def find_k4_packing(
    g: Graph,
    require_full: bool = True,
    limit: int = 5_000_000,
) -> list[Block] | None:
    """Edge-disjoint copies of K4 in ``g``.

    With ``require_full`` the blocks must cover every edge exactly once; ``None``
    means the search space was exhausted (no such decomposition). Otherwise a
    maximum packing is returned. Raises :class:`SearchLimitExceeded` when more
    than ``limit`` nodes are expanded.
    """
    if require_full and g.n > FULL_PACKING_MAX_N:
        raise ValueError(f"full packing search is limited to n <= {FULL_PACKING_MAX_N}")
    if require_full and not k4_divisible(g):
        return None
    unc = [0] * g.n
    for u, v in g.edges:
        unc[u] |= 1 << v
        unc[v] |= 1 << u
    blocks: list[Block] = []
    nodes = 0

    def toggle(q: Sequence[int]) -> None:
        for a, b in itertools.combinations(q, 2):
            unc[a] ^= 1 << b
            unc[b] ^= 1 << a

    fixed: list[Block] = []
    if _is_complete(g) and g.n >= 4:
        # relabel-invariant: some block covers edge 01, call it 0123
        fixed = [(0, 1, 2, 3)]
    for q in fixed:
        toggle(q)
        blocks.append(q)

    if require_full:

        def full() -> bool:
            nonlocal nodes
            nodes += 1
            if nodes > limit:
                raise SearchLimitExceeded(f"K4 packing search exceeded {limit} nodes")
            u = next((i for i in range(g.n) if unc[i]), -1)
            if u < 0:
                return True
            v = (unc[u] & -unc[u]).bit_length() - 1
            common = unc[u] & unc[v]
            for w in _bits(common):
                for x in _bits(common & unc[w] & ~((2 << w) - 1)):
                    q = (u, v, w, x)
                    toggle(q)
                    blocks.append(q)
                    if full():
                        return True
                    blocks.pop()
                    toggle(q)
            return False

        if full():
            return sorted(tuple(sorted(b)) for b in blocks)
        return None

    best: list[Block] = list(blocks)

    def bound() -> int:
        rem = sum(bin(x).count("1") for x in unc) // 2
        return len(blocks) + min(rem // 6, sum(bin(x).count("1") // 3 for x in unc) // 4)

    def maximum(start_u: int) -> None:
        nonlocal nodes, best
        nodes += 1
        if nodes > limit:
            raise SearchLimitExceeded(f"K4 packing search exceeded {limit} nodes")
        if len(blocks) > len(best):
            best = list(blocks)
        if bound() <= len(best):
            return
        u = next((i for i in range(start_u, g.n) if unc[i]), -1)
        if u < 0:
            return
        v = (unc[u] & -unc[u]).bit_length() - 1
        common = unc[u] & unc[v]
        for w in _bits(common):
            for x in _bits(common & unc[w] & ~((2 << w) - 1)):
                q = (u, v, w, x)
                toggle(q)
                blocks.append(q)
                maximum(u)
                blocks.pop()
                toggle(q)
        # leave edge uv uncovered
        unc[u] ^= 1 << v
        unc[v] ^= 1 << u
        maximum(u)
        unc[u] ^= 1 << v
        unc[v] ^= 1 << u

    maximum(0)
    return sorted(tuple(sorted(b)) for b in best)


def steiner_quadruple_blocks(n: int, limit: int = 5_000_000) -> list[Block]:
    """Blocks of an S(2,4,n) found by search; n must be 1 or 4 mod 12 and at most 16."""
    if n % 12 not in (1, 4):
        raise ValueError(f"S(2,4,{n}) needs n = 1 or 4 (mod 12)")
    blocks = find_k4_packing(complete_graph(n), require_full=True, limit=limit)
    if blocks is None:
        raise RuntimeError(f"no S(2,4,{n}) found")  # impossible by Hanani's theorem
    return blocks


def is_edge_disjoint(blocks: Sequence[Sequence[int]]) -> bool:
    seen: set[tuple[int, int]] = set()
    for q in blocks:
        for e in itertools.combinations(sorted(q), 2):
            if e in seen:
                return False
            seen.add(e)
    return True


def covers_exactly(blocks: Sequence[Sequence[int]], g: Graph) -> bool:
    pairs = [e for q in blocks for e in itertools.combinations(sorted(q), 2)]
    return len(pairs) == len(set(pairs)) and set(pairs) == set(g.edges)
