"""Exact ex(n, S) by branch and bound, with isomorph-free enumeration of optima."""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable

import numpy as np

from . import constructions as cons
from ._kernels import STATUS_DONE, branch_and_bound
from .core import TripleSystem, canonical_labeling, complete_system
from .detect import BASIC, EXTENDED, Config, config_label, find_occurrences, is_free, parse_configs

DEFAULT_MAX_N = 8
EXTENDED_MAX_N = 9
ENUM_CAPACITY = 4096


class SearchLimitError(ValueError):
    pass


@dataclass
class SearchResult:
    n: int
    forbidden: str
    max_size: int
    witnesses: list[TripleSystem]
    class_count: int | None = None
    nodes_expanded: int = 0
    proved_optimal: bool = True
    lower_bound: int = 0
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "forbidden": self.forbidden,
            "max_size": self.max_size,
            "class_count": self.class_count,
            "nodes_expanded": self.nodes_expanded,
            "proved_optimal": self.proved_optimal,
            "lower_bound": self.lower_bound,
            "witnesses": [[list(t) for t in w.triples] for w in self.witnesses],
        }


def default_threads() -> int:
    env = os.environ.get("TRISYS_THREADS")
    if env:
        return max(1, int(env))
    return 1


# -- problem encoding ------------------------------------------------------


@dataclass(frozen=True)
class Encoding:
    n: int
    candidates: tuple
    tri: np.ndarray
    conf_ptr: np.ndarray
    conf_ids: np.ndarray
    conf_members: np.ndarray
    conf_size: np.ndarray


@lru_cache(maxsize=64)
def encode(n: int, S: frozenset) -> Encoding:
    """Candidates are the sorted triples of [n]; conflicts are all occurrences
    of the forbidden configurations inside the complete system."""
    K = complete_system(n)
    cands = K.triples
    index = {t: i for i, t in enumerate(cands)}
    conflicts = set()
    for c in sorted(S, key=lambda c: c.value):
        for occ in find_occurrences(K, c):
            conflicts.add(tuple(sorted(index[t] for t in occ.triples)))
    # a conflict containing a smaller one is redundant
    small = {c for c in conflicts if len(c) == 3}
    conflicts = sorted(c for c in conflicts if len(c) == 3 or not any(s in small for s in itertools.combinations(c, 3)))
    M, C = len(cands), len(conflicts)
    members = np.full((max(C, 1), 4), -1, dtype=np.int64)
    sizes = np.zeros(C, dtype=np.int64)
    per: list[list[int]] = [[] for _ in range(M)]
    for k, c in enumerate(conflicts):
        members[k, : len(c)] = c
        sizes[k] = len(c)
        for i in c:
            per[i].append(k)
    ptr = np.zeros(M + 1, dtype=np.int64)
    for i in range(M):
        ptr[i + 1] = ptr[i] + len(per[i])
    ids = np.array([k for lst in per for k in lst], dtype=np.int64)
    tri = np.array(cands, dtype=np.int64).reshape(M, 3)
    return Encoding(n, tuple(cands), tri, ptr, ids, members[: max(C, 1)], sizes)


# -- lower bounds from constructions ----------------------------------------


def _construction_pool(n: int) -> list[TripleSystem]:
    pool: list[TripleSystem] = []
    if n < 3:
        return [TripleSystem(n)]
    pool.append(complete_system(n))
    for k in range(1, (n - 1) // 2 + 1):
        pool.append(cons.gyarfas(n, k))
    pool.append(cons.full_star(n))
    pool.append(cons.complete_3partite(n))
    pool.append(cons.transitive_ft(n))
    pool.append(cons.turan_star(n))
    if n % 2 == 0 and n >= 4:
        pool.append(cons.ft_plus(n))
    if n % 2 == 1 and n >= 5:
        pool.append(cons.ft_pm(n))
    if n >= 5 and n <= 14:
        pool.extend(F for _, F in cons.class_F_members(n))
    if n in (8, 9, 10):
        pool.extend(cons.small_abd_extremals(n).values())
    if n >= 4:
        # disjoint and vertex-sharing K4 chains
        chain, start = [], 0
        while start + 4 <= n:
            chain.append(tuple(range(start, start + 4)))
            start += 3
        pool.append(cons.k4_union(n, chain))
        pool.append(cons.k4_union(n, [tuple(range(s, s + 4)) for s in range(0, n - 3, 4)]))
    if n == 16:
        pool.append(cons.lattice_q44())
    if n <= cons.FULL_PACKING_MAX_N:
        for fb in (False, True):
            try:
                pool.append(cons.dfree_construction(n, fb, limit=200_000))
            except (ValueError, RuntimeError):
                pass
    return pool


def lower_bound_witness(n: int, S: Iterable[Config | str] | str) -> TripleSystem:
    """The largest S-free system among the known constructions at this n."""
    S = parse_configs(S)
    if n < 0:
        raise ValueError("n must be non-negative")
    best = None
    for F in _construction_pool(n):
        if (best is None or len(F) > len(best)) and is_free(F, S):
            best = F
    if best is None:
        raise ValueError(f"no known construction for n={n}, S={config_label(S)}")
    return best


# -- the search --------------------------------------------------------------


def _check_request(n: int, S: frozenset, allow_n9: bool, extended: bool) -> None:
    limit = EXTENDED_MAX_N if allow_n9 else DEFAULT_MAX_N
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > limit:
        raise SearchLimitError(f"exact search limited to n <= {limit} (got n={n})")
    bad = [c for c in S if c in EXTENDED]
    if bad and not extended:
        raise ValueError("A+/B+ need extended=True")
    if any(c not in BASIC and c not in EXTENDED for c in S):
        raise ValueError("unsupported configuration")


@lru_cache(maxsize=None)
def _ex_cached(n: int, S: frozenset) -> int:
    if n <= 3:
        return comb(n, 3)
    return max_free(n, S, allow_n9=True, extended=True).max_size


def _prefix_splits(M: int, threads: int) -> list[np.ndarray]:
    depth = 0
    while threads > 1 and (1 << depth) < 4 * threads and depth < min(M, 8):
        depth += 1
    out = []
    for bits in itertools.product((1, 0), repeat=depth):
        f = np.full(M, -1, dtype=np.int64)
        f[:depth] = bits
        out.append(f)
    return out


def max_free(
    n: int,
    S: Iterable[Config | str] | str,
    enumerate: bool = False,
    limit_nodes: int | None = None,
    threads: int | None = None,
    allow_n9: bool = False,
    extended: bool = False,
) -> SearchResult:
    """Maximum size of an S-free triple system on n vertices, proved by exhaustion.

    With ``enumerate`` every isomorphism class of optimal systems is returned.
    The search is primed with the best known construction, and bounded by
    size + available candidates and, per vertex v, by
    ex(n-1, S) + (possible degree of v).
    """
    S = parse_configs(S)
    _check_request(n, S, allow_n9, extended)
    label = config_label(S)
    if not S or n <= 3:
        F = complete_system(n)
        return SearchResult(n, label, len(F), [_canon(F)], 1 if enumerate else None, 0, True, len(F))
    enc = encode(n, S)
    prime = lower_bound_witness(n, S)
    ex_minus = _ex_cached(n - 1, S)
    global_ub = (n * ex_minus) // (n - 3)
    threads = threads or default_threads()
    splits = _prefix_splits(len(enc.candidates), threads)
    node_limit = int(limit_nodes) if limit_nodes else 0
    init = len(prime)

    def run(forced: np.ndarray, capacity: int):
        return branch_and_bound(
            n, enc.tri, enc.conf_ptr, enc.conf_ids, enc.conf_members, enc.conf_size,
            ex_minus, global_ub, init, enumerate, forced, node_limit, capacity,
        )

    def run_split(forced: np.ndarray):
        cap = ENUM_CAPACITY if enumerate else 1
        while True:
            out = run(forced, cap)
            if not enumerate or out[5] <= cap:
                return out
            cap = int(out[5])

    if threads > 1 and len(splits) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outs = list(pool.map(run_split, splits))
    else:
        outs = [run_split(f) for f in splits]

    nodes = sum(int(o[6]) for o in outs)
    proved = all(int(o[7]) == STATUS_DONE for o in outs)
    best = max([init] + [int(o[0]) for o in outs])
    witnesses: list[TripleSystem] = []
    if enumerate:
        seen: dict[bytes, TripleSystem] = {}
        if best == init:
            key, lab = canonical_labeling(prime)
            seen[key] = prime.relabel(lab)
        for o in outs:
            if int(o[0]) != best:
                continue
            store, count = o[3], int(o[4])
            for r in range(count):
                F = _from_mask(enc, store[r])
                key, lab = canonical_labeling(F)
                seen.setdefault(key, F.relabel(lab))
        witnesses = [seen[k] for k in sorted(seen)]
        class_count = len(witnesses)
    else:
        class_count = None
        chosen = None
        for o in outs:
            if bool(o[1]) and int(o[0]) == best:
                chosen = _from_mask(enc, o[2])
                break
        witnesses = [_canon(chosen if chosen is not None else prime)]
    return SearchResult(n, label, best, witnesses, class_count, nodes, proved, len(prime),
                        {"conflicts": int(enc.conf_size.shape[0]), "ex_minus": ex_minus, "global_ub": global_ub,
                         "splits": len(splits)})


def _from_mask(enc: Encoding, mask: np.ndarray) -> TripleSystem:
    return TripleSystem(enc.n, (enc.candidates[j] for j in np.flatnonzero(mask)))


def _canon(F: TripleSystem) -> TripleSystem:
    key, lab = canonical_labeling(F)
    return F.relabel(lab)
