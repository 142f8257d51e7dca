import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import greedy_free_system, naive_five_rings, naive_occurrences, own_pair_counts
from strategies import system_and_perm, systems
from trisys.constructions import (
    cluster,
    crown,
    five_ring,
    gyarfas,
    lattice_q44_blocks,
    tournament_construction,
    transitive_ft,
    turan_star,
)
from trisys.core import build_system, complete_system
from trisys.detect import (
    BASIC,
    CLUSTER,
    EXTENDED,
    OTHER,
    ComponentClass,
    Config,
    Q4Family,
    ac_pair_partition,
    cd_free_by_own_pairs,
    classify_component,
    config_label,
    contiguity_components,
    count_occurrences,
    dfree_by_components,
    dfree_by_links,
    find_general_triangles,
    find_occurrences,
    first_occurrence,
    five_rings,
    hypergraph_triangles,
    is_free,
    link_profile,
    parse_configs,
    pattern_system,
    q4_from_system,
    q4_sigma,
    star_count_size,
    validate_q4,
)
from trisys.graphs import Tournament


def one_based(n, triples):
    return build_system(n, [[v - 1 for v in t] for t in triples])


CONFIG_D = one_based(5, [(1, 2, 3), (1, 3, 4), (2, 3, 5)])
CONFIG_C = one_based(4, [(1, 2, 4), (1, 3, 4), (2, 3, 4)])


# -- patterns and parsing --------------------------------------------------------


def test_patterns_match_templates():
    assert pattern_system(Config.A) == one_based(6, [(1, 2, 4), (1, 3, 5), (2, 3, 6)])
    assert pattern_system(Config.B) == one_based(5, [(1, 2, 5), (1, 3, 4), (2, 3, 4)])
    assert pattern_system(Config.C) == CONFIG_C
    assert pattern_system(Config.D) == CONFIG_D
    assert pattern_system(Config.APlus) == pattern_system(Config.A).add((0, 1, 2))
    assert pattern_system(Config.BPlus) == pattern_system(Config.B).add((0, 1, 2))


@pytest.mark.parametrize("spec, expected", [
    ("A,B", {Config.A, Config.B}),
    ("ABD", {Config.A, Config.B, Config.D}),
    ("A+B+", {Config.APlus, Config.BPlus}),
    ("A+,B", {Config.APlus, Config.B}),
    (["C", Config.D], {Config.C, Config.D}),
])
def test_parse_configs(spec, expected):
    assert parse_configs(spec) == expected


def test_parse_configs_rejects():
    with pytest.raises(ValueError):
        parse_configs("AE")


def test_config_label_order():
    assert config_label(parse_configs("D,B,A")) == "ABD"


# -- occurrences ---------------------------------------------------------------------


def test_single_a():
    occ = find_occurrences(one_based(6, [(1, 2, 4), (1, 3, 5), (2, 3, 6)]), Config.A)
    assert len(occ) == 1 and occ[0].config is Config.A


def test_gyarfas_triangle_free():
    F = gyarfas(8, 2)
    assert all(find_occurrences(F, c) == [] for c in BASIC)
    assert find_general_triangles(F) == []


def test_five_ring_has_five_b():
    assert count_occurrences(five_ring(), Config.B) == 5


def test_is_free_examples():
    for n in range(3, 12):
        assert is_free(turan_star(n), "ABC")
    cyclic = Tournament(3, [(0, 1), (1, 2), (2, 0)])
    F = tournament_construction(cyclic)
    assert is_free(F, "CD") and not is_free(F, "A")


def test_first_occurrence():
    assert first_occurrence(gyarfas(9, 2), "ABCD") is None
    occ = first_occurrence(CONFIG_D, "ABCD")
    assert occ is not None and occ.config is Config.D


@settings(max_examples=250)
@given(systems(max_n=7, max_triples=12))
def test_detectors_match_naive(F):
    for c in BASIC + EXTENDED:
        got = [occ.triples for occ in find_occurrences(F, c)]
        assert got == naive_occurrences(F, c)
        assert is_free(F, [c]) == (not got)


@given(system_and_perm(max_n=7, max_triples=12))
def test_occurrence_counts_relabeling_equivariant(args):
    F, perm = args
    G = F.relabel(perm)
    for c in BASIC + EXTENDED:
        assert count_occurrences(F, c) == count_occurrences(G, c)


def test_occurrences_in_complete_systems():
    # independent count through the naive detector
    K = complete_system(6)
    for c in BASIC:
        assert count_occurrences(K, c) == len(naive_occurrences(K, c))


# -- general triangles -------------------------------------------------------------


def test_general_triangle_examples():
    assert find_general_triangles(CONFIG_C)
    for c in BASIC:
        assert find_general_triangles(pattern_system(c))


@settings(max_examples=300)
@given(systems(max_n=6, max_triples=5))
def test_triangle_iff_configuration(F):
    assert bool(find_general_triangles(F)) == (not is_free(F, "ABCD"))


def test_mixed_size_triangle():
    # a 4-set, a triple and a pair cyclically sharing 0, 4, 5
    assert hypergraph_triangles([(0, 1, 2, 3), (0, 4, 6), (4, 3)])
    assert not hypergraph_triangles([(0, 1, 2, 3), (0, 4, 6), (5, 3)])


# -- contiguity and D-free characterizations ---------------------------------------


def test_contiguity_examples():
    assert len(contiguity_components(one_based(5, [(1, 2, 5), (3, 4, 5)]))) == 2
    assert [len(c) for c in contiguity_components(complete_system(4))] == [4]
    assert len(contiguity_components(CONFIG_D)) == 1


def test_classify_component_examples():
    assert classify_component(one_based(4, [(1, 2, 3), (1, 2, 4), (1, 3, 4)]).triples) == CLUSTER
    assert classify_component(one_based(5, [(1, 2, 3), (1, 2, 4), (1, 2, 5)]).triples) == ComponentClass("Crown", 3)
    assert classify_component(CONFIG_D.triples) == OTHER
    assert classify_component(cluster((0, 1, 2, 3)).triples) == CLUSTER
    assert classify_component(crown((0, 1), (2, 3, 4)).triples) == ComponentClass("Crown", 3)


def test_dfree_examples():
    K = complete_system(4)
    assert dfree_by_components(K) and dfree_by_links(K)
    assert not dfree_by_components(CONFIG_D) and not dfree_by_links(CONFIG_D)


@settings(max_examples=300)
@given(systems(max_n=7, max_triples=10))
def test_dfree_three_way(F):
    d = is_free(F, "D")
    assert dfree_by_components(F) == d
    assert dfree_by_links(F) == d
    if d:
        assert star_count_size(F) == len(F)
    else:
        with pytest.raises(ValueError):
            star_count_size(F)


def test_star_count_examples():
    assert star_count_size(complete_system(4)) == 4
    assert star_count_size(build_system(3, [(0, 1, 2)])) == 1
    F = gyarfas(10, 2)
    assert star_count_size(F) == 12 == len(F)


def test_link_profile_counts():
    prof = link_profile(complete_system(4), 0)
    assert (prof.triangles, prof.stars, prof.other) == (1, 0, 0)


# -- CD-free by own pairs --------------------------------------------------------------


def test_cd_own_pairs_examples():
    for n in range(4, 12):
        assert cd_free_by_own_pairs(transitive_ft(n))
    assert not cd_free_by_own_pairs(CONFIG_C)


@settings(max_examples=300)
@given(systems(max_n=7, max_triples=12))
def test_cd_free_iff_two_own_pairs(F):
    assert cd_free_by_own_pairs(F) == is_free(F, "CD")
    assert cd_free_by_own_pairs(F) == all(c >= 2 for c in own_pair_counts(F).values())


# -- five-rings and the AC partition --------------------------------------------------


@settings(max_examples=100)
@given(systems(max_n=7, max_triples=11))
def test_five_rings_match_naive(F):
    assert five_rings(F) == naive_five_rings(F)


def test_partition_of_five_ring():
    P = ac_pair_partition(five_ring())
    assert set(P.R) == set(five_ring().triples)
    assert len(P.G_R.edges) == 10
    assert not (P.G1.edges or P.G2.edges or P.G3.edges or P.G4.edges)


def test_partition_of_turan_star():
    # each triple x ∪ {a, b} has pair xa and xb shared; only ab is its own pair
    n = 7
    F = turan_star(n)
    counts = own_pair_counts(F)
    P = ac_pair_partition(F)
    assert set(P.F1) == {t for t, c in counts.items() if c == 1} == set(F.triples)
    assert not P.F2 and not P.R
    assert len(P.G1.edges) == len(F)
    # the own pairs form the bipartite link; T(G1) joins vertices inside each part
    assert all(0 not in e for e in P.G3.edges)
    assert all(0 in e or e in P.G1.edges or e in P.G3.edges for e in itertools.combinations(range(n), 2))


def test_partition_rejects_non_ac_free():
    with pytest.raises(ValueError):
        ac_pair_partition(CONFIG_C)


def _check_partition(F):
    P = ac_pair_partition(F)
    parts = P.parts()
    all_pairs = set(itertools.combinations(range(F.n), 2))
    union = set()
    for g in parts:
        assert not (union & g.edges)
        union |= g.edges
    assert union == all_pairs
    assert P.G4.edges == P.G40.edges | P.G41.edges | P.G42.edges
    assert len(P.G1.edges) == len(P.F1)
    assert len(P.G2.edges) == 2 * len(P.F2)
    ring_vertices = {v for t in P.R for v in t}
    for t in F.triples:
        for p in itertools.combinations(t, 2):
            assert p not in P.G3.edges
            if set(p) <= ring_vertices:
                assert p not in P.G40.edges
    counts = own_pair_counts(F)
    assert all(counts[t] == 1 for t in P.F1)
    assert all(counts[t] >= 2 for t in P.F2)


@settings(max_examples=150)
@given(st.integers(5, 9), st.randoms(use_true_random=False))
def test_partition_on_random_ac_free(n, rnd):
    order = list(itertools.combinations(range(n), 3))
    rnd.shuffle(order)
    F = greedy_free_system(order, n, "AC")
    _check_partition(F)


def test_partition_on_class_f_members():
    from trisys.constructions import class_F_members

    for n in range(5, 12):
        for _, F in class_F_members(n):
            _check_partition(F)


# -- Q4-families -------------------------------------------------------------------------


def test_q4_lattice():
    q = Q4Family.build(16, Q=lattice_q44_blocks())
    assert validate_q4(q) and q4_sigma(q) == 64 == 2 * (16 * 16 // 8)


def test_q4_small_examples():
    q = Q4Family.build(6, Q=[(0, 1, 2, 3)], T=[(0, 4, 5)])
    assert validate_q4(q) and q4_sigma(q) == Fraction(23, 2)
    assert not validate_q4(Q4Family.build(6, Q=[(0, 1, 2, 3), (0, 1, 2, 4)]))


def test_q4_rejects_triangle_and_range():
    assert not validate_q4(Q4Family.build(6, T=[(0, 1, 2), (2, 3, 4)], E=[(0, 4)]))
    assert not validate_q4(Q4Family.build(4, T=[(0, 1, 5)]))


def test_q4_from_lattice_system():
    from trisys.constructions import lattice_q44

    q = q4_from_system(lattice_q44())
    assert q.Q == frozenset(lattice_q44_blocks()) and not q.T
    assert validate_q4(q)
