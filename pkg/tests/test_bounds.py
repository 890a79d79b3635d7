import itertools
import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from grafen.bounds import (
    CSV_FIELDS,
    MERGE_SAVING,
    DomainError,
    InvalidPartitionError,
    NotATreeError,
    Star,
    StarPartition,
    arizmendi_juarez,
    bound_report,
    koolen_moulton,
    koolen_moulton_bipartite,
    mcclelland,
    merge_degree2_pairs,
    partition_energy_sum,
    star_partition,
    thm4_bound,
    tree_star_bound,
    tree_star_bound_weak,
)
from grafen.graph import double_star, edge_pair_stats, from_edge_list, is_tree, path, star
from grafen.random_models import ba_tree, erdos_renyi
from grafen.spectral import energy, energy_path


def _from_nx(t):
    return from_edge_list(t.number_of_nodes(), t.edges())


def test_closed_forms():
    assert mcclelland(6, 5) == pytest.approx(math.sqrt(60))
    # K-M 1 on the path P_3: 4/3 + sqrt(2 (4 - 16/9))
    assert koolen_moulton(3, 2) == pytest.approx(4 / 3 + math.sqrt(2 * (4 - 16 / 9)))
    assert koolen_moulton_bipartite(2, 1) == pytest.approx(2.0)
    assert arizmendi_juarez([1, 2, 1]) == pytest.approx(2 + math.sqrt(2))
    assert tree_star_bound([1, 2, 1]) == pytest.approx(2 * math.sqrt(2))
    assert tree_star_bound_weak([1, 2, 1]) == pytest.approx(3.0)


def test_domain_errors():
    with pytest.raises(DomainError):
        koolen_moulton(0, 0)
    with pytest.raises(DomainError):
        koolen_moulton_bipartite(1, 0)
    with pytest.raises(DomainError):
        koolen_moulton(3, 3 * 4)  # radicand negative
    with pytest.raises(DomainError):
        tree_star_bound([1, 1])
    with pytest.raises(NotATreeError):
        tree_star_bound([2, 2, 2])
    with pytest.raises(DomainError):
        thm4_bound([1, 2, 1], -1)
    with pytest.raises(DomainError):
        arizmendi_juarez([1, -1])


def test_thm4_counterexample_p4():
    # P_4 violates the merged bound: energy 2 sqrt 5 exceeds 2 + 2 sqrt 2 - saving / 3
    g = path(4)
    b = thm4_bound(g.degrees(), edge_pair_stats(g).e22)
    assert b == pytest.approx(2 + 2 * math.sqrt(2) - MERGE_SAVING / 3)
    assert energy(g) == pytest.approx(2 * math.sqrt(5))
    assert energy(g) > b


def _exhaustive_trees(max_n):
    for n in range(3, max_n + 1):
        for t in nx.nonisomorphic_trees(n):
            yield _from_nx(t)


def test_tree_bounds_exhaustive_small_trees():
    count = 0
    violators = []
    for g in _exhaustive_trees(12):
        count += 1
        e = energy(g)
        degs = g.degrees()
        assert e <= tree_star_bound(degs) + 1e-9
        assert e <= tree_star_bound_weak(degs) + 1e-9
        assert tree_star_bound(degs) <= tree_star_bound_weak(degs) + 1e-12
        assert e <= star_partition(g).energy_sum() + 1e-9
        if e > thm4_bound(degs, edge_pair_stats(g).e22) + 1e-9:
            violators.append(g)
    # unlabelled trees on 3..12 vertices (OEIS A000055)
    assert count == sum([1, 2, 3, 6, 11, 23, 47, 106, 235, 551])
    assert [v.n for v in violators] == [4]


def test_star_partition_structure():
    g = double_star(5, 3)
    sp = star_partition(g)
    assert sp.root == 0
    assert sorted(s.size for s in sp.stars) == [2, 5]
    assert sp.energy_sum() == pytest.approx(tree_star_bound(g.degrees()))
    sp1 = star_partition(g, root=1)
    assert sp1.energy_sum() == pytest.approx(2 * math.sqrt(3) + 2 * math.sqrt(4))
    with pytest.raises(NotATreeError):
        star_partition(from_edge_list(3, [(0, 1), (1, 2), (0, 2)]))
    with pytest.raises(ValueError):
        star_partition(g, root=99)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=3, max_value=200), st.integers(min_value=0, max_value=2**32))
def test_default_root_partition_equals_star_bound(n, seed):
    g = ba_tree(n, 1.0, seed)
    sp = star_partition(g)
    assert partition_energy_sum(g, sp) == pytest.approx(tree_star_bound(g.degrees()))


def _brute_force_best_merge(g, sp):
    """Largest number of pairwise-disjoint mergeable pairs, by enumeration."""
    by_center = {s.center: s for s in sp.stars}
    parent = {x: s.center for s in sp.stars for x in s.leaves}
    deg = g.degrees()
    cands = []
    for a, b in g.edges():
        if deg[a] == 2 and deg[b] == 2:
            u1, u2 = (a, b) if parent.get(b) == a else (b, a)
            if parent.get(u2) != u1:
                continue
            if u1 in by_center and u2 in by_center and by_center[u1].leaves == (u2,):
                cands.append((u1, u2))
    best = 0
    for k in range(len(cands), 0, -1):
        for combo in itertools.combinations(cands, k):
            verts = [v for pair in combo for v in pair]
            if len(set(verts)) == len(verts):
                return k
    return best


@pytest.mark.parametrize("n", range(3, 13))
def test_merge_on_paths_matches_enumeration(n):
    g = path(n)
    for root in range(n):
        sp = star_partition(g, root=root)
        merged = merge_degree2_pairs(g, sp)
        total = partition_energy_sum(g, merged)
        assert total == pytest.approx(sp.energy_sum() - merged.merges * MERGE_SAVING)
        assert total >= energy_path(n) - 1e-9
        # along a chain the greedy scan is optimal
        assert merged.merges == _brute_force_best_merge(g, sp)


def test_merge_invariant_fails_only_for_short_paths():
    # the merged sum can exceed thm4 when the maximum degree is 2
    bad = []
    for n in range(3, 13):
        g = path(n)
        merged = merge_degree2_pairs(g, star_partition(g))
        if merged.energy_sum() > thm4_bound(g.degrees(), edge_pair_stats(g).e22) + 1e-9:
            bad.append(n)
    assert bad and set(bad) <= {4, 5}


def test_merge_invariant_when_max_degree_at_least_three():
    for g in _exhaustive_trees(11):
        if max(g.degrees()) < 3:
            continue
        merged = merge_degree2_pairs(g, star_partition(g))
        e22 = edge_pair_stats(g).e22
        assert merged.energy_sum() <= thm4_bound(g.degrees(), e22) + 1e-9
        assert partition_energy_sum(g, merged) >= energy(g) - 1e-9


def test_merge_rejects_non_rooted_partition():
    g = path(4)
    sp = StarPartition((Star(1, (0,)), Star(1, (2,)), Star(2, (3,))))
    with pytest.raises(InvalidPartitionError):
        merge_degree2_pairs(g, sp)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=3, max_value=60), st.integers(min_value=0, max_value=2**32))
def test_ky_fan_random_partitions(n, seed):
    # any edge-disjoint cover bounds the energy from above
    g = erdos_renyi(n, 0.25, seed)
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, 5))
    labels = rng.integers(0, k, size=g.m)
    parts = [[e for e, lab in zip(g.edges(), labels) if lab == j] for j in range(k)]
    parts = [p for p in parts if p]
    assert partition_energy_sum(g, parts) >= energy(g) - 1e-9


def test_partition_validation_messages():
    g = path(4)
    with pytest.raises(InvalidPartitionError, match="not a subgraph"):
        partition_energy_sum(g, [[(0, 1), (1, 2), (2, 3)], [(0, 3)]])
    with pytest.raises(InvalidPartitionError, match="edge-disjoint"):
        partition_energy_sum(g, [[(0, 1), (1, 2)], [(1, 2), (2, 3)]])
    with pytest.raises(InvalidPartitionError, match="edge-covering"):
        partition_energy_sum(g, [[(0, 1), (1, 2)]])
    parts = [from_edge_list(4, [(0, 1), (1, 2)]), from_edge_list(4, [(2, 3)])]
    assert partition_energy_sum(g, parts) == pytest.approx(2 * math.sqrt(2) + 2)


def test_bound_report_on_tree():
    g = double_star(5, 3)
    rep = bound_report(g)
    assert rep.absent == {}
    assert set(rep.bounds()) == {"mcclelland", "km1", "km2", "aj", "thm31", "thm31_weak", "thm4"}
    assert all(rep.energy_exact <= v + 1e-9 for v in rep.bounds().values())
    assert list(rep.row()) == list(CSV_FIELDS)


def test_bound_report_non_bipartite_non_tree():
    k4 = from_edge_list(4, list(itertools.combinations(range(4), 2)))
    rep = bound_report(k4)
    assert rep.km2 is None and rep.absent["km2"] == "not-bipartite"
    assert rep.thm31 is None and rep.absent["thm31"] == "not-tree"
    assert rep.energy_exact <= rep.km1 + 1e-9
    even_cycle = from_edge_list(6, [(i, (i + 1) % 6) for i in range(6)])
    rep = bound_report(even_cycle)
    assert rep.km2 is not None and rep.absent.get("thm4") == "not-tree"


def test_star_is_tight_for_star_bound():
    for n in range(3, 20):
        g = star(n)
        assert energy(g) == pytest.approx(tree_star_bound(g.degrees()))
