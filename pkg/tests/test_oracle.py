"""Brute-force oracles: explicit graphs, clique search, preimage census."""

from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from bloomclique import (
    GuardExceeded,
    RandomString,
    count_preimages,
    derive_params,
    find_cliques,
    generate,
    materialize,
    measure_density,
    preimages,
    required_bits,
)
from bloomclique.oracle import (
    ExplicitGraph,
    pair_codes,
    pair_index_table,
    planted_gnp,
    spurious_cliques,
)


def rs_for(n, variant, kind, fill=0x5C):
    ps = derive_params(n)
    nbits = required_bits(ps, variant, kind)
    return RandomString.from_bytes(bytes([fill]) * ((nbits + 7) // 8), nbits)


def test_pair_codes_complete_and_sorted():
    codes = pair_codes(16)
    assert codes.shape == (120,)
    assert np.all(np.diff(codes.astype(np.int64)) > 0)
    from bloomclique import encode_edge

    want = sorted(encode_edge(u, v, 16) for u, v in combinations(range(1, 17), 2))
    assert codes.tolist() == want


def test_explicit_graph_edges():
    g = ExplicitGraph.empty(5).with_edges([(1, 2), (2, 3)])
    assert g.has_edge(1, 2) and g.has_edge(2, 1)
    assert not g.has_edge(1, 3)
    assert g.edge_count() == 2
    assert g.edge_density() == Fraction(2, 10)


def test_find_cliques_triangle():
    g = ExplicitGraph.empty(5).with_edges(
        [(1, 2), (1, 3), (2, 3), (3, 4)]
    )
    assert find_cliques(g, 3) == [(1, 2, 3)]
    assert find_cliques(g, 2) == [(1, 2), (1, 3), (2, 3), (3, 4)]
    assert find_cliques(g, 4) == []


def test_find_cliques_prune_matches_exhaustive():
    rng = np.random.default_rng(19)
    adj = np.triu(rng.random((12, 12)) < 0.5, k=1)
    g = ExplicitGraph(12, adj | adj.T)
    for size in (3, 4, 5):
        assert find_cliques(g, size) == find_cliques(g, size, prune=False)


def test_find_cliques_guard():
    g = ExplicitGraph.empty(40)
    with pytest.raises(GuardExceeded):
        find_cliques(g, 10, prune=False, guard_comb=1000)


def test_materialize_contains_clique():
    gen = generate(rs_for(16, "multi", "cw"), 16, "multi", "cw")
    g = materialize(gen.instance)
    for u, v in combinations(gen.seed.vertices, 2):
        assert g.has_edge(u, v)


def test_materialize_guard():
    gen = generate(rs_for(16, "basic", "cw"), 16, "basic", "cw")
    with pytest.raises(GuardExceeded):
        materialize(gen.instance, guard_n=8)


def test_materialized_density_matches_measure():
    gen = generate(rs_for(16, "basic", "cw"), 16, "basic", "cw")
    g = materialize(gen.instance)
    assert g.edge_density() == measure_density(gen.instance, "exact")


def test_measure_density_sampled_close_to_exact():
    gen = generate(rs_for(16, "basic", "cw"), 16, "basic", "cw")
    exact = float(measure_density(gen.instance, "exact"))
    sampled = measure_density(gen.instance, "sampled", count=20000, seed=9)
    assert abs(sampled - exact) < 0.02


def test_preimages_contains_seed_every_variant():
    for variant in ("basic", "multi", "derived", "masked"):
        gen = generate(rs_for(16, variant, "cw"), 16, variant, "cw")
        pre = preimages(gen.instance)
        assert gen.seed.vertices in pre
        assert pre == sorted(pre)


def test_census_agrees_with_plain_path():
    # the vectorized census (basic/multi) must equal a subset-by-subset
    # rebuild; run the same instance through both
    from bloomclique.owf import rebuild_arrays

    gen = generate(rs_for(16, "multi", "tp"), 16, "multi", "tp")
    fast = preimages(gen.instance)
    slow = [
        vs
        for vs in combinations(range(1, 17), 4)
        if rebuild_arrays(gen.instance, vs) == gen.instance.arrays
    ]
    assert fast == slow


def test_preimage_guard():
    gen = generate(rs_for(256, "basic", "cw"), 256, "basic", "cw")
    with pytest.raises(GuardExceeded):
        preimages(gen.instance, guard_comb=10**5)


def test_count_preimages_positive():
    gen = generate(rs_for(16, "basic", "cw"), 16, "basic", "cw")
    assert count_preimages(gen.instance) >= 1


def test_planted_gnp_plants_clique():
    rng = np.random.default_rng(23)
    g, planted = planted_gnp(16, 4, 0.125, rng)
    assert len(planted) == 4
    for u, v in combinations(planted, 2):
        assert g.has_edge(u, v)
    assert not np.any(np.diag(g.adj))
    assert np.array_equal(g.adj, g.adj.T)


def test_planted_gnp_alpha_zero():
    rng = np.random.default_rng(29)
    g, planted = planted_gnp(16, 4, 0.0, rng)
    assert g.edge_count() == 6
    assert find_cliques(g, 4) == [planted]
    assert spurious_cliques(g, 4, planted) == 0


def test_spurious_cliques_counts_extras():
    g = ExplicitGraph.empty(6).with_edges(
        [(u, v) for u, v in combinations((1, 2, 3, 4), 2)]
        + [(u, v) for u, v in combinations((3, 4, 5, 6), 2)]
    )
    assert spurious_cliques(g, 4, (1, 2, 3, 4)) == 1


def test_pair_index_table_round_trip():
    codes, lut = pair_index_table(16)
    u0 = (codes % 16).astype(np.int64)
    v0 = (codes // 16).astype(np.int64)
    assert np.all(lut[u0, v0] == np.arange(codes.shape[0]))
    assert lut[5, 3] == -1  # unordered direction stays unset
