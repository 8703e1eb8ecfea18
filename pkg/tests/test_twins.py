"""Twin verification, the exhaustive oracle, block and split constructions."""

import pytest

from matchwork import (
    BlockTwinParams,
    Matching,
    Permutation,
    TwinSet,
    auxiliary_graph,
    block_twins,
    default_block_size,
    exact_twins,
    from_permutation,
    make_line,
    make_wave,
    parse_word,
    perm_twins_exhaustive,
    perm_twins_greedy,
    sample_uniform,
    split_twins,
    verify_twins,
)
from matchwork.twins import PermutationTwins, default_perm_finder
from matchwork.errors import IndexOutOfRange, InvalidParity, TooLarge

import oracles


FIGURE_HOST = parse_word("AABCDDEBCFGHIHEGFI")


def test_verify_figure_twins():
    # edges B,D / E,H / F,G form three nested pairs, pairwise isomorphic
    ts = TwinSet(3, ((1, 3), (4, 7), (5, 6)))
    assert verify_twins(FIGURE_HOST, ts)
    assert ts.size == 2


def test_verify_rejects_shared_edges():
    ts = TwinSet(2, ((0, 1), (1, 2)))
    assert not verify_twins(FIGURE_HOST, ts)


def test_verify_empty_twins():
    assert verify_twins(FIGURE_HOST, TwinSet.empty(3))


def test_verify_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        verify_twins(parse_word("AABB"), TwinSet(2, ((0,), (5,))))


def test_twinset_shape_validation():
    with pytest.raises(ValueError):
        TwinSet(2, ((0, 1), (2,)))
    with pytest.raises(ValueError):
        TwinSet(1, ((0,),))


# --- exhaustive oracle -----------------------------------------------------------

def test_exact_twins_line():
    ts = exact_twins(make_line(4), 2)
    assert ts.size == 2
    assert verify_twins(make_line(4), ts)


def test_exact_twins_single_crossing():
    assert exact_twins(parse_word("ABAB"), 2).size == 1


def test_exact_twins_guard():
    with pytest.raises(TooLarge):
        exact_twins(make_line(9), 2)
    with pytest.raises(TooLarge):
        exact_twins(make_line(7), 3)


def test_exact_twins_matches_independent_brute_force():
    for i in range(50):
        host = sample_uniform(6, seed=600 + i)
        got = exact_twins(host, 2)
        assert verify_twins(host, got)
        want = oracles.brute_twins_size([tuple(e) for e in host.edges], 2)
        assert got.size == want


def test_exact_twins_r3():
    host = make_line(6)
    ts = exact_twins(host, 3)
    assert ts.size == 2
    assert verify_twins(host, ts)


# --- block construction ------------------------------------------------------------

def test_default_block_size_formula():
    # r = 2: round(2^(1/3) * (2n)^(1/3)) = round((4n)^(1/3))
    assert default_block_size(8192, 2) == 32
    assert default_block_size(2, 2) == 2


def test_auxiliary_graph_wave():
    g = auxiliary_graph(make_wave(4), BlockTwinParams(r=2, block_size=4))
    assert g.n_blocks == 2
    assert g.counts == {(0, 1): 4}
    assert g.edges == [(0, 1)]  # 4 >= r


def test_auxiliary_graph_single_block():
    g = auxiliary_graph(make_wave(4), BlockTwinParams(r=2, block_size=8))
    assert g.n_blocks == 1
    assert g.counts == {}


def test_auxiliary_graph_conservation():
    host = sample_uniform(100, 17)
    p = BlockTwinParams(r=2, block_size=16)
    g = auxiliary_graph(host, p)
    cross = sum(g.counts.values())
    a, nb = g.block_size, g.n_blocks
    within = sum(
        1 for e in host.edges
        if (e.left - 1) // a == (e.right - 1) // a and (e.right - 1) // a < nb
    )
    leftover = sum(1 for e in host.edges if (e.right - 1) // a >= nb)
    assert cross + within + leftover == host.n


def test_block_twins_two_blocks():
    host = make_wave(4)
    ts = block_twins(host, BlockTwinParams(r=2, block_size=4))
    assert ts.size == 1
    assert verify_twins(host, ts)


def test_block_twins_trivial_when_single_block():
    host = make_wave(4)
    ts = block_twins(host, BlockTwinParams(r=2, block_size=8))
    assert ts.size == 0


def test_block_twins_always_verify():
    for i in range(100):
        host = sample_uniform(256, seed=7000 + i)
        ts = block_twins(host, BlockTwinParams(r=2))
        assert verify_twins(host, ts)


def test_block_twins_r3():
    host = sample_uniform(2048, 12)
    ts = block_twins(host, BlockTwinParams(r=3))
    assert verify_twins(host, ts)
    assert ts.r == 3


def test_block_twins_exact_strategy_at_least_greedy():
    for i in range(10):
        host = sample_uniform(512, seed=8100 + i)
        greedy = block_twins(host, BlockTwinParams(r=2, strategy="greedy"))
        exact = block_twins(host, BlockTwinParams(r=2, strategy="exact"))
        assert exact.size >= greedy.size
        assert verify_twins(host, exact)


def test_block_twins_bounded_by_oracle():
    for i in range(20):
        host = sample_uniform(6, seed=9200 + i)
        bt = block_twins(host, BlockTwinParams(r=2))
        assert bt.size <= exact_twins(host, 2).size


# --- permutation twins ----------------------------------------------------------------

def test_perm_twins_example():
    pt = perm_twins_exhaustive((6, 1, 4, 7, 3, 9, 8, 2, 5), 2)
    assert pt.length >= 3


def test_perm_twins_identity_and_tiny():
    assert perm_twins_exhaustive((1, 2, 3, 4), 2).length == 2
    assert perm_twins_exhaustive((1,), 2).length == 0


def test_perm_twins_guard():
    with pytest.raises(TooLarge):
        perm_twins_exhaustive(tuple(range(1, 12)), 2)


def test_perm_twins_results_are_similar_and_disjoint():
    for seed_vals in [(3, 1, 4, 2), (5, 2, 6, 1, 4, 3), (2, 4, 6, 8, 7, 5, 3, 1)]:
        pt = perm_twins_exhaustive(seed_vals, 2)
        a, b = pt.subs
        assert not set(a) & set(b)
        sig_a = oracles.normal_form([(i + 1, len(seed_vals) + 1 + seed_vals[i]) for i in a])
        sig_b = oracles.normal_form([(i + 1, len(seed_vals) + 1 + seed_vals[i]) for i in b])
        # same relative pattern once positions are renumbered
        pat_a = tuple(sorted(seed_vals[i] for i in a).index(seed_vals[i]) for i in a)
        pat_b = tuple(sorted(seed_vals[i] for i in b).index(seed_vals[i]) for i in b)
        assert pat_a == pat_b


def test_perm_twins_greedy_monotone_split():
    pt = perm_twins_greedy(tuple(range(1, 13)), 2)
    assert pt.length == 6
    pt3 = perm_twins_greedy(tuple(range(12, 0, -1)), 3)
    assert pt3.length == 4


def test_default_perm_finder_dispatch():
    small = Permutation.of((2, 1, 3))
    assert default_perm_finder(small, 2).length == perm_twins_exhaustive(small, 2).length
    big = Permutation.of(tuple(range(1, 30)))
    assert default_perm_finder(big, 2).length == 14


# --- split construction ------------------------------------------------------------------

def test_split_twins_permutational_host():
    # the whole host crosses the middle, so the permutation finder decides
    pi = (2, 4, 1, 3, 6, 5)
    host = from_permutation(pi)
    ts = split_twins(host, 2, m=6)
    want = perm_twins_exhaustive(pi, 2)
    assert ts.size == want.length
    assert verify_twins(host, ts)


def test_split_twins_disjoint_halves():
    #两 halves with no crossing edge: recursive twins concatenate
    left = [(1, 4), (2, 3)]
    right = [(5, 8), (6, 7)]
    host = Matching.from_pairs(left + right)
    ts = split_twins(host, 2, m=4)
    assert ts.size == 2
    assert verify_twins(host, ts)


def test_split_twins_parity_guard():
    with pytest.raises(InvalidParity):
        split_twins(make_line(5), 2, m=2)


def test_split_twins_random_hosts_verify():
    for i in range(40):
        host = sample_uniform(64, seed=10_000 + i)
        ts = split_twins(host, 2, m=8)
        assert verify_twins(host, ts)


def test_split_twins_bounded_by_oracle():
    for i in range(20):
        host = sample_uniform(6, seed=11_000 + i)
        st_ = split_twins(host, 2, m=2)
        assert st_.size <= exact_twins(host, 2).size


def test_split_twins_custom_finder():
    calls = []

    def finder(pi, r):
        calls.append(tuple(pi))
        return PermutationTwins(r, ((0,), (1,)))

    host = from_permutation((1, 2, 3, 4))
    ts = split_twins(host, 2, m=4, perm_finder=finder)
    assert calls == [(1, 2, 3, 4)]
    assert ts.size == 1
    assert verify_twins(host, ts)


def test_permutational_equivalence_smoke():
    # exact matching twins equal exact permutation twins on permutational hosts
    for pi in [(1, 3, 2, 4), (4, 3, 2, 1), (2, 4, 1, 3), (3, 1, 4, 2, 6, 5)]:
        host = from_permutation(pi)
        assert exact_twins(host, 2).size == perm_twins_exhaustive(pi, 2).length
