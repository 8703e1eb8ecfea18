"""Word codec, relation classifiers, order isomorphism, pattern containment."""

import itertools

import pytest
from hypothesis import given, strategies as st

from matchwork import (
    Edge,
    Matching,
    Relation,
    TripleMatching,
    TripleRelation,
    classify_pair,
    classify_triple_pair,
    contains_pattern,
    order_isomorphic,
    parse_word,
    to_word,
)
from matchwork.core import matching_to_json_str
from matchwork.errors import EmptyInput, LetterCountError, SharedVertex

import oracles


# --- strategies ------------------------------------------------------------

@st.composite
def matchings(draw, max_n=8):
    n = draw(st.integers(min_value=1, max_value=max_n))
    perm = draw(st.permutations(list(range(1, 2 * n + 1))))
    return Matching.from_pairs(
        (perm[2 * i], perm[2 * i + 1]) for i in range(n)
    )


# --- parsing ----------------------------------------------------------------

def test_parse_word_compact():
    m = parse_word("ABABCC")
    assert m == Matching.from_pairs([(1, 3), (2, 4), (5, 6)])


def test_parse_word_trivial_line():
    assert parse_word("AABB") == Matching.from_pairs([(1, 2), (3, 4)])


def test_parse_word_count_error():
    with pytest.raises(LetterCountError) as err:
        parse_word("ABA")
    assert err.value.token == "B"
    assert err.value.position == 2


def test_parse_word_empty():
    with pytest.raises(EmptyInput):
        parse_word("   ")


def test_parse_word_extended_tokens():
    m = parse_word("A1 B1 A1 B1")
    assert m == Matching.from_pairs([(1, 3), (2, 4)])


def test_parse_word_triples():
    tm = parse_word("ABABAB", arity=3)
    assert tm == TripleMatching.from_triples([(1, 3, 5), (2, 4, 6)])


def test_to_word_figure_example():
    m = Matching.from_pairs([(1, 5), (2, 3), (4, 6)])
    assert to_word(m) == "ABBCAC"


def test_to_word_single_edge():
    assert to_word(Matching.from_pairs([(1, 2)])) == "AA"


def test_to_word_large_uses_extended_form():
    m = Matching.from_pairs([(2 * i - 1, 2 * i) for i in range(1, 31)])
    word = to_word(m)
    assert " " in word
    assert parse_word(word) == m


@given(matchings())
def test_roundtrip_parse_to_word(m):
    assert parse_word(to_word(m)) == m


def test_to_word_of_sub_matching_uses_ranks():
    m = Matching.from_pairs([(10, 30), (20, 40)])
    assert to_word(m) == "ABAB"


# --- pair classification -----------------------------------------------------

def test_classify_pair_three_relations():
    assert classify_pair((1, 2), (3, 4)) is Relation.ALIGNMENT
    assert classify_pair((1, 4), (2, 3)) is Relation.NESTING
    assert classify_pair((1, 3), (2, 4)) is Relation.CROSSING


def test_classify_pair_order_insensitive():
    assert classify_pair((3, 4), (1, 2)) is Relation.ALIGNMENT
    assert classify_pair((2, 3), (1, 4)) is Relation.NESTING


def test_classify_pair_shared_vertex():
    with pytest.raises(SharedVertex):
        classify_pair((1, 3), (3, 5))


def test_pair_totality():
    # every disjoint pair over [4] realizes exactly one of the three relations
    for quad in itertools.permutations(range(1, 5)):
        e = tuple(sorted(quad[:2]))
        f = tuple(sorted(quad[2:]))
        assert classify_pair(e, f) in Relation


# --- triple classification ---------------------------------------------------

def test_classify_triple_examples():
    assert classify_triple_pair((1, 2, 4), (3, 5, 6)) is TripleRelation.LL_STAR
    assert classify_triple_pair((1, 2, 3), (4, 5, 6)) is TripleRelation.LL
    assert classify_triple_pair((1, 3, 5), (2, 4, 6)) is TripleRelation.WW


def test_triple_totality_and_words():
    # the 10 ways of splitting [6] into two triples (the first containing 1)
    # hit all 10 relations exactly once
    seen = {}
    for rest in itertools.combinations(range(2, 7), 2):
        e = (1,) + rest
        f = tuple(v for v in range(1, 7) if v not in e)
        rel = classify_triple_pair(e, f)
        word = oracles.triple_word(e, f)
        assert rel.word == word
        seen[rel] = (e, f)
    assert len(seen) == 10
    assert set(seen) == set(TripleRelation)


def test_triple_relation_metadata():
    assert TripleRelation.LL_STAR.starred
    assert not TripleRelation.LL_STAR.collectable
    collectable = [r for r in TripleRelation if r.collectable]
    assert len(collectable) == 9
    assert TripleRelation.SW.index_pair == ("s", "w")
    assert TripleRelation.from_index_pair("l", "l", starred=True) is TripleRelation.LL_STAR
    assert TripleRelation.from_word("ABABBA") is TripleRelation.WS


def test_classify_triple_shared_vertex():
    with pytest.raises(SharedVertex):
        classify_triple_pair((1, 2, 3), (3, 4, 5))


# --- order isomorphism --------------------------------------------------------

def test_order_isomorphic_rank_normalization():
    a = Matching.from_pairs([(1, 3), (2, 4)])
    b = Matching.from_pairs([(10, 30), (20, 40)])
    assert order_isomorphic(a, b)


def test_order_isomorphic_line_vs_stack():
    assert not order_isomorphic(parse_word("AABB"), parse_word("ABBA"))


@given(matchings(max_n=6), st.integers(min_value=1, max_value=50))
def test_order_isomorphic_monotone_relabeling(m, gap):
    # any strictly increasing relabeling preserves the order type
    relabel = {v: v * gap + i for i, v in enumerate(m.vertices())}
    image = Matching.from_pairs(
        (relabel[e.left], relabel[e.right]) for e in m.edges
    )
    assert order_isomorphic(m, image)


@given(matchings(max_n=5), matchings(max_n=5), matchings(max_n=5))
def test_order_isomorphic_equivalence(a, b, c):
    assert order_isomorphic(a, a)
    assert order_isomorphic(a, b) == order_isomorphic(b, a)
    if order_isomorphic(a, b) and order_isomorphic(b, c):
        assert order_isomorphic(a, c)


# --- containment ---------------------------------------------------------------

def test_contains_pattern_lexicographically_first():
    host = parse_word("ABABCC")
    found = contains_pattern(host, parse_word("AABB"))
    # edges 0 and 2 ({1,3} and {5,6}) are the first aligned pair by index
    assert found == (0, 2)


def test_contains_pattern_absent():
    assert contains_pattern(parse_word("AABB"), parse_word("ABAB")) is None


@given(matchings(max_n=6))
def test_contains_pattern_identity(m):
    assert contains_pattern(m, m) == tuple(range(m.n))


@given(matchings(max_n=7), matchings(max_n=3))
def test_contains_pattern_matches_brute_force(host, pattern):
    got = contains_pattern(host, pattern)
    want = oracles.brute_contains(
        [tuple(e) for e in host.edges], [tuple(e) for e in pattern.edges]
    )
    assert got == want


# --- type invariants -------------------------------------------------------------

def test_matching_rejects_shared_vertices():
    with pytest.raises(ValueError):
        Matching.from_pairs([(1, 2), (2, 3)])


def test_matching_rejects_reversed_edge():
    with pytest.raises(ValueError):
        Matching((Edge(3, 1),))


def test_sub_matching_keeps_labels():
    m = parse_word("ABABCC")
    sub = m.restrict([1, 2])
    assert sub.edges == (Edge(2, 4), Edge(5, 6))
    assert not sub.is_full


def test_json_roundtrip():
    m = parse_word("ABBCAC")
    assert Matching.from_json(m.to_json()) == m
    assert matching_to_json_str(m) == '{"edges":[[1,5],[2,3],[4,6]],"n":3}'


def test_triple_json_roundtrip():
    tm = parse_word("ABABAB", arity=3)
    assert TripleMatching.from_json(tm.to_json()) == tm
