"""Canonical generators, the stacked-waves fixture, permutational matchings,
and the 16-triple optimality construction."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from matchwork import (
    Permutation,
    TripleRelation,
    classify_triple_pair,
    from_permutation,
    largest_homogeneous_triples,
    largest_line,
    largest_semi_line,
    largest_stack,
    largest_wave,
    make_line,
    make_stack,
    make_wave,
    parse_word,
    stacked_waves,
    to_permutation,
    to_word,
    triple_optimality_16,
    triple_relation_census,
)
from matchwork.errors import NotAPermutation, NotPermutational

import oracles


def test_make_canonical_words():
    assert to_word(make_line(2)) == "AABB"
    assert to_word(make_stack(3)) == "ABCCBA"
    assert to_word(make_wave(3)) == "ABCABC"


def test_make_rejects_nonpositive():
    for make in (make_line, make_stack, make_wave):
        with pytest.raises(ValueError):
            make(0)


def test_stacked_waves_paper_parameters():
    m = stacked_waves(5, 3, 4)
    assert m.n == 60
    assert m.is_full
    assert largest_line(m).size == 5
    assert largest_stack(m).size == 3
    assert largest_wave(m).size == 4


def test_stacked_waves_degenerate():
    assert stacked_waves(1, 1, 1).n == 1
    m = stacked_waves(2, 2, 2)
    assert m.n == 8
    assert (largest_line(m).size, largest_stack(m).size, largest_wave(m).size) == (2, 2, 2)


@pytest.mark.parametrize("ell,s,w", [(1, 2, 3), (3, 1, 2), (2, 3, 1), (4, 2, 3)])
def test_stacked_waves_exact_maxima(ell, s, w):
    m = stacked_waves(ell, s, w)
    assert m.n == ell * s * w
    assert largest_line(m).size == ell
    assert largest_stack(m).size == s
    assert largest_wave(m).size == w


# --- permutational matchings ----------------------------------------------------

def test_from_permutation_identity_and_reversal():
    assert to_word(from_permutation([1, 2])) == "ABAB"
    assert to_word(from_permutation([2, 1])) == "ABBA"


def test_to_permutation_inverts():
    assert to_permutation(parse_word("ABAB")).values == (1, 2)
    assert to_permutation(parse_word("ABBA")).values == (2, 1)


def test_from_permutation_rejects_bad_input():
    with pytest.raises(NotAPermutation):
        from_permutation([1, 3])
    with pytest.raises(ValueError):
        Permutation.of([2, 2])


def test_to_permutation_rejects_non_permutational():
    with pytest.raises(NotPermutational):
        to_permutation(parse_word("AABB"))


@given(st.permutations(list(range(1, 8))))
@settings(max_examples=60)
def test_permutation_roundtrip(values):
    pi = Permutation.of(values)
    assert to_permutation(from_permutation(pi)) == pi


@given(st.permutations(list(range(1, 9))))
@settings(max_examples=60)
def test_runs_become_waves_and_stacks(values):
    # increasing runs of the permutation are waves, decreasing runs stacks
    m = from_permutation(list(values))
    assert largest_wave(m).size == oracles.lis_length(values)
    assert largest_stack(m).size == oracles.lis_length(values, decreasing=True)


# --- the 16-triple construction ---------------------------------------------------

def test_triple_optimality_census():
    t16 = triple_optimality_16()
    assert t16.n == 16
    assert t16.is_full
    census = triple_relation_census(t16)
    assert census[TripleRelation.SS] == 8
    assert census[TripleRelation.SW] == 16
    assert census[TripleRelation.WS] == 32
    assert census[TripleRelation.WW] == 64
    assert sum(census.values()) == 120


def test_triple_optimality_no_homogeneous_triple():
    t16 = triple_optimality_16()
    for a, b, c in itertools.combinations(range(16), 3):
        r1 = classify_triple_pair(t16.triples[a], t16.triples[b])
        r2 = classify_triple_pair(t16.triples[a], t16.triples[c])
        r3 = classify_triple_pair(t16.triples[b], t16.triples[c])
        assert not (r1 is r2 is r3)


def test_triple_optimality_maxima_capped():
    t16 = triple_optimality_16()
    for rel in TripleRelation:
        assert largest_homogeneous_triples(t16, rel).size <= 2
    assert largest_semi_line(t16).size <= 2
