import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nonoverlap.errors import CapacityError, ParameterError
from nonoverlap.sfree import (DEAD, AhoCorasick, LexAutomaton, PatternSet, SFreeAutomaton,
                              count_sfree, count_sfree_trie, is_sfree, iter_sfree,
                              sfree_lower_bound)
from nonoverlap.words import Word

from oracles import brute_sfree_count

ZZ = PatternSet.from_patterns(2, 2, [(0, 0)])


def test_is_sfree_examples():
    assert is_sfree(Word((0, 1, 1, 0), 2), ZZ)
    assert not is_sfree(Word((1, 0, 0, 1), 2), ZZ)
    zz8 = PatternSet.from_patterns(2, 8, [(0, 0)])
    assert is_sfree(Word((7,), 8), zz8)
    with pytest.raises(ParameterError):
        is_sfree(Word((0, 1), 3), ZZ)


def test_count_examples():
    assert brute_sfree_count(2, 2, 3, [(0, 0)]) == 5
    assert count_sfree(ZZ, 3) == 5
    assert count_sfree(ZZ, 0) == 1
    assert count_sfree(ZZ, 1) == 2
    with pytest.raises(ParameterError):
        count_sfree(ZZ, -1)


def test_lower_bound_examples():
    assert sfree_lower_bound(ZZ, 3) == 4
    assert count_sfree(ZZ, 3) == 5
    # {01, 10, 11}
    assert brute_sfree_count(2, 2, 2, [(0, 0)]) == 3
    assert sfree_lower_bound(ZZ, 2) == 3 == count_sfree(ZZ, 2)
    with pytest.raises(ParameterError):
        sfree_lower_bound(ZZ, 1)


def test_lower_bound_formula_at_maximal_s():
    p = PatternSet.lex_first(2, 4, 3, 9)
    assert sfree_lower_bound(p, 2) == 16 - 9


def test_pattern_set_invariants():
    with pytest.raises(ParameterError):
        PatternSet.from_patterns(2, 2, [])
    with pytest.raises(ParameterError):
        PatternSet.from_patterns(2, 2, [(0, 1)])  # I would be the whole alphabet
    with pytest.raises(ParameterError):
        PatternSet.from_patterns(2, 3, [(0, 1, 0)])
    with pytest.raises(ParameterError):
        PatternSet.from_patterns(2, 3, [(0, 1)], alphabet=[0])
    with pytest.raises(ParameterError):
        PatternSet.lex_first(2, 3, 2, 5)
    with pytest.raises(CapacityError):
        PatternSet.lex_first(10, 3, 2, 1000).patterns(cap=100)


def test_lex_first_patterns_and_membership():
    p = PatternSet.lex_first(2, 4, 3, 4)
    assert p.patterns() == [(0, 0), (0, 1), (0, 2), (1, 0)]
    assert (1, 0) in p and (1, 1) not in p and (0, 3) not in p


def test_trie_automaton_invariants():
    pats = [(0, 1, 0), (1, 1, 2), (0, 0, 0), (2, 1, 0)]
    p = PatternSet.from_patterns(3, 5, pats)
    a = SFreeAutomaton(p)
    assert len(a) <= 1 + len(pats) * 3
    for row in a.delta:
        assert set(row) == set(p.alphabet)
    assert a.reset_weight == 5 - p.ell
    # dead on completing 010
    s = a.delta[0][0]
    s = a.delta[s][1]
    assert a.delta[s][0] == DEAD


def test_aho_corasick_finds_overlapping_matches():
    ac = AhoCorasick([(0, 1, 0), (1, 0, 1)], range(3))
    assert ac.find_all([0, 1, 0, 1, 0, 2, 0, 1, 0]) == [0, 1, 2, 6]


def test_lex_automaton_is_small_for_huge_s():
    a = LexAutomaton(6, 1000, 700, 700 ** 6 - 12345)
    assert len(a) <= 6 * 6
    p = PatternSet.lex_first(6, 1000, 700, 700 ** 6 - 12345)
    assert count_sfree(p, 5) == 1000 ** 5
    assert count_sfree(p, 6) == 1000 ** 6 - p.size


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_lex_route_trie_route_and_brute_force_agree(q, k):
    for ell in range(1, q):
        for s in range(1, ell ** k + 1):
            p = PatternSet.lex_first(k, q, ell, s)
            pe = PatternSet.from_patterns(k, q, p.patterns(), alphabet=range(ell))
            for r in range(0, 7):
                expected = brute_sfree_count(q, k, r, p.patterns())
                assert count_sfree(p, r) == expected
                assert count_sfree_trie(pe, r) == expected


@given(st.integers(2, 4), st.integers(1, 3), st.data())
def test_random_explicit_sets_match_brute_force(q, k, data):
    ell = data.draw(st.integers(1, q - 1))
    pool = list(itertools.product(range(ell), repeat=k))
    pats = data.draw(st.lists(st.sampled_from(pool), min_size=1, unique=True))
    p = PatternSet.from_patterns(k, q, pats, alphabet=range(ell))
    r = data.draw(st.integers(0, 6))
    assert count_sfree(p, r) == brute_sfree_count(q, k, r, pats)
    assert len(list(iter_sfree(p, r))) == count_sfree(p, r)


@given(st.integers(2, 4), st.integers(1, 3), st.data())
def test_enlarging_s_never_increases_count(q, k, data):
    ell = data.draw(st.integers(1, q - 1))
    pool = list(itertools.product(range(ell), repeat=k))
    small = data.draw(st.lists(st.sampled_from(pool), min_size=1, unique=True))
    extra = data.draw(st.lists(st.sampled_from(pool), unique=True))
    a = PatternSet.from_patterns(k, q, small, alphabet=range(ell))
    b = PatternSet.from_patterns(k, q, set(small) | set(extra), alphabet=range(ell))
    r = data.draw(st.integers(0, 8))
    assert count_sfree(b, r) <= count_sfree(a, r)
    if r >= k:
        assert sfree_lower_bound(a, r) <= count_sfree(a, r)


def test_zero_run_claim_on_grid():
    # S = {0^k}, 2k <= n-2, r = n-k-2
    for q in range(2, 6):
        for n in range(4, 16):
            for k in range(1, (n - 2) // 2 + 1):
                p = PatternSet.lex_first(k, q, 1, 1)
                bound = q ** (n - k - 2) - (n - 2 * k - 1) * q ** (n - 2 * k - 2)
                assert count_sfree(p, n - k - 2) >= bound


def test_iter_sfree_is_sorted_and_free():
    p = PatternSet.from_patterns(2, 3, [(0, 1), (1, 1)])
    words = list(iter_sfree(p, 4))
    assert words == sorted(words)
    assert all(is_sfree(Word(w, 3), p) for w in words)
    assert len(words) == brute_sfree_count(3, 2, 4, [(0, 1), (1, 1)])
