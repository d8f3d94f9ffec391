from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from oracles import braid_equal
from rp2b.artin import (
    GarsideNF,
    PermutationBraid,
    artin_equal,
    b_generator,
    b_generator_in,
    left_normal_form,
)
from rp2b.words import Letter, Word, WordError, invert, multiply, parse_word, permutation_of, product


def sigma_words(m, max_size=10):
    return st.lists(st.tuples(st.integers(1, m - 1), st.sampled_from((1, -1))), max_size=max_size).map(
        lambda xs: Word(m, tuple(Letter("s", i, e) for i, e in xs))
    )


def test_braid_relation():
    assert artin_equal(parse_word("s1 s2 s1", 3), parse_word("s2 s1 s2", 3))


def test_far_commutation():
    assert artin_equal(parse_word("s1 s3", 4), parse_word("s3 s1", 4))


def test_distinct_braids():
    assert not artin_equal(parse_word("s1 s2", 3), parse_word("s2 s1", 3))


def test_full_twist_is_not_trivial_in_artin_group():
    # (s1 s2)^3 has infinite order in B_3
    w = parse_word("s1 s2 s1 s2 s1 s2", 3)
    nf = left_normal_form(w)
    assert nf.halftwist_power == 2 and nf.factors == ()
    assert not artin_equal(w, Word(3))


def test_inverse_letters():
    nf = left_normal_form(parse_word("s1^-1", 2))
    assert nf.halftwist_power == -1 and nf.factors == ()


def test_rho_letter_rejected():
    with pytest.raises(WordError):
        left_normal_form(parse_word("s1 r1", 2))


def test_index_out_of_range():
    with pytest.raises(WordError):
        left_normal_form(parse_word("s3", 4), m=3)


def test_nf_word_roundtrip():
    w = parse_word("s1^-1 s2 s1^-2 s2^3 s3", 4)
    nf = left_normal_form(w)
    assert left_normal_form(nf.word()) == nf


def test_nf_rejects_unweighted():
    a = PermutationBraid((1, 0, 2))   # s1
    b = PermutationBraid((0, 2, 1))   # s2 starts b but a = s1 does not finish with s2
    with pytest.raises(ValueError):
        GarsideNF(3, 0, (a, b))


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 5).flatmap(lambda m: st.tuples(st.just(m), sigma_words(m), sigma_words(m))))
def test_matches_artin_action(case):
    m, u, v = case
    assert artin_equal(u, v) == braid_equal(u, v, m)


@settings(max_examples=200, deadline=None)
@given(st.integers(3, 6).flatmap(lambda m: st.tuples(st.just(m), sigma_words(m, 8))))
def test_conjugate_by_self_is_trivial(case):
    m, w = case
    assert artin_equal(multiply(w, invert(w)), Word(m))


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6).flatmap(lambda m: st.tuples(st.just(m), sigma_words(m, 12))))
def test_normal_form_permutation(case):
    m, w = case
    nf = left_normal_form(w)
    assert permutation_of(nf.word()) == permutation_of(w)


@pytest.mark.parametrize("m", range(3, 9))
def test_conjugation_identities(m):
    for i in range(1, m - 1):
        s = Word.sigma(m, i)
        bi, bn = b_generator(i, m), b_generator_in(i + 1, m, m)
        assert artin_equal(product([s, bi, invert(s)], m), bn)
        assert artin_equal(product([invert(s), bi, s], m), product([bi, bn, invert(bi)], m))


@pytest.mark.parametrize("m", range(2, 9))
def test_product_of_b_generators(m):
    lhs = product([b_generator(i, m) for i in range(1, m)], m)
    letters = [Letter("s", k, 1) for k in range(m - 1, 1, -1)] + [Letter("s", 1, 1)] * 2
    letters += [Letter("s", k, 1) for k in range(2, m)]
    assert artin_equal(lhs, Word(m, tuple(letters)))


def test_b_generator_words():
    assert str(b_generator(1, 3)) == "s2 s1 s1 s2^-1"
    with pytest.raises(WordError):
        b_generator(3, 3)
