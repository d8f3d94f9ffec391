from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from rp2b.kernel import (
    RHO,
    B,
    FreeAut,
    FreeWord,
    NotAnAutomorphism,
    alphabet,
    apply,
    check_syllable_law,
    compose,
    conj_alpha_inv,
    conj_beta_inv,
    fixed_points_ball,
    format_free,
    gen,
    inner,
    named_aut,
    parse_free,
    phi,
    phi_prime,
    predicted_exponents,
    syllable_decompose,
)


def free_words(rank, max_size=12):
    return st.lists(st.sampled_from(alphabet(rank)), max_size=max_size).map(lambda xs: FreeWord(rank, tuple(xs)))


def table(aut):
    return dict(aut.table())


def test_phi_table_rank3():
    assert table(phi(3)) == {"r": "r^-1", "B1": "B1^-1", "B2": "B1 B2^-1 B1^-1"}


def test_conj_alpha_table_rank3():
    t = table(conj_alpha_inv(3))
    assert t["r"] == "r^-1"
    assert t["B1"] == "r^2 B1^-1 r^-2"
    assert t["B2"] == "r^2 B1 B2^-1 B1^-1 r^-2"


def test_phi_prime_table():
    assert table(phi_prime(4)) == {"r": "r", "B1": "B1^-1", "B2": "B2^-1", "B3": "B2 B3^-1 B2^-1"}


@pytest.mark.parametrize("rank", range(1, 11))
def test_involutions(rank):
    for f in (conj_alpha_inv, conj_beta_inv, phi):
        a = f(rank)
        assert compose(a, a).is_identity()


@pytest.mark.parametrize("rank", range(2, 11))
def test_phi_preserves_b_subgroup(rank):
    a = phi(rank)
    for g in range(2, rank + 1):
        assert all(abs(x) != RHO for x in a.images[g - 1])


def test_not_an_automorphism():
    with pytest.raises(NotAnAutomorphism):
        FreeAut.from_images(2, [gen(2, RHO, 2), gen(2, B(1))], max_order=6)
    with pytest.raises(NotAnAutomorphism):
        FreeAut(2, ((1, 1), (2,)), ((1,), (2,)))


@settings(max_examples=200)
@given(st.integers(1, 5).flatmap(free_words))
def test_aut_is_bijective_on_words(w):
    for f in (conj_alpha_inv, conj_beta_inv, phi):
        a = f(w.rank)
        back = FreeAut(a.rank, a.inverse_images, a.images)
        assert apply(back, apply(a, w)) == w


@settings(max_examples=200)
@given(st.integers(2, 4).flatmap(lambda r: st.tuples(free_words(r), free_words(r))))
def test_aut_is_homomorphism(pair):
    u, v = pair
    a = conj_alpha_inv(u.rank)
    assert apply(a, u * v) == apply(a, u) * apply(a, v)


def test_inner():
    r = gen(3, RHO)
    assert format_free(apply(inner(r), gen(3, B(1)))) == "r B1 r^-1"


@pytest.mark.parametrize("rank", [2, 3, 4])
@pytest.mark.parametrize("which", [conj_alpha_inv, conj_beta_inv])
def test_fixed_points_trivial(rank, which):
    assert [w.letters for w in fixed_points_ball(which(rank), 6)] == [()]


def test_identity_fixes_everything():
    found = fixed_points_ball(named_aut("id", 2), 2)
    assert len(found) == 1 + 4 + 12


def test_syllables():
    w = parse_free("r^2 B1 r^-1 B2 B1", 3)
    d = syllable_decompose(w, RHO)
    assert d.exponents == (2, -1, 0)
    assert [format_free(m) for m in d.middles] == ["B1", "B2 B1"]
    assert d.word(3) == w


def test_syllables_edge_cases():
    assert syllable_decompose(parse_free("r^3", 2), RHO).k == 0
    assert syllable_decompose(parse_free("B1", 2), RHO).exponents == (0, 0)
    with pytest.raises(ValueError):
        predicted_exponents("alpha", syllable_decompose(parse_free("r^3", 2), RHO))


@settings(max_examples=500)
@given(st.integers(2, 6).flatmap(lambda r: free_words(r, 16)))
def test_syllable_laws(w):
    d = syllable_decompose(w, RHO)
    if d.k >= 1:
        assert check_syllable_law("alpha", w)
        assert check_syllable_law("beta", w)


@given(st.integers(2, 6).flatmap(lambda r: free_words(r, 16)))
def test_syllable_roundtrip(w):
    assert syllable_decompose(w, RHO).word(w.rank) == w


def test_predicted_example():
    d = syllable_decompose(parse_free("r^2 B1 r^-1 B2", 3), RHO)
    assert predicted_exponents("alpha", d) == (0, 1, -2)
    assert predicted_exponents("beta", d) == (-1, 1, -1)


@pytest.mark.parametrize("text", ["B3", "x", "r^a"])
def test_parse_free_errors(text):
    with pytest.raises(ValueError):
        parse_free(text, 3)


def test_named_aut_unknown():
    with pytest.raises(ValueError):
        named_aut("gamma", 3)
