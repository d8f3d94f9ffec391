from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from rp2b.torsion import (
    CertificateError,
    Order4Class,
    OrderCertificate,
    Rejection,
    TorsionError,
    TorsionSpec,
    abelianize,
    alpha_certificate,
    approx_related,
    approx_related_brute,
    approx_related_search,
    beta_certificate,
    canonical_spec,
    canonical_torsion_reps,
    catalog_certificate,
    divisor_closure,
    divisors,
    element_a,
    element_alpha,
    element_b,
    element_beta,
    full_twist,
    full_twist_certificate,
    l1,
    l2,
    murasugi_element,
    order4_class_of,
    order_formula_knr,
    purity_pattern_holds,
    torsion_order,
)
from rp2b.words import format_word, freely_reduce, parse_word, permutation_of, power

small = st.integers(-6, 6)


@given(small, small, small, small)
def test_approx_matches_brute(a, b, c, d):
    assert approx_related(a, b, c, d) == approx_related_brute(a, b, c, d, bound=20)


def test_search_matches_brute_box():
    for t in itertools.product(range(-3, 4), repeat=4):
        assert approx_related_search(*t) == approx_related_brute(*t)


@pytest.mark.parametrize(
    "args, expected",
    [((2, 4, 1, 2), True), ((3, 0, 0, 0), True), ((1, 2, 2, 3), False), ((0, 0, 0, 0), True)],
)
def test_approx_examples(args, expected):
    assert approx_related(*args) is expected


def test_canonical_reps_n4():
    reps = canonical_torsion_reps(4)
    assert [(s.family, s.r) for s, _ in reps] == sorted((s.family, s.r) for s, _ in reps)
    assert dict(((s.family, s.r), o) for s, o in reps)[(1, 4)] == 16
    assert dict(((s.family, s.r), o) for s, o in reps)[(2, 3)] == 12


@pytest.mark.parametrize("n", range(2, 12))
def test_a_and_b_orders(n):
    assert torsion_order(canonical_spec(1, n, n)) == 4 * n
    assert torsion_order(canonical_spec(2, n, n - 1)) == 4 * (n - 1)


def test_a_is_family1_top_rep_at_n2(cayley2):
    # xi = r2 s1 equals a = s1^-1 r1 once r2 = s1^-1 r1 s1^-1 is used
    xi = murasugi_element(canonical_spec(1, 2, 2))
    assert format_word(xi) == "r2 s1"
    assert cayley2.element(xi) == cayley2.element(element_a(2))


def test_order_formula_example():
    assert order_formula_knr(4, 4) == 16


@pytest.mark.parametrize("n", range(2, 60))
def test_order_formula_agreement(n):
    for r in range(n + 1):
        assert torsion_order(canonical_spec(1, n, r)) == order_formula_knr(n, r)


@pytest.mark.parametrize("n", range(3, 60))
def test_l2_shift(n):
    assert all(l2(n, r) == l1(n - 1, r) for r in range(n))


@pytest.mark.parametrize("n", range(2, 30))
def test_divisor_closure(n):
    assert divisor_closure(n) == divisors(4 * n) | divisors(4 * (n - 1))


@pytest.mark.parametrize("n", range(2, 11))
def test_purity_pattern(n):
    assert purity_pattern_holds(n)


def test_spec_validation():
    with pytest.raises(TorsionError):
        TorsionSpec(1, 4, 0, 1, 1)   # r = 0 forces s = 0
    with pytest.raises(TorsionError):
        TorsionSpec(1, 4, 4, 1, 1)   # p = 0 forces q = 0
    with pytest.raises(TorsionError):
        TorsionSpec(1, 4, 5, 0, 0)   # r out of range
    with pytest.raises(TorsionError):
        TorsionSpec(1, 4, 2, 1, 1)   # (2, 1) not ~ (4, 1)
    with pytest.raises(TorsionError):
        torsion_order(TorsionSpec(1, 4, 2, 4, 2))   # valid but not canonical


def test_named_words():
    assert format_word(element_a(3)) == "s2^-1 s1^-1 r1"
    assert format_word(element_b(3)) == "s1^-1 r1"
    assert format_word(element_alpha(3)) == "r3 r2 r1"
    assert format_word(element_beta(3)) == "r2 r1"
    assert format_word(full_twist(2)) == "s1 s1"


@pytest.mark.parametrize("n", range(2, 51))
def test_alpha_beta_abelian_images_differ(n):
    assert abelianize(element_alpha(n)) != abelianize(element_beta(n))


@pytest.mark.parametrize("n", range(2, 9))
def test_certificates(n):
    assert alpha_certificate(n).order == 4
    assert beta_certificate(n).order == 4
    assert full_twist_certificate(n).order == 2
    assert all(c.verify() for c in (alpha_certificate(n), beta_certificate(n)))


@pytest.mark.parametrize("n", range(2, 9))
def test_order4_classes(n):
    assert order4_class_of(element_alpha(n), alpha_certificate(n)) is Order4Class.ALPHA
    assert order4_class_of(element_beta(n), beta_certificate(n)) is Order4Class.BETA


def test_order4_needs_certificate():
    with pytest.raises(CertificateError):
        order4_class_of(element_alpha(4), None)
    with pytest.raises(CertificateError):
        order4_class_of(element_alpha(4), OrderCertificate(4, "rumour"))


def test_order4_rejects_other_orders():
    res = order4_class_of(full_twist(4), full_twist_certificate(4))
    assert isinstance(res, Rejection) and res.order == 2


def test_order4_rejects_non_pure():
    cert = catalog_certificate(canonical_spec(1, 4, 4), 4)   # a^4 has order 4
    assert cert.order == 4
    assert isinstance(order4_class_of(element_a(4), cert), Rejection)


@pytest.mark.parametrize("n", range(2, 7))
def test_family1_r0_is_sigma_only(n):
    w = murasugi_element(canonical_spec(1, n, 0))
    assert w.is_sigma_only()
    assert permutation_of(w).order() == n
