from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from rp2b.p3model import (
    IDENTITY,
    INFINITE,
    MINUS_ONE,
    ONE,
    Q8,
    TAU1,
    TAU2,
    TAU3,
    P3Element,
    act,
    amalgam_witness,
    ball_size,
    centralizer_ball,
    f2_inverse,
    f2_mul,
    f2_reduce,
    fixed_words_ball,
    format_f2,
    involutions_ball,
    p3_invert,
    p3_multiply,
    p3_order,
    p3_power,
    parse_f2,
    parse_p3,
    parse_q8,
    reduced_words,
)

f2_words = st.text(alphabet="xXyY", max_size=10).map(f2_reduce)
q8s = st.sampled_from(Q8)
elements = st.builds(P3Element, f2_words, q8s)


def test_q8_relations():
    assert TAU1 * TAU1 == MINUS_ONE
    assert TAU1 * TAU2 == TAU3
    assert TAU2 * TAU1 == -TAU3
    assert all(q.order() in (1, 2, 4) for q in Q8)


@pytest.mark.parametrize(
    "q, w, expected",
    [(TAU1, "xy", "yx"), (TAU3, "x", "X"), (MINUS_ONE, "xyXY", "xyXY"), (TAU2, "x", "Y"), (TAU2, "y", "X")],
)
def test_action_table(q, w, expected):
    assert act(q, w) == expected


def test_minus_g_acts_like_g():
    for q in Q8:
        for w in ("x", "y", "xyY"):
            assert act(-q, w) == act(q, w)


def test_action_is_homomorphism():
    for g in Q8:
        for h in Q8:
            for w in ("x", "y"):
                assert act(g * h, w) == act(g, act(h, w))


def test_tau3_is_tau1_tau2():
    for w in ("x", "y"):
        assert act(TAU3, w) == act(TAU1, act(TAU2, w))


@given(f2_words, f2_words)
def test_action_respects_products(u, v):
    for q in (TAU1, TAU2, TAU3):
        assert act(q, f2_mul(u, v)) == f2_mul(act(q, u), act(q, v))


@given(elements, elements, elements)
def test_associative(a, b, c):
    assert p3_multiply(p3_multiply(a, b), c) == p3_multiply(a, p3_multiply(b, c))


@given(elements)
def test_inverse(g):
    assert p3_multiply(g, p3_invert(g)) == IDENTITY
    assert p3_multiply(p3_invert(g), g) == IDENTITY


def test_examples():
    u, v = P3Element("", TAU3), P3Element("x", TAU3)
    assert p3_multiply(u, p3_invert(v)) == P3Element("X", ONE)
    assert p3_power(v, 2) == P3Element("", MINUS_ONE)


@pytest.mark.parametrize(
    "g, order",
    [(P3Element("", TAU1), 4), (P3Element("", TAU2), 4), (P3Element("", TAU3), 4), (P3Element("x", ONE), INFINITE),
     (P3Element("x", TAU3), 4), (P3Element("", MINUS_ONE), 2), (IDENTITY, 1), (P3Element("x", TAU1), INFINITE)],
)
def test_orders(g, order):
    assert p3_order(g) == order


@given(elements)
def test_order_is_exact(g):
    o = p3_order(g)
    if o != INFINITE:
        assert p3_power(g, o) == IDENTITY
        assert all(p3_power(g, e) != IDENTITY for e in range(1, o))
    else:
        assert all(p3_power(g, e) != IDENTITY for e in range(1, 9))


@pytest.mark.parametrize("q", [q for q in Q8 if not q.is_central()])
def test_fixed_words_trivial_radius_8(q):
    assert fixed_words_ball(q, 8) == [""]


def test_fixed_words_rejects_central():
    with pytest.raises(ValueError):
        fixed_words_ball(MINUS_ONE, 3)


def test_ball_enumeration():
    for L in range(5):
        words = list(reduced_words(L))
        assert len(words) == ball_size(L) == len(set(words))
        assert all(f2_reduce(w) == w for w in words)


def test_centralizer_of_tau3():
    g = P3Element("", TAU3)
    assert set(centralizer_ball(g, 5)) == {p3_power(g, e) for e in range(4)}


def test_unique_involution_in_ball():
    assert involutions_ball(3) == [P3Element("", MINUS_ONE)]


def test_amalgam_witness():
    u, v, cert = amalgam_witness()
    assert cert.holds()
    assert cert.u_v_inv == P3Element("X", ONE)


@pytest.mark.parametrize(
    "text, expected",
    [("(x y^-1, t3)", P3Element("xY", TAU3)), ("( 1 , -1 )", P3Element("", MINUS_ONE)), ("(x^2,-t2)", P3Element("xx", -TAU2))],
)
def test_parse(text, expected):
    assert parse_p3(text) == expected


@pytest.mark.parametrize("text", ["x, t1", "(x, t4)", "(z, t1)"])
def test_parse_errors(text):
    with pytest.raises(ValueError):
        parse_p3(text)


def test_format():
    assert format_f2(parse_f2("x x Y")) == "x^2 y^-1"
    assert str(P3Element("", -TAU1)) == "(1, -t1)"
    assert str(parse_q8("t2")) == "t2"
    assert f2_inverse("xY") == "yX"


def test_invalid_element():
    with pytest.raises(ValueError):
        P3Element("xX", ONE)
