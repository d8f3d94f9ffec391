from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from rp2b.p3model import MINUS_ONE, ONE, TAU1, TAU2, TAU3, P3Element, P3Target, amalgam_witness
from rp2b.vc import (
    AMALGAM_IDENTITY,
    AmalgamElement,
    FactorNotInjective,
    Fact,
    FiniteSubgroupMenu,
    Inconclusive,
    Injective,
    NotInjective,
    NotWellDefined,
    Step,
    TypeII,
    UnknownFact,
    amalgam_normal_form,
    amalgam_normal_forms,
    apply_exclusions,
    aut_orders,
    classify,
    default_facts,
    evaluate,
    finite_subgroup_menu,
    replay_chain,
    type2_injectivity_check,
    wall_candidates,
)

REALIZED = ("Z", "Z2xZ", "Z4*Z2*Z4")


@pytest.mark.parametrize(
    "n, groups",
    [(1, ("1", "Z2")), (2, ("1", "Z2", "Z4", "Q8")), (3, ("1", "Z2", "Z4", "Q8")), (4, ("1", "Z2", "Z4")), (9, ("1", "Z2", "Z4"))],
)
def test_menu(n, groups):
    assert finite_subgroup_menu(n).groups == groups


def test_menu_invariant():
    with pytest.raises(ValueError):
        FiniteSubgroupMenu(4, ("1", "Z2", "Z4", "Q8"))


def test_automorphism_groups():
    assert aut_orders("Z2") == [1]
    assert aut_orders("Z4") == [1, 2]
    q8 = aut_orders("Q8")
    assert len(q8) == 24
    assert sorted(set(q8)) == [1, 2, 3, 4]
    # S4 has 1 identity, 9 involutions, 8 three-cycles, 6 four-cycles
    assert [q8.count(d) for d in (1, 2, 3, 4)] == [1, 9, 8, 6]


def test_candidates_n4():
    names = [c.name for c in wall_candidates(finite_subgroup_menu(4))]
    assert names == ["Z", "Z2xZ", "Z4xZ", "Z4:Z", "Z2*Z2", "Z4*Z2*Z4"]


def test_candidates_n3_add_q8():
    names = {c.name for c in wall_candidates(finite_subgroup_menu(3))}
    assert {"Q8xZ", "Q8:Z[2]", "Q8:Z[3]", "Q8:Z[4]", "Q8*Z4*Q8"} <= names


def test_type2_needs_index_two():
    with pytest.raises(ValueError):
        TypeII("Q8", "Z2", "Q8")


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_realized(n):
    rep = classify(n)
    assert rep.realized == REALIZED
    assert rep.replays()


@pytest.mark.parametrize("n", [1, 2])
def test_finite_cases_have_no_infinite_subgroups(n):
    rep = classify(n)
    assert rep.realized == ()
    assert all(c.chain[0].rule == "finite-ambient" for c in rep.candidates)


def by_name(rep, name):
    return next(c for c in rep.candidates if c.name == name)


def test_z2_free_z2_excluded_by_unique_involution():
    c = by_name(classify(3), "Z2*Z2")
    assert c.status == "excluded"
    assert c.chain[0].facts == ("unique-involution",)


def test_q8_amalgam_excluded_via_z4_semidirect():
    c = by_name(classify(3), "Q8*Z4*Q8")
    assert c.status == "excluded"
    assert c.chain[0].conclusion == "contains Z4:Z"
    assert c.chain[-1].facts == ("no-Z4xZ",)


def test_every_exclusion_uses_known_facts():
    facts = default_facts()
    for n in range(1, 7):
        for c in classify(n).candidates:
            assert c.chain
            for step in c.chain:
                assert set(step.facts) <= set(facts)


def test_unknown_fact_raises():
    with pytest.raises(UnknownFact):
        replay_chain([Step("realize", ("no-such-fact",), "x")], default_facts(), 3)
    facts = default_facts()
    del facts["no-Z4xZ"]
    with pytest.raises(UnknownFact):
        apply_exclusions(wall_candidates(finite_subgroup_menu(4)), facts, 4)


def test_failing_fact_leaves_candidate_unsettled():
    facts = default_facts()
    facts["no-Z4xZ"] = Fact("no-Z4xZ", "broken", "test", lambda n: False)
    rep = apply_exclusions(wall_candidates(finite_subgroup_menu(4)), facts, 4)
    assert by_name(rep, "Z4xZ").status == "unsettled"
    assert by_name(rep, "Z").status == "realized"


# --- amalgam arithmetic -----------------------------------------------------------

amalgam_words = st.lists(st.tuples(st.sampled_from("uv"), st.integers(-5, 5)), max_size=8)


@pytest.mark.parametrize(
    "word, expected",
    [("u^2", AmalgamElement(1, "")), ("u^4", AMALGAM_IDENTITY), ("v^2", AmalgamElement(1, "")),
     ("u v", AmalgamElement(0, "UV")), ("u^-1", AmalgamElement(1, "U")), ("u v u^-1", AmalgamElement(1, "UVU"))],
)
def test_normal_forms(word, expected):
    assert amalgam_normal_form(word) == expected


@given(amalgam_words, amalgam_words, amalgam_words)
def test_multiplication_associative(a, b, c):
    x, y, z = (amalgam_normal_form(w) for w in (a, b, c))
    assert (x * y) * z == x * (y * z)


@given(amalgam_words)
def test_inverse(w):
    x = amalgam_normal_form(w)
    assert x * x.inverse() == AMALGAM_IDENTITY


@given(amalgam_words, amalgam_words)
def test_normal_form_is_a_homomorphism(a, b):
    assert amalgam_normal_form(a + b) == amalgam_normal_form(a) * amalgam_normal_form(b)


def test_powers_of_uvinv_distinct():
    t = amalgam_normal_form("u v^-1")
    forms = [t.power(k) for k in range(1, 101)]
    assert len(set(forms)) == 100
    for k, f in enumerate(forms, 1):
        assert f.delta == k % 2 and len(f.syllables) == 2 * k


def test_alternation_enforced():
    with pytest.raises(ValueError):
        AmalgamElement(0, "UUV")


def test_42_forms_embed_in_p3():
    u, v, _ = amalgam_witness()
    forms = amalgam_normal_forms(10)
    assert len(forms) == 42
    assert len({evaluate(x, u, v, P3Target) for x in forms}) == 42


@given(amalgam_words, amalgam_words)
def test_evaluation_is_a_homomorphism(a, b):
    u, v, _ = amalgam_witness()
    x, y = amalgam_normal_form(a), amalgam_normal_form(b)
    assert evaluate(x * y, u, v, P3Target) == P3Target.multiply(evaluate(x, u, v, P3Target), evaluate(y, u, v, P3Target))


# --- injectivity ---------------------------------------------------------------------


def test_witness_is_injective():
    u, v, _ = amalgam_witness()
    res = type2_injectivity_check(u, v, P3Target)
    assert isinstance(res, Injective)
    assert res.witness == amalgam_normal_form("u v^-1")
    assert res.image == P3Element("X", ONE)


def test_equal_generators_not_injective():
    u = P3Element("", TAU3)
    res = type2_injectivity_check(u, u, P3Target)
    assert isinstance(res, NotInjective)
    assert res.kernel == amalgam_normal_form("u v^-1")


def test_tau1_tau2_outcome():
    res = type2_injectivity_check(P3Element("", TAU1), P3Element("", TAU2), P3Target)
    assert isinstance(res, NotInjective)
    assert res.kernel == AmalgamElement(1, "UVUV")


def test_not_well_defined():
    assert isinstance(type2_injectivity_check(P3Element("", TAU1), P3Element("", ONE), P3Target), NotWellDefined)
    assert isinstance(type2_injectivity_check(P3Element("x", ONE), P3Element("", TAU3), P3Target), NotWellDefined)


def test_factor_not_injective():
    z = P3Element("", MINUS_ONE)
    one = P3Element("", ONE)
    # u = v = identity: u^2 = v^2 and u^4 = e, but the factors collapse
    assert isinstance(type2_injectivity_check(one, one, P3Target), FactorNotInjective)
    assert isinstance(type2_injectivity_check(z, z, P3Target), FactorNotInjective)


def test_inexact_target_is_inconclusive():
    class Approx(P3Target):
        exact_order = False

    u, v, _ = amalgam_witness()
    assert isinstance(type2_injectivity_check(u, v, Approx), Inconclusive)
