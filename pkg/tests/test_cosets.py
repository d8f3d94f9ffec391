from __future__ import annotations

import math

import pytest

from oracles import q16_order_histogram
from rp2b.cosets import (
    CosetOverflow,
    GroupProfile,
    Other,
    element_order_in,
    identify_group,
    pure_subgroup_generators,
    todd_coxeter,
)
from rp2b.presentation import parse_presentation, van_buskirk_presentation
from rp2b.torsion import divisors, element_a, element_b, full_twist
from rp2b.words import parse_word, permutation_of


def test_b1_order():
    assert todd_coxeter(van_buskirk_presentation(1)).index == 2


def test_b2_matches_q16(cayley2):
    prof = cayley2.profile()
    assert prof.order == 16
    assert prof.histogram_dict() == q16_order_histogram()
    assert prof.involutions == 1 and prof.center_size == 2
    assert identify_group(prof) == "Q16"


def test_pure_part_is_q8(cayley2):
    pure = [g for g, w in enumerate(cayley2.reps) if permutation_of(w).is_identity()]
    prof = cayley2.profile(pure)
    assert prof.order == 8
    assert prof.histogram_dict() == {1: 1, 2: 1, 4: 6}
    assert identify_group(prof) == "Q8"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_pure_index(n):
    t = todd_coxeter(van_buskirk_presentation(n), pure_subgroup_generators(n))
    assert t.index == math.factorial(n)
    assert t.relators_close()


def test_named_orders(cayley2):
    assert element_order_in(cayley2, element_a(2)) == 8
    assert element_order_in(cayley2, element_b(2)) == 4
    assert element_order_in(cayley2, full_twist(2)) == 2
    assert {cayley2.element_order(g) for g in range(16)} == divisors(8) | divisors(4)


def test_table_is_a_group(cayley2):
    mul = cayley2.mul
    for a in range(16):
        for b in range(16):
            for c in (0, 5, 11):
                assert mul[mul[a][b]][c] == mul[a][mul[b][c]]


def test_deterministic_numbering():
    t1 = todd_coxeter(van_buskirk_presentation(2))
    t2 = todd_coxeter(van_buskirk_presentation(2))
    assert t1.rows == t2.rows


def test_overflow():
    with pytest.raises(CosetOverflow):
        todd_coxeter(van_buskirk_presentation(3), max_cosets=50)


@pytest.mark.parametrize(
    "text, order, name",
    [
        ("strands: 1\nrel: r1^4", 4, "Z4"),
        ("strands: 2\nrel: s1^2\nrel: r1\nrel: r2", 2, "Z2"),
        ("strands: 3\nrel: s1^2\nrel: s2^2\nrel: s1 s2 s1 s2 s1 s2\nrel: r1\nrel: r2\nrel: r3", 6, "S3"),
    ],
)
def test_small_presentations(text, order, name):
    from rp2b.cosets import cayley_from

    t = todd_coxeter(parse_presentation(text))
    assert t.index == order
    assert identify_group(cayley_from(t).profile()) == name


def test_identify_other():
    prof = GroupProfile(4, ((1, 1), (2, 3)), 4, 3)
    assert isinstance(identify_group(prof), Other)


def test_subgroup_closure_checked(cayley2):
    with pytest.raises(ValueError):
        cayley2.profile([0, cayley2.element(parse_word("s1", 2))])
