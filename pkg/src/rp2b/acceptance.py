"""The acceptance criteria as runnable checks.

Each criterion returns a :class:`CriterionResult`; ``passed`` requires both
the exact checks and the time limit.  ``reproduce`` runs a named suite.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

SEED = 20240601


@dataclass(frozen=True)
class CriterionResult:
    ident: int
    title: str
    ok: bool
    seconds: float
    limit: float
    detail: dict

    @property
    def passed(self) -> bool:
        return self.ok and self.seconds < self.limit

    def as_dict(self, timing: bool = False) -> dict:
        d = {"id": self.ident, "title": self.title, "passed": self.passed, "checks_ok": self.ok,
             "limit_seconds": self.limit, "detail": self.detail}
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d


def _c1() -> dict:
    from .torsion import canonical_spec, l1, l2, order_formula_knr, torsion_order

    mismatch = [
        (n, r)
        for n in range(2, 201)
        for r in range(n + 1)
        if torsion_order(canonical_spec(1, n, r)) != order_formula_knr(n, r)
    ]
    l_mismatch = [(n, r) for n in range(3, 201) for r in range(n) if l2(n, r) != l1(n - 1, r)]
    return {"ok": not mismatch and not l_mismatch, "order_mismatches": len(mismatch), "l_mismatches": len(l_mismatch)}


def _c2() -> dict:
    from .cosets import cayley_from, identify_group, pure_subgroup_generators, todd_coxeter
    from .presentation import van_buskirk_presentation
    from .words import permutation_of

    b1 = todd_coxeter(van_buskirk_presentation(1)).index
    cay = cayley_from(todd_coxeter(van_buskirk_presentation(2)))
    prof = cay.profile()
    pure = [g for g, w in enumerate(cay.reps) if permutation_of(w).is_identity()]
    pprof = cay.profile(pure)
    indices = {n: todd_coxeter(van_buskirk_presentation(n), pure_subgroup_generators(n)).index for n in (2, 3, 4)}
    ok = (
        b1 == 2
        and prof.order == 16
        and prof.involutions == 1
        and pprof.order == 8
        and pprof.histogram_dict() == {1: 1, 2: 1, 4: 6}
        and identify_group(pprof) == "Q8"
        and indices == {2: 2, 3: 6, 4: 24}
    )
    return {
        "ok": ok,
        "order_B1": b1,
        "order_B2": prof.order,
        "involutions_B2": prof.involutions,
        "pure_histogram": {str(k): v for k, v in pprof.histogram},
        "pure_identified": str(identify_group(pprof)),
        "pure_index": {str(k): v for k, v in indices.items()},
    }


def _c3() -> dict:
    from .cosets import cayley_from, element_order_in, todd_coxeter
    from .presentation import van_buskirk_presentation
    from .torsion import divisors, element_a, element_b, full_twist

    cay = cayley_from(todd_coxeter(van_buskirk_presentation(2)))
    oa, ob, od = (element_order_in(cay, w) for w in (element_a(2), element_b(2), full_twist(2)))
    orders = {cay.element_order(g) for g in range(cay.order)}
    ok = (oa, ob, od) == (8, 4, 2) and orders == divisors(8) | divisors(4)
    return {"ok": ok, "order_a": oa, "order_b": ob, "order_full_twist": od, "element_orders": sorted(orders)}


def _random_artin_word(rng: random.Random, m: int, length: int):
    from .words import SIGMA, Letter, Word

    return Word(m, tuple(Letter(SIGMA, rng.randint(1, m - 1), rng.choice((1, -1))) for _ in range(length)))


def _artin_relators(m: int):
    from .words import parse_word

    rels = []
    for i in range(1, m - 1):
        rels.append(parse_word(f"s{i} s{i+1} s{i} s{i+1}^-1 s{i}^-1 s{i+1}^-1", m))
    for i in range(1, m):
        for j in range(i + 2, m):
            rels.append(parse_word(f"s{i} s{j} s{i}^-1 s{j}^-1", m))
    for i in range(1, m):
        rels.append(parse_word(f"s{i} s{i}^-1", m))
    return rels


def _c4(insertions: int = 10_000) -> dict:
    from .artin import artin_equal, b_generator, b_generator_in, left_normal_form
    from .words import SIGMA, Letter, Word, invert, multiply, product

    failures = []
    for m in range(2, 9):
        for i in range(1, m):
            s = Word.sigma(m, i)
            bi = b_generator(i, m)
            if i + 1 <= m - 1:
                bn = b_generator_in(i + 1, m, m)
                if not artin_equal(multiply(multiply(s, bi), invert(s)), bn):
                    failures.append(("conj+", m, i))
                rhs = product([bi, bn, invert(bi)], m)
                if not artin_equal(multiply(multiply(invert(s), bi), s), rhs):
                    failures.append(("conj-", m, i))
        lhs = product([b_generator(i, m) for i in range(1, m)], m)
        letters = [Letter(SIGMA, k, 1) for k in range(m - 1, 1, -1)] + [Letter(SIGMA, 1, 1)] * 2
        letters += [Letter(SIGMA, k, 1) for k in range(2, m)]
        if not artin_equal(lhs, Word(m, tuple(letters))):
            failures.append(("product", m))
    rng = random.Random(SEED)
    rels = {m: _artin_relators(m) for m in range(3, 9)}
    bad_insert = 0
    for _ in range(insertions):
        m = rng.randint(3, 8)
        w = _random_artin_word(rng, m, rng.randint(0, 12))
        r = rng.choice(rels[m])
        if rng.random() < 0.5:
            r = invert(r)
        k = rng.randint(0, len(w.letters))
        w2 = Word(m, w.letters[:k] + r.letters + w.letters[k:])
        if left_normal_form(w) != left_normal_form(w2):
            bad_insert += 1
    return {"ok": not failures and bad_insert == 0, "identity_failures": len(failures), "insertions": insertions,
            "insertion_failures": bad_insert}


def _c5() -> dict:
    from .torsion import abelianize, divisor_closure, divisors, element_alpha, element_beta, purity_pattern_holds

    closure_bad = [n for n in range(2, 51) if divisor_closure(n) != divisors(4 * n) | divisors(4 * (n - 1))]
    purity_bad = [n for n in range(2, 11) if not purity_pattern_holds(n)]
    ab_bad = [n for n in range(2, 51) if abelianize(element_alpha(n)) == abelianize(element_beta(n))]
    return {"ok": not (closure_bad or purity_bad or ab_bad), "closure_failures": closure_bad,
            "purity_failures": purity_bad, "abelian_collisions": ab_bad}


def _c6() -> dict:
    from .p3model import (
        INFINITE, Q8, TAU1, TAU2, TAU3, P3Element, P3Target, act, amalgam_witness,
        centralizer_ball, fixed_words_ball, p3_order, p3_power,
    )
    from .vc import amalgam_normal_forms, evaluate

    hom = all(act(g * h, w) == act(g, act(h, w)) for g in Q8 for h in Q8 for w in ("x", "y"))
    t3 = all(act(TAU3, w) == act(TAU1, act(TAU2, w)) for w in ("x", "y"))
    orders = [p3_order(P3Element("", t)) for t in (TAU1, TAU2, TAU3)]
    fixed = all(fixed_words_ball(q, 12) == [""] for q in Q8 if not q.is_central())
    u, v, cert = amalgam_witness()
    forms = amalgam_normal_forms(10)
    images = {evaluate(x, u, v, P3Target) for x in forms}
    g = P3Element("", TAU3)
    cent = set(centralizer_ball(g, 8))
    powers = {p3_power(g, e) for e in range(4)}
    ok = (
        hom and t3 and orders == [4, 4, 4] and fixed
        and p3_power(u, 4) == P3Target.identity and cert.squares_agree and cert.order_u_v_inv == INFINITE
        and len(forms) == 42 and len(images) == 42 and cent == powers
    )
    return {"ok": ok, "action_homomorphism": hom, "t3_is_t1_t2": t3, "tau_orders": orders,
            "fixed_words_trivial": fixed, "amalgam_forms": len(forms), "amalgam_images": len(images),
            "u_v_inv": str(cert.u_v_inv), "centralizer_size": len(cent)}


def _c7(samples: int = 10_000) -> dict:
    from .kernel import (
        RHO, FreeWord, NotAnAutomorphism, alphabet, check_syllable_law, compose, conj_alpha_inv,
        conj_beta_inv, fixed_points_ball, phi, phi_prime, syllable_decompose,
    )

    certified = True
    for rank in range(1, 11):
        try:
            for f in (phi, conj_alpha_inv, conj_beta_inv) + ((phi_prime,) if rank >= 2 else ()):
                f(rank)
        except NotAnAutomorphism:
            certified = False
    involutive = all(
        compose(f(rank), f(rank)).is_identity() for rank in range(1, 11) for f in (conj_alpha_inv, conj_beta_inv)
    )
    preserves = all(RHO not in map(abs, phi(rank).images[g]) for rank in range(2, 11) for g in range(1, rank))
    fixed = all(
        [w.letters for w in fixed_points_ball(f(rank), 6)] == [()]
        for rank in (2, 3, 4) for f in (conj_alpha_inv, conj_beta_inv)
    )
    rng = random.Random(SEED)
    tested = bad = 0
    while tested < samples:
        rank = rng.randint(2, 6)
        w = FreeWord(rank, tuple(rng.choice(alphabet(rank)) for _ in range(rng.randint(1, 16))))
        if syllable_decompose(w, RHO).k < 1:
            continue
        tested += 1
        if not (check_syllable_law("alpha", w) and check_syllable_law("beta", w)):
            bad += 1
    ok = certified and involutive and preserves and fixed and bad == 0
    return {"ok": ok, "certified_ranks_1_10": certified, "involutive": involutive, "phi_preserves_B": preserves,
            "fixed_points_trivial": fixed, "syllable_samples": tested, "syllable_failures": bad}


def _c8() -> dict:
    from .vc import classify, default_facts

    facts = default_facts()
    expected = ("Z", "Z2xZ", "Z4*Z2*Z4")
    realized = {}
    replays = True
    for n in range(1, 9):
        rep = classify(n, facts)
        realized[str(n)] = list(rep.realized)
        replays &= rep.replays(facts)
    ok = replays and all(tuple(realized[str(n)]) == expected for n in range(3, 9)) and not realized["1"] and not realized["2"]
    return {"ok": ok, "realized": realized, "chains_replay": replays}


def _c9() -> dict:
    from .torsion import approx_related, approx_related_search

    R = range(-10, 11)
    bad = 0
    for a in R:
        for b in R:
            for c in R:
                for d in R:
                    if approx_related(a, b, c, d) != approx_related_search(a, b, c, d):
                        bad += 1
    return {"ok": bad == 0, "cases": 21 ** 4, "disagreements": bad}


CRITERIA: dict[int, tuple[str, float, Callable[[], dict]]] = {
    1: ("order-formula agreement", 1.0, _c1),
    2: ("finite cases by coset enumeration", 10.0, _c2),
    3: ("named element orders at n = 2", 1.0, _c3),
    4: ("Artin-oracle certification", 5.0, _c4),
    5: ("torsion catalog properties", 5.0, _c5),
    6: ("P3 model", 60.0, _c6),
    7: ("kernel action", 120.0, _c7),
    8: ("classification reports", 1.0, _c8),
    9: ("approximation relation", 5.0, _c9),
}

SUITES = {
    "orders": (1, 5, 9),
    "finite-cases": (2, 3),
    "kernel": (4, 7),
    "p3": (6,),
    "classify": (8,),
    "all": tuple(CRITERIA),
}


def run_criterion(ident: int) -> CriterionResult:
    title, limit, fn = CRITERIA[ident]
    t0 = time.perf_counter()
    detail = fn()
    seconds = time.perf_counter() - t0
    ok = bool(detail.pop("ok"))
    return CriterionResult(ident, title, ok, seconds, limit, detail)


def reproduce(suite: str) -> list[CriterionResult]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    return [run_criterion(i) for i in SUITES[suite]]
