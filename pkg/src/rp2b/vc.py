"""Infinite virtually cyclic subgroups of ``P_n(RP^2)``.

By Wall's dichotomy an infinite virtually cyclic group has a finite normal
subgroup ``F`` with quotient ``Z`` (Type I, ``F x| Z``) or ``Z2 * Z2``
(Type II, ``G1 *_F G2`` with ``F`` of index 2 in both factors).  Candidates are
built from the menu of finite subgroups and then settled one at a time by
short chains of named facts.  Each fact carries a check that recomputes its
evidence, so a chain can be replayed rather than trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as cartesian
from math import gcd
from typing import Callable, Mapping, Sequence

GROUP_ORDER = {"1": 1, "Z2": 2, "Z4": 4, "Q8": 8}

# (smaller, larger) pairs with the smaller one of index 2
INDEX2 = (("1", "Z2"), ("Z2", "Z4"), ("Z4", "Q8"))


class UnknownFact(KeyError):
    pass


# --- finite subgroup menu ------------------------------------------------------

@dataclass(frozen=True)
class FiniteSubgroupMenu:
    n: int
    groups: tuple[str, ...]

    def __post_init__(self):
        if tuple(finite_subgroup_groups(self.n)) != self.groups:
            raise ValueError(f"menu for n={self.n} must be {finite_subgroup_groups(self.n)}")


def finite_subgroup_groups(n: int) -> tuple[str, ...]:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        return ("1", "Z2")
    if n in (2, 3):
        return ("1", "Z2", "Z4", "Q8")
    return ("1", "Z2", "Z4")


def finite_subgroup_menu(n: int) -> FiniteSubgroupMenu:
    return FiniteSubgroupMenu(n, finite_subgroup_groups(n))


# --- automorphism groups, by brute force ---------------------------------------

def aut_cyclic_orders(m: int) -> list[int]:
    """Orders of the automorphisms ``x -> k x`` of ``Z_m``."""
    out = []
    for k in range(1, m + 1):
        if gcd(k, m) != 1:
            continue
        e, y = 1, k % m
        while y != 1 % m:
            y = y * k % m
            e += 1
        out.append(e)
    return sorted(out)


@lru_cache(maxsize=None)
def aut_q8_orders() -> tuple[int, ...]:
    """Orders of all automorphisms of ``Q8``, found by trying every image of ``(i, j)``."""
    from .p3model import ONE, Q8, TAU1, TAU2

    def words_in(a, b):
        # every element as a product i^p j^q with p in 0..3, q in 0..1
        table = {}
        for p_ in range(4):
            for q_ in range(2):
                g = h = ONE
                for _ in range(p_):
                    g, h = g * TAU1, h * a
                for _ in range(q_):
                    g, h = g * TAU2, h * b
                table.setdefault(g, h)
        return table

    auts = []
    for a, b in cartesian(Q8, repeat=2):
        f = words_in(a, b)
        if len(f) != 8 or len(set(f.values())) != 8:
            continue
        if all(f[g * h] == f[g] * f[h] for g in Q8 for h in Q8):
            auts.append(f)
    orders = []
    for f in auts:
        e, cur = 1, dict(f)
        while any(cur[g] != g for g in Q8):
            cur = {g: f[cur[g]] for g in Q8}
            e += 1
        orders.append(e)
    return tuple(sorted(orders))


def aut_orders(group: str) -> list[int]:
    if group == "1":
        return [1]
    if group == "Z2":
        return aut_cyclic_orders(2)
    if group == "Z4":
        return aut_cyclic_orders(4)
    if group == "Q8":
        return list(aut_q8_orders())
    raise ValueError(f"unknown finite group {group!r}")


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


# --- candidates ----------------------------------------------------------------

@dataclass(frozen=True)
class TypeI:
    """``F x|_theta Z`` with the action summarized by the order ``d`` of ``theta``."""

    finite: str
    action_order: int

    @property
    def name(self) -> str:
        if self.finite == "1":
            return "Z"
        if self.action_order == 1:
            return f"{self.finite}xZ"
        if self.finite == "Z4":
            return "Z4:Z"
        return f"{self.finite}:Z[{self.action_order}]"


@dataclass(frozen=True)
class TypeII:
    left: str
    finite: str
    right: str

    def __post_init__(self):
        for g in (self.left, self.right):
            if (self.finite, g) not in INDEX2:
                raise ValueError(f"{self.finite} is not of index 2 in {g}")

    @property
    def name(self) -> str:
        if self.finite == "1":
            return f"{self.left}*{self.right}"
        return f"{self.left}*{self.finite}*{self.right}"


@dataclass(frozen=True)
class Step:
    """One inference: ``rule`` applied to the named facts, concluding ``conclusion``."""

    rule: str
    facts: tuple[str, ...]
    conclusion: str


RULES = {
    "finite-ambient": "a finite group has no infinite subgroup",
    "forbidden-subgroup": "a candidate isomorphic to a forbidden subgroup is excluded",
    "direct-power": "if theta has order d then F x|_theta dZ = F x dZ is a subgroup",
    "contains": "a candidate containing an excluded group is excluded",
    "involutions": "Z2 * Z2 contains infinitely many involutions",
    "index2-typeI": "G1 *_F G2 contains F x| Z with index 2",
    "realize": "the witness elements generate a copy of the candidate",
}


@dataclass(frozen=True)
class VCCandidate:
    shape: TypeI | TypeII
    status: str = "pending"
    chain: tuple[Step, ...] = ()
    witness: str | None = None

    @property
    def name(self) -> str:
        return self.shape.name

    @property
    def kind(self) -> str:
        return "TypeI" if isinstance(self.shape, TypeI) else "TypeII"

    def as_dict(self) -> dict:
        d = {
            "name": self.name,
            "type": self.kind,
            "status": self.status,
            "chain": [{"rule": s.rule, "facts": list(s.facts), "conclusion": s.conclusion} for s in self.chain],
        }
        if isinstance(self.shape, TypeI):
            d["F"] = self.shape.finite
            d["action_order"] = self.shape.action_order
        else:
            d["factors"] = [self.shape.left, self.shape.finite, self.shape.right]
        if self.witness is not None:
            d["witness"] = self.witness
        return d


def wall_candidates(menu: FiniteSubgroupMenu) -> list[VCCandidate]:
    """Type I pairs up to the order of the action, then Type II triples."""
    out = []
    for f in menu.groups:
        for d in sorted(set(aut_orders(f))):
            out.append(VCCandidate(TypeI(f, d)))
    for small, big in INDEX2:
        if small in menu.groups and big in menu.groups:
            out.append(VCCandidate(TypeII(big, small, big)))
    return out


# --- facts -----------------------------------------------------------------------

@dataclass(frozen=True)
class Fact:
    key: str
    statement: str
    source: str
    check: Callable[[int], bool] = field(compare=False)


@lru_cache(maxsize=None)
def _fact_finite_ambient(n: int) -> bool:
    from .cosets import todd_coxeter
    from .presentation import van_buskirk_presentation

    if n > 2:
        return False
    # enumeration over the trivial subgroup terminates only for a finite group
    return todd_coxeter(van_buskirk_presentation(n)).index == {1: 2, 2: 16}[n]


@lru_cache(maxsize=None)
def _fact_unique_involution(n: int) -> bool:
    if n <= 2:
        from .cosets import cayley_from, todd_coxeter, pure_subgroup_generators
        from .presentation import van_buskirk_presentation
        from .words import permutation_of

        if n == 1:
            return todd_coxeter(van_buskirk_presentation(1)).index == 2
        cay = cayley_from(todd_coxeter(van_buskirk_presentation(2)))
        pure = [g for g in range(len(cay.reps)) if permutation_of(cay.reps[g]).is_identity()]
        return cay.profile(pure).involutions == 1
    if n == 3:
        from .p3model import MINUS_ONE, P3Element, involutions_ball

        return involutions_ball(3) == [P3Element("", MINUS_ONE)]
    from .torsion import canonical_torsion_reps, purity_pattern_holds

    return all(order % 2 == 0 for _, order in canonical_torsion_reps(n)) and purity_pattern_holds(n)


@lru_cache(maxsize=None)
def _fact_no_z4xz(n: int) -> bool:
    if n <= 2:
        return False
    if n == 3:
        from .p3model import Q8, fixed_words_ball

        return all(fixed_words_ball(q, 6) == [""] for q in Q8 if not q.is_central())
    from .kernel import conj_alpha_inv, conj_beta_inv, fixed_points_ball

    rank = n - 1
    radius = 3 if rank > 4 else 4
    return all(
        [w.letters for w in fixed_points_ball(aut(rank), radius)] == [()]
        for aut in (conj_alpha_inv, conj_beta_inv)
    )


def _fact_aut_z2(n: int) -> bool:
    return aut_orders("Z2") == [1]


def _fact_aut_z4(n: int) -> bool:
    return aut_orders("Z4") == [1, 2]


def _fact_aut_q8(n: int) -> bool:
    orders = aut_orders("Q8")
    return len(orders) == 24 and _lcm(orders) == 12


def _fact_q8_reduction(n: int) -> bool:
    from .p3model import ONE, TAU1

    # <t1> is a cyclic subgroup of order 4 in Q8
    return TAU1 * TAU1 != ONE and TAU1 * TAU1 * TAU1 * TAU1 == ONE


@lru_cache(maxsize=None)
def _fact_typeii_contains_typei(n: int) -> bool:
    # In Z4 *_Z2 Z4: t = u v^-1 has infinite order and normalizes F = <z>.
    t = amalgam_normal_form([("u", 1), ("v", -1)])
    powers = {t.power(k) for k in range(1, 51)}
    z = amalgam_normal_form([("u", 2)])
    return len(powers) == 50 and t * z * t.inverse() == z


@lru_cache(maxsize=None)
def _fact_infinite_order(n: int) -> bool:
    if n <= 2:
        return False
    if n == 3:
        from .p3model import INFINITE, ONE, P3Element, p3_order

        return p3_order(P3Element("x", ONE)) == INFINITE
    from .kernel import RHO, gen
    from .torsion import element_alpha, element_beta
    from .words import RHO as R, Letter, Word, freely_reduce, invert, multiply

    # alpha beta^-1 is rho_n, a basis element of the free kernel of P_n -> P_n-1
    rho = gen(n - 1, RHO)
    powers_distinct = len({(rho ** k).letters for k in range(1, 20)}) == 19
    ab = freely_reduce(multiply(element_alpha(n), invert(element_beta(n))))
    return powers_distinct and ab == Word(n, (Letter(R, n, 1),))


@lru_cache(maxsize=None)
def _fact_central_involution(n: int) -> bool:
    if n <= 2:
        return False
    if n == 3:
        from .p3model import MINUS_ONE, ONE, P3Element, elements_ball, p3_multiply

        z = P3Element("", MINUS_ONE)
        return all(p3_multiply(z, h) == p3_multiply(h, z) for h in elements_ball(2))
    from .torsion import full_twist_certificate

    cert = full_twist_certificate(n)
    return cert.verify() and cert.order == 2 and _fact_unique_involution(n)


@lru_cache(maxsize=None)
def _fact_amalgam_realized(n: int) -> bool:
    if n <= 2:
        return False
    if n == 3:
        from .p3model import P3Target, amalgam_witness

        u, v, cert = amalgam_witness()
        return cert.holds() and isinstance(type2_injectivity_check(u, v, P3Target), Injective)
    from .torsion import (
        Order4Class,
        alpha_certificate,
        beta_certificate,
        element_alpha,
        element_beta,
        order4_class_of,
    )

    a, b = alpha_certificate(n), beta_certificate(n)
    classes = (order4_class_of(element_alpha(n), a), order4_class_of(element_beta(n), b))
    # both squares are the unique involution, alpha beta^-1 = rho_n has infinite order
    return (
        classes == (Order4Class.ALPHA, Order4Class.BETA)
        and _fact_unique_involution(n)
        and _fact_infinite_order(n)
    )


def default_facts() -> dict[str, Fact]:
    facts = [
        Fact("finite-ambient", "P_n(RP^2) is finite (orders 2 and 8 for n = 1, 2)", "coset-enum", _fact_finite_ambient),
        Fact("unique-involution", "P_n(RP^2) has exactly one element of order 2, the full twist", "coset-enum/p3-model/torsion-catalog", _fact_unique_involution),
        Fact("no-Z4xZ", "P_n(RP^2) has no subgroup isomorphic to Z4 x Z", "p3-model/kernel-action", _fact_no_z4xz),
        Fact("aut-Z2-trivial", "Aut(Z2) is trivial", "vc-classifier", _fact_aut_z2),
        Fact("aut-Z4-order-2", "Aut(Z4) has order 2", "vc-classifier", _fact_aut_z4),
        Fact("aut-Q8-exponent-12", "Aut(Q8) has order 24 and exponent 12", "vc-classifier", _fact_aut_q8),
        Fact("q8-reduction", "Q8 contains Z4, so Q8 x Z contains Z4 x Z", "p3-model", _fact_q8_reduction),
        Fact("typeII-contains-typeI", "G1 *_F G2 contains F x| Z of index 2", "vc-classifier", _fact_typeii_contains_typei),
        Fact("infinite-order-element", "P_n(RP^2) has an element of infinite order", "p3-model/kernel-action", _fact_infinite_order),
        Fact("central-involution", "the full twist is a central involution", "p3-model/torsion-catalog", _fact_central_involution),
        Fact("amalgam-realized", "two order-4 elements with a common square generate Z4 *_Z2 Z4", "p3-model/torsion-catalog", _fact_amalgam_realized),
    ]
    return {f.key: f for f in facts}


# --- exclusions ------------------------------------------------------------------

def _witness(name: str, n: int) -> str:
    if n == 3:
        return {
            "Z": "(x, 1)",
            "Z2xZ": "(1, -1), (x, 1)",
            "Z4*Z2*Z4": "u = (1, t3), v = (x, t3)",
        }[name]
    from .torsion import element_alpha, element_beta
    from .words import format_word

    return {
        "Z": f"r{n}",
        "Z2xZ": f"Delta^2, r{n}",
        "Z4*Z2*Z4": f"alpha = {format_word(element_alpha(n))}, beta = {format_word(element_beta(n))}",
    }[name]


def _typei_chain(shape: TypeI) -> tuple[str, tuple[Step, ...]]:
    f, d = shape.finite, shape.action_order
    if f == "1":
        return "realized", (Step("realize", ("infinite-order-element",), "Z"),)
    if f == "Z2":
        return "realized", (Step("realize", ("aut-Z2-trivial", "central-involution", "infinite-order-element"), "Z2xZ"),)
    forbid = Step("forbidden-subgroup", ("no-Z4xZ",), "no Z4xZ")
    if f == "Z4":
        if d == 1:
            return "excluded", (forbid,)
        return "excluded", (Step("direct-power", ("aut-Z4-order-2",), "contains Z4 x 2Z = Z4xZ"), forbid)
    if f == "Q8":
        chain = []
        if d != 1:
            chain.append(Step("direct-power", ("aut-Q8-exponent-12",), f"contains Q8 x {d}Z = Q8xZ"))
        chain.append(Step("contains", ("q8-reduction",), "contains Z4xZ"))
        chain.append(forbid)
        return "excluded", tuple(chain)
    raise ValueError(f"no rule for {shape}")


def _typeii_chain(shape: TypeII) -> tuple[str, tuple[Step, ...]]:
    if shape.finite == "1":
        return "excluded", (Step("involutions", ("unique-involution",), "Z2*Z2 has more than one involution"),)
    if shape.finite == "Z2":
        return "realized", (Step("realize", ("amalgam-realized",), "Z4*Z2*Z4"),)
    if shape.finite == "Z4":
        head = Step("index2-typeI", ("typeII-contains-typeI",), "contains Z4:Z")
        _, tail = _typei_chain(TypeI("Z4", 2))
        return "excluded", (head,) + tail
    raise ValueError(f"no rule for {shape}")


def replay_chain(chain: Sequence[Step], facts: Mapping[str, Fact], n: int) -> bool:
    """Re-run every fact check a chain depends on."""
    for step in chain:
        if step.rule not in RULES:
            raise UnknownFact(f"unknown rule {step.rule!r}")
        for key in step.facts:
            if key not in facts:
                raise UnknownFact(key)
            if not facts[key].check(n):
                return False
    return True


@dataclass(frozen=True)
class ClassificationReport:
    n: int
    menu: FiniteSubgroupMenu
    candidates: tuple[VCCandidate, ...]

    @property
    def realized(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.candidates if c.status == "realized")

    def replays(self, facts: Mapping[str, Fact] | None = None) -> bool:
        facts = default_facts() if facts is None else facts
        return all(replay_chain(c.chain, facts, self.n) for c in self.candidates)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "finite_subgroups": list(self.menu.groups),
            "candidates": [c.as_dict() for c in self.candidates],
            "realized": list(self.realized),
        }


def apply_exclusions(
    candidates: Sequence[VCCandidate], facts: Mapping[str, Fact], n: int
) -> ClassificationReport:
    """Settle every candidate; a chain whose facts fail their checks leaves it ``unsettled``."""
    out = []
    for cand in candidates:
        if n <= 2:
            status, chain = "excluded", (Step("finite-ambient", ("finite-ambient",), "P_n finite"),)
        elif isinstance(cand.shape, TypeI):
            status, chain = _typei_chain(cand.shape)
        else:
            status, chain = _typeii_chain(cand.shape)
        if not replay_chain(chain, facts, n):
            status = "unsettled"
        witness = _witness(cand.name, n) if status == "realized" else None
        out.append(VCCandidate(cand.shape, status, chain, witness))
    return ClassificationReport(n, finite_subgroup_menu(n), tuple(out))


def classify(n: int, facts: Mapping[str, Fact] | None = None) -> ClassificationReport:
    facts = default_facts() if facts is None else facts
    menu = finite_subgroup_menu(n)
    return apply_exclusions(wall_candidates(menu), facts, n)


# --- Z4 *_Z2 Z4 ------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class AmalgamElement:
    """``z^delta`` times an alternating string of ``U``, ``V`` (coset representatives ``u``, ``v``)."""

    delta: int
    syllables: str = ""

    def __post_init__(self):
        if self.delta not in (0, 1):
            raise ValueError("delta must be 0 or 1")
        if any(c not in "UV" for c in self.syllables):
            raise ValueError("syllables are U or V")
        if any(a == b for a, b in zip(self.syllables, self.syllables[1:])):
            raise ValueError(f"syllables must alternate: {self.syllables!r}")

    def __mul__(self, other: AmalgamElement) -> AmalgamElement:
        left, right = self.syllables, other.syllables
        delta = self.delta ^ other.delta
        i = 0
        # U U = z = V V, and z is central
        while i < len(left) and i < len(right) and left[-1 - i] == right[i]:
            delta ^= 1
            i += 1
        return AmalgamElement(delta, left[: len(left) - i] + right[i:])

    def inverse(self) -> AmalgamElement:
        # (g1 ... gk)^-1 = gk^-1 ... g1^-1 with U^-1 = z U
        s = self.syllables[::-1]
        return AmalgamElement((self.delta + len(s)) % 2, s)

    def power(self, e: int) -> AmalgamElement:
        base = self if e >= 0 else self.inverse()
        out = AMALGAM_IDENTITY
        for _ in range(abs(e)):
            out = out * base
        return out

    def __str__(self) -> str:
        return f"(delta={self.delta}, {self.syllables or 'e'})"


AMALGAM_IDENTITY = AmalgamElement(0, "")


def amalgam_normal_form(word: Sequence[tuple[str, int]] | str) -> AmalgamElement:
    """Normal form of a word over ``u, v``: pairs ``("u", e)`` or text like ``"u v^-1 u^2"``."""
    if isinstance(word, str):
        word = _parse_uv(word)
    out = AMALGAM_IDENTITY
    for g, e in word:
        if g not in ("u", "v"):
            raise ValueError(f"unknown amalgam generator {g!r}")
        e %= 4
        syl = AmalgamElement(e // 2, g.upper() if e % 2 else "")
        out = out * syl
    return out


def _parse_uv(text: str) -> list[tuple[str, int]]:
    import re

    out = []
    for tok in text.split():
        m = re.fullmatch(r"([uv])(?:\^(-?\d+))?", tok)
        if not m:
            raise ValueError(f"bad amalgam token {tok!r}")
        out.append((m.group(1), int(m.group(2) or 1)))
    return out


def amalgam_normal_forms(max_syllables: int) -> list[AmalgamElement]:
    """All normal forms with at most ``max_syllables`` syllables, shortest first."""
    out = []
    for length in range(max_syllables + 1):
        strings = [""] if length == 0 else sorted({("UV" * length)[:length], ("VU" * length)[:length]})
        for s in strings:
            for delta in (0, 1):
                out.append(AmalgamElement(delta, s))
    return out


def evaluate(x: AmalgamElement, u, v, target):
    z = target.multiply(u, u)
    out = z if x.delta else target.identity
    for c in x.syllables:
        out = target.multiply(out, u if c == "U" else v)
    return out


# --- Type II injectivity -----------------------------------------------------------

@dataclass(frozen=True)
class Injective:
    witness: AmalgamElement
    image: object

    def as_dict(self) -> dict:
        return {"status": "Injective", "witness": str(self.witness), "image": str(self.image)}


@dataclass(frozen=True)
class NotInjective:
    """A nontrivial normal form mapping to the identity."""

    kernel: AmalgamElement

    def as_dict(self) -> dict:
        return {"status": "NotInjective", "kernel": str(self.kernel)}


@dataclass(frozen=True)
class FactorNotInjective:
    reason: str

    def as_dict(self) -> dict:
        return {"status": "FactorNotInjective", "reason": self.reason}


@dataclass(frozen=True)
class NotWellDefined:
    reason: str

    def as_dict(self) -> dict:
        return {"status": "NotWellDefined", "reason": self.reason}


@dataclass(frozen=True)
class Inconclusive:
    reason: str

    def as_dict(self) -> dict:
        return {"status": "Inconclusive", "reason": self.reason}


def type2_injectivity_check(u, v, target, max_syllables: int = 10):
    """Decide whether ``u, v`` induce an embedding of ``Z4 *_Z2 Z4`` into ``target``.

    The map is injective iff its image is infinite, so one infinite-order image
    settles it.  ``u v^-1`` is tried first, then short normal forms in order.
    """
    if not getattr(target, "exact_order", False):
        return Inconclusive("target cannot decide element orders")
    e = target.identity
    mul = target.multiply
    u2, v2 = mul(u, u), mul(v, v)
    if mul(u2, u2) != e or mul(v2, v2) != e:
        return NotWellDefined("u^4 or v^4 is not the identity")
    if u2 != v2:
        return NotWellDefined("u^2 != v^2")
    if target.order(u) != 4 or target.order(v) != 4:
        return FactorNotInjective(f"orders are {target.order(u)} and {target.order(v)}, not 4")
    first = amalgam_normal_form([("u", 1), ("v", -1)])
    candidates = [first] + [x for x in amalgam_normal_forms(max_syllables) if x != first]
    for x in candidates:
        if x == AMALGAM_IDENTITY:
            continue
        img = evaluate(x, u, v, target)
        if img == e:
            return NotInjective(x)
        if target.order(img) == float("inf"):
            return Injective(x, img)
    return Inconclusive(f"no infinite-order image among normal forms with <= {max_syllables} syllables")
