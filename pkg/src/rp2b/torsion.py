"""Torsion elements of ``B_n(RP^2)``: named elements, Murasugi families, orders.

Up to conjugacy every finite-order element is a power of one of the canonical
representatives ``A_i(n, r, 2r/l, p/l)`` with ``p = n - r`` (family 1) or
``n - r - 1`` (family 2) and ``l = gcd(p, 2r)``; that representative has order
``2l``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from .words import (
    RHO,
    SIGMA,
    AbelianImage,
    Letter,
    Word,
    WordError,
    abelianize,
    freely_reduce,
    multiply,
    permutation_of,
    power,
)


class TorsionError(ValueError):
    pass


def approx_related(a: int, b: int, c: int, d: int) -> bool:
    """``(a, b) ~ (c, d)``: some ``(m, k) != (0, 0)`` has ``m (a, b) = k (c, d)``.

    Such a pair exists iff the 2x2 determinant ``ad - bc`` vanishes: if it is
    zero, ``(m, k) = (c, a)`` or ``(d, b)`` works unless all four entries
    vanish, where ``(1, 0)`` does.
    """
    return a * d - b * c == 0


def approx_related_brute(a: int, b: int, c: int, d: int, bound: int = 50) -> bool:
    for m in range(-bound, bound + 1):
        for k in range(-bound, bound + 1):
            if (m, k) != (0, 0) and m * a == k * c and m * b == k * d:
                return True
    return False


def approx_related_search(a: int, b: int, c: int, d: int, bound: int = 50) -> bool:
    """Same search as :func:`approx_related_brute`, scanning ``m`` and solving for ``k``."""
    if (c, d) == (0, 0):
        return True  # (m, k) = (0, 1)
    for m in range(-bound, bound + 1):
        x, y = m * a, m * b
        den, num = (c, x) if c else (d, y)
        if num % den:
            continue
        k = num // den
        if abs(k) <= bound and (m, k) != (0, 0) and k * c == x and k * d == y:
            return True
    return False


# --- named elements -----------------------------------------------------------

def _need(n: int, lo: int, what: str) -> None:
    if n < lo:
        raise TorsionError(f"{what} needs n >= {lo}, got {n}")


def element_a(n: int) -> Word:
    """``a = s_n-1^-1 ... s_1^-1 r_1`` (order ``4n``)."""
    _need(n, 2, "a")
    return Word(n, tuple(Letter(SIGMA, i, -1) for i in range(n - 1, 0, -1)) + (Letter(RHO, 1, 1),))


def element_b(n: int) -> Word:
    """``b = s_n-2^-1 ... s_1^-1 r_1`` (order ``4(n-1)``)."""
    _need(n, 2, "b")
    return Word(n, tuple(Letter(SIGMA, i, -1) for i in range(n - 2, 0, -1)) + (Letter(RHO, 1, 1),))


def full_twist(n: int) -> Word:
    """``Delta^2 = (s_1 ... s_n-1)^n``."""
    _need(n, 1, "full twist")
    if n == 1:
        return Word(1)
    return power(Word(n, tuple(Letter(SIGMA, i, 1) for i in range(1, n))), n)


def element_alpha(n: int) -> Word:
    """``alpha = a^n``, written as ``r_n ... r_1``."""
    _need(n, 2, "alpha")
    return Word(n, tuple(Letter(RHO, j, 1) for j in range(n, 0, -1)))


def element_beta(n: int) -> Word:
    """``beta = b^(n-1)``, written as ``r_n-1 ... r_1``."""
    _need(n, 2, "beta")
    return Word(n, tuple(Letter(RHO, j, 1) for j in range(n - 1, 0, -1)))


# --- Murasugi families ----------------------------------------------------------

def _p(family: int, n: int, r: int) -> int:
    return n - r if family == 1 else n - r - 1


@dataclass(frozen=True)
class TorsionSpec:
    family: int
    n: int
    r: int
    s: int
    q: int

    def __post_init__(self):
        if self.family not in (1, 2):
            raise TorsionError(f"family must be 1 or 2, got {self.family}")
        if self.n < 2:
            raise TorsionError(f"n must be >= 2, got {self.n}")
        rmax = self.n if self.family == 1 else self.n - 1
        if not 0 <= self.r <= rmax:
            raise TorsionError(f"r must lie in 0..{rmax} for family {self.family}, got {self.r}")
        if self.r == 0 and self.s != 0:
            raise TorsionError("r = 0 forces s = 0")
        if self.p == 0 and self.q != 0:
            raise TorsionError("p = 0 forces q = 0")
        if not approx_related(self.p, self.q, 2 * self.r, self.s):
            raise TorsionError(f"(p, q) = ({self.p}, {self.q}) is not ~ (2r, s) = ({2 * self.r}, {self.s})")

    @property
    def p(self) -> int:
        return _p(self.family, self.n, self.r)

    @property
    def l(self) -> int:
        return gcd(self.p, 2 * self.r)

    def is_canonical(self) -> bool:
        l = self.l
        return l > 0 and self.s == 2 * self.r // l and self.q == self.p // l

    def __str__(self) -> str:
        return f"A{self.family}({self.n},{self.r},{self.s},{self.q})"


def xi_word(n: int, r: int) -> Word:
    """``xi = r_r s_r-1 ... s_1`` (empty for ``r = 0``)."""
    if r == 0:
        return Word(n)
    return Word(n, (Letter(RHO, r, 1),) + tuple(Letter(SIGMA, i, 1) for i in range(r - 1, 0, -1)))


def omega_word(family: int, n: int, r: int) -> Word:
    """``s_r+1 ... s_n-1`` (family 1) or ``s_r+1 ... s_n-1 s_r+1`` (family 2)."""
    letters = [Letter(SIGMA, i, 1) for i in range(r + 1, n)]
    if family == 2:
        if r + 1 > n - 1:
            raise TorsionError("family-2 omega needs r <= n - 2")
        letters.append(Letter(SIGMA, r + 1, 1))
    return Word(n, tuple(letters))


def murasugi_element(spec: TorsionSpec) -> Word:
    """The literal word ``xi^s omega^q``."""
    n, r = spec.n, spec.r
    xs = power(xi_word(n, r), spec.s) if spec.s else Word(n)
    om = power(omega_word(spec.family, n, r), spec.q) if spec.q else Word(n)
    return Word(n, xs.letters + om.letters)


def canonical_spec(family: int, n: int, r: int) -> TorsionSpec:
    p = _p(family, n, r)
    l = gcd(p, 2 * r)
    if l == 0:
        raise TorsionError("degenerate (p, r) = (0, 0)")
    return TorsionSpec(family, n, r, 2 * r // l, p // l)


def canonical_torsion_reps(n: int) -> list[tuple[TorsionSpec, int]]:
    """Canonical representatives with their orders, sorted by (family, r)."""
    _need(n, 2, "torsion catalog")
    out = []
    for family, rmax in ((1, n), (2, n - 1)):
        for r in range(rmax + 1):
            spec = canonical_spec(family, n, r)
            out.append((spec, torsion_order(spec)))
    return out


def torsion_order(spec: TorsionSpec) -> int:
    """``2 gcd(p, 2r)`` for a canonical spec."""
    if not spec.is_canonical():
        raise TorsionError(f"{spec} is not canonical (s = 2r/l, q = p/l)")
    return 2 * spec.l


def l1(n: int, r: int) -> int:
    return gcd(2 * r, n - r)


def l2(n: int, r: int) -> int:
    return gcd(2 * r, n - r - 1)


def order_formula_knr(n: int, r: int) -> int:
    """Order ``2 l1(n, r)`` of the family-1 representative via the ``k`` case split."""
    if n < 2 or not 0 <= r <= n:
        raise TorsionError(f"need n >= 2 and 0 <= r <= n, got n={n}, r={r}")
    k = (n - r) // 2 if n % 2 == 0 and r % 2 == 0 else n - r
    if k % 2 == 1:
        return 2 * gcd(n, r)
    return 4 * gcd(n, k)


def catalog_orders(n: int) -> set[int]:
    return {order for _, order in canonical_torsion_reps(n)}


def divisors(m: int) -> set[int]:
    return {d for d in range(1, m + 1) if m % d == 0}


def power_order(order: int, e: int) -> int:
    """Order of ``y^e`` when ``y`` has the given finite order."""
    return order // gcd(order, e)


# --- order-4 pure braids -------------------------------------------------------

class Order4Class(enum.Enum):
    ALPHA = "AlphaClass"
    BETA = "BetaClass"


CERTIFICATE_SOURCES = ("coset-enum", "p3-model", "catalog")


@dataclass(frozen=True)
class OrderCertificate:
    """A claim that some element has a given finite order, with its provenance.

    ``catalog`` certificates record the representative and exponent they come
    from so the claimed order can be recomputed.
    """

    order: int
    source: str
    detail: str = ""
    spec: TorsionSpec | None = None
    exponent: int = 1

    def verify(self) -> bool:
        if self.source not in CERTIFICATE_SOURCES or self.order < 1:
            return False
        if self.source == "catalog":
            if self.spec is None:
                return False
            return power_order(torsion_order(self.spec), self.exponent) == self.order
        return True


def catalog_certificate(spec: TorsionSpec, exponent: int = 1) -> OrderCertificate:
    order = power_order(torsion_order(spec), exponent)
    return OrderCertificate(order, "catalog", f"{spec}^{exponent}", spec, exponent)


def alpha_certificate(n: int) -> OrderCertificate:
    """``alpha = a^n`` with ``a = A1(n, n, 1, 0)``."""
    return catalog_certificate(canonical_spec(1, n, n), n)


def beta_certificate(n: int) -> OrderCertificate:
    """``beta = b^(n-1)`` with ``b = A2(n, n-1, 1, 0)``."""
    return catalog_certificate(canonical_spec(2, n, n - 1), n - 1)


def full_twist_certificate(n: int) -> OrderCertificate:
    """``Delta^2 = A1(n, n-1, 2(n-1), 1)``."""
    return catalog_certificate(canonical_spec(1, n, n - 1), 1)


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class Rejection:
    reason: str
    order: int | None = None

    def __str__(self) -> str:
        return f"rejected: {self.reason}"


def order4_class_of(w: Word, certificate: OrderCertificate | None) -> Order4Class | Rejection:
    """Which of ``alpha``, ``beta`` (up to inverse) a certified order-4 pure braid matches.

    Discriminates by the abelianisation: ``alpha -> (0, n mod 2)``,
    ``beta -> (0, (n-1) mod 2)``.
    """
    if certificate is None or not certificate.verify():
        raise CertificateError("order4_class_of needs a valid order certificate")
    if certificate.order != 4:
        return Rejection(f"certified order is {certificate.order}, not 4", certificate.order)
    if not permutation_of(w).is_identity():
        return Rejection("not a pure braid", certificate.order)
    n = w.strands
    ab = abelianize(w)
    if ab == AbelianImage(0, n % 2):
        return Order4Class.ALPHA
    if ab == AbelianImage(0, (n - 1) % 2):
        return Order4Class.BETA
    return Rejection(f"abelian image {ab} matches neither alpha nor beta", certificate.order)


def divisor_closure(n: int) -> set[int]:
    """Orders of all powers of the canonical representatives."""
    out: set[int] = set()
    for _, order in canonical_torsion_reps(n):
        out |= divisors(order)
    return out


def pure_power_orders(spec: TorsionSpec) -> set[int]:
    """Orders of the powers ``y^e`` of the representative that are pure braids."""
    order = torsion_order(spec)
    m = permutation_of(murasugi_element(spec)).order()
    return {power_order(order, e) for e in range(0, order, m)}


def purity_pattern_holds(n: int) -> bool:
    """Order-4 pure powers occur exactly for ``(1, r=n)`` and ``(2, r=n-1)``; others reach only orders 1 and 2."""
    for spec, _ in canonical_torsion_reps(n):
        orders = pure_power_orders(spec)
        special = (spec.family, spec.r) in ((1, n), (2, n - 1))
        if special and orders != {1, 2, 4}:
            return False
        if not special and not orders <= {1, 2}:
            return False
    return True
