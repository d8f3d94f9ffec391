"""Left normal form in the Artin braid group ``B_m``.

Inclusion of a disc induces a homomorphism ``B_m -> B_m(RP^2)``, so two
sigma-only words with equal Artin normal forms are equal in the surface braid
group as well.  The converse fails (the full twist has infinite order in
``B_m`` but order 2 in ``B_m(RP^2)``), so ``artin_equal(...) == False`` is only
the absence of a certificate.

Simple braids are stored as permutations in one-line notation, 0-based:
``perm[k]`` is the value at position ``k``.  Right multiplication by the
generator ``s_i`` swaps positions ``i-1, i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .words import SIGMA, Letter, Permutation, Word, WordError

Perm = tuple[int, ...]


def _identity(m: int) -> Perm:
    return tuple(range(m))


def _delta(m: int) -> Perm:
    return tuple(range(m - 1, -1, -1))


def _compose(u: Perm, v: Perm) -> Perm:
    """Product ``u v`` (as braids: first ``u``, then ``v``)."""
    return tuple(u[k] for k in v)


def _inverse(u: Perm) -> Perm:
    inv = [0] * len(u)
    for k, x in enumerate(u):
        inv[x] = k
    return tuple(inv)


def _length(u: Perm) -> int:
    m = len(u)
    return sum(1 for a in range(m) for b in range(a + 1, m) if u[a] > u[b])


def _right_descents(u: Perm) -> frozenset[int]:
    """Generators ``s_i`` (1-based) with ``u s_i`` shorter, i.e. the finishing set."""
    return frozenset(i for i in range(1, len(u)) if u[i - 1] > u[i])


def _left_descents(u: Perm) -> frozenset[int]:
    """Generators ``s_i`` with ``s_i u`` shorter, i.e. the starting set."""
    return _right_descents(_inverse(u))


def _times_s(u: Perm, i: int) -> Perm:
    v = list(u)
    v[i - 1], v[i] = v[i], v[i - 1]
    return tuple(v)


def _s_times(i: int, u: Perm) -> Perm:
    """``s_i u``: swap the values ``i-1`` and ``i``."""
    a, b = i - 1, i
    return tuple(b if x == a else a if x == b else x for x in u)


@lru_cache(maxsize=1 << 14)
def _tau(u: Perm) -> Perm:
    """Conjugation by the half twist: ``Delta^-1 u Delta``."""
    m = len(u)
    return tuple(m - 1 - u[m - 1 - k] for k in range(m))


@dataclass(frozen=True)
class PermutationBraid:
    perm: Perm

    @property
    def size(self) -> int:
        return len(self.perm)

    def as_permutation(self) -> Permutation:
        """Strand permutation in the convention of :func:`rp2b.words.permutation_of`."""
        # one-line perm[k] = strand at final position k
        images = [0] * len(self.perm)
        for pos, strand in enumerate(self.perm):
            images[strand] = pos + 1
        return Permutation(tuple(images))

    def word(self) -> Word:
        """A positive word for the simple braid (reduced expression)."""
        letters = []
        u = self.perm
        while True:
            d = sorted(_left_descents(u))
            if not d:
                break
            i = d[0]
            letters.append(Letter(SIGMA, i, 1))
            u = _s_times(i, u)
        m = max(len(self.perm), 2)
        return Word(m, tuple(letters))

    def __str__(self) -> str:
        return str(self.as_permutation())


@dataclass(frozen=True)
class GarsideNF:
    strands: int
    halftwist_power: int
    factors: tuple[PermutationBraid, ...]

    def __post_init__(self):
        idt, dlt = _identity(self.strands), _delta(self.strands)
        for f in self.factors:
            if f.perm == idt or f.perm == dlt:
                raise ValueError("normal form factors must be proper simple braids")
        for a, b in zip(self.factors, self.factors[1:]):
            if not _left_descents(b.perm) <= _right_descents(a.perm):
                raise ValueError("adjacent factors are not left-weighted")

    def word(self) -> Word:
        m = self.strands
        # Delta as a positive word
        delta = PermutationBraid(_delta(m)).word() if m > 1 else Word(max(m, 2))
        from .words import power, multiply

        out = power(delta, self.halftwist_power)
        for f in self.factors:
            out = multiply(out, f.word())
        return out

    def __str__(self) -> str:
        fs = " ".join(str(f) for f in self.factors) or "-"
        return f"Delta^{self.halftwist_power} | {fs}"


@lru_cache(maxsize=1 << 16)
def _left_weight(a: Perm, b: Perm) -> tuple[Perm, Perm]:
    """Slide generators from ``b`` onto ``a`` until ``S(b)`` lies in ``F(a)``."""
    a_, binv = list(a), list(_inverse(b))
    m = len(a_)
    i = 1
    while i < m:
        # s_i starts b but does not finish a: move it across
        if binv[i - 1] > binv[i] and a_[i - 1] < a_[i]:
            a_[i - 1], a_[i] = a_[i], a_[i - 1]
            binv[i - 1], binv[i] = binv[i], binv[i - 1]
            i = max(i - 1, 1)
        else:
            i += 1
    return tuple(a_), _inverse(tuple(binv))


def _push(factors: list[Perm], x: Perm) -> None:
    """Append ``x`` to a left-weighted list, restoring left-weightedness right to left."""
    factors.append(x)
    k = len(factors) - 1
    while k > 0:
        a, b = _left_weight(factors[k - 1], factors[k])
        if a == factors[k - 1]:
            break
        factors[k - 1], factors[k] = a, b
        k -= 1


def _normalize(factors: list[Perm], m: int) -> tuple[int, list[Perm]]:
    """Strip half twists (only ever at the front) and identities (only at the back)."""
    idt, dlt = _identity(m), _delta(m)
    k = 0
    while k < len(factors) and factors[k] == dlt:
        k += 1
    rest = [f for f in factors[k:] if f != idt]
    return k, rest


def _check_sigma_only(w: Word, m: int) -> None:
    if m < 1:
        raise WordError("strand count must be positive")
    for a in w.letters:
        if a.kind != SIGMA:
            raise WordError(f"Artin normal form needs sigma-only words; found {a}")
        if not 1 <= a.index <= m - 1:
            raise WordError(f"s{a.index} is not a generator of B_{m}")


def left_normal_form(w: Word, m: int | None = None) -> GarsideNF:
    m = w.strands if m is None else m
    _check_sigma_only(w, m)
    if m == 1:
        return GarsideNF(1, 0, ())
    power = 0
    factors: list[Perm] = []
    dlt = _delta(m)
    for a in w.letters:
        if a.exp > 0:
            _push(factors, _times_s(_identity(m), a.index))
        else:
            # x s_i^-1 = x Delta^-1 (Delta s_i^-1) = Delta^-1 tau(x) (Delta s_i^-1)
            factors = [_tau(f) for f in factors]
            power -= 1
            _push(factors, _times_s(dlt, a.index))
    k, rest = _normalize(factors, m)
    return GarsideNF(m, power + k, tuple(PermutationBraid(f) for f in rest))


def artin_equal(u: Word, v: Word, m: int | None = None) -> bool:
    m = u.strands if m is None else m
    return left_normal_form(u, m) == left_normal_form(v, m)


def b_generator_in(i: int, j: int, n: int) -> Word:
    """``B_ij = s_j-1 ... s_i+1 s_i^2 s_i+1^-1 ... s_j-1^-1`` inside ``n`` strands."""
    if not (1 <= i < j <= n):
        raise WordError(f"B_{{{i},{j}}} needs 1 <= i < j <= {n}")
    up = [Letter(SIGMA, k, 1) for k in range(j - 1, i, -1)]
    down = [Letter(SIGMA, k, -1) for k in range(i + 1, j)]
    return Word(n, tuple(up + [Letter(SIGMA, i, 1)] * 2 + down))


def b_generator(i: int, m: int) -> Word:
    """``B_{i,m} = s_m-1 ... s_i+1 s_i^2 s_i+1^-1 ... s_m-1^-1``."""
    if not 1 <= i <= m - 1:
        raise WordError(f"B_{{{i},{m}}} needs 1 <= i <= {m - 1}")
    return b_generator_in(i, m, m)
