"""Conjugation action of the order-4 braids on the free kernel of ``P_n+1 -> P_n``.

The kernel of forgetting the last strand is free of rank ``n`` on
``r = rho_n+1`` and ``B_i = B_{i,n+1}`` for ``1 <= i <= n-1``.  Letters are
signed integers: ``1`` is ``r``, ``i + 1`` is ``B_i``, negatives are inverses.

Conjugation by ``alpha^-1`` acts as ``inner(r^2) o phi`` and conjugation by
``beta^-1`` as ``inner(r) o phi``, where

    phi(r)   = r^-1
    phi(B_i) = B_1 ... B_i-1 B_i^-1 B_i-1^-1 ... B_1^-1.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

DEFAULT_RADIUS = 6

RHO = 1


def B(i: int) -> int:
    """Letter code of ``B_i``."""
    return i + 1


class RankError(ValueError):
    pass


def _reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def _join(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    """Product of two reduced letter tuples."""
    i = 0
    m = min(len(u), len(v))
    while i < m and u[-1 - i] == -v[i]:
        i += 1
    return u[: len(u) - i] + v[i:]


def _inverse(u: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-a for a in reversed(u))


def letter_name(a: int) -> str:
    base = "r" if abs(a) == 1 else f"B{abs(a) - 1}"
    return base if a > 0 else base + "^-1"


@dataclass(frozen=True)
class FreeWord:
    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        letters = _reduce(self.letters)
        for a in letters:
            if a == 0 or abs(a) > self.rank:
                raise RankError(f"letter {a} outside rank {self.rank}")
        object.__setattr__(self, "letters", letters)

    def __mul__(self, other: FreeWord) -> FreeWord:
        _same_rank(self.rank, other.rank)
        return FreeWord(self.rank, _join(self.letters, other.letters))

    def inverse(self) -> FreeWord:
        return FreeWord(self.rank, _inverse(self.letters))

    def __pow__(self, e: int) -> FreeWord:
        base = self.letters if e >= 0 else _inverse(self.letters)
        return FreeWord(self.rank, base * abs(e))

    def __len__(self) -> int:
        return len(self.letters)

    def has(self, g: int) -> bool:
        return any(abs(a) == g for a in self.letters)

    def __str__(self) -> str:
        return format_free(self)


def _same_rank(a: int, b: int) -> None:
    if a != b:
        raise RankError(f"rank mismatch: {a} vs {b}")


def gen(rank: int, g: int, e: int = 1) -> FreeWord:
    return FreeWord(rank, (g if e > 0 else -g,) * abs(e))


def format_free(w: FreeWord) -> str:
    if not w.letters:
        return "1"
    parts = []
    L = w.letters
    i = 0
    while i < len(L):
        j = i
        while j < len(L) and L[j] == L[i]:
            j += 1
        base = letter_name(abs(L[i]))
        e = (j - i) * (1 if L[i] > 0 else -1)
        parts.append(base if e == 1 else f"{base}^{e}")
        i = j
    return " ".join(parts)


_FTOKEN = re.compile(r"^(r|B(\d+))(?:\^(-?\d+))?$")


def parse_free(text: str, rank: int) -> FreeWord:
    """Parse ``"r^2 B1^-1 r^-2"``; ``"1"`` or blank is the identity."""
    letters: list[int] = []
    for tok in text.split():
        if tok in ("1", "e"):
            continue
        m = _FTOKEN.match(tok)
        if not m:
            raise ValueError(f"bad token {tok!r}; expected r or B<i>, optional ^<int>")
        g = RHO if m.group(1) == "r" else B(int(m.group(2)))
        e = int(m.group(3) or 1)
        letters.extend([g if e > 0 else -g] * abs(e))
    return FreeWord(rank, tuple(letters))


# --- automorphisms -----------------------------------------------------------

class NotAnAutomorphism(ValueError):
    pass


def _apply_images(images: Sequence[tuple[int, ...]], letters: Iterable[int]) -> tuple[int, ...]:
    out: tuple[int, ...] = ()
    for a in letters:
        img = images[a - 1] if a > 0 else _inverse(images[-a - 1])
        out = _join(out, img)
    return out


@dataclass(frozen=True)
class FreeAut:
    """A certified automorphism: images and inverse images of every generator."""

    rank: int
    images: tuple[tuple[int, ...], ...]
    inverse_images: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        if len(self.images) != self.rank or len(self.inverse_images) != self.rank:
            raise RankError("one image per generator")
        for g in range(1, self.rank + 1):
            if _apply_images(self.images, self.inverse_images[g - 1]) != (g,):
                raise NotAnAutomorphism(f"{self.name or 'map'}: f(f^-1({letter_name(g)})) != {letter_name(g)}")
            if _apply_images(self.inverse_images, self.images[g - 1]) != (g,):
                raise NotAnAutomorphism(f"{self.name or 'map'}: f^-1(f({letter_name(g)})) != {letter_name(g)}")

    @classmethod
    def from_images(cls, rank: int, images: Sequence[FreeWord], name: str = "", max_order: int = 24) -> FreeAut:
        """Build from images alone; the inverse is found as a power if the map has finite order."""
        imgs = tuple(_reduce(w.letters) for w in images)
        gens = tuple((g,) for g in range(1, rank + 1))
        cur = imgs
        prev = gens
        for _ in range(max_order):
            if cur == gens:
                return cls(rank, imgs, prev, name)
            prev = cur
            cur = tuple(_apply_images(imgs, c) for c in cur)
        raise NotAnAutomorphism(f"{name or 'map'}: no inverse found among powers up to {max_order}")

    def image(self, g: int) -> FreeWord:
        return FreeWord(self.rank, self.images[g - 1])

    def __call__(self, w: FreeWord) -> FreeWord:
        return apply(self, w)

    def is_identity(self) -> bool:
        return all(img == (g,) for g, img in enumerate(self.images, 1))

    def table(self) -> list[tuple[str, str]]:
        return [(letter_name(g), format_free(self.image(g))) for g in range(1, self.rank + 1)]


def apply(aut: FreeAut, w: FreeWord) -> FreeWord:
    _same_rank(aut.rank, w.rank)
    return FreeWord(aut.rank, _apply_images(aut.images, w.letters))


def compose(a: FreeAut, b: FreeAut, name: str = "") -> FreeAut:
    """``a o b``: apply ``b`` first."""
    _same_rank(a.rank, b.rank)
    imgs = tuple(_apply_images(a.images, img) for img in b.images)
    inv = tuple(_apply_images(b.inverse_images, img) for img in a.inverse_images)
    return FreeAut(a.rank, imgs, inv, name)


def identity_aut(n: int) -> FreeAut:
    gens = tuple((g,) for g in range(1, n + 1))
    return FreeAut(n, gens, gens, "id")


def inner(w: FreeWord, name: str = "") -> FreeAut:
    """``x -> w x w^-1``."""
    u, ui = w.letters, _inverse(w.letters)
    imgs = tuple(_join(_join(u, (g,)), ui) for g in range(1, w.rank + 1))
    inv = tuple(_join(_join(ui, (g,)), u) for g in range(1, w.rank + 1))
    return FreeAut(w.rank, imgs, inv, name or f"inner({format_free(w)})")


def _conj_chain(lo: int, i: int) -> tuple[int, ...]:
    """``B_lo ... B_i-1 B_i^-1 B_i-1^-1 ... B_lo^-1``."""
    prefix = tuple(B(k) for k in range(lo, i))
    return _join(_join(prefix, (-B(i),)), _inverse(prefix))


def phi(n: int) -> FreeAut:
    if n < 1:
        raise RankError("rank must be >= 1")
    imgs = [(-RHO,)] + [_conj_chain(1, i) for i in range(1, n)]
    return FreeAut.from_images(n, [FreeWord(n, t) for t in imgs], "phi")


def phi_prime(n: int) -> FreeAut:
    """``B_1 -> B_1^-1``, ``B_i -> B_2...B_i-1 B_i^-1 B_i-1^-1...B_2^-1``.

    Defined on ``K = <B_1..B_n-1>``; extended to the whole kernel by fixing ``r``.
    """
    if n < 2:
        raise RankError("phi' needs rank >= 2")
    imgs = [(RHO,), (-B(1),)] + [_conj_chain(2, i) for i in range(2, n)]
    return FreeAut.from_images(n, [FreeWord(n, t) for t in imgs], "phi'")


def conj_alpha_inv(n: int) -> FreeAut:
    """Conjugation by ``alpha^-1``: ``inner(r^2) o phi``."""
    return compose(inner(gen(n, RHO, 2)), phi(n), "alpha^-1")


def conj_beta_inv(n: int) -> FreeAut:
    """Conjugation by ``beta^-1``: ``inner(r) o phi``."""
    return compose(inner(gen(n, RHO, 1)), phi(n), "beta^-1")


def named_aut(name: str, n: int) -> FreeAut:
    table = {"alpha": conj_alpha_inv, "beta": conj_beta_inv, "phi": phi, "phi-prime": phi_prime, "id": identity_aut}
    try:
        return table[name](n)
    except KeyError:
        raise ValueError(f"unknown automorphism {name!r}; choose from {sorted(table)}") from None


# --- syllables ------------------------------------------------------------------

@dataclass(frozen=True)
class SyllableDecomposition:
    """``w = g^e0 m1 g^e1 ... mk g^ek`` with each middle ``m_j`` g-free and nontrivial.

    ``k = len(middles)``; interior exponents are nonzero.  A g-free nonempty
    word has ``k = 1`` and ``e0 = e1 = 0``; a pure power of ``g`` has ``k = 0``.
    """

    g: int
    exponents: tuple[int, ...]
    middles: tuple[FreeWord, ...]

    def __post_init__(self):
        if len(self.exponents) != len(self.middles) + 1:
            raise ValueError("need exactly one more exponent than middles")
        if any(e == 0 for e in self.exponents[1:-1]):
            raise ValueError("interior exponents must be nonzero")
        if any(not m.letters or m.has(self.g) for m in self.middles):
            raise ValueError("middles must be nontrivial and free of the distinguished generator")

    @property
    def k(self) -> int:
        return len(self.middles)

    def word(self, rank: int) -> FreeWord:
        out = gen(rank, self.g, self.exponents[0])
        for m, e in zip(self.middles, self.exponents[1:]):
            out = out * m * gen(rank, self.g, e)
        return out


def syllable_decompose(w: FreeWord, g: int) -> SyllableDecomposition:
    L = w.letters
    exps: list[int] = []
    mids: list[FreeWord] = []
    i = 0

    def run_of_g(i: int) -> tuple[int, int]:
        e = 0
        while i < len(L) and abs(L[i]) == g:
            e += 1 if L[i] > 0 else -1
            i += 1
        return e, i

    e, i = run_of_g(i)
    exps.append(e)
    while i < len(L):
        j = i
        while j < len(L) and abs(L[j]) != g:
            j += 1
        mids.append(FreeWord(w.rank, L[i:j]))
        e, i = run_of_g(j)
        exps.append(e)
    return SyllableDecomposition(g, tuple(exps), tuple(mids))


def predicted_exponents(which: str, dec: SyllableDecomposition) -> tuple[int, ...]:
    """Exponents of the ``r``-syllables of the image under conjugation by ``alpha^-1`` or ``beta^-1``.

    ``phi`` negates every exponent and keeps the middles r-free and nontrivial,
    so only the outer conjugation by ``r^c`` (``c = 2`` or ``1``) touches the ends.
    """
    if dec.g != RHO:
        raise ValueError("the laws concern r-syllables")
    if dec.k < 1:
        raise ValueError("the laws need at least one middle")
    c = {"alpha": 2, "beta": 1}[which]
    e = dec.exponents
    inner_ = tuple(-x for x in e[1:-1])
    return (c - e[0],) + inner_ + (-e[-1] - c,)


def check_syllable_law(which: str, w: FreeWord) -> bool:
    dec = syllable_decompose(w, RHO)
    img = apply(named_aut(which, w.rank), w)
    got = syllable_decompose(img, RHO)
    return got.k == dec.k and got.exponents == predicted_exponents(which, dec)


# --- fixed points -------------------------------------------------------------

def default_radius() -> int:
    return int(os.environ.get("RP2B_BALL_RADIUS", DEFAULT_RADIUS))


def alphabet(rank: int) -> list[int]:
    """Canonical letter order: r, r^-1, B1, B1^-1, ..."""
    out = []
    for g in range(1, rank + 1):
        out += [g, -g]
    return out


def ball(rank: int, radius: int):
    """Reduced words of length <= radius in shortlex order, as letter tuples."""
    level = [()]
    yield ()
    letters = alphabet(rank)
    for _ in range(radius):
        nxt = [w + (a,) for w in level for a in letters if not w or w[-1] != -a]
        yield from nxt
        level = nxt


def fixed_points_ball(aut: FreeAut, radius: int | None = None) -> list[FreeWord]:
    """Every reduced word of length <= radius fixed by ``aut`` (exhaustive).

    Images are built incrementally: the image of ``w a`` is the image of ``w``
    times the image of ``a``.
    """
    if radius is None:
        radius = default_radius()
    n = aut.rank
    letters = alphabet(n)
    img_of = {a: (aut.images[a - 1] if a > 0 else _inverse(aut.images[-a - 1])) for a in letters}
    found = [FreeWord(n, ())]
    level: list[tuple[tuple[int, ...], tuple[int, ...]]] = [((), ())]
    for _ in range(radius):
        nxt = []
        for w, im in level:
            last = w[-1] if w else 0
            for a in letters:
                if a == -last:
                    continue
                w2 = w + (a,)
                im2 = _join(im, img_of[a])
                if im2 == w2:
                    found.append(FreeWord(n, w2))
                nxt.append((w2, im2))
        level = nxt
    return found
