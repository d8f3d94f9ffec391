"""Words in the generators of the braid groups of the projective plane.

``B_n(RP^2)`` is generated by the Artin generators ``s1 .. s(n-1)`` and the
generators ``r1 .. rn`` (one per strand, going around the cross-cap).  A
:class:`Word` is a finite sequence of letters, each carrying exponent +1 or -1,
together with the strand count ``n`` it lives in.

Two homomorphisms are computable without solving a word problem:
the permutation of the strands and the abelianisation onto ``Z2 x Z2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple

SIGMA = "s"
RHO = "r"


class Generator(NamedTuple):
    kind: str
    index: int

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"


class Letter(NamedTuple):
    kind: str
    index: int
    exp: int

    @property
    def generator(self) -> Generator:
        return Generator(self.kind, self.index)

    def inverse(self) -> Letter:
        return Letter(self.kind, self.index, -self.exp)

    def __str__(self) -> str:
        return f"{self.kind}{self.index}" if self.exp == 1 else f"{self.kind}{self.index}^-1"


class WordError(ValueError):
    pass


def generators(n: int) -> list[Generator]:
    """Generators of ``B_n(RP^2)`` in declaration order (sigmas, then rhos)."""
    if n < 1:
        raise WordError(f"strand count must be positive, got {n}")
    return [Generator(SIGMA, i) for i in range(1, n)] + [Generator(RHO, j) for j in range(1, n + 1)]


def _check_letter(letter: Letter, n: int) -> None:
    if letter.exp not in (1, -1):
        raise WordError(f"letter exponent must be +1 or -1: {letter!r}")
    if letter.kind == SIGMA:
        if not 1 <= letter.index <= n - 1:
            raise WordError(f"s{letter.index} is not a generator for n={n}")
    elif letter.kind == RHO:
        if not 1 <= letter.index <= n:
            raise WordError(f"r{letter.index} is not a generator for n={n}")
    else:
        raise WordError(f"unknown generator kind {letter.kind!r}")


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for a in letters:
        if out and out[-1].kind == a.kind and out[-1].index == a.index and out[-1].exp == -a.exp:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    strands: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise WordError(f"strand count must be positive, got {self.strands}")
        letters = tuple(Letter(*a) for a in self.letters)
        for a in letters:
            _check_letter(a, self.strands)
        object.__setattr__(self, "letters", letters)

    @classmethod
    def identity(cls, n: int) -> Word:
        return cls(n, ())

    @classmethod
    def sigma(cls, n: int, i: int, exp: int = 1) -> Word:
        return cls(n, (Letter(SIGMA, i, 1 if exp > 0 else -1),) * abs(exp))

    @classmethod
    def rho(cls, n: int, j: int, exp: int = 1) -> Word:
        return cls(n, (Letter(RHO, j, 1 if exp > 0 else -1),) * abs(exp))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: Word) -> Word:
        return multiply(self, other)

    def __pow__(self, e: int) -> Word:
        return power(self, e)

    def __str__(self) -> str:
        return format_word(self)

    def is_reduced(self) -> bool:
        return _reduce(self.letters) == self.letters

    def is_sigma_only(self) -> bool:
        return all(a.kind == SIGMA for a in self.letters)


def freely_reduce(w: Word) -> Word:
    return Word(w.strands, _reduce(w.letters))


def _same_strands(u: Word, v: Word) -> None:
    if u.strands != v.strands:
        raise WordError(f"strand counts differ: {u.strands} vs {v.strands}")


def multiply(u: Word, v: Word) -> Word:
    _same_strands(u, v)
    return Word(u.strands, _reduce(u.letters + v.letters))


def invert(w: Word) -> Word:
    return Word(w.strands, _reduce(a.inverse() for a in reversed(w.letters)))


def power(w: Word, e: int) -> Word:
    base = w if e >= 0 else invert(w)
    return Word(w.strands, _reduce(base.letters * abs(e)))


def conjugate(w: Word, g: Word) -> Word:
    """``w g w^-1``."""
    return multiply(multiply(w, g), invert(w))


def product(words: Iterable[Word], n: int) -> Word:
    out = Word.identity(n)
    for w in words:
        out = multiply(out, w)
    return out


def letter_key(a: Letter) -> tuple[int, int, int]:
    """Sort key: s1 < s2 < ... < r1 < r2 < ..., positive before negative."""
    return (0 if a.kind == SIGMA else 1, a.index, 0 if a.exp > 0 else 1)


def shortlex_key(w: Word) -> tuple:
    return (len(w.letters), tuple(letter_key(a) for a in w.letters))


# --- text grammar --------------------------------------------------------

_TOKEN = re.compile(r"^([sr])(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str, n: int) -> Word:
    """Parse ``"s2^-1 s1^-1 r1"``; ``"e"`` (or blank) is the empty word.

    Exponents expand into repeated letters; the result is not reduced.
    """
    letters: list[Letter] = []
    for tok in text.split():
        if tok == "e":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise WordError(f"bad token {tok!r}; expected s<i>, r<j>, optional ^<int>, or e")
        kind, idx, exp = m.group(1), int(m.group(2)), int(m.group(3) or 1)
        a = Letter(kind, idx, 1 if exp > 0 else -1)
        letters.extend([a] * abs(exp))
    return Word(n, tuple(letters))


def format_word(w: Word) -> str:
    if not w.letters:
        return "e"
    return " ".join(str(a) for a in w.letters)


def format_compressed(w: Word) -> str:
    """Display form with runs collapsed: ``s1 s1 r2^-1`` -> ``s1^2 r2^-1``."""
    if not w.letters:
        return "e"
    parts = []
    i = 0
    L = w.letters
    while i < len(L):
        j = i
        while j < len(L) and L[j] == L[i]:
            j += 1
        e = L[i].exp * (j - i)
        name = f"{L[i].kind}{L[i].index}"
        parts.append(name if e == 1 else f"{name}^{e}")
        i = j
    return " ".join(parts)


# --- permutations ----------------------------------------------------------

@dataclass(frozen=True)
class Permutation:
    """A permutation of ``{1..n}``; ``images[i-1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def then(self, other: Permutation) -> Permutation:
        """Apply ``self`` first, then ``other``."""
        return Permutation(tuple(other(self(i)) for i in range(1, self.size + 1)))

    def inverse(self) -> Permutation:
        inv = [0] * self.size
        for i, j in enumerate(self.images, 1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.size + 1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least element, sorted."""
        seen = set()
        out = []
        for i in range(1, self.size + 1):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self(i)
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        from math import lcm

        return lcm(1, *(len(c) for c in self.cycles()))

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def transposition(n: int, i: int, j: int) -> Permutation:
    images = list(range(1, n + 1))
    images[i - 1], images[j - 1] = j, i
    return Permutation(tuple(images))


def permutation_of(w: Word) -> Permutation:
    """Strand permutation, letters acting left to right on positions.

    ``images[i-1]`` is the final position of the strand starting at ``i``, so
    ``permutation_of(u * v) == permutation_of(u).then(permutation_of(v))``.
    """
    n = w.strands
    strand_at = list(range(n + 1))  # strand_at[pos] = strand currently at pos
    for a in w.letters:
        if a.kind == SIGMA:
            i = a.index
            strand_at[i], strand_at[i + 1] = strand_at[i + 1], strand_at[i]
    images = [0] * n
    for pos in range(1, n + 1):
        images[strand_at[pos] - 1] = pos
    return Permutation(tuple(images))


class AbelianImage(NamedTuple):
    eps_sigma: int
    eps_rho: int

    def __add__(self, other):  # type: ignore[override]
        return AbelianImage((self.eps_sigma + other.eps_sigma) % 2, (self.eps_rho + other.eps_rho) % 2)

    def __str__(self) -> str:
        return f"({self.eps_sigma}, {self.eps_rho})"


def abelianize(w: Word) -> AbelianImage:
    """Image in ``Z2 x Z2``: (sigma-exponent sum, rho-exponent sum) mod 2."""
    s = sum(a.exp for a in w.letters if a.kind == SIGMA)
    r = sum(a.exp for a in w.letters if a.kind == RHO)
    return AbelianImage(s % 2, r % 2)
