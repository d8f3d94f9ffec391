"""Exact arithmetic in ``P_3(RP^2) = F_2(x, y) semidirect Q_8``.

Free-group words are strings over ``x, X, y, Y`` (capital = inverse), always
freely reduced.  ``Q_8`` elements are ``(sign, axis)`` with axis in
``"1", "i", "j", "k"``; ``t1, t2, t3`` are ``i, j, k``.

The section elements act on the kernel by

    t1: x -> y,    y -> x
    t2: x -> y^-1, y -> x^-1
    t3: x -> x^-1, y -> y^-1

(``t3 = t1 t2``; ``-1`` acts trivially).  Pairs multiply as
``(w1, q1)(w2, q2) = (w1 . q1(w2), q1 q2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

INFINITE = float("inf")

# --- free group F2 ---------------------------------------------------------

_INV = {"x": "X", "X": "x", "y": "Y", "Y": "y"}
LETTERS = "xXyY"


def f2_reduce(w: str) -> str:
    out: list[str] = []
    for c in w:
        if out and out[-1] == _INV[c]:
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def f2_inverse(w: str) -> str:
    return "".join(_INV[c] for c in reversed(w))


def f2_mul(u: str, v: str) -> str:
    # both inputs reduced: cancellation happens only at the junction
    i = 0
    while i < len(u) and i < len(v) and u[-1 - i] == _INV[v[i]]:
        i += 1
    return u[: len(u) - i] + v[i:]


def f2_power(w: str, e: int) -> str:
    base = w if e >= 0 else f2_inverse(w)
    out = ""
    for _ in range(abs(e)):
        out = f2_mul(out, base)
    return out


def parse_f2(text: str) -> str:
    """Accept ``"x y^-1"``, ``"xY"``, ``"x^3"``, or ``"1"``/``"e"``/empty for the identity."""
    text = text.strip()
    if text in ("", "1", "e"):
        return ""
    out = ""
    for tok in re.findall(r"[xyXY](?:\^-?\d+)?|\S", text.replace(" ", "")):
        m = re.fullmatch(r"([xyXY])(?:\^(-?\d+))?", tok)
        if not m:
            raise ValueError(f"bad F2 token {tok!r}")
        e = int(m.group(2) or 1)
        out = f2_mul(out, f2_power(m.group(1), e))
    return out


def format_f2(w: str) -> str:
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        base = w[i].lower()
        e = (j - i) * (1 if w[i].islower() else -1)
        parts.append(base if e == 1 else f"{base}^{e}")
        i = j
    return " ".join(parts)


def reduced_words(max_len: int) -> Iterator[str]:
    """All reduced F2 words of length <= max_len, in shortlex order (x < X < y < Y)."""
    level = [""]
    yield ""
    for _ in range(max_len):
        nxt = []
        for w in level:
            last = _INV[w[-1]] if w else None
            for c in LETTERS:
                if c != last:
                    nxt.append(w + c)
        yield from nxt
        level = nxt


def ball_size(max_len: int) -> int:
    """Number of reduced words of length <= max_len in a rank-2 free group."""
    return 1 + sum(4 * 3 ** (k - 1) for k in range(1, max_len + 1))


# --- Q8 -----------------------------------------------------------------------

_AXIS_MUL = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


@dataclass(frozen=True, order=True)
class Q8Element:
    sign: int
    axis: str

    def __post_init__(self):
        if self.sign not in (1, -1) or self.axis not in ("1", "i", "j", "k"):
            raise ValueError(f"bad Q8 element ({self.sign}, {self.axis})")

    def __mul__(self, other: Q8Element) -> Q8Element:
        s, a = _AXIS_MUL[(self.axis, other.axis)]
        return Q8Element(self.sign * other.sign * s, a)

    def __neg__(self) -> Q8Element:
        return Q8Element(-self.sign, self.axis)

    def inverse(self) -> Q8Element:
        return self if self.axis == "1" else Q8Element(-self.sign, self.axis)

    def order(self) -> int:
        if self.axis != "1":
            return 4
        return 1 if self.sign == 1 else 2

    def is_central(self) -> bool:
        return self.axis == "1"

    def __str__(self) -> str:
        name = {"1": "1", "i": "t1", "j": "t2", "k": "t3"}[self.axis]
        return name if self.sign == 1 else "-" + name


ONE = Q8Element(1, "1")
MINUS_ONE = Q8Element(-1, "1")
TAU1 = Q8Element(1, "i")
TAU2 = Q8Element(1, "j")
TAU3 = Q8Element(1, "k")
Q8 = tuple(Q8Element(s, a) for a in ("1", "i", "j", "k") for s in (1, -1))


def parse_q8(text: str) -> Q8Element:
    t = text.strip()
    sign = 1
    if t.startswith("-"):
        sign, t = -1, t[1:]
    elif t.startswith("+"):
        t = t[1:]
    axis = {"1": "1", "t1": "i", "t2": "j", "t3": "k"}.get(t)
    if axis is None:
        raise ValueError(f"bad Q8 element {text!r}; expected 1, -1, t1, -t1, t2, -t2, t3, -t3")
    return Q8Element(sign, axis)


# images of x and y; -g acts like g
_ACTION = {
    "1": ("x", "y"),
    "i": ("y", "x"),
    "j": ("Y", "X"),
    "k": ("X", "Y"),
}


@lru_cache(maxsize=None)
def _letter_table(axis: str) -> dict[str, str]:
    ix, iy = _ACTION[axis]
    return {"x": ix, "X": f2_inverse(ix), "y": iy, "Y": f2_inverse(iy)}


@lru_cache(maxsize=None)
def _translate_table(axis: str):
    t = _letter_table(axis)
    if all(len(v) == 1 for v in t.values()):
        return str.maketrans(t)
    return None


def act(q: Q8Element, w: str) -> str:
    """``q w q^-1`` computed letterwise, then freely reduced."""
    tr = _translate_table(q.axis)
    if tr is not None:
        # a letter permutation that respects inverses keeps reduced words reduced
        return w.translate(tr)
    t = _letter_table(q.axis)
    return f2_reduce("".join(t[c] for c in w))


# --- P3 elements ----------------------------------------------------------------

@dataclass(frozen=True)
class P3Element:
    w: str
    q: Q8Element

    def __post_init__(self):
        if any(c not in _INV for c in self.w) or f2_reduce(self.w) != self.w:
            raise ValueError(f"F2 part must be a reduced word over x, X, y, Y: {self.w!r}")

    def __mul__(self, other: P3Element) -> P3Element:
        return p3_multiply(self, other)

    def __str__(self) -> str:
        return f"({format_f2(self.w)}, {self.q})"


IDENTITY = P3Element("", ONE)


def p3_multiply(g: P3Element, h: P3Element) -> P3Element:
    return P3Element(f2_mul(g.w, act(g.q, h.w)), g.q * h.q)


def p3_invert(g: P3Element) -> P3Element:
    qi = g.q.inverse()
    return P3Element(act(qi, f2_inverse(g.w)), qi)


def p3_power(g: P3Element, e: int) -> P3Element:
    base = g if e >= 0 else p3_invert(g)
    out = IDENTITY
    for _ in range(abs(e)):
        out = p3_multiply(out, base)
    return out


def p3_order(g: P3Element) -> int | float:
    """Exact order; :data:`INFINITE` when infinite.

    With ``m`` the order of the Q8 part, ``g^m`` lies in the free kernel, which
    is torsion free, so ``g`` has finite order iff ``g^m`` is trivial.
    """
    m = g.q.order()
    if p3_power(g, m) != IDENTITY:
        return INFINITE
    for e in range(1, m + 1):
        if p3_power(g, e) == IDENTITY:
            return e
    raise AssertionError("unreachable")


def parse_p3(text: str) -> P3Element:
    """Grammar ``( <f2-word> , <q8> )``."""
    m = re.fullmatch(r"\s*\(\s*(.*?)\s*,\s*(\S+)\s*\)\s*", text)
    if not m:
        raise ValueError(f"bad P3 element {text!r}; expected '( <f2-word> , <q8> )'")
    return P3Element(parse_f2(m.group(1)), parse_q8(m.group(2)))


def fixed_words_ball(q: Q8Element, radius: int) -> list[str]:
    """Every reduced word of length <= radius with ``act(q, w) == w`` (exhaustive)."""
    if q.is_central():
        raise ValueError(f"{q} is central and fixes every word")
    return [w for w in reduced_words(radius) if act(q, w) == w]


def elements_ball(radius: int) -> Iterator[P3Element]:
    for w in reduced_words(radius):
        for q in Q8:
            yield P3Element(w, q)


def centralizer_ball(g: P3Element, radius: int) -> list[P3Element]:
    """All ``h`` with F2-part of length <= radius commuting with ``g``."""
    return [h for h in elements_ball(radius) if p3_multiply(g, h) == p3_multiply(h, g)]


def involutions_ball(radius: int) -> list[P3Element]:
    return [h for h in elements_ball(radius) if h != IDENTITY and p3_multiply(h, h) == IDENTITY]


@dataclass(frozen=True)
class AmalgamCertificate:
    order_u: int | float
    order_v: int | float
    squares_agree: bool
    order_u_v_inv: int | float
    u_v_inv: P3Element

    def holds(self) -> bool:
        return self.order_u == 4 and self.order_v == 4 and self.squares_agree and self.order_u_v_inv == INFINITE


def amalgam_witness() -> tuple[P3Element, P3Element, AmalgamCertificate]:
    """``u = (1, t3)``, ``v = (x, t3)`` generating a copy of ``Z4 *_Z2 Z4``."""
    u = P3Element("", TAU3)
    v = P3Element("x", TAU3)
    uv = p3_multiply(u, p3_invert(v))
    cert = AmalgamCertificate(p3_order(u), p3_order(v), p3_power(u, 2) == p3_power(v, 2), p3_order(uv), uv)
    return u, v, cert


class P3Target:
    """Decidable-word-problem target for Type II injectivity checks."""

    exact_order = True
    identity = IDENTITY

    @staticmethod
    def multiply(g, h):
        return p3_multiply(g, h)

    @staticmethod
    def invert(g):
        return p3_invert(g)

    @staticmethod
    def order(g):
        return p3_order(g)
