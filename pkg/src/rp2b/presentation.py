"""Presentations of ``B_n(RP^2)`` and proof-carrying equality search.

The relator families (all read as ``= 1``):

* R1  ``s_i s_j s_i^-1 s_j^-1``                 for ``|i - j| >= 2``
* R2  ``s_i s_i+1 s_i s_i+1^-1 s_i^-1 s_i+1^-1`` (braid relation)
* R3  ``s_i r_j s_i^-1 r_j^-1``                 for ``j`` not in ``{i, i+1}``
* R4  ``r_i+1 s_i r_i^-1 s_i``                  (``r_i+1 = s_i^-1 r_i s_i^-1``)
* R5  ``r_n^2 s_n-1 ... s_2 s_1^2 s_2 ... s_n-1``
* R6  ``r_i+1^-1 r_i^-1 r_i+1 r_i s_i^-2``

Adequacy of this list is checked by coset enumeration (orders 2 and 16 for
``n = 1, 2``; index ``n!`` of the pure subgroup), see ``tests/test_presentation.py``.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .words import (
    RHO,
    SIGMA,
    Generator,
    Letter,
    Word,
    WordError,
    _reduce,
    freely_reduce,
    generators,
    invert,
    letter_key,
    multiply,
    parse_word,
    format_word,
)


def _w(n: int, *letters: tuple[str, int, int]) -> Word:
    return Word(n, tuple(Letter(*a) for a in letters))


@dataclass(frozen=True)
class Presentation:
    strands: int
    generators: tuple[Generator, ...]
    relators: tuple[Word, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        gens = set(self.generators)
        rels = tuple(freely_reduce(r) for r in self.relators)
        for r in rels:
            if r.strands != self.strands:
                raise WordError("relator strand count differs from presentation")
            for a in r.letters:
                if a.generator not in gens:
                    raise WordError(f"relator letter {a} is not a declared generator")
        object.__setattr__(self, "relators", rels)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"rel{k}" for k in range(len(rels))))
        if len(self.labels) != len(rels):
            raise ValueError("one label per relator")


def van_buskirk_presentation(n: int) -> Presentation:
    if n < 1:
        raise WordError(f"n must be >= 1, got {n}")
    rels: list[Word] = []
    labels: list[str] = []
    S, R = SIGMA, RHO
    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append(_w(n, (S, i, 1), (S, j, 1), (S, i, -1), (S, j, -1)))
            labels.append(f"R1({i},{j})")
    for i in range(1, n - 1):
        rels.append(_w(n, (S, i, 1), (S, i + 1, 1), (S, i, 1), (S, i + 1, -1), (S, i, -1), (S, i + 1, -1)))
        labels.append(f"R2({i})")
    for i in range(1, n):
        for j in range(1, n + 1):
            if j in (i, i + 1):
                continue
            rels.append(_w(n, (S, i, 1), (R, j, 1), (S, i, -1), (R, j, -1)))
            labels.append(f"R3({i},{j})")
    for i in range(1, n):
        rels.append(_w(n, (R, i + 1, 1), (S, i, 1), (R, i, -1), (S, i, 1)))
        labels.append(f"R4({i})")
    surface = [(R, n, 1), (R, n, 1)]
    surface += [(S, i, 1) for i in range(n - 1, 1, -1)]
    if n >= 2:
        surface += [(S, 1, 1), (S, 1, 1)]
    surface += [(S, i, 1) for i in range(2, n)]
    rels.append(_w(n, *surface))
    labels.append("R5")
    for i in range(1, n):
        rels.append(_w(n, (R, i + 1, -1), (R, i, -1), (R, i + 1, 1), (R, i, 1), (S, i, -1), (S, i, -1)))
        labels.append(f"R6({i})")
    return Presentation(n, tuple(generators(n)), tuple(rels), tuple(labels))


def parse_presentation(text: str) -> Presentation:
    """Read the text format: one ``strands: <n>`` line, then ``rel: <word>`` lines."""
    n = None
    rels: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, val = line.partition(":")
        key = key.strip()
        if key == "strands":
            n = int(val)
        elif key == "rel":
            rels.append(val.strip())
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    if n is None:
        raise ValueError("missing 'strands: <n>' line")
    return Presentation(n, tuple(generators(n)), tuple(parse_word(r, n) for r in rels))


def format_presentation(p: Presentation) -> str:
    lines = [f"strands: {p.strands}"]
    lines += [f"rel: {format_word(r)}" for r in p.relators]
    return "\n".join(lines) + "\n"


# --- proof traces ----------------------------------------------------------------
#
# A trace edits a word one step at a time:
#   insert  put a cyclic rotation of relator ``relator`` (or of its inverse) at ``position``
#   delete  remove such a rotation found at ``position``
#   reduce  cancel the adjacent inverse pair starting at ``position``
# Inserting or deleting a cyclic rotation of a relator preserves the group element.

DEFAULT_PROOF_DEPTH = 12
DEFAULT_MAX_VISITED = 2_000_000


@dataclass(frozen=True)
class Step:
    kind: str
    position: int
    relator: int | None = None
    inverse: bool = False
    rotation: int = 0

    def as_dict(self) -> dict:
        d = {"kind": self.kind, "position": self.position}
        if self.kind != "reduce":
            d.update(relator=self.relator, inverse=self.inverse, rotation=self.rotation)
        return d


@dataclass(frozen=True)
class ProofTrace:
    start: Word
    steps: tuple[Step, ...]
    end: Word

    @property
    def edits(self) -> int:
        return sum(1 for s in self.steps if s.kind != "reduce")


@dataclass(frozen=True)
class NotFound:
    """Search gave up; this is not a disproof."""

    reason: str
    visited: int
    depth: int
    ceiling: int

    def __bool__(self) -> bool:
        return False


class MalformedTrace(ValueError):
    pass


def relator_rotation(p: Presentation, index: int, inverse: bool, rotation: int) -> tuple[Letter, ...]:
    r = p.relators[index].letters
    if inverse:
        r = tuple(a.inverse() for a in reversed(r))
    k = rotation % len(r) if r else 0
    return r[k:] + r[:k]


def _apply_step(p: Presentation, letters: tuple[Letter, ...], step: Step) -> tuple[Letter, ...] | None:
    """Apply one step; ``None`` if the step is not legal on this word."""
    if not isinstance(step.position, int) or isinstance(step.position, bool) or step.position < 0:
        raise MalformedTrace(f"bad step position {step.position!r}")
    pos = step.position
    if step.kind == "reduce":
        if pos + 1 >= len(letters) or letters[pos] != letters[pos + 1].inverse():
            return None
        return letters[:pos] + letters[pos + 2 :]
    if step.kind not in ("insert", "delete"):
        raise MalformedTrace(f"unknown step kind {step.kind!r}")
    if step.relator is None or not 0 <= step.relator < len(p.relators):
        return None
    if not 0 <= step.rotation < max(len(p.relators[step.relator]), 1):
        return None
    rel = relator_rotation(p, step.relator, step.inverse, step.rotation)
    if step.kind == "insert":
        if pos > len(letters):
            return None
        return letters[:pos] + rel + letters[pos:]
    if letters[pos : pos + len(rel)] != rel or pos + len(rel) > len(letters):
        return None
    return letters[:pos] + letters[pos + len(rel) :]


def check_trace(p: Presentation, t: ProofTrace) -> bool:
    """Replay ``t``; true iff every step is legal and the replay ends at ``t.end``."""
    gens = set(p.generators)
    for w in (t.start, t.end):
        if w.strands != p.strands or any(a.generator not in gens for a in w.letters):
            return False
    cur = t.start.letters
    for step in t.steps:
        nxt = _apply_step(p, cur, step)
        if nxt is None:
            return False
        cur = nxt
    return cur == t.end.letters


def _reduction_steps(letters: tuple[Letter, ...]) -> tuple[list[Step], tuple[Letter, ...]]:
    steps = []
    cur = list(letters)
    i = 0
    while i + 1 < len(cur):
        if cur[i] == cur[i + 1].inverse():
            steps.append(Step("reduce", i))
            del cur[i : i + 2]
            i = max(i - 1, 0)
        else:
            i += 1
    return steps, tuple(cur)


def default_proof_depth() -> int:
    return int(os.environ.get("RP2B_PROOF_DEPTH", DEFAULT_PROOF_DEPTH))


@dataclass(frozen=True)
class _Rule:
    lhs: tuple[Letter, ...]   # subword to replace
    rhs: tuple[Letter, ...]   # replacement
    relator: int
    inverse: bool
    rotation: int             # rotation of the cyclic relator c = lhs + rhs^-1
    split: int                # len(lhs)


def _rules(p: Presentation) -> list[_Rule]:
    """Rewrites ``x -> y^-1`` for every cyclic rotation ``c = x y`` of a relator or its inverse."""
    out = []
    seen = set()
    for ri, r in enumerate(p.relators):
        L = len(r)
        for inv in (False, True):
            for rot in range(L):
                c = relator_rotation(p, ri, inv, rot)
                for k in range(1, L + 1):
                    x, y = c[:k], c[k:]
                    rhs = tuple(a.inverse() for a in reversed(y))
                    if (x, rhs) in seen:
                        continue
                    seen.add((x, rhs))
                    out.append(_Rule(x, rhs, ri, inv, rot, k))
    return out


def _occurrences(word: tuple[Letter, ...], x: tuple[Letter, ...]):
    k = len(x)
    first = x[0]
    for pos in range(len(word) - k + 1):
        if word[pos] == first and word[pos : pos + k] == x:
            yield pos


def _expand_move(p: Presentation, word: tuple[Letter, ...], rule: _Rule, pos: int) -> list[Step]:
    """Concrete trace steps for rewriting ``rule.lhs`` at ``pos`` inside ``word``."""
    L = len(p.relators[rule.relator])
    if rule.split == L:
        steps = [Step("delete", pos, rule.relator, rule.inverse, rule.rotation)]
        cur = word[:pos] + word[pos + L :]
    else:
        # insert c^-1 = y^-1 x^-1 in front of x; x^-1 x then cancels
        rot_inv = (L - rule.rotation) % L
        steps = [Step("insert", pos, rule.relator, not rule.inverse, rot_inv)]
        ins = relator_rotation(p, rule.relator, not rule.inverse, rot_inv)
        cur = word[:pos] + ins + word[pos:]
    red, _ = _reduction_steps(cur)
    return steps + red


def prove_equal(
    p: Presentation,
    u: Word,
    v: Word,
    max_edits: int | None = None,
    max_visited: int = DEFAULT_MAX_VISITED,
    ceiling_step: int = 2,
    max_ceiling: int | None = None,
) -> ProofTrace | NotFound:
    """Search for a relator-edit proof that ``u = v`` in the group presented by ``p``.

    Breadth-first on the number of relator edits, with rules in relator
    declaration order and positions left to right.  Words are kept below a
    length ceiling that starts at the length of ``u v^-1`` (or the longest
    relator) and is raised by ``ceiling_step`` whenever the bounded search space
    is used up.  A success is returned only after :func:`check_trace` accepts it.
    """
    if max_edits is None:
        max_edits = default_proof_depth()
    start = freely_reduce(multiply(u, invert(v)))
    if not start.letters:
        return ProofTrace(start, (), start)
    rules = _rules(p)
    longest = max((len(r) for r in p.relators), default=0)
    ceiling = max(len(start), longest)
    if max_ceiling is None:
        max_ceiling = len(start) + 6 * longest
    visited_total = 0
    depth = 0
    while True:
        found, visited, depth, exhausted = _bfs(p, rules, start.letters, max_edits, ceiling, max_visited - visited_total)
        visited_total += visited
        if found is not None:
            trace = ProofTrace(start, tuple(found), Word(p.strands))
            if not check_trace(p, trace):
                raise AssertionError("search produced an invalid trace")
            return trace
        if visited_total >= max_visited:
            return NotFound("visited budget exhausted", visited_total, depth, ceiling)
        if not exhausted or ceiling >= max_ceiling:
            return NotFound("edit budget exhausted" if not exhausted else "length ceiling exhausted", visited_total, depth, ceiling)
        ceiling += ceiling_step


def _bfs(p, rules, start, max_edits, ceiling, budget):
    """Returns (steps or None, visited, depth reached, space exhausted below ceiling)."""
    parent: dict[tuple, tuple] = {start: None}
    frontier = [start]
    depth = 0
    target = ()
    while frontier and depth < max_edits:
        depth += 1
        nxt = []
        for w in frontier:
            for rule in rules:
                if len(rule.lhs) > len(w):
                    continue
                for pos in _occurrences(w, rule.lhs):
                    new = _reduce(w[:pos] + rule.rhs + w[pos + len(rule.lhs) :])
                    if len(new) > ceiling or new in parent:
                        continue
                    parent[new] = (w, rule, pos)
                    if new == target:
                        return _path(p, parent, new), len(parent), depth, False
                    if len(parent) >= budget:
                        return None, len(parent), depth, False
                    nxt.append(new)
        frontier = nxt
    return None, len(parent), depth, not frontier


def _path(p, parent, end):
    moves = []
    w = end
    while parent[w] is not None:
        prev, rule, pos = parent[w]
        moves.append((prev, rule, pos))
        w = prev
    steps: list[Step] = []
    for prev, rule, pos in reversed(moves):
        steps.extend(_expand_move(p, prev, rule, pos))
    return steps
