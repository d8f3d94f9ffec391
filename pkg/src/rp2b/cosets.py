"""Todd-Coxeter coset enumeration (HLT strategy) and small-group profiles.

Columns of the coset table are ordered ``g1, g1^-1, g2, g2^-1, ...`` following
the presentation's generator order.  Cosets are numbered from 0 (the subgroup
coset) and renumbered into standard order once the enumeration closes.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Sequence

from .presentation import Presentation
from .words import Letter, Permutation, Word, WordError

DEFAULT_MAX_COSETS = 1_000_000


class CosetOverflow(RuntimeError):
    """Raised when the enumeration exceeds its coset budget (inconclusive)."""

    def __init__(self, limit: int):
        super().__init__(f"coset enumeration exceeded {limit} cosets")
        self.limit = limit


class IncompleteTable(ValueError):
    pass


def default_max_cosets() -> int:
    return int(os.environ.get("RP2B_MAX_COSETS", DEFAULT_MAX_COSETS))


def _column_map(p: Presentation) -> dict[tuple[str, int, int], int]:
    cols = {}
    for g, gen in enumerate(p.generators):
        cols[(gen.kind, gen.index, 1)] = 2 * g
        cols[(gen.kind, gen.index, -1)] = 2 * g + 1
    return cols


def _encode(w: Word, cols) -> list[int]:
    try:
        return [cols[tuple(a)] for a in w.letters]
    except KeyError as exc:
        raise WordError(f"letter {exc.args[0]} is not a generator of the presentation") from None


class _Enumerator:
    """Mutable working state; owned by a single call to :func:`todd_coxeter`."""

    def __init__(self, ncols: int, max_cosets: int):
        self.ncols = ncols
        self.max_cosets = max_cosets
        self.table: list[list[int]] = [[-1] * ncols]
        self.parent = [0]

    def rep(self, k: int) -> int:
        p = self.parent
        root = k
        while p[root] != root:
            root = p[root]
        while p[k] != root:
            p[k], k = root, p[k]
        return root

    def live(self, k: int) -> bool:
        return self.parent[k] == k

    def define(self, a: int, x: int) -> None:
        if len(self.table) >= self.max_cosets:
            raise CosetOverflow(self.max_cosets)
        b = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(b)
        self.table[a][x] = b
        self.table[b][x ^ 1] = a

    def scan_and_fill(self, a: int, w: Sequence[int]) -> None:
        t = self.table
        f, b = a, a
        i, j = 0, len(w) - 1
        while True:
            while i <= j and t[f][w[i]] >= 0:
                f = t[f][w[i]]
                i += 1
            if i > j:
                if f != a:
                    self.coincidence(f, a)
                return
            while j >= i and t[b][w[j] ^ 1] >= 0:
                b = t[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][w[i]] = b
                t[b][w[i] ^ 1] = f
                return
            self.define(f, w[i])

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        a, b = self.rep(k), self.rep(l)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        t = self.table
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(self.ncols):
                d = t[g][x]
                if d < 0:
                    continue
                t[d][x ^ 1] = -1
                mu, nu = self.rep(g), self.rep(d)
                if t[mu][x] >= 0:
                    self._merge(nu, t[mu][x], queue)
                elif t[nu][x ^ 1] >= 0:
                    self._merge(mu, t[nu][x ^ 1], queue)
                else:
                    t[mu][x] = nu
                    t[nu][x ^ 1] = mu

    def run(self, relators: list[list[int]], subgens: list[list[int]]) -> None:
        for h in subgens:
            self.scan_and_fill(0, h)
        a = 0
        while a < len(self.table):
            if self.live(a):
                for r in relators:
                    self.scan_and_fill(a, r)
                    if not self.live(a):
                        break
                if self.live(a):
                    for x in range(self.ncols):
                        if self.table[a][x] < 0:
                            self.define(a, x)
            a += 1

    def standardized(self) -> list[list[int]]:
        """Live cosets renumbered in order of first appearance, scanning rows."""
        t = self.table
        order = [0]
        index = {0: 0}
        k = 0
        while k < len(order):
            row = t[order[k]]
            for x in range(self.ncols):
                c = self.rep(row[x])
                if c not in index:
                    index[c] = len(order)
                    order.append(c)
            k += 1
        return [[index[self.rep(t[c][x])] for x in range(self.ncols)] for c in order]


@dataclass(frozen=True)
class CosetTable:
    presentation: Presentation
    subgroup: tuple[Word, ...]
    rows: tuple[tuple[int, ...], ...]
    status: str = "complete"
    defined: int = 0  # total cosets defined during the run

    @property
    def index(self) -> int:
        return len(self.rows)

    @property
    def columns(self) -> dict:
        return _column_map(self.presentation)

    def is_complete(self) -> bool:
        return self.status == "complete"

    def trace(self, w: Word, start: int = 0) -> int:
        cols = self.columns
        c = start
        for x in _encode(w, cols):
            c = self.rows[c][x]
        return c

    def generator_permutations(self) -> list[tuple[int, ...]]:
        """Right action of each generator on cosets (0-based images)."""
        return [tuple(row[2 * g] for row in self.rows) for g in range(len(self.presentation.generators))]

    def relators_close(self) -> bool:
        cols = self.columns
        for r in self.presentation.relators:
            code = _encode(r, cols)
            for c in range(self.index):
                d = c
                for x in code:
                    d = self.rows[d][x]
                if d != c:
                    return False
        return True


def todd_coxeter(p: Presentation, subgens: Sequence[Word] = (), max_cosets: int | None = None) -> CosetTable:
    """Enumerate the cosets of ``<subgens>`` in the group presented by ``p``.

    Raises :class:`CosetOverflow` when more than ``max_cosets`` cosets are
    defined; that outcome says nothing about finiteness.
    """
    if max_cosets is None:
        max_cosets = default_max_cosets()
    cols = _column_map(p)
    rels = [_encode(r, cols) for r in p.relators if r.letters]
    subs = [_encode(h, cols) for h in subgens]
    e = _Enumerator(2 * len(p.generators), max_cosets)
    e.run(rels, subs)
    rows = tuple(tuple(r) for r in e.standardized())
    return CosetTable(p, tuple(subgens), rows, "complete", len(e.table))


# --- Cayley tables and profiles ------------------------------------------------

@dataclass(frozen=True)
class GroupProfile:
    order: int
    histogram: tuple[tuple[int, int], ...]  # sorted (element order, count)
    center_size: int
    involutions: int

    def __post_init__(self):
        if sum(c for _, c in self.histogram) != self.order:
            raise ValueError("histogram must sum to the group order")

    @property
    def unique_involution(self) -> bool:
        return self.involutions == 1

    def histogram_dict(self) -> dict[int, int]:
        return dict(self.histogram)


@dataclass(frozen=True)
class CayleyTable:
    """Multiplication on the cosets of the trivial subgroup.

    ``reps[c]`` is a shortest (then shortlex) word reaching coset ``c``;
    ``mul[a][b]`` is the element ``reps[a] * reps[b]``.
    """

    table: CosetTable
    reps: tuple[Word, ...]
    mul: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.mul)

    def element(self, w: Word) -> int:
        return self.table.trace(w)

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul[x][g]
            k += 1
        return k

    def profile(self, elements: Sequence[int] | None = None) -> GroupProfile:
        """Profile of the whole group, or of a subset that is a subgroup."""
        els = list(range(self.order)) if elements is None else sorted(elements)
        S = set(els)
        for a in els:
            for b in els:
                if self.mul[a][b] not in S:
                    raise ValueError("elements do not form a subgroup")
        orders = Counter(self.element_order(g) for g in els)
        center = sum(1 for a in els if all(self.mul[a][b] == self.mul[b][a] for b in els))
        return GroupProfile(len(els), tuple(sorted(orders.items())), center, orders.get(2, 0))


def cayley_from(table: CosetTable) -> CayleyTable:
    if not table.is_complete():
        raise IncompleteTable("coset table is not complete")
    if any(h.letters for h in table.subgroup):
        raise IncompleteTable("Cayley table needs the trivial subgroup")
    p = table.presentation
    n = p.strands
    letters = []
    for gen in p.generators:
        letters.append(Letter(gen.kind, gen.index, 1))
        letters.append(Letter(gen.kind, gen.index, -1))
    reps: list[Word | None] = [None] * table.index
    reps[0] = Word.identity(n)
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for x, a in enumerate(letters):
            d = table.rows[c][x]
            if reps[d] is None:
                reps[d] = Word(n, reps[c].letters + (a,))
                queue.append(d)
    mul = tuple(tuple(table.trace(reps[b], a) for b in range(table.index)) for a in range(table.index))
    return CayleyTable(table, tuple(reps), mul)


def element_order_in(cayley: CayleyTable, w: Word) -> int:
    return cayley.element_order(cayley.element(w))


@dataclass(frozen=True)
class Other:
    profile: GroupProfile

    def __str__(self) -> str:
        return "other"


def _symmetric_histogram(m: int) -> tuple[tuple[int, int], ...]:
    counts: Counter = Counter()
    for p in itertools.permutations(range(1, m + 1)):
        counts[Permutation(p).order()] += 1
    return tuple(sorted(counts.items()))


def identify_group(profile: GroupProfile) -> str | Other:
    """Name the group among Z1, Z2, Z4, Q8, Q16, S3, S4 when the profile pins it."""
    h = profile.histogram_dict()
    o = profile.order
    if o == 1:
        return "Z1"
    if o == 2:
        return "Z2"
    if o == 4 and h.get(4, 0) > 0:
        return "Z4"
    if o == 8 and h == {1: 1, 2: 1, 4: 6}:
        return "Q8"
    # Z16 and the generalised quaternion group are the only order-16 groups
    # with one involution.
    if o == 16 and profile.involutions == 1 and h.get(16, 0) == 0:
        return "Q16"
    for m in (3, 4):
        if o == math.factorial(m) and profile.histogram == _symmetric_histogram(m):
            return f"S{m}"
    return Other(profile)


def pure_subgroup_generators(n: int) -> list[Word]:
    """``r_j`` for all ``j`` and ``B_ij = s_j-1...s_i+1 s_i^2 s_i+1^-1...s_j-1^-1``."""
    from .artin import b_generator_in

    gens = [Word.rho(n, j) for j in range(1, n + 1)]
    for j in range(2, n + 1):
        for i in range(1, j):
            gens.append(b_generator_in(i, j, n))
    return gens
