"""Exact C(n, q) for small parameters by maximum-clique search.

Vertices are the bifix-free words of length n (a word that overlaps itself can
never be a codeword); two vertices are adjacent when they do not overlap.
A non-overlapping code is then exactly a clique.  The search is a bitset
branch and bound with greedy colouring bounds, vertices ordered by degree.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction

from .bounds import conjectured_limit, upper_bound
from .constructions import best_theorem3_size
from .errors import CapacityError, ParameterError
from .words import Code

VERTEX_CAP = 4096


@dataclass(frozen=True)
class SearchResult:
    n: int
    q: int
    optimum: int
    witness: Code
    nodes_explored: int
    elapsed: float
    complete: bool = True

    def summary(self) -> str:
        line = f"optimum={self.optimum} nodes={self.nodes_explored} time={self.elapsed * 1000:.0f}"
        return line if self.complete else line + " incomplete=1"


def bifix_free_words(n: int, q: int) -> list[tuple[int, ...]]:
    return [w for w in itertools.product(range(q), repeat=n)
            if all(w[:t] != w[n - t:] for t in range(1, n))]


def compatibility_graph(words: list[tuple]) -> list[int]:
    """Adjacency bitsets: bit j of adj[i] is set iff words i and j do not overlap."""
    n = len(words[0])
    m = len(words)
    by_prefix = [dict() for _ in range(n)]
    by_suffix = [dict() for _ in range(n)]
    for i, w in enumerate(words):
        bit = 1 << i
        for t in range(1, n):
            by_prefix[t][w[:t]] = by_prefix[t].get(w[:t], 0) | bit
            by_suffix[t][w[n - t:]] = by_suffix[t].get(w[n - t:], 0) | bit
    everything = (1 << m) - 1
    adj = []
    for i, w in enumerate(words):
        clash = 1 << i
        for t in range(1, n):
            clash |= by_suffix[t].get(w[:t], 0) | by_prefix[t].get(w[n - t:], 0)
        adj.append(everything & ~clash)
    return adj


def canonical_relabel(w: tuple) -> tuple:
    """Relabel symbols in order of first appearance (0, 1, 2, ...)."""
    seen = {}
    return tuple(seen.setdefault(a, len(seen)) for a in w)


class _OutOfTime(Exception):
    pass


class _MaxClique:
    def __init__(self, adj: list[int], target: int | None, deadline: float | None):
        self.adj = adj
        self.target = target
        self.deadline = deadline
        self.best: list[int] = []
        self.nodes = 0

    def _colour(self, p: int):
        adj = self.adj
        order, colours = [], []
        colour = 0
        while p:
            colour += 1
            avail = p
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail &= ~adj[v] & ~low
                p &= ~low
                order.append(v)
                colours.append(colour)
        return order, colours

    def expand(self, clique: list[int], p: int) -> bool:
        """Returns True once the target size is reached (search can stop)."""
        self.nodes += 1
        if self.deadline is not None and not self.nodes & 15 and time.monotonic() > self.deadline:
            raise _OutOfTime
        order, colours = self._colour(p)
        for i in range(len(order) - 1, -1, -1):
            if len(clique) + colours[i] <= len(self.best):
                return False
            v = order[i]
            clique.append(v)
            newp = p & self.adj[v]
            if newp:
                if self.expand(clique, newp):
                    return True
            elif len(clique) > len(self.best):
                self.best = list(clique)
                if self.target is not None and len(self.best) >= self.target:
                    return True
            clique.pop()
            p &= ~(1 << v)
        return False


def exact_search(n: int, q: int, time_limit: float | None = None,
                 vertex_cap: int = VERTEX_CAP, symmetry: bool = False) -> SearchResult:
    """Maximum non-overlapping code of length n over q symbols.

    ``time_limit`` (seconds) turns an unfinished search into the best code
    found so far with ``complete=False``.  ``symmetry`` restricts the first
    branching vertex to one representative per orbit under symbol
    permutations; any clique can be relabelled to contain one.
    """
    if n < 2 or q < 2:
        raise ParameterError("need n >= 2 and q >= 2")
    if q ** n > vertex_cap:
        raise CapacityError(f"q^n = {q ** n} exceeds vertex cap {vertex_cap}")
    start = time.monotonic()
    deadline = None if time_limit is None else start + time_limit

    words = bifix_free_words(n, q)
    adj0 = compatibility_graph(words)
    # Degree-descending vertex order, ties by lexicographic word order.
    perm = sorted(range(len(words)), key=lambda i: (-bin(adj0[i]).count("1"), i))
    ordered = [words[i] for i in perm]
    adj = compatibility_graph(ordered)

    target = upper_bound(n, q)
    mc = _MaxClique(adj, target, deadline)
    # greedy incumbent in vertex order, so a timed-out search still has a code
    p = (1 << len(ordered)) - 1
    while p:
        v = (p & -p).bit_length() - 1
        mc.best.append(v)
        p &= adj[v]
    complete = True
    everything = (1 << len(ordered)) - 1
    try:
        if symmetry:
            done = 0
            for v, w in enumerate(ordered):
                if canonical_relabel(w) != w:
                    continue
                p = adj[v] & ~done
                if p and mc.expand([v], p):
                    break
                done |= 1 << v
        else:
            mc.expand([], everything)
    except _OutOfTime:
        complete = False
    elapsed = time.monotonic() - start
    witness = Code.from_symbols((ordered[i] for i in mc.best), q=q, n=n)
    return SearchResult(n, q, len(mc.best), witness, mc.nodes, elapsed, complete)


@dataclass(frozen=True)
class Conjecture2Verdict:
    q: int
    optimum: int
    construction: int
    ell: int
    complete: bool = True

    @property
    def equal(self) -> bool:
        return self.optimum == self.construction

    def __str__(self):
        if self.equal:
            return f"q={self.q} EQUAL value={self.optimum} l={self.ell}"
        return f"q={self.q} GAP({self.optimum}, {self.construction}) l={self.ell}"


def check_conjecture2(n: int, qs, **search_kw) -> list[Conjecture2Verdict]:
    """Compare exact C(n, q) with the best k = n-1 code, max over ell of ell^(n-1)(q-ell)."""
    out = []
    for q in qs:
        res = exact_search(n, q, **search_kw)
        size, ell = best_theorem3_size(n, q)
        out.append(Conjecture2Verdict(q, res.optimum, size, ell, res.complete))
    return out


@dataclass(frozen=True)
class Conjecture1Row:
    q: int
    optimum: int
    ratio: Fraction
    limit: Fraction
    trend: str = ""

    def __str__(self):
        return (f"q={self.q} C={self.optimum} ratio={self.ratio} "
                f"({float(self.ratio):.6f}) limit={self.limit} ({float(self.limit):.6f}) {self.trend}").rstrip()


def check_conjecture1(n: int, qs, **search_kw) -> list[Conjecture1Row]:
    """C(n, q)/q^n beside the conjectured limit; trend notes only, no verdicts."""
    limit = conjectured_limit(n)
    rows: list[Conjecture1Row] = []
    for q in qs:
        res = exact_search(n, q, **search_kw)
        ratio = Fraction(res.optimum, q ** n)
        trend = ""
        if rows:
            before = abs(rows[-1].ratio - limit)
            now = abs(ratio - limit)
            trend = "closer" if now < before else "farther" if now > before else "same"
        rows.append(Conjecture1Row(q, res.optimum, ratio, limit, trend))
    return rows
