"""Counting words that avoid a set of forbidden length-k patterns.

A word is S-free when none of its length-k windows belongs to S.  Every
pattern of S uses only symbols from a prefix alphabet I of size ``ell``;
symbols outside I (the set J) can never be part of a forbidden window, so
the automata here treat all of J as one reset transition of weight
``q - ell``.  Counting cost is then independent of ``q``.

Two automata are provided:

* :class:`SFreeAutomaton` is the usual trie with failure links over an
  explicit pattern list.
* :class:`LexAutomaton` handles pattern sets made of the first ``s`` words of
  ``I^k`` in lexicographic order.  Its state count is at most ``k^2`` no matter
  how large ``s`` is, which is what lets the parameter sweeps use sets with
  millions of patterns.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, ParameterError
from .words import MAX_ALPHABET, Word

DEAD = -1

# Explicit pattern lists above this size are refused.
MATERIALIZE_CAP = 1 << 20


def _rank(window: Sequence[int], base: int) -> int:
    r = 0
    for a in window:
        r = r * base + a
    return r


@dataclass(frozen=True)
class PatternSet:
    """Forbidden patterns S inside ``I^k`` for an alphabet of size ``q``.

    Build with :meth:`from_patterns` (explicit list) or :meth:`lex_first`
    (the first ``s`` words of ``I^k``, ``I = {0..ell-1}``).
    """

    k: int
    q: int
    alphabet: frozenset
    size: int
    explicit: frozenset | None = None
    _ordered_i: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.k < 1:
            raise ParameterError("pattern length k must be >= 1")
        if not 2 <= self.q <= MAX_ALPHABET:
            raise ParameterError(f"alphabet size {self.q} outside [2, {MAX_ALPHABET}]")
        ell = len(self.alphabet)
        if not 1 <= ell <= self.q - 1:
            raise ParameterError(f"|I| = {ell} must lie in [1, q-1] = [1, {self.q - 1}]")
        if any(not 0 <= a < self.q for a in self.alphabet):
            raise ParameterError("I contains symbols outside the alphabet")
        if not 1 <= self.size <= ell ** self.k:
            raise ParameterError(f"|S| = {self.size} must lie in [1, {ell}^{self.k}]")
        object.__setattr__(self, "_ordered_i", tuple(sorted(self.alphabet)))

    @classmethod
    def from_patterns(cls, k: int, q: int, patterns: Iterable[Sequence[int]],
                      alphabet: Iterable[int] | None = None) -> "PatternSet":
        pats = frozenset(tuple(p) for p in patterns)
        if not pats:
            raise ParameterError("S must be non-empty")
        if any(len(p) != k for p in pats):
            raise ParameterError(f"all patterns must have length k={k}")
        used = frozenset(a for p in pats for a in p)
        i_set = used if alphabet is None else frozenset(alphabet)
        if not used <= i_set:
            raise ParameterError("patterns use symbols outside I")
        return cls(k, q, i_set, len(pats), pats)

    @classmethod
    def lex_first(cls, k: int, q: int, ell: int, s: int) -> "PatternSet":
        return cls(k, q, frozenset(range(ell)), s, None)

    @property
    def ell(self) -> int:
        return len(self.alphabet)

    @property
    def is_lex(self) -> bool:
        return self.explicit is None

    @property
    def is_full(self) -> bool:
        return self.size == self.ell ** self.k

    def __contains__(self, window) -> bool:
        window = tuple(window)
        if len(window) != self.k:
            return False
        if self.explicit is not None:
            return window in self.explicit
        if any(a >= self.ell for a in window):
            return False
        return _rank(window, self.ell) < self.size

    def patterns(self, cap: int = MATERIALIZE_CAP) -> list[tuple[int, ...]]:
        """S as a sorted list of tuples."""
        if self.size > cap:
            raise CapacityError(f"|S| = {self.size} exceeds materialisation cap {cap}")
        if self.explicit is not None:
            return sorted(self.explicit)
        words = itertools.product(self._ordered_i, repeat=self.k)
        return list(itertools.islice(words, self.size))


def _check_alphabet(w: Word, p: PatternSet) -> None:
    if w.q != p.q:
        raise ParameterError(f"alphabet mismatch: word q={w.q}, patterns q={p.q}")


def is_sfree(w: Word, p: PatternSet) -> bool:
    _check_alphabet(w, p)
    s, k = w.symbols, p.k
    return all(s[i:i + k] not in p for i in range(len(s) - k + 1))


# -- failure-link automaton ---------------------------------------------------

class AhoCorasick:
    """Trie of all prefixes of equal-length patterns with total transitions.

    Transitions are stored for symbols of ``alphabet`` only; any other symbol
    returns to the root.  States at depth ``k`` are the match states.
    """

    def __init__(self, patterns: Iterable[Sequence[int]], alphabet: Iterable[int]):
        pats = {tuple(p) for p in patterns}
        if not pats:
            raise ParameterError("automaton needs at least one pattern")
        lengths = {len(p) for p in pats}
        if len(lengths) != 1:
            raise ParameterError("patterns must share one length")
        self.k = lengths.pop()
        self.alphabet = tuple(sorted(set(alphabet)))
        self.prefixes: list[tuple] = [()]
        index = {(): 0}
        children: list[dict] = [{}]
        for p in sorted(pats):
            node = 0
            for depth in range(1, self.k + 1):
                key = p[:depth]
                nxt = index.get(key)
                if nxt is None:
                    nxt = len(self.prefixes)
                    index[key] = nxt
                    self.prefixes.append(key)
                    children.append({})
                    children[node][p[depth - 1]] = nxt
                node = nxt
        self.depth = [len(x) for x in self.prefixes]

        # BFS so that failure targets are finalised before they are used.
        n_states = len(self.prefixes)
        self.fail = [0] * n_states
        self.delta: list[dict] = [dict() for _ in range(n_states)]
        root = self.delta[0]
        for a in self.alphabet:
            root[a] = children[0].get(a, 0)
        queue = deque(children[0].values())
        while queue:
            u = queue.popleft()
            fu = self.fail[u]
            row = self.delta[u]
            for a in self.alphabet:
                c = children[u].get(a)
                if c is None:
                    row[a] = self.delta[fu][a]
                else:
                    self.fail[c] = self.delta[fu][a] if u else 0
                    row[a] = c
                    queue.append(c)

    def __len__(self):
        return len(self.prefixes)

    def is_match(self, state: int) -> bool:
        return self.depth[state] == self.k

    def step(self, state: int, symbol: int) -> int:
        return self.delta[state].get(symbol, 0)

    def find_all(self, text: Sequence[int]) -> list[int]:
        """0-based start positions of every pattern occurrence in ``text``."""
        k = self.k
        delta, depth = self.delta, self.depth
        state = 0
        out = []
        for i, a in enumerate(text):
            state = delta[state].get(a, 0)
            if depth[state] == k:
                out.append(i - k + 1)
        return out


class SFreeAutomaton:
    """Trie automaton for counting S-free words; completing a pattern is fatal.

    ``delta[state]`` maps each I-symbol to the next state or :data:`DEAD`.
    Every J-symbol goes to the root (state 0) and carries weight ``reset_weight``.
    """

    def __init__(self, p: PatternSet):
        ac = AhoCorasick(p.patterns(), p.alphabet)
        keep = [s for s in range(len(ac)) if not ac.is_match(s)]
        renum = {old: new for new, old in enumerate(keep)}
        self.prefixes = [ac.prefixes[s] for s in keep]
        self.delta = [
            {a: renum.get(t, DEAD) for a, t in ac.delta[s].items()} for s in keep
        ]
        self.reset_weight = p.q - p.ell
        self.k = p.k

    def __len__(self):
        return len(self.prefixes)

    def counts(self, r: int) -> list[int]:
        """Per-state numbers of S-free words of length ``r`` (start: root)."""
        vec = [0] * len(self.prefixes)
        vec[0] = 1
        for _ in range(r):
            nxt = [0] * len(vec)
            total = 0
            for s, c in enumerate(vec):
                if not c:
                    continue
                total += c
                for t in self.delta[s].values():
                    if t != DEAD:
                        nxt[t] += c
            nxt[0] += total * self.reset_weight
            vec = nxt
        return vec


# -- compact automaton for lexicographic-prefix pattern sets ------------------

class LexAutomaton:
    """Counts words avoiding the first ``s`` words of ``{0..ell-1}^k``.

    A window belongs to S iff its base-``ell`` value is below ``s``.  Write
    ``s`` with k digits ``d``; a window still in progress is either *tight*
    (equal so far to a prefix of ``d``) or *less* (already strictly below ``d``
    and therefore forbidden as soon as it is completed with I-symbols).  Only
    the longest less-window can complete first, but tight windows older than
    it may still turn less and complete even earlier.  A state is ``(j, m)``:
    j is the longest tight suffix and m the longest less-window (0 for none);
    j is reset to 0 when ``j <= m`` since those windows can no longer matter.

    When ``s = ell^k`` every window over I is forbidden; using a leading digit
    of ``ell`` (larger than any I-symbol) reproduces that.
    """

    def __init__(self, k: int, q: int, ell: int, s: int):
        if not 1 <= s <= ell ** k:
            raise ParameterError("s out of range")
        self.k, self.q, self.ell, self.s = k, q, ell, s
        if s == ell ** k:
            d = [ell] + [0] * (k - 1)
        else:
            d = []
            x = s
            for _ in range(k):
                x, r = divmod(x, ell)
                d.append(r)
            d.reverse()
        self.digits = d

        # Prefix function of d, so border chains of tight suffixes are known.
        pi = [0] * k
        j = 0
        for i in range(1, k):
            while j and d[i] != d[j]:
                j = pi[j - 1]
            if d[i] == d[j]:
                j += 1
            pi[i] = j
        self._pi = pi

        # I-symbols only matter through comparisons with digits: group them
        # into classes with identical behaviour, each with a weight.
        cuts = sorted({x for x in d if x < ell})
        classes = []
        lo = 0
        for v in cuts:
            if v > lo:
                classes.append((lo, v - lo))
            classes.append((v, 1))
            lo = v + 1
        if lo < ell:
            classes.append((lo, ell - lo))
        self.classes = classes

        self.states: list[tuple] = [(0, 0)]
        index = {(0, 0): 0}
        self.delta: list[list[tuple[int, int]]] = []
        i = 0
        while i < len(self.states):
            row = []
            for rep, weight in classes:
                nxt = self._next(self.states[i], rep)
                if nxt is None:
                    row.append((DEAD, weight))
                    continue
                if nxt not in index:
                    index[nxt] = len(self.states)
                    self.states.append(nxt)
                row.append((index[nxt], weight))
            self.delta.append(row)
            i += 1
        self.reset_weight = q - ell

    def _next(self, state, a):
        tight_len, less_len = state
        k, d = self.k, self.digits
        less = less_len + 1 if less_len else 0
        tight = 0
        j = tight_len
        while True:
            if a < d[j]:
                less = max(less, j + 1)
            elif a == d[j] and j + 1 < k:
                tight = max(tight, j + 1)
            if j == 0:
                break
            j = self._pi[j - 1]
        if less >= k:
            return None
        if tight <= less:
            tight = 0
        return (tight, less)

    def __len__(self):
        return len(self.states)

    def counts(self, r: int) -> list[int]:
        vec = [0] * len(self.states)
        vec[0] = 1
        for _ in range(r):
            nxt = [0] * len(vec)
            total = 0
            for s, c in enumerate(vec):
                if not c:
                    continue
                total += c
                for t, w in self.delta[s]:
                    if t != DEAD:
                        nxt[t] += c * w
            nxt[0] += total * self.reset_weight
            vec = nxt
        return vec


def build_automaton(p: PatternSet) -> SFreeAutomaton | LexAutomaton:
    if p.is_lex:
        return LexAutomaton(p.k, p.q, p.ell, p.size)
    return SFreeAutomaton(p)


def count_sfree(p: PatternSet, r: int) -> int:
    """Exact number of S-free words of length ``r`` over ``{0..q-1}``."""
    if r < 0:
        raise ParameterError("length must be >= 0")
    if r < p.k:
        return p.q ** r
    return sum(build_automaton(p).counts(r))


def count_sfree_trie(p: PatternSet, r: int) -> int:
    """Same as :func:`count_sfree` but always through the explicit trie."""
    if r < 0:
        raise ParameterError("length must be >= 0")
    return sum(SFreeAutomaton(p).counts(r))


def sfree_lower_bound(p: PatternSet, r: int) -> int:
    """Union bound ``q^r - (r-k+1)|S| q^(r-k)``; may be negative."""
    if r < p.k:
        raise ParameterError(f"bound needs r >= k (r={r}, k={p.k})")
    return p.q ** r - (r - p.k + 1) * p.size * p.q ** (r - p.k)


def iter_sfree(p: PatternSet, r: int) -> Iterator[tuple[int, ...]]:
    """All S-free words of length ``r`` in lexicographic order."""
    k, q = p.k, p.q
    word: list[int] = []

    def extend():
        if len(word) == r:
            yield tuple(word)
            return
        for a in range(q):
            word.append(a)
            if len(word) < k or tuple(word[-k:]) not in p:
                yield from extend()
            word.pop()

    yield from extend()
