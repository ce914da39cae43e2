"""Words, codes and the overlap predicates they are judged by.

A word is a fixed-length tuple of symbols from ``{0, ..., q-1}``.  Two words
``u`` and ``v`` overlap when a non-empty proper prefix of one equals a
non-empty proper suffix of the other; a code is non-overlapping (also called
cross-bifix-free) when no pair of its words, a word with itself included,
overlaps.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ParameterError

MAX_ALPHABET = 1 << 16


@dataclass(frozen=True, order=True)
class Word:
    symbols: tuple[int, ...]
    q: int

    def __post_init__(self):
        if not isinstance(self.symbols, tuple):
            object.__setattr__(self, "symbols", tuple(self.symbols))
        if not 2 <= self.q <= MAX_ALPHABET:
            raise ParameterError(f"alphabet size {self.q} outside [2, {MAX_ALPHABET}]")
        if not self.symbols:
            raise ParameterError("words must have length >= 1")
        for s in self.symbols:
            if not 0 <= s < self.q:
                raise ParameterError(f"symbol {s} outside alphabet of size {self.q}")

    @classmethod
    def parse(cls, text: str, q: int) -> "Word":
        """Read ``"0 1 1"`` (space separated) or ``"011"`` (one digit per symbol)."""
        text = text.strip()
        parts = text.split() if " " in text else list(text)
        try:
            return cls(tuple(int(p) for p in parts), q)
        except ValueError as exc:
            raise ParameterError(f"cannot parse word {text!r}") from exc

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, item):
        return self.symbols[item]

    def __str__(self):
        if self.q <= 10:
            return "".join(map(str, self.symbols))
        return " ".join(map(str, self.symbols))


def _check_pair(u: Word, v: Word) -> None:
    if len(u) != len(v):
        raise ParameterError(f"length mismatch: {len(u)} vs {len(v)}")
    if u.q != v.q:
        raise ParameterError(f"alphabet mismatch: {u.q} vs {v.q}")
    if len(u) < 2:
        raise ParameterError("overlap is only defined for words of length >= 2")


def overlap_lengths(u: Word, v: Word) -> list[int]:
    """All t in 1..n-1 where prefix_t(u) == suffix_t(v) or prefix_t(v) == suffix_t(u)."""
    _check_pair(u, v)
    a, b = u.symbols, v.symbols
    n = len(a)
    return [t for t in range(1, n) if a[:t] == b[n - t:] or b[:t] == a[n - t:]]


def is_overlapping_pair(u: Word, v: Word) -> bool:
    _check_pair(u, v)
    a, b = u.symbols, v.symbols
    n = len(a)
    for t in range(1, n):
        if a[:t] == b[n - t:] or b[:t] == a[n - t:]:
            return True
    return False


def is_bifix_free(w: Word) -> bool:
    """True when no non-empty proper prefix of ``w`` is also a suffix of it."""
    if len(w) < 2:
        raise ParameterError("bifix-freeness needs length >= 2")
    s = w.symbols
    n = len(s)
    return all(s[:t] != s[n - t:] for t in range(1, n))


@dataclass(frozen=True)
class Code:
    """A set of words sharing one length ``n`` and alphabet size ``q``.

    Words are kept sorted lexicographically; use :meth:`of` or
    :meth:`from_symbols` to build one from unsorted or duplicated input.
    """

    n: int
    q: int
    words: tuple[Word, ...]
    _members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        words = tuple(self.words)
        for w in words:
            if len(w) != self.n or w.q != self.q:
                raise ParameterError(f"word {w} does not match (n={self.n}, q={self.q})")
        for a, b in zip(words, words[1:]):
            if not a < b:
                raise ParameterError("code words must be sorted and distinct")
        object.__setattr__(self, "words", words)
        object.__setattr__(self, "_members", frozenset(w.symbols for w in words))

    @classmethod
    def of(cls, words: Iterable[Word], n: int | None = None, q: int | None = None) -> "Code":
        ws = sorted(set(words))
        if ws:
            n = len(ws[0]) if n is None else n
            q = ws[0].q if q is None else q
        if n is None or q is None:
            raise ParameterError("empty code needs explicit n and q")
        return cls(n, q, tuple(ws))

    @classmethod
    def from_symbols(cls, rows: Iterable[Sequence[int]], q: int, n: int | None = None) -> "Code":
        return cls.of((Word(tuple(r), q) for r in rows), n=n, q=q)

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, item):
        if isinstance(item, Word):
            return item.q == self.q and item.symbols in self._members
        return tuple(item) in self._members

    @property
    def symbol_set(self) -> frozenset:
        return self._members


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    u: Word | None = None
    v: Word | None = None
    t: int | None = None

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "PASS"
        return f"FAIL u={self.u} v={self.v} t={self.t}"


def verify_code(code: Code) -> VerifyReport:
    """Check that no two words of ``code`` (equal words included) overlap.

    Failure reports the first ordered pair ``(u, v)`` in lexicographic order
    together with the smallest overlap length ``t``.
    """
    if len(code) == 0:
        raise ParameterError("cannot verify an empty code")
    n = code.n
    if n < 2:
        raise ParameterError("overlap is only defined for words of length >= 2")
    rows = [w.symbols for w in code.words]

    # Fast path: the code is non-overlapping iff, for every t, the sets of
    # length-t prefixes and length-t suffixes are disjoint.
    clean = True
    for t in range(1, n):
        prefixes = {r[:t] for r in rows}
        if any(r[n - t:] in prefixes for r in rows):
            clean = False
            break
    if clean:
        return VerifyReport(True)

    # Smallest word index carrying each prefix / suffix, per length.
    min_by_suffix: list[dict] = [{} for _ in range(n)]
    min_by_prefix: list[dict] = [{} for _ in range(n)]
    for idx, r in enumerate(rows):
        for t in range(1, n):
            min_by_suffix[t].setdefault(r[n - t:], idx)
            min_by_prefix[t].setdefault(r[:t], idx)
    for i, r in enumerate(rows):
        best = None
        for t in range(1, n):
            for j in (min_by_suffix[t].get(r[:t]), min_by_prefix[t].get(r[n - t:])):
                if j is not None and (best is None or j < best):
                    best = j
        if best is not None:
            u, v = code.words[i], code.words[best]
            return VerifyReport(False, u, v, overlap_lengths(u, v)[0])
    raise AssertionError("unreachable: fast path found an overlap")


def cyclic_occurrences(code: Code, w: Word) -> list[int]:
    """1-based start positions i whose cyclic length-n window of ``w`` lies in ``code``.

    ``w`` must have length exactly ``2n - 1``.
    """
    n = code.n
    if len(w) != 2 * n - 1:
        raise ParameterError(f"expected a word of length {2 * n - 1}, got {len(w)}")
    if w.q != code.q:
        raise ParameterError(f"alphabet mismatch: {w.q} vs {code.q}")
    doubled = w.symbols + w.symbols
    m = len(w)
    return [i + 1 for i in range(m) if doubled[i:i + n] in code.symbol_set]


# -- code files ---------------------------------------------------------------

def dumps_code(code: Code, comments: Iterable[str] = ()) -> str:
    lines = [f"{code.n} {code.q}"]
    lines += [c if c.startswith("#") else f"# {c}" for c in comments]
    lines += [" ".join(map(str, w.symbols)) for w in code.words]
    return "\n".join(lines) + "\n"


def loads_code(text: str) -> Code:
    rows = []
    header = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values = [int(x) for x in line.split()]
        except ValueError as exc:
            raise ParameterError(f"line {lineno}: not integers: {line!r}") from exc
        if header is None:
            if len(values) != 2:
                raise ParameterError(f"line {lineno}: header must be 'n q'")
            header = values
            continue
        if len(values) != header[0]:
            raise ParameterError(f"line {lineno}: expected {header[0]} symbols")
        rows.append(tuple(values))
    if header is None:
        raise ParameterError("code file has no 'n q' header")
    n, q = header
    return Code.from_symbols(rows, q=q, n=n)


def load_code(path: str | Path) -> Code:
    return loads_code(Path(path).read_text())


def save_code(path: str | Path, code: Code, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(dumps_code(code, comments))
