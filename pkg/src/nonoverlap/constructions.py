"""Prefix-anchored non-overlapping codes and their parameter recipes.

Every code built here has the shape ``p + (j,) + m + (j',)`` where

* ``p`` is a pattern from S, a subset of ``I^k``;
* ``j`` and ``j'`` are symbols of J, the complement of I;
* ``m`` is an S-free word of length ``n - k - 2``.

For ``k = n - 1`` the two J positions coincide and codewords are ``p + (j,)``.
I is always ``{0, ..., ell-1}``: any other choice is a relabelling.
The zero-run construction is the special case ``ell = 1``, ``S = {0^k}``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError, ParameterError, RecipeInfeasible
from .sfree import PatternSet, count_sfree, iter_sfree
from .words import Code, Word

ENUM_CAP = 10 ** 6
S_RULES = ("lex", "full", "explicit")


def floor_log(x: int, base: int) -> int:
    """Largest e with base**e <= x (x >= 1)."""
    e, p = 0, 1
    while p * base <= x:
        p *= base
        e += 1
    return e


def ceil_log(x: int, base: int) -> int:
    """Smallest e with base**e >= x (x >= 1)."""
    e, p = 0, 1
    while p < x:
        p *= base
        e += 1
    return e


def iroot_ceil(x: int, k: int) -> int:
    """Smallest integer r >= 0 with r**k >= x."""
    if x <= 0:
        return 0
    r = int(round(x ** (1.0 / k))) if x < 1 << 1000 else 1 << (x.bit_length() // k)
    while r ** k < x:
        r += 1
    while r > 0 and (r - 1) ** k >= x:
        r -= 1
    return r


@dataclass(frozen=True)
class ConstructionParams:
    n: int
    q: int
    k: int
    ell: int
    s: int
    s_rule: str = "lex"
    patterns: tuple | None = None

    def __post_init__(self):
        n, q, k, ell = self.n, self.q, self.k, self.ell
        if n < 2 or q < 2:
            raise ParameterError(f"need n >= 2 and q >= 2, got n={n}, q={q}")
        if not 1 <= k <= n - 1:
            raise ParameterError(f"k={k} outside [1, n-1] = [1, {n - 1}]")
        if not 1 <= ell <= q - 1:
            raise ParameterError(f"ell={ell} outside [1, q-1] = [1, {q - 1}]")
        if self.s_rule not in S_RULES:
            raise ParameterError(f"unknown S rule {self.s_rule!r}")
        if self.s_rule == "explicit":
            if not self.patterns:
                raise ParameterError("explicit S rule needs patterns")
            pats = tuple(sorted({tuple(p) for p in self.patterns}))
            if any(len(p) != k or any(not 0 <= a < ell for a in p) for p in pats):
                raise ParameterError("patterns must be length-k words over {0..ell-1}")
            object.__setattr__(self, "patterns", pats)
            if self.s != len(pats):
                raise ParameterError(f"s={self.s} but {len(pats)} patterns given")
        elif self.patterns is not None:
            raise ParameterError("patterns are only accepted with the explicit rule")
        if self.s_rule == "full" and self.s != ell ** k:
            raise ParameterError("full S rule needs s = ell^k")
        if not 1 <= self.s <= ell ** k:
            raise ParameterError(f"s={self.s} outside [1, ell^k] = [1, {ell ** k}]")

    @classmethod
    def full(cls, n: int, q: int, k: int, ell: int) -> "ConstructionParams":
        return cls(n, q, k, ell, ell ** k, "full")

    @classmethod
    def explicit(cls, n: int, q: int, k: int, ell: int, patterns) -> "ConstructionParams":
        pats = tuple(sorted({tuple(p) for p in patterns}))
        return cls(n, q, k, ell, len(pats), "explicit", pats)

    def pattern_set(self) -> PatternSet:
        if self.s_rule == "explicit":
            return PatternSet.from_patterns(self.k, self.q, self.patterns,
                                            alphabet=range(self.ell))
        return PatternSet.lex_first(self.k, self.q, self.ell, self.s)

    def header(self, scheme: str = "c2") -> str:
        return (f"# construction={scheme} n={self.n} q={self.q} "
                f"k={self.k} l={self.ell} s={self.s}")


@dataclass(frozen=True)
class ConstructionResult:
    params: ConstructionParams
    size: int
    code: Code | None = None
    scheme: str = "c2"


def size_c2(p: ConstructionParams) -> int:
    j = p.q - p.ell
    if p.k == p.n - 1:
        return p.s * j
    return p.s * j * j * count_sfree(p.pattern_set(), p.n - p.k - 2)


def _enumerate(p: ConstructionParams) -> Code:
    ps = p.pattern_set()
    jset = range(p.ell, p.q)
    heads = ps.patterns()
    words = []
    if p.k == p.n - 1:
        rows = (h + (j,) for h in heads for j in jset)
    else:
        middles = list(iter_sfree(ps, p.n - p.k - 2))
        rows = (h + (j,) + m + (jn,)
                for h in heads for j in jset for m in middles for jn in jset)
    # nested loops over sorted components already give lexicographic order
    for r in rows:
        words.append(Word(r, p.q))
    return Code(p.n, p.q, tuple(words))


def construct_c2(p: ConstructionParams, enumerate: bool = False,
                 cap: int = ENUM_CAP, scheme: str = "c2") -> ConstructionResult:
    size = size_c2(p)
    code = None
    if enumerate:
        if size > cap:
            raise CapacityError(f"code size {size} exceeds enumeration cap {cap}")
        code = _enumerate(p)
    return ConstructionResult(p, size, code, scheme)


def c1_params(n: int, q: int, k: int) -> ConstructionParams:
    return ConstructionParams(n, q, k, 1, 1, "lex")


def construct_c1(n: int, q: int, k: int, enumerate: bool = False,
                 cap: int = ENUM_CAP) -> ConstructionResult:
    """Words ``0^k a m b`` with ``a, b != 0`` and no ``0^k`` inside ``m``."""
    return construct_c2(c1_params(n, q, k), enumerate, cap, scheme="c1")


def select_params_lemma2(n: int, q: int) -> ConstructionParams:
    """Zero-run code with k next to log_q(2n), rounding up on ties."""
    if n < 2 or q < 2:
        raise ParameterError("need n >= 2 and q >= 2")
    hi = ceil_log(2 * n, q)
    lo = floor_log(2 * n, q)
    candidates = [k for k in (hi, lo) if 1 <= k <= n - 1]
    if not candidates:
        return c1_params(n, q, min(max(hi, 1), n - 1))
    # max() keeps the first maximal element, so hi wins ties
    best = max(dict.fromkeys(candidates), key=lambda k: size_c2(c1_params(n, q, k)))
    return c1_params(n, q, best)


def thm6_values(n: int, q: int, k: int | None = None) -> tuple[int, int, int]:
    """(k, s, ell) with k = ceil(log2 2n), s = floor(q^k / 2n), ell = ceil(s^(1/k))."""
    if k is None:
        k = (2 * n - 1).bit_length()
    s = q ** k // (2 * n)
    return k, s, iroot_ceil(s, k)


def select_params_thm6(n: int, q: int) -> ConstructionParams:
    if n < 2 or q < 2:
        raise ParameterError("need n >= 2 and q >= 2")
    k, s, ell = thm6_values(n, q)
    if not (k <= n - 1 and 1 <= ell <= q - 1 and s >= 1):
        raise RecipeInfeasible(f"recipe gives k={k}, s={s}, l={ell} for n={n}, q={q}")
    return ConstructionParams(n, q, k, ell, s, "lex")


def _candidates(n: int, q: int, budget: int):
    for k in range(1, n):
        ells = {-(-(n - 1) * q // n)}
        _, s6, ell6 = thm6_values(n, q, k)
        if s6 >= 1:
            ells.add(ell6)
        if q <= budget:
            ells.update(range(1, q))
        for ell in sorted(e for e in ells if 1 <= e <= q - 1):
            full = ell ** k
            yield ConstructionParams(n, q, k, ell, full, "full")
            if k < n - 1 and 1 <= s6 < full:
                yield ConstructionParams(n, q, k, ell, s6, "lex")


def select_params_best(n: int, q: int, budget: int = 64) -> ConstructionResult:
    """Largest code over a sweep of (k, ell, s); ties go to smaller k, ell, s."""
    if n < 2 or q < 2:
        raise ParameterError("need n >= 2 and q >= 2")
    best = None
    best_key = None
    for p in _candidates(n, q, budget):
        size = size_c2(p)
        key = (size, -p.k, -p.ell, -p.s)
        if best_key is None or key > best_key:
            best, best_key = p, key
    return ConstructionResult(best, best_key[0])


def theorem3_size(n: int, q: int, ell: int) -> int:
    """Size of the k = n-1, S = I^k code: ell^(n-1) (q - ell)."""
    return ell ** (n - 1) * (q - ell)


def best_theorem3_size(n: int, q: int) -> tuple[int, int]:
    """(size, ell) maximising ell^(n-1) (q - ell); smallest ell on ties."""
    size, neg_ell = max((theorem3_size(n, q, ell), -ell) for ell in range(1, q))
    return size, -neg_ell
