"""Closed-form bounds on C(n, q), the largest non-overlapping code size.

All arithmetic is exact; floats only appear in :meth:`RatioReport.render`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError


def _check(n: int, q: int) -> None:
    if n < 2:
        raise ParameterError("bounds need n >= 2; C(1, q) = q, see trivial_value_n1")
    if q < 2:
        raise ParameterError("bounds need q >= 2")


def trivial_value_n1(q: int) -> int:
    return q


def headline_upper_bound(n: int, q: int) -> Fraction:
    """q^n / (2n - 1), which every code size is strictly below."""
    _check(n, q)
    return Fraction(q ** n, 2 * n - 1)


def upper_bound(n: int, q: int) -> int:
    """Largest |C| with (2n-1) |C| q^(n-1) <= q^(2n-1) - q.

    Counting pairs (w, i) where the cyclic window of w in F^(2n-1) at i is a
    codeword gives (2n-1)|C|q^(n-1) pairs, at most one per word, and none
    for the q constant words.
    """
    _check(n, q)
    return (q ** (2 * n - 1) - q) // ((2 * n - 1) * q ** (n - 1))


@dataclass(frozen=True)
class LowerBound:
    value: int
    in_regime: bool


def lower_bound_lemma2(n: int, q: int) -> LowerBound:
    """floor((q-1)^2 (2q-1) q^n / (4 n q^4)); only meaningful when some k >= 1 has 2k <= n-2."""
    _check(n, q)
    if n < 4:
        return LowerBound(0, False)
    value = Fraction((q - 1) ** 2 * (2 * q - 1) * q ** n, 4 * n * q ** 4)
    return LowerBound(value.numerator // value.denominator, True)


def exact_value_n2(q: int) -> int:
    if q < 2:
        raise ParameterError("q must be >= 2")
    return (q // 2) * ((q + 1) // 2)


def nearest_two_thirds(q: int) -> int:
    """Nearest integer to 2q/3 (never a half-integer)."""
    return (2 * q + 1) // 3


def exact_value_n3(q: int) -> int:
    if q < 2:
        raise ParameterError("q must be >= 2")
    m = nearest_two_thirds(q)
    return m * m * (q - m)


def exact_value(n: int, q: int) -> int | None:
    """Known closed form for C(n, q), or None."""
    if n == 1:
        return trivial_value_n1(q)
    if n == 2:
        return exact_value_n2(q)
    if n == 3:
        return exact_value_n3(q)
    return None


def conjectured_limit(n: int) -> Fraction:
    """(1/n) ((n-1)/n)^(n-1): the conjectured limit of C(n, q)/q^n as q grows."""
    return Fraction(1, n) * Fraction(n - 1, n) ** (n - 1)


def fixed_n_constant(n: int) -> Fraction:
    return Fraction(n - 1, n) ** (n - 1)


def lemma2_constant(q: int) -> Fraction:
    return Fraction((q - 1) ** 2 * (2 * q - 1), 4 * q ** 4)


GENERAL_CONSTANT = Fraction(1, 50)


@dataclass(frozen=True)
class RatioReport:
    n: int
    q: int
    size: int
    ratio: Fraction
    fixed_n: Fraction
    lemma2: Fraction
    general: Fraction = GENERAL_CONSTANT

    def render(self) -> str:
        return (f"ratio={self.ratio} ({float(self.ratio):.6f}) "
                f"fixed_n={float(self.fixed_n):.6f} "
                f"lemma2={float(self.lemma2):.6f} general={float(self.general):.6f}")


def ratio_report(n: int, q: int, size: int) -> RatioReport:
    """size / (q^n / n) next to the reference constants."""
    if size < 0:
        raise ParameterError("size must be >= 0")
    _check(n, q)
    return RatioReport(n, q, size, Fraction(size * n, q ** n),
                       fixed_n_constant(n), lemma2_constant(q))
