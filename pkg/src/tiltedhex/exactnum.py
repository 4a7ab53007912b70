"""Exact integer/rational arithmetic and the Pochhammer symbol.

Python ints are already arbitrary precision, and ``fractions.Fraction`` keeps
itself reduced with a positive denominator, so those serve as the BigInt and
BigRational types.  What lives here is the product machinery on top.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Tuple, Union

BigInt = int
BigRational = Fraction

Number = Union[int, Fraction]


class PoleError(ZeroDivisionError):
    """A Pochhammer symbol with negative length hit a zero factor."""

    def __init__(self, x: int, n: int, factor: int):
        self.x, self.n, self.factor = x, n, factor
        super().__init__(f"pole in ({x})_{n}: denominator factor x{factor:+d} is zero")


class DivisionByZero(ZeroDivisionError):
    """A zero showed up among the denominator factors of a product."""


def _check_int(v, name: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise TypeError(f"{name} must be an integer, got {type(v).__name__}")
    return v


def pochhammer_factors(x: int, n: int) -> Tuple[list, list]:
    """Return (numerator factors, denominator factors) of (x)_n."""
    _check_int(x, "x")
    _check_int(n, "n")
    if n >= 0:
        return [x + i for i in range(n)], []
    den = [x - i for i in range(1, -n + 1)]
    for i, d in enumerate(den, 1):
        if d == 0:
            raise PoleError(x, n, -i)
    return [], den


def pochhammer(x: int, n: int) -> Fraction:
    """Rising factorial with the negative-length extension.

    >>> pochhammer(3, 2)
    Fraction(12, 1)
    >>> pochhammer(5, -2)
    Fraction(1, 12)
    """
    num, den = pochhammer_factors(x, n)
    p = 1
    for f in num:
        p *= f
    q = 1
    for f in den:
        q *= f
    return Fraction(p, q)


class _Accumulator:
    """Running numerator/denominator with periodic gcd reduction."""

    __slots__ = ("num", "den", "_pending")

    def __init__(self):
        self.num = 1
        self.den = 1
        self._pending = 0

    def mul(self, p: int, q: int = 1) -> None:
        if q == 0:
            raise DivisionByZero("zero denominator factor")
        self.num *= p
        self.den *= q
        self._pending += 1
        # keep magnitudes bounded without paying for a gcd on every factor
        if self._pending >= 16:
            self._reduce()

    def _reduce(self) -> None:
        g = gcd(self.num, self.den)
        if g > 1:
            self.num //= g
            self.den //= g
        self._pending = 0

    def value(self) -> Fraction:
        return Fraction(self.num, self.den)


def product_ratio(factors: Iterable[Tuple[Number, Number]]) -> Fraction:
    """Exact product of num_i / den_i over a (possibly lazy) stream of pairs."""
    acc = _Accumulator()
    for num, den in factors:
        num, den = Fraction(num), Fraction(den)
        if den == 0:
            raise DivisionByZero(f"zero denominator factor in pair ({num}, {den})")
        acc.mul(num.numerator * den.denominator, num.denominator * den.numerator)
    return acc.value()


def pochhammer_ratio_factors(top: int, bottom: int, n: int):
    """Yield pairs for (top)_n / (bottom)_n, one factor at a time."""
    tn, td = pochhammer_factors(top, n)
    bn, bd = pochhammer_factors(bottom, n)
    if n >= 0:
        yield from zip(tn, bn)
    else:
        # 1/((top-1)...) over 1/((bottom-1)...) flips into bottom/top factors
        yield from zip(bd, td)
