"""Closed-form tiling counts: Phi, the tilted halved hexagon formula and the
three classical product formulas it specializes to."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Tuple

from .exactnum import pochhammer_ratio_factors, product_ratio


class InvalidParams(ValueError):
    pass


class NonIntegerResult(ArithmeticError):
    def __init__(self, what: str, value: Fraction):
        self.value = value
        super().__init__(f"{what} evaluated to the non-integer {value}")


def _nonneg(**kw) -> None:
    for name, v in kw.items():
        if isinstance(v, bool) or not isinstance(v, int):
            raise InvalidParams(f"{name} must be an integer")
        if v < 0:
            raise InvalidParams(f"{name} must be >= 0, got {v}")


def _strict_in_range(seq: Sequence[int], lo: int, hi: int, name: str) -> None:
    for v in seq:
        if isinstance(v, bool) or not isinstance(v, int):
            raise InvalidParams(f"{name} entries must be integers")
    if any(u >= v for u, v in zip(seq, seq[1:])):
        raise InvalidParams(f"{name} must be strictly increasing: {tuple(seq)}")
    if seq and (seq[0] < lo or seq[-1] > hi):
        raise InvalidParams(f"{name} entries must lie in [{lo}, {hi}]: {tuple(seq)}")


@dataclass(frozen=True)
class TiltedParams:
    """(k, x, t, h, a) for a tilted halved hexagon; ``a`` holds the kept levels."""

    k: int
    x: int
    t: int
    h: int
    a: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        _nonneg(k=self.k, x=self.x, t=self.t, h=self.h)
        _strict_in_range(self.a, 1, self.h + self.l, "a")

    @property
    def l(self) -> int:
        return len(self.a)

    @property
    def n(self) -> int:
        """Number of staircase levels, h + l."""
        return self.h + len(self.a)

    @property
    def b(self) -> Tuple[int, ...]:
        """Dented levels, the complement of ``a`` in 1..h+l."""
        kept = set(self.a)
        return tuple(j for j in range(1, self.n + 1) if j not in kept)

    def as_dict(self) -> dict:
        return {"k": self.k, "x": self.x, "t": self.t, "h": self.h, "a": list(self.a)}


@dataclass(frozen=True)
class HexParams:
    a: int
    b: int
    c: int

    def __post_init__(self):
        _nonneg(a=self.a, b=self.b, c=self.c)

    def as_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c}


@dataclass(frozen=True)
class SemiHexParams:
    a: int
    b: int
    s: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(self.s))
        _nonneg(a=self.a, b=self.b)
        if len(self.s) != self.b:
            raise InvalidParams(f"need exactly b={self.b} dent positions, got {len(self.s)}")
        _strict_in_range(self.s, 1, self.a + self.b, "s")

    def as_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "s": list(self.s)}


@dataclass(frozen=True)
class HalvedHexParams:
    a: int
    b: int
    c: int

    def __post_init__(self):
        _nonneg(a=self.a, b=self.b, c=self.c)
        if self.c > self.b:
            raise InvalidParams(f"halved hexagon needs c <= b, got c={self.c}, b={self.b}")

    def as_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c}


def _phi_factors(k: int, a: Sequence[int], t: int, x: int, h: int) -> Iterator[Tuple[int, int]]:
    l = len(a)
    for ai in a:
        n = t + (k + 1) * ai - l - k
        yield from pochhammer_ratio_factors(x + h + l + 1 - ai, h + l + 1 - ai, n)
    for j in range(1, k):
        # floor division: a negative bound just means an empty range
        for i in range(1, (l + k - j) // (k + 1) + 1):
            c = t + k * (k + 1) * i + (j - 1) * k - (k + 1) * (k - 1)
            yield from pochhammer_ratio_factors((k + 1) * (x + h) + c, (k + 1) * h + c, j)
    for i in range(1, l // (k + 1) + 1):
        n = (k + 1) * l + k - (k + 1) ** 2 * i
        c = t + k * (k + 1) * i - k + 1
        yield from pochhammer_ratio_factors((k + 1) * (x + h) + c, (k + 1) * h + c, n)


def phi(k: int, a: Sequence[int], t: int, x: int, h: int) -> Fraction:
    """Phi_k((a_i); t, x, h), a ratio of rising factorials.  Equals 1 when x = 0."""
    return product_ratio(_phi_factors(k, tuple(a), t, x, h))


def _tilted_factors(p: TiltedParams, printed: bool) -> Iterator[Tuple[int, int]]:
    a, l = p.a, p.l
    ext = a + (l + p.h + 1,)
    yield from _phi_factors(p.k, a, p.t, p.x, p.h)
    for i in range(1, l + 1):
        gap = ext[i] - ext[i - 1] - 1
        # the printed h-argument a_{i+1}-i-1 is off; a_i-i is what matches the oracle
        hh = ext[i] - i - 1 if printed else ext[i - 1] - i
        yield from _phi_factors(p.k, a[:i], p.t, gap, hh)


def tilted_product(p: TiltedParams, printed: bool = False) -> Fraction:
    """The tilted formula as an exact rational.

    ``printed=True`` evaluates the variant whose staircase factors use the
    argument a_{i+1}-i-1; it is kept only so the harness can show where that
    variant stops being an integer.
    """
    return product_ratio(_tilted_factors(p, printed))


def _as_count(value: Fraction, what: str) -> int:
    if value.denominator != 1 or value < 0:
        raise NonIntegerResult(what, value)
    return value.numerator


def count_tilted(p: TiltedParams) -> int:
    return _as_count(tilted_product(p), f"tilted count at {p}")


def staircase_product(k: int, h: int, a: Sequence[int]) -> Fraction:
    """The product over prefixes of ``a`` alone, i.e. the x = t = 0 count."""
    return tilted_product(TiltedParams(k, 0, 0, h, tuple(a)))


def _hexagon_factors(a: int, b: int, c: int):
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            for m in range(1, c + 1):
                yield i + j + m - 1, i + j + m - 2


def count_hexagon(p: HexParams) -> int:
    return _as_count(product_ratio(_hexagon_factors(p.a, p.b, p.c)), f"hexagon count at {p}")


def count_semihexagon(p: SemiHexParams) -> int:
    s = p.s
    pairs = ((s[j] - s[i], j - i) for i in range(len(s)) for j in range(i + 1, len(s)))
    return _as_count(product_ratio(pairs), f"semihexagon count at {p}")


def halved_hexagon_product(p: HalvedHexParams) -> Fraction:
    a, b, c = p.a, p.b, p.c

    def factors():
        for i in range(1, a + 1):
            for j in range(1, b - c + 2):
                yield a + i + j - 1, i + j - 1
            for j in range(b - c + 2, b - a + i + 1):
                yield 2 * a + i + j - 1, i + j - 1

    return product_ratio(factors())


def count_halved_hexagon(p: HalvedHexParams) -> int:
    """Halved hexagon double product, evaluated as written.

    Raises NonIntegerResult where the product is fractional, which happens
    for some a != c (e.g. a=1, b=c=3 gives 20/3).
    """
    return _as_count(halved_hexagon_product(p), f"halved hexagon count at {p}")
