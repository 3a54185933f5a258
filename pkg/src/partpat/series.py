"""Truncated power series with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence, Union

from .errors import IntegrityError
from .generate import SizeSet

Scalar = Union[int, Fraction]


class SeriesDomainError(ValueError):
    """Raised when exp or composition receives an inner series with nonzero constant term."""


class TruncatedSeries:
    """``c_0 + c_1 x + ... + c_N x^N`` with everything above degree ``N`` discarded.

    Binary operations require both operands to share the same order ``N``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Scalar], order: int | None = None):
        c = [Fraction(x) for x in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be nonnegative")
            c = (c + [Fraction(0)] * (order + 1))[: order + 1]
        if not c:
            raise ValueError("a series needs at least one coefficient")
        self._c = tuple(c)

    # constructors

    @classmethod
    def zero(cls, order: int) -> TruncatedSeries:
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls([1], order)

    @classmethod
    def x(cls, order: int) -> TruncatedSeries:
        return cls([0, 1], order)

    @classmethod
    def exponential(cls, order: int) -> TruncatedSeries:
        """e^x."""
        return cls([Fraction(1, factorial(i)) for i in range(order + 1)], order)

    # access

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    def __getitem__(self, i: int) -> Fraction:
        return self._c[i]

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncatedSeries):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        terms = [f"{c}*x^{i}" for i, c in enumerate(self._c) if c]
        return f"TruncatedSeries({' + '.join(terms) or '0'}, order={self.order})"

    # arithmetic

    def _check(self, other: TruncatedSeries) -> None:
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def _lift(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([other], self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return TruncatedSeries([a + b for a, b in zip(self._c, other._c)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-a for a in self._c])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return TruncatedSeries([a - b for a, b in zip(self._c, other._c)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([a * other for a in self._c])
        other = self._lift(other)
        if other is NotImplemented:
            return other
        N = self.order
        a, b = self._c, other._c
        out = [Fraction(0)] * (N + 1)
        for i, ai in enumerate(a):
            if ai:
                for j in range(N + 1 - i):
                    out[i + j] += ai * b[j]
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar):
        return TruncatedSeries([a / scalar for a in self._c])

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = TruncatedSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self) -> TruncatedSeries:
        """Formal derivative, padded with a zero so the order is kept."""
        return TruncatedSeries([i * c for i, c in enumerate(self._c)][1:], self.order)

    def exp(self) -> TruncatedSeries:
        """exp(f) for f with zero constant term.

        Uses g' = f' g, i.e. ``n g_n = sum_{k=1}^n k f_k g_{n-k}``.
        """
        if self._c[0] != 0:
            raise SeriesDomainError("exp needs an inner series with zero constant term")
        N = self.order
        f = self._c
        g = [Fraction(0)] * (N + 1)
        g[0] = Fraction(1)
        for n in range(1, N + 1):
            s = Fraction(0)
            for k in range(1, n + 1):
                if f[k]:
                    s += k * f[k] * g[n - k]
            g[n] = s / n
        return TruncatedSeries(g)

    def compose(self, inner: TruncatedSeries) -> TruncatedSeries:
        """self(inner(x)), by Horner's rule; ``inner`` must vanish at 0."""
        self._check(inner)
        if inner[0] != 0:
            raise SeriesDomainError("composition needs an inner series with zero constant term")
        result = TruncatedSeries.zero(self.order)
        for c in reversed(self._c):
            result = result * inner + c
        return result

    def egf_counts(self) -> list[int]:
        """The sequence ``n! c_n``; raises ``IntegrityError`` if one is not an integer."""
        out = []
        for n, c in enumerate(self._c):
            v = c * factorial(n)
            if v.denominator != 1:
                raise IntegrityError(f"{n}! * c_{n} = {v} is not an integer", n)
            out.append(v.numerator)
        return out


def f_sizes(sizes: SizeSet | Iterable[int], order: int) -> TruncatedSeries:
    """``F_I(x) = sum_{i in I} x^i / i!`` truncated at ``order``."""
    if not isinstance(sizes, SizeSet):
        sizes = SizeSet.of(sizes)
    return TruncatedSeries(
        [Fraction(1, factorial(i)) if i in sizes else 0 for i in range(order + 1)], order
    )


def exp_poly(m: int, order: int) -> TruncatedSeries:
    """The truncated exponential ``1 + x + ... + x^m/m!``."""
    return TruncatedSeries(
        [Fraction(1, factorial(i)) if i <= m else 0 for i in range(order + 1)], order
    )


def block_count_series(sizes: SizeSet | Iterable[int], l: int, order: int) -> TruncatedSeries:
    """EGF of partitions into ``l`` blocks with sizes in ``sizes``: F_I(x)^l / l!."""
    return f_sizes(sizes, order) ** l / factorial(l)


def min_pattern_egf(m: int, order: int) -> TruncatedSeries:
    """exp_{m-1}(e^x - 1): EGF of partitions with fewer than m blocks."""
    return exp_poly(m - 1, order).compose(TruncatedSeries.exponential(order) - 1)


def max_pattern_egf(m: int, order: int) -> TruncatedSeries:
    """exp(exp_{m-1}(x) - 1): EGF of partitions with every block smaller than m."""
    return (exp_poly(m - 1, order) - 1).exp()


def bell_egf(order: int) -> TruncatedSeries:
    return (TruncatedSeries.exponential(order) - 1).exp()


def egf_counts(series: TruncatedSeries) -> list[int]:
    return series.egf_counts()


def from_sequence(values: Sequence[int]) -> TruncatedSeries:
    """EGF ``sum a_n x^n / n!`` of a finite sequence."""
    return TruncatedSeries([Fraction(a, factorial(n)) for n, a in enumerate(values)])
