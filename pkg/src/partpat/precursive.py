"""Guessing and checking polynomial-coefficient recurrences.

A P-recurrence of order k is ``P_0(n) a_n + P_1(n) a_{n+1} + ... + P_k(n) a_{n+k} = 0``
with integer polynomials ``P_i``, not all zero.  ``guess`` fits one by exact
linear algebra on the first terms of a sequence and keeps it only if it also
holds on the last three, held-out terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import NamedTuple, Sequence

from .errors import IntegrityError

HELD_OUT = 3


class PreconditionError(ValueError):
    pass


class SingularIndexError(ArithmeticError):
    """The leading polynomial vanishes where the recurrence must be solved."""

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


def _strip(poly: Sequence[int]) -> tuple[int, ...]:
    poly = list(poly)
    while poly and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def _poly_eval(poly: Sequence[int], n: int) -> int:
    out = 0
    for c in reversed(poly):
        out = out * n + c
    return out


def _poly_str(poly: Sequence[int]) -> str:
    terms = []
    for j in range(len(poly) - 1, -1, -1):
        c = poly[j]
        if c == 0:
            continue
        mag = abs(c)
        if j == 0:
            body = str(mag)
        else:
            var = "n" if j == 1 else f"n^{j}"
            body = var if mag == 1 else f"{mag}*{var}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


@dataclass(frozen=True)
class PRecurrence:
    """Coefficients ``coeffs[i][j]`` of ``n^j`` in ``P_i``.

    Instances built through ``normalized`` have content 1 and the first
    nonzero ``P_i`` has a positive leading coefficient.
    """

    coeffs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_strip(p) for p in self.coeffs))
        if not any(self.coeffs):
            raise ValueError("a recurrence needs a nonzero coefficient polynomial")

    @classmethod
    def normalized(cls, coeffs: Sequence[Sequence[int | Fraction]]) -> PRecurrence:
        fr = [[Fraction(c) for c in p] for p in coeffs]
        den = 1
        for p in fr:
            for c in p:
                den = lcm(den, c.denominator)
        ints = [[int(c * den) for c in p] for p in fr]
        g = 0
        for p in ints:
            for c in p:
                g = gcd(g, c)
        ints = [[c // g for c in p] for p in ints]
        first = next(_strip(p) for p in ints if any(p))
        if first[-1] < 0:
            ints = [[-c for c in p] for p in ints]
        return cls(tuple(tuple(p) for p in ints))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return max(len(p) for p in self.coeffs) - 1

    def poly(self, i: int, n: int) -> int:
        return _poly_eval(self.coeffs[i], n)

    def residual(self, a: Sequence[int], n: int) -> int:
        return sum(self.poly(i, n) * a[n + i] for i in range(self.order + 1))

    def __str__(self) -> str:
        parts = []
        for i, p in enumerate(self.coeffs):
            if not p:
                continue
            term = "a(n)" if i == 0 else f"a(n+{i})"
            nonzero = [c for c in p if c]
            if len(nonzero) == 1:
                ps = _poly_str(p)
                if ps == "1":
                    parts.append(("+", term))
                elif ps == "-1":
                    parts.append(("-", term))
                elif ps.startswith("-"):
                    parts.append(("-", f"{ps[1:]}*{term}"))
                else:
                    parts.append(("+", f"{ps}*{term}"))
            else:
                parts.append(("+", f"({_poly_str(p)})*{term}"))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out + " = 0"

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "degree": self.degree,
            "coefficients": [[str(c) for c in p] for p in self.coeffs],
            "text": str(self),
        }

    @classmethod
    def from_dict(cls, data: dict) -> PRecurrence:
        return cls(tuple(tuple(int(c) for c in p) for p in data["coefficients"]))


class VerifyResult(NamedTuple):
    ok: bool
    first_failure: int | None


def verify(rec: PRecurrence, a: Sequence[int]) -> VerifyResult:
    """Check the recurrence at every n with ``n + order < len(a)``."""
    for n in range(len(a) - rec.order):
        if rec.residual(a, n) != 0:
            return VerifyResult(False, n)
    return VerifyResult(True, None)


def extend(rec: PRecurrence, seed: Sequence[int], length: int) -> list[int]:
    """Iterate the recurrence forward from ``seed`` until ``length`` terms exist."""
    a = [int(x) for x in seed]
    k = rec.order
    while len(a) < length:
        n = len(a) - k
        lead = rec.poly(k, n)
        if lead == 0:
            raise SingularIndexError(f"P_{k}({n}) = 0; a_{n + k} is not determined", n + k)
        rest = sum(rec.poly(i, n) * a[n + i] for i in range(k))
        q, r = divmod(-rest, lead)
        if r:
            raise IntegrityError(f"a_{n + k} = {-rest}/{lead} is not an integer", n + k)
        a.append(q)
    return a[:length] if len(a) > length else a


def seed_length(rec: PRecurrence) -> int:
    """Smallest seed length from which ``extend`` never hits a zero of the leading polynomial."""
    lead = rec.coeffs[-1]
    low = next((c for c in lead if c), 0)
    roots = [0] if lead and lead[0] == 0 else []
    if low:
        roots += [d for d in range(1, abs(low) + 1) if low % d == 0 and _poly_eval(lead, d) == 0]
    if not lead:
        return rec.order
    return max([rec.order] + [r + rec.order + 1 for r in roots])


# exact linear algebra


def nullspace(rows: Sequence[Sequence[int | Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column of the reduced row echelon form."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def reduced_basis(vectors: list[list[Fraction]]) -> list[list[Fraction]]:
    """Reduced row echelon form of a spanning set, zero rows dropped."""
    if not vectors:
        return []
    ncols = len(vectors[0])
    m = [list(v) for v in vectors]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return m[:r]


def _system(a: Sequence[int], k: int, d: int, n_range: range) -> list[list[int]]:
    return [[n**j * a[n + i] for i in range(k + 1) for j in range(d + 1)] for n in n_range]


def _unpack(v: Sequence[Fraction], k: int, d: int) -> list[list[Fraction]]:
    return [list(v[i * (d + 1) : (i + 1) * (d + 1)]) for i in range(k + 1)]


@dataclass
class GuessReport:
    length: int
    max_order: int
    max_degree: int
    searched: list[tuple[int, int]] = field(default_factory=list)
    recurrence: PRecurrence | None = None
    kernel_dim: int = 0
    held_out: int = 0

    @property
    def found(self) -> bool:
        return self.recurrence is not None

    @property
    def outcome(self) -> str:
        return "found" if self.found else "exhausted-bounds"

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "max_order": self.max_order,
            "max_degree": self.max_degree,
            "cells_searched": len(self.searched),
            "outcome": self.outcome,
            "recurrence": None if self.recurrence is None else self.recurrence.to_dict(),
            "kernel_dim": self.kernel_dim,
            "held_out_verified": self.held_out,
        }


def required_length(max_order: int, max_degree: int) -> int:
    return (max_order + 1) * (max_degree + 1) + max_order + HELD_OUT


def guess(a: Sequence[int], max_order: int, max_degree: int) -> GuessReport:
    """Find the first (order, degree) cell, order-major, with a recurrence that survives held-out checks."""
    a = [int(x) for x in a]
    need = required_length(max_order, max_degree)
    if len(a) < need:
        raise PreconditionError(
            f"need at least {need} terms for order <= {max_order} and degree <= {max_degree}; got {len(a)}"
        )
    report = GuessReport(len(a), max_order, max_degree)
    fit_end = len(a) - HELD_OUT
    for k in range(max_order + 1):
        for d in range(max_degree + 1):
            report.searched.append((k, d))
            rows = _system(a, k, d, range(fit_end - k))
            kernel = nullspace(rows, (k + 1) * (d + 1))
            if not kernel:
                continue
            basis = reduced_basis(kernel)
            basis.sort(key=lambda v: [i for i, x in enumerate(v) if x])
            for v in basis:
                rec = PRecurrence.normalized(_unpack(v, k, d))
                held = range(fit_end - k, len(a) - k)
                if all(rec.residual(a, n) == 0 for n in held):
                    report.recurrence = rec
                    report.kernel_dim = len(kernel)
                    report.held_out = len(held)
                    return report
    return report
