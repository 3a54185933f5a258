"""Closed-form avoider counts and structural characterizations of avoiders.

Every function here is an independent description of an avoidance class; the
``patterns`` module provides the brute-force side they are checked against.
"""

from __future__ import annotations

from math import comb
from typing import Callable

from .core import SetPartition, restrict
from .generate import POSITIVE, SizeSet, bell, count_by_block_sizes
from .patterns import AvoidanceProfile, Notion


class UnsupportedFamily(KeyError):
    """No closed form is known for the requested pattern family."""


def falling_factorial(k: int, i: int) -> int:
    """(k)_i = k (k-1) ... (k-i+1)."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    out = 1
    for j in range(i):
        out *= k - j
    return out


def odd_double_factorial(i: int) -> int:
    """1 * 3 * 5 * ... * (2i-1): perfect matchings on 2i points (written (2i)!! in some texts)."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    out = 1
    for j in range(1, 2 * i, 2):
        out *= j
    return out


def matching_count(n: int) -> int:
    """Number of partitions of [n] with all blocks of size at most two."""
    return sum(comb(n, 2 * i) * odd_double_factorial(i) for i in range(n // 2 + 1))


def _pow2(n: int) -> int:
    return 1 if n == 0 else 2 ** (n - 1)


# counts


def count_min_pattern(n: int, m: int) -> int:
    """#Π_n(1/2/.../m): partitions with fewer than m blocks."""
    if m < 1:
        raise ValueError("m must be at least 1")
    return sum(count_by_block_sizes(n, l, POSITIVE) for l in range(min(m - 1, n) + 1))


def count_max_pattern(n: int, m: int) -> int:
    """#Π_n(12...m): partitions whose blocks all have fewer than m elements."""
    if m < 1:
        raise ValueError("m must be at least 1")
    sizes = SizeSet.interval(1, m - 1)
    return sum(count_by_block_sizes(n, l, sizes) for l in range(n + 1))


def count_12_3_etc(n: int, m: int) -> int:
    """#Π_n(12/3/4/.../m) by the triple sum over k, j and i."""
    if m < 3:
        raise ValueError("m must be at least 3")
    total = 1
    for k in range(1, n):
        for j in range(1, m - 1):
            a = count_by_block_sizes(n - k, j, POSITIVE)
            if a:
                total += a * sum(comb(j - 1, i - 1) * falling_factorial(k, i) for i in range(1, j + 1))
    return total


# predicates


def is_matching(sigma: SetPartition) -> bool:
    return all(s <= 2 for s in sigma.block_sizes())


def is_layered(sigma: SetPartition) -> bool:
    """Blocks are consecutive intervals [1,j]/[j+1,k]/...; the RGF is 1..12..23..3..."""
    prev = 0
    for a in sigma.rgf:
        if a != prev and a != prev + 1:
            return False
        prev = a
    return True


def blocks_at_most(sigma: SetPartition, k: int) -> bool:
    return sigma.num_blocks <= k


def min_pattern_rhs(sigma: SetPartition, m: int) -> bool:
    """Avoiders of 1/2/.../m: fewer than m blocks."""
    return sigma.num_blocks < m


def max_pattern_rhs(sigma: SetPartition, m: int) -> bool:
    """Avoiders of 12...m: every block has fewer than m elements."""
    return all(s < m for s in sigma.block_sizes())


def _singleton_prefix(sigma: SetPartition) -> int:
    """Largest k such that 1..k are each the minimum of their block."""
    k = 0
    for a in sigma.rgf:
        if a != k + 1:
            break
        k += 1
    return k


def _prefixes_all_singletons(sigma: SetPartition):
    # the valid k with σ_{≤k} = 1/2/.../k are exactly 0..K for the maximal K
    return range(_singleton_prefix(sigma) + 1)


def _tail(sigma: SetPartition, k: int):
    return restrict(sigma, range(k + 1, sigma.n + 1))


def char_12_3(sigma: SetPartition, m: int) -> bool:
    """Some k has σ_{≤k} all singletons and fewer than m-1 blocks in σ_{>k}."""
    return any(len(_tail(sigma, k)) < m - 1 for k in _prefixes_all_singletons(sigma))


def coatom_parameter(sigma: SetPartition, m: int) -> int:
    """The (m-1)st largest element of the first block, or 0 if that block is smaller."""
    if sigma.n == 0:
        return 0
    first = sigma.blocks[0]
    if len(first) < m - 1:
        return 0
    return first[len(first) - (m - 1)]


def char_coatom(sigma: SetPartition, m: int) -> bool:
    """Avoiders of 1/23...m: later blocks have fewer than m-1 elements and start after c(σ)."""
    if m < 2:
        raise ValueError("m must be at least 2")
    blocks = sigma.blocks
    if any(len(b) >= m - 1 for b in blocks[1:]):
        return False
    if len(blocks) >= 2 and blocks[1][0] <= coatom_parameter(sigma, m):
        return False
    return True


def _pi3_12_3(sigma: SetPartition) -> bool:
    n = sigma.n
    return any(
        _tail(sigma, k) in ((), (tuple(range(k + 1, n + 1)),)) for k in _prefixes_all_singletons(sigma)
    )


def _pi3_1_23(sigma: SetPartition) -> bool:
    n = sigma.n
    for k in range(n + 1):
        head = restrict(sigma, range(1, k + 1))
        if len(head) > 1:
            break
        if all(len(b) == 1 for b in _tail(sigma, k)):
            return True
    return False


def _r_12_3(sigma: SetPartition) -> bool:
    n = sigma.n
    for k in _prefixes_all_singletons(sigma):
        layers = _tail(sigma, k)
        expect = k + 1
        ok = True
        for b in layers:
            if b != tuple(range(expect, expect + len(b))):
                ok = False
                break
            expect += len(b)
        if not ok:
            continue
        idx = [sigma.rgf[b[0] - 1] for b in layers]
        if all(x > y for x, y in zip(idx, idx[1:])):
            return True
    return False


def _r_1_23(sigma: SetPartition) -> bool:
    return all(s == 1 for s in sigma.block_sizes()[1:])


_PI3: dict[str, Callable[[SetPartition], bool]] = {
    "1/2/3": lambda s: s.num_blocks <= 2,
    "123": is_matching,
    "12/3": _pi3_12_3,
    "1/23": _pi3_1_23,
    "13/2": is_layered,
}

_R3: dict[str, Callable[[SetPartition], bool]] = {
    "1/2/3": lambda s: s.num_blocks <= 2,
    "123": is_matching,
    "12/3": _r_12_3,
    "1/23": _r_1_23,
    "13/2": is_layered,
}


def _key(pi: SetPartition | str) -> str:
    if isinstance(pi, str):
        pi = SetPartition.parse(pi)
    if pi.n != 3:
        raise UnsupportedFamily(f"{pi} is not a partition of [3]")
    return pi.compact()


def char_pi3(sigma: SetPartition, pi: SetPartition | str) -> bool:
    """Structural test for σ avoiding a partition π of [3]."""
    return _PI3[_key(pi)](sigma)


def char_r(sigma: SetPartition, pi: SetPartition | str) -> bool:
    """Structural test for σ R-avoiding a partition π of [3]."""
    return _R3[_key(pi)](sigma)


# closed-form profiles

_PI3_COUNTS: dict[str, Callable[[int], int]] = {
    "1/2/3": _pow2,
    "123": matching_count,
    "12/3": lambda n: 1 + comb(n, 2),
    "1/23": lambda n: 1 + comb(n, 2),
    "13/2": _pow2,
}

_R3_COUNTS: dict[str, Callable[[int], int]] = {
    "1/2/3": _pow2,
    "123": matching_count,
    "12/3": _pow2,
    "1/23": _pow2,
    "13/2": _pow2,
}


def _pattern_family(pi: SetPartition, notion: Notion) -> Callable[[int], int]:
    m = pi.n
    if m == 0:
        return lambda n: 0
    if m == 3:
        table = _PI3_COUNTS if notion is Notion.SUB else _R3_COUNTS
        return table[pi.compact()]
    if pi == SetPartition.min_pattern(m):
        return lambda n: count_min_pattern(n, m)
    if pi == SetPartition.max_pattern(m):
        return lambda n: count_max_pattern(n, m)
    if notion is Notion.SUB and m >= 3:
        if pi.rgf == (1, 1) + tuple(range(2, m)):
            return lambda n: count_12_3_etc(n, m)
        if pi.rgf == tuple(range(1, m)) + (m - 1,):
            # complement of 12/3/.../m
            return lambda n: count_12_3_etc(n, m)
    raise UnsupportedFamily(f"no closed form for {pi} under notion {notion.value}")


def closed_form_counts(pi: SetPartition | str, notion: Notion | str, N: int) -> list[int]:
    if isinstance(pi, str):
        pi = SetPartition.parse(pi)
    fn = _pattern_family(pi, Notion.coerce(notion))
    return [fn(n) for n in range(N + 1)]


def closed_form_profile(pi: SetPartition | str, notion: Notion | str, N: int) -> AvoidanceProfile:
    """Closed-form avoider counts for n = 0..N.

    Covers every partition of [3] under both notions, 1/2/.../m and 12...m
    under both notions, and 12/3/.../m with its complement under ``sub``.
    """
    if isinstance(pi, str):
        pi = SetPartition.parse(pi)
    notion = Notion.coerce(notion)
    return AvoidanceProfile((pi,), notion, tuple(closed_form_counts(pi, notion, N)))


def bell_counts(N: int) -> list[int]:
    return [bell(n) for n in range(N + 1)]
