"""Enumeration of set partitions and exact block-size counts."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

from .core import SetPartition, validate_rgf


@dataclass(frozen=True)
class SizeSet:
    """A set ``I`` of allowed block sizes.

    ``members=None`` stands for every integer ``>= min_size``; otherwise
    ``members`` is the finite set itself and ``min_size`` is ignored.
    """

    members: frozenset[int] | None = None
    min_size: int = 1

    def __post_init__(self):
        if self.members is not None:
            object.__setattr__(self, "members", frozenset(self.members))
            if any(i < 0 for i in self.members):
                raise ValueError("block sizes must be nonnegative")

    @classmethod
    def positive(cls) -> SizeSet:
        return cls(None, 1)

    @classmethod
    def of(cls, sizes: Iterable[int]) -> SizeSet:
        return cls(frozenset(sizes))

    @classmethod
    def interval(cls, lo: int, hi: int) -> SizeSet:
        return cls(frozenset(range(lo, hi + 1)))

    @property
    def is_finite(self) -> bool:
        return self.members is not None

    @property
    def max_size(self) -> int | None:
        return None if self.members is None else max(self.members, default=0)

    def __contains__(self, i: int) -> bool:
        if self.members is None:
            return i >= self.min_size
        return i in self.members

    def up_to(self, bound: int, start: int = 0) -> list[int]:
        return [i for i in range(start, bound + 1) if i in self]

    def __str__(self) -> str:
        if self.members is None:
            return f"[{self.min_size},∞)"
        return "{" + ",".join(map(str, sorted(self.members))) + "}"


POSITIVE = SizeSet.positive()


def _trusted(word: tuple[int, ...]) -> SetPartition:
    # words produced here are RGFs by construction; skip revalidation
    p = object.__new__(SetPartition)
    object.__setattr__(p, "rgf", word)
    return p


def iter_rgfs(n: int, max_blocks: int | None = None, prefix: Sequence[int] = ()) -> Iterator[tuple[int, ...]]:
    """All RGF words of length ``n`` in lexicographic order.

    Only words starting with ``prefix`` and using at most ``max_blocks``
    distinct letters are produced.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    prefix = validate_rgf(prefix)
    cap = n if max_blocks is None else max_blocks
    if len(prefix) > n or max(prefix, default=0) > cap:
        return
    if n == 0:
        yield ()
        return
    if cap < 1:
        return
    fixed = max(len(prefix), 1)
    a = list(prefix) + [1] * (n - len(prefix))
    pm = [0] * n
    top = 0
    for i, x in enumerate(a):
        top = max(top, x)
        pm[i] = top
    while True:
        yield tuple(a)
        i = n - 1
        while i >= fixed:
            if a[i] <= pm[i - 1] and a[i] < cap:
                break
            i -= 1
        else:
            return
        a[i] += 1
        top = max(pm[i - 1], a[i])
        pm[i] = top
        for j in range(i + 1, n):
            a[j] = 1
            pm[j] = top


def _iter_constrained(n, max_blocks, max_size, layered, prefix) -> Iterator[tuple[int, ...]]:
    cap = n if max_blocks is None else max_blocks
    size_cap = n if max_size is None else max_size
    word = list(prefix)
    sizes = [0] * (n + 1)
    top = 0
    for a in word:
        sizes[a] += 1
        top = max(top, a)
    if top > cap or any(s > size_cap for s in sizes):
        return

    def rec(top: int):
        if len(word) == n:
            yield tuple(word)
            return
        if layered:
            letters = (top, top + 1) if top else (1,)
        else:
            letters = range(1, top + 2)
        for a in letters:
            if a == 0 or a > cap or sizes[a] >= size_cap:
                continue
            word.append(a)
            sizes[a] += 1
            yield from rec(max(top, a))
            sizes[a] -= 1
            word.pop()

    yield from rec(top)


def enumerate_partitions(
    n: int,
    max_blocks: int | None = None,
    sizes: SizeSet | None = None,
    layered: bool = False,
    matching: bool = False,
    prefix: Sequence[int] = (),
) -> Iterator[SetPartition]:
    """Stream every partition of ``[n]`` passing the filters, in lexicographic RGF order.

    ``sizes`` restricts every block size to the given set, ``matching`` means
    all blocks have size at most two, ``layered`` means every block is an
    interval and the intervals appear left to right.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    prefix = validate_rgf(prefix)
    max_size = None
    if matching:
        max_size = 2
    if sizes is not None and sizes.is_finite:
        m = sizes.max_size
        max_size = m if max_size is None else min(max_size, m)
    if max_size is None and not layered:
        words = iter_rgfs(n, max_blocks, prefix)
    else:
        words = _iter_constrained(n, max_blocks, max_size, layered, prefix)
    if sizes is None:
        for w in words:
            yield _trusted(w)
        return
    for w in words:
        p = _trusted(w)
        if all(s in sizes for s in p.block_sizes()):
            yield p


def rgf_prefixes(length: int) -> list[tuple[int, ...]]:
    """All RGF words of the given length; used to split enumeration into shards."""
    return list(iter_rgfs(length))


@lru_cache(maxsize=None)
def _block_count(n: int, l: int, sizes: SizeSet) -> int:
    if l == 0:
        return 1 if n == 0 else 0
    if n == 0:
        return 0
    total = 0
    # the block holding the smallest remaining element has size s
    for s in sizes.up_to(n, start=1):
        total += comb(n - 1, s - 1) * _block_count(n - s, l - 1, sizes)
    return total


def count_by_block_sizes(n: int, l: int, sizes: SizeSet = POSITIVE) -> int:
    """Number of partitions of ``[n]`` into ``l`` blocks with every block size in ``sizes``."""
    if n < 0 or l < 0:
        raise ValueError("n and l must be nonnegative")
    return _block_count(n, l, sizes)


def stirling2(n: int, k: int) -> int:
    return count_by_block_sizes(n, k, POSITIVE)


def bell(n: int) -> int:
    """Bell number via the Bell triangle."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]
