"""Pattern containment and avoidance for set partitions.

Two notions are supported:

* ``sub`` -- σ contains π when some restriction σ_T standardizes to π.
* ``rgf`` -- σ R-contains π when some subsequence of ρ(σ) standardizes to
  ρ(π); equivalently the copy's blocks sit in host blocks of increasing
  canonical index.

Both reduce to the same search.  A copy is an increasing choice of
positions ``t_1 < ... < t_m`` in the host word together with a map ``f`` from
pattern blocks to host blocks (injective for ``sub``, increasing for ``rgf``)
such that ``s[t_i] = f(p[i])``.  For a fixed ``f`` the leftmost greedy
placement is optimal, so the boolean search only branches on ``f``.
"""

from __future__ import annotations

import enum
import os
from bisect import bisect_right
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .core import SetPartition, restrict
from .generate import _trusted, enumerate_partitions, iter_rgfs


class Notion(str, enum.Enum):
    SUB = "sub"
    RGF = "rgf"

    @classmethod
    def coerce(cls, value: Notion | str) -> Notion:
        if isinstance(value, Notion):
            return value
        try:
            return cls(value)
        except ValueError:
            raise ValueError(f"unknown notion {value!r}; expected 'sub' or 'rgf'") from None


@dataclass(frozen=True)
class Copy:
    """A copy of a pattern: the witnessing subset ``T`` and the blocks of σ_T."""

    positions: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]

    def __str__(self) -> str:
        return "/".join("".join(map(str, b)) if max(b) < 10 else ",".join(map(str, b)) for b in self.blocks)


def _positions(word: Sequence[int], nblocks: int) -> list[list[int]]:
    pos: list[list[int]] = [[] for _ in range(nblocks + 1)]
    for i, a in enumerate(word):
        pos[a].append(i)
    return pos


def _find(p, pos, nblocks, limit, increasing):
    """Search for a block map placing ``p`` greedily inside positions ``< limit``."""
    m = len(p)
    f = [0] * (max(p, default=0) + 1)
    used = [False] * (nblocks + 1)

    def rec(i, t, last_new):
        if i == m:
            return True
        b = p[i]
        latest = limit - (m - i)
        c = f[b]
        if c:
            lst = pos[c]
            j = bisect_right(lst, t)
            if j == len(lst) or lst[j] > latest:
                return False
            return rec(i + 1, lst[j], last_new)
        for c in range(last_new + 1 if increasing else 1, nblocks + 1):
            if used[c]:
                continue
            lst = pos[c]
            j = bisect_right(lst, t)
            if j == len(lst) or lst[j] > latest:
                continue
            f[b] = c
            used[c] = True
            if rec(i + 1, lst[j], c):
                return True
            f[b] = 0
            used[c] = False
        return False

    return rec(0, -1, 0)


def _embeds(s: Sequence[int], p: Sequence[int], increasing: bool) -> bool:
    m, n = len(p), len(s)
    if m == 0:
        return True
    if m > n:
        return False
    nblocks = max(s)
    if max(p) > nblocks:
        return False
    return _find(p, _positions(s, nblocks), nblocks, n, increasing)


class _Compiled:
    """Pattern data precomputed for the forced-last-letter check."""

    __slots__ = ("word", "head", "last", "last_is_new", "nblocks", "size")

    def __init__(self, pi: SetPartition):
        self.word = pi.rgf
        self.size = pi.n
        self.nblocks = pi.num_blocks
        self.head = pi.rgf[:-1]
        self.last = pi.rgf[-1] if pi.rgf else 0
        self.last_is_new = self.last not in self.head


def _ends_with_copy(cp: _Compiled, pos, nblocks, length, letter, increasing) -> bool:
    """Does the host word (prefix of ``length`` letters plus ``letter``) have a copy using its last letter?

    ``pos`` indexes the prefix only.
    """
    m = cp.size
    if m == 0 or m > length + 1:
        return False
    host_blocks = max(nblocks, letter)
    if cp.nblocks > host_blocks:
        return False
    head = cp.head
    if m == 1:
        return True
    # the final pattern letter sits on the new host letter; search the head in the prefix
    # with the final pattern block constrained to (or away from) that host block
    lb = cp.last
    k = cp.nblocks
    f = [0] * (k + 1)
    used = [False] * (host_blocks + 2)
    mh = len(head)
    if not cp.last_is_new:
        if letter > nblocks:
            return False
        f[lb] = letter
        used[letter] = True

    def rec(i, t, last_new):
        if i == mh:
            if cp.last_is_new:
                if used[letter]:
                    return False
                if increasing and letter <= last_new:
                    return False
            return True
        b = head[i]
        latest = length - (mh - i)
        c = f[b]
        if c:
            if increasing and b == lb and i == first_lb:
                # first appearance of the pre-assigned block must respect the order
                if c <= last_new:
                    return False
                lst = pos[c]
                j = bisect_right(lst, t)
                if j == len(lst) or lst[j] > latest:
                    return False
                return rec(i + 1, lst[j], c)
            lst = pos[c]
            j = bisect_right(lst, t)
            if j == len(lst) or lst[j] > latest:
                return False
            return rec(i + 1, lst[j], last_new)
        lo = last_new + 1 if increasing else 1
        hi = nblocks
        if increasing and not cp.last_is_new and b > lb:
            lo = max(lo, letter + 1)
        elif increasing and not cp.last_is_new and b < lb:
            hi = min(hi, letter - 1)
        for c in range(lo, hi + 1):
            if used[c]:
                continue
            lst = pos[c]
            j = bisect_right(lst, t)
            if j == len(lst) or lst[j] > latest:
                continue
            f[b] = c
            used[c] = True
            if rec(i + 1, lst[j], c):
                return True
            f[b] = 0
            used[c] = False
        return False

    first_lb = head.index(lb) if not cp.last_is_new else -1
    return rec(0, -1, 0)


def _all_copies(s: Sequence[int], p: Sequence[int], increasing: bool) -> list[tuple[int, ...]]:
    """Every position set ``T`` (0-based) carrying a copy; exhaustive, no greedy shortcut."""
    m, n = len(p), len(s)
    if m == 0:
        return [()]
    if m > n:
        return []
    nblocks = max(s)
    f = [0] * (max(p) + 1)
    used = [False] * (nblocks + 1)
    chosen: list[int] = []
    out: list[tuple[int, ...]] = []

    def rec(i, t, last_new):
        if i == m:
            out.append(tuple(chosen))
            return
        b = p[i]
        for u in range(t + 1, n - (m - i) + 1):
            c = s[u]
            if f[b]:
                if c != f[b]:
                    continue
                chosen.append(u)
                rec(i + 1, u, last_new)
                chosen.pop()
            else:
                if used[c] or (increasing and c <= last_new):
                    continue
                f[b] = c
                used[c] = True
                chosen.append(u)
                rec(i + 1, u, c)
                chosen.pop()
                f[b] = 0
                used[c] = False

    rec(0, -1, 0)
    out.sort()
    return out


def _to_copies(sigma: SetPartition, found: list[tuple[int, ...]]) -> list[Copy]:
    out = []
    for T in found:
        T1 = tuple(t + 1 for t in T)
        out.append(Copy(T1, restrict(sigma, T1)))
    return out


def copies(sigma: SetPartition, pi: SetPartition) -> list[Copy]:
    """All copies of ``pi`` in ``sigma``, sorted by their witnessing subset."""
    return _to_copies(sigma, _all_copies(sigma.rgf, pi.rgf, increasing=False))


def r_copies(sigma: SetPartition, pi: SetPartition) -> list[Copy]:
    """Copies whose blocks occupy host blocks in increasing canonical order."""
    return _to_copies(sigma, _all_copies(sigma.rgf, pi.rgf, increasing=True))


def contains(sigma: SetPartition, pi: SetPartition) -> bool:
    return _embeds(sigma.rgf, pi.rgf, increasing=False)


def r_contains(sigma: SetPartition, pi: SetPartition) -> bool:
    return _embeds(sigma.rgf, pi.rgf, increasing=True)


def contains_as(sigma: SetPartition, pi: SetPartition, notion: Notion | str) -> bool:
    return _embeds(sigma.rgf, pi.rgf, increasing=Notion.coerce(notion) is Notion.RGF)


def avoids_all(sigma: SetPartition, patterns: Iterable[SetPartition], notion: Notion | str) -> bool:
    increasing = Notion.coerce(notion) is Notion.RGF
    return not any(_embeds(sigma.rgf, pi.rgf, increasing) for pi in patterns)


# counting


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("PARTPAT_THREADS", "1")))
    except ValueError:
        return 1


def _tree_counts(N: int, compiled: list[_Compiled], increasing: bool, prefix: tuple[int, ...] = ()) -> list[int]:
    """Avoider counts at every length 0..N below ``prefix``.

    Containment is hereditary on RGF prefixes (a prefix is a restriction and
    a subsequence), so only avoiding prefixes are extended, and a new letter
    can only create copies that end on it.
    """
    counts = [0] * (N + 1)
    if any(cp.size == 0 for cp in compiled):
        return counts
    word: list[int] = []
    pos: list[list[int]] = [[] for _ in range(N + 2)]
    nb = 0
    # replay the prefix, checking every step
    for letter in prefix:
        if any(_ends_with_copy(cp, pos, nb, len(word), letter, increasing) for cp in compiled):
            return counts
        pos[letter].append(len(word))
        word.append(letter)
        nb = max(nb, letter)
    start = len(prefix)

    def rec(nb: int):
        L = len(word)
        counts[L] += 1
        if L == N:
            return
        for letter in range(1, nb + 2):
            if any(_ends_with_copy(cp, pos, nb, L, letter, increasing) for cp in compiled):
                continue
            pos[letter].append(L)
            word.append(letter)
            rec(max(nb, letter))
            word.pop()
            pos[letter].pop()

    rec(nb)
    # lengths shorter than the prefix are not owned by this shard
    for i in range(min(start, N + 1)):
        counts[i] = 0
    return counts


def _shard_job(args):
    N, words, increasing, prefix = args
    compiled = [_Compiled(SetPartition(w)) for w in words]
    return _tree_counts(N, compiled, increasing, prefix)


def _profile_counts(N: int, patterns: Sequence[SetPartition], increasing: bool, workers: int) -> list[int]:
    compiled = [_Compiled(pi) for pi in patterns]
    if workers <= 1 or N < 6:
        return _tree_counts(N, compiled, increasing)
    depth = 3
    # lengths below the shard depth are counted once, serially
    counts = _tree_counts(depth - 1, compiled, increasing) + [0] * (N - depth + 1)
    jobs = [(N, [pi.rgf for pi in patterns], increasing, pre) for pre in iter_rgfs(depth)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        for part in ex.map(_shard_job, jobs):
            for i, c in enumerate(part):
                counts[i] += c
    return counts


def _normalize_patterns(patterns) -> tuple[SetPartition, ...]:
    if isinstance(patterns, SetPartition):
        return (patterns,)
    return tuple(patterns)


def iter_avoiders(n: int, patterns, notion: Notion | str) -> Iterator[SetPartition]:
    """Avoiders of every pattern among partitions of ``[n]``, in lexicographic RGF order."""
    patterns = _normalize_patterns(patterns)
    increasing = Notion.coerce(notion) is Notion.RGF
    compiled = [_Compiled(pi) for pi in patterns]
    if any(cp.size == 0 for cp in compiled):
        return
    word: list[int] = []
    pos: list[list[int]] = [[] for _ in range(n + 2)]

    def rec(nb: int):
        L = len(word)
        if L == n:
            yield _trusted(tuple(word))
            return
        for letter in range(1, nb + 2):
            if any(_ends_with_copy(cp, pos, nb, L, letter, increasing) for cp in compiled):
                continue
            pos[letter].append(L)
            word.append(letter)
            yield from rec(max(nb, letter))
            word.pop()
            pos[letter].pop()

    yield from rec(0)


def count_avoiders(
    n: int,
    patterns,
    notion: Notion | str,
    method: str = "tree",
    workers: int | None = None,
) -> int:
    """Number of partitions of ``[n]`` avoiding every pattern.

    ``method="tree"`` walks the RGF tree extending only avoiding prefixes;
    ``method="scan"`` tests every partition of ``[n]`` with ``avoids_all``.
    Both are exhaustive and must agree.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    patterns = _normalize_patterns(patterns)
    notion = Notion.coerce(notion)
    if method == "scan":
        return sum(1 for s in enumerate_partitions(n) if avoids_all(s, patterns, notion))
    if method != "tree":
        raise ValueError(f"unknown method {method!r}")
    workers = _default_workers() if workers is None else workers
    return _profile_counts(n, patterns, notion is Notion.RGF, workers)[n]


@dataclass(frozen=True)
class AvoidanceProfile:
    """A pattern set, a containment notion and its avoider counts for n = 0..N."""

    patterns: tuple[SetPartition, ...]
    notion: Notion
    counts: tuple[int, ...]

    @property
    def horizon(self) -> int:
        return len(self.counts) - 1

    def label(self) -> str:
        return ",".join(p.compact() for p in self.patterns)

    def to_dict(self) -> dict:
        return {
            "patterns": [str(p) for p in self.patterns],
            "notion": self.notion.value,
            "counts": [str(c) for c in self.counts],
        }

    @classmethod
    def from_dict(cls, data: dict) -> AvoidanceProfile:
        return cls(
            tuple(SetPartition.parse(p) for p in data["patterns"]),
            Notion.coerce(data["notion"]),
            tuple(int(c) for c in data["counts"]),
        )


def avoidance_profile(patterns, notion: Notion | str, N: int, workers: int | None = None) -> AvoidanceProfile:
    if N < 0:
        raise ValueError("N must be nonnegative")
    patterns = _normalize_patterns(patterns)
    notion = Notion.coerce(notion)
    workers = _default_workers() if workers is None else workers
    counts = _profile_counts(N, patterns, notion is Notion.RGF, workers)
    return AvoidanceProfile(patterns, notion, tuple(counts))


def wilf_classes(m: int, notion: Notion | str, N: int, workers: int | None = None) -> list[tuple[tuple[int, ...], list[SetPartition]]]:
    """Group all partitions of [m] by avoider counts for n = 0..N.

    Classes are empirical: equal profiles up to N only.  Classes are ordered
    by their first member in lexicographic RGF order.
    """
    groups: dict[tuple[int, ...], list[SetPartition]] = {}
    for pi in enumerate_partitions(m):
        counts = avoidance_profile(pi, notion, N, workers).counts
        groups.setdefault(counts, []).append(pi)
    return sorted(groups.items(), key=lambda kv: kv[1][0].rgf)
