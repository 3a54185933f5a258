"""Set partitions of [n] stored as restricted growth words.

A partition ``B_1/B_2/.../B_k`` of ``[n] = {1, ..., n}`` is kept in canonical
order (block minima increasing) and represented internally by its restricted
growth function: ``a_i`` is the index of the block containing ``i``.  Blocks are
derived views.  Elements are 1-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

EMPTY_SYMBOL = "ε"

Blocks = tuple[tuple[int, ...], ...]


class PartitionError(ValueError):
    """Base class for invalid partition data."""


class RGFError(PartitionError):
    """Raised for a word that is not a restricted growth function."""


class DomainError(PartitionError):
    """Raised when a label or subset falls outside the allowed ground set."""


class PartitionSyntaxError(PartitionError):
    """Raised when partition text cannot be parsed.

    ``position`` is the 0-based character offset of the offending token.
    """

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


def rgf_violation(word: Sequence[int]) -> int | None:
    """Return the 0-based index of the first letter breaking the RGF rules, or None."""
    top = 0
    for i, a in enumerate(word):
        if not isinstance(a, int) or a < 1 or a > top + 1:
            return i
        if a > top:
            top = a
    return None


def is_rgf(word: Sequence[int]) -> bool:
    return rgf_violation(word) is None


def validate_rgf(word: Sequence[int]) -> tuple[int, ...]:
    word = tuple(word)
    bad = rgf_violation(word)
    if bad is not None:
        raise RGFError(
            f"{''.join(map(str, word)) if all(0 <= a < 10 for a in word) else word} "
            f"is not an RGF: letter {word[bad]} at position {bad + 1} exceeds "
            f"1 + max of the preceding letters"
        )
    return word


def canonical_blocks(blocks: Iterable[Iterable[int]]) -> Blocks:
    """Sort each block and order the blocks by their minima; drop empty blocks."""
    out = [tuple(sorted(b)) for b in blocks]
    out = [b for b in out if b]
    out.sort(key=lambda b: b[0])
    return tuple(out)


@dataclass(frozen=True, order=True)
class SetPartition:
    """An immutable set partition of ``[n]`` held as its RGF word."""

    rgf: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.rgf, tuple):
            object.__setattr__(self, "rgf", tuple(self.rgf))
        validate_rgf(self.rgf)

    # construction

    @classmethod
    def empty(cls) -> SetPartition:
        return cls(())

    @classmethod
    def from_rgf(cls, word: Sequence[int]) -> SetPartition:
        return cls(tuple(word))

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int | None = None) -> SetPartition:
        """Build from blocks over ``[n]`` given in any order.

        Raises ``DomainError`` if the blocks overlap or do not cover ``[n]``.
        """
        blocks = canonical_blocks(blocks)
        elements = [x for b in blocks for x in b]
        if n is None:
            n = len(elements)
        if len(set(elements)) != len(elements):
            raise DomainError(f"blocks {blocks} are not pairwise disjoint")
        if sorted(elements) != list(range(1, n + 1)):
            raise DomainError(f"blocks {blocks} do not cover [1, {n}] exactly")
        word = [0] * n
        for j, b in enumerate(blocks, start=1):
            for x in b:
                word[x - 1] = j
        return cls(tuple(word))

    @classmethod
    def parse(cls, text: str) -> SetPartition:
        return parse_partition(text)

    @classmethod
    def min_pattern(cls, m: int) -> SetPartition:
        """The all-singletons partition 1/2/.../m."""
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def max_pattern(cls, m: int) -> SetPartition:
        """The one-block partition 12...m."""
        return cls((1,) * m)

    # views

    @property
    def n(self) -> int:
        return len(self.rgf)

    @property
    def num_blocks(self) -> int:
        return max(self.rgf, default=0)

    @property
    def blocks(self) -> Blocks:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for i, a in enumerate(self.rgf, start=1):
            out[a - 1].append(i)
        return tuple(tuple(b) for b in out)

    def block_sizes(self) -> list[int]:
        sizes = [0] * self.num_blocks
        for a in self.rgf:
            sizes[a - 1] += 1
        return sizes

    def block_index(self, subset: Iterable[int]) -> int:
        """Canonical index ``j`` of the block containing ``subset``.

        Raises ``DomainError`` if ``subset`` is empty, leaves ``[n]``, or meets
        more than one block.
        """
        idx = set()
        for i in subset:
            if not 1 <= i <= self.n:
                raise DomainError(f"{i} is not in [1, {self.n}]")
            idx.add(self.rgf[i - 1])
        if len(idx) != 1:
            raise DomainError(f"{sorted(subset)} does not lie in a single block")
        return idx.pop()

    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return format_blocks(self.blocks)

    def __repr__(self) -> str:
        return f"SetPartition({str(self)!r})"

    def compact(self) -> str:
        """Digit-run shorthand such as ``14/2/356`` (falls back to commas when n > 9)."""
        return format_blocks(self.blocks, compact=self.n <= 9)


def format_blocks(blocks: Blocks, compact: bool = False) -> str:
    if not blocks:
        return EMPTY_SYMBOL
    sep = "" if compact else ","
    return "/".join(sep.join(map(str, b)) for b in blocks)


def parse_partition(text: str) -> SetPartition:
    """Parse ``"1,4/2/3,5,6"`` or the shorthand ``"14/2/356"``.

    Shorthand (no commas anywhere) reads every digit as one element.  Blocks
    and elements may be given in any order; the result is canonical.
    """
    stripped = text.strip()
    if stripped in ("", EMPTY_SYMBOL, "e", "eps"):
        return SetPartition.empty()
    use_commas = "," in stripped
    blocks: list[list[int]] = []
    seen: dict[int, int] = {}
    pos = text.index(stripped[0])
    for token in stripped.split("/"):
        start = pos
        pos += len(token) + 1
        if token.strip() == "":
            raise PartitionSyntaxError("empty block", text, start)
        if use_commas:
            items = []
            off = start
            for piece in token.split(","):
                if not piece.strip().isdigit():
                    raise PartitionSyntaxError(f"bad element {piece!r}", text, off)
                items.append((int(piece), off))
                off += len(piece) + 1
        else:
            if not token.strip().isdigit():
                bad = next(i for i, ch in enumerate(token) if not (ch.isdigit() or ch.isspace()))
                raise PartitionSyntaxError(f"unexpected character {token[bad]!r}", text, start + bad)
            items = [(int(ch), start + i) for i, ch in enumerate(token) if ch.isdigit()]
        block = []
        for x, off in items:
            if x < 1:
                raise PartitionSyntaxError(f"element {x} is not positive", text, off)
            if x in seen:
                raise PartitionSyntaxError(f"element {x} repeated", text, off)
            seen[x] = off
            block.append(x)
        blocks.append(block)
    n = len(seen)
    missing = [i for i in range(1, n + 1) if i not in seen]
    if missing:
        extra = max(seen)
        raise PartitionSyntaxError(
            f"elements must be exactly 1..{n}; {missing[0]} is missing", text, seen[extra]
        )
    return SetPartition.from_blocks(blocks, n)


# elementary maps

Labeled = Union[Sequence[int], Sequence[Sequence[int]]]


def standardize(obj, labels: Iterable[int] | None = None):
    """Relabel by the order-preserving bijection from ``labels`` onto ``[#labels]``.

    ``obj`` is either a sequence of integers (returned as a tuple) or a
    collection of blocks (returned as a ``SetPartition``).  ``labels``
    defaults to the set of labels used by ``obj``.
    """
    if isinstance(obj, SetPartition):
        obj, is_blocks = obj.blocks, True
    else:
        obj = tuple(obj)
        is_blocks = bool(obj) and not isinstance(obj[0], int)
    flat = [x for b in obj for x in b] if is_blocks else list(obj)
    label_set = sorted(set(flat) if labels is None else set(labels))
    rank = {x: i for i, x in enumerate(label_set, start=1)}
    for x in flat:
        if x not in rank:
            raise DomainError(f"label {x} is not in {label_set}")
    if is_blocks:
        return SetPartition.from_blocks(([rank[x] for x in b] for b in obj), len(label_set))
    if labels is None and not flat:
        return ()
    return tuple(rank[x] for x in obj)


def to_rgf(pi: SetPartition) -> tuple[int, ...]:
    return pi.rgf


def from_rgf(word: Sequence[int]) -> SetPartition:
    return SetPartition.from_rgf(word)


def complement(pi: SetPartition) -> SetPartition:
    """Relabel every element ``b`` as ``n + 1 - b`` and re-canonicalize."""
    n = pi.n
    return SetPartition.from_blocks(([n + 1 - b for b in blk] for blk in pi.blocks), n)


def restrict(sigma: SetPartition, subset: Iterable[int]) -> Blocks:
    """Blocks ``C_i ∩ T`` that are nonempty, canonically ordered, labels kept."""
    T = sorted(set(subset))
    if T and (T[0] < 1 or T[-1] > sigma.n):
        raise DomainError(f"{T} is not a subset of [1, {sigma.n}]")
    groups: dict[int, list[int]] = {}
    for t in T:
        groups.setdefault(sigma.rgf[t - 1], []).append(t)
    return canonical_blocks(groups.values())


def subpartition(sigma: SetPartition, subset: Iterable[int]) -> SetPartition:
    """The restriction to ``subset``, standardized onto ``[#subset]``."""
    T = sorted(set(subset))
    return standardize(restrict(sigma, T), T) if T else SetPartition.empty()


def is_min_pattern(pi: SetPartition) -> bool:
    return pi.num_blocks == pi.n


def is_max_pattern(pi: SetPartition) -> bool:
    return pi.num_blocks <= 1
