from itertools import combinations

import pytest

from partpat.core import SetPartition
from partpat.formulas import blocks_at_most, is_layered, is_matching
from partpat.generate import (
    POSITIVE,
    SizeSet,
    bell,
    count_by_block_sizes,
    enumerate_partitions,
    iter_rgfs,
    rgf_prefixes,
    stirling2,
)
from partpat.series import block_count_series

from oracles import all_partitions


def test_enumerate_three():
    assert [p.compact() for p in enumerate_partitions(3)] == ["123", "12/3", "13/2", "1/23", "1/2/3"]


def test_enumerate_empty():
    assert list(enumerate_partitions(0)) == [SetPartition.empty()]
    assert list(iter_rgfs(0)) == [()]


def test_matching_filter_four():
    oracle = sum(1 for p in all_partitions(4) if max(map(len, p.blocks)) <= 2)
    assert oracle == 10
    assert len(list(enumerate_partitions(4, matching=True))) == 10


@pytest.mark.parametrize("n", range(9))
def test_lexicographic_and_unique(n):
    words = [p.rgf for p in enumerate_partitions(n)]
    assert words == sorted(words)
    assert len(set(words)) == len(words)


@pytest.mark.parametrize("n", range(11))
def test_stream_length_is_bell(n):
    assert sum(1 for _ in iter_rgfs(n)) == bell(n)


@pytest.mark.parametrize("n", range(9))
def test_bell_against_block_oracle(n):
    assert bell(n) == len(all_partitions(n))


def test_bell_small():
    assert [bell(n) for n in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]
    assert bell(25) == 4638590332229999353
    assert bell(26) > 2**64


@pytest.mark.parametrize("n", range(13))
def test_stirling_rows_sum_to_bell(n):
    assert sum(count_by_block_sizes(n, l, POSITIVE) for l in range(n + 1)) == bell(n)


def test_block_size_examples():
    assert count_by_block_sizes(4, 2) == 7
    assert count_by_block_sizes(4, 2, SizeSet.of({2})) == 3
    assert count_by_block_sizes(0, 0) == 1
    assert count_by_block_sizes(5, 0) == 0
    assert stirling2(10, 3) == 9330


def test_block_sizes_against_enumeration():
    for n in range(8):
        parts = all_partitions(n)
        for I in [{1}, {2}, {1, 2}, {1, 3}, {2, 3, 4}, {3}]:
            sizes = SizeSet.of(I)
            for l in range(5):
                want = sum(1 for p in parts if p.num_blocks == l and all(len(b) in I for b in p.blocks))
                assert count_by_block_sizes(n, l, sizes) == want


def test_block_sizes_match_egf():
    N = 10
    for r in range(1, 7):
        for I in combinations(range(1, 7), r):
            sizes = SizeSet.of(I)
            for l in range(5):
                coeffs = block_count_series(sizes, l, N).egf_counts()
                assert coeffs == [count_by_block_sizes(n, l, sizes) for n in range(N + 1)]


def test_min_size_sizeset():
    sizes = SizeSet(None, min_size=2)
    assert 1 not in sizes and 7 in sizes
    assert count_by_block_sizes(4, 2, sizes) == 3


@pytest.mark.parametrize("n", range(10))
def test_filters_equal_post_filtering(n):
    everything = list(enumerate_partitions(n))
    assert list(enumerate_partitions(n, matching=True)) == [p for p in everything if is_matching(p)]
    assert list(enumerate_partitions(n, layered=True)) == [p for p in everything if is_layered(p)]
    assert list(enumerate_partitions(n, max_blocks=2)) == [p for p in everything if blocks_at_most(p, 2)]
    sizes = SizeSet.of({1, 3})
    assert list(enumerate_partitions(n, sizes=sizes)) == [
        p for p in everything if all(len(b) in {1, 3} for b in p.blocks)
    ]
    assert list(enumerate_partitions(n, layered=True, max_blocks=2)) == [
        p for p in everything if is_layered(p) and p.num_blocks <= 2
    ]


def test_prefix_shards_cover_stream():
    n = 8
    shards = [w for pre in rgf_prefixes(3) for w in iter_rgfs(n, prefix=pre)]
    assert shards == list(iter_rgfs(n))
    assert list(enumerate_partitions(n, prefix=(1, 2))) == [p for p in enumerate_partitions(n) if p.rgf[:2] == (1, 2)]
