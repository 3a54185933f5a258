import pytest
from hypothesis import given, strategies as st

from partpat.core import (
    DomainError,
    PartitionSyntaxError,
    RGFError,
    SetPartition,
    canonical_blocks,
    complement,
    from_rgf,
    is_rgf,
    parse_partition,
    restrict,
    standardize,
    subpartition,
    to_rgf,
)
from partpat.generate import enumerate_partitions

from oracles import all_partitions

P = SetPartition.parse


@st.composite
def rgf_words(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    word, top = [], 0
    for _ in range(n):
        a = draw(st.integers(1, top + 1))
        word.append(a)
        top = max(top, a)
    return tuple(word)


class TestStandardize:
    def test_sequence(self):
        assert standardize([4, 3, 4, 6], {3, 4, 6}) == (2, 1, 2, 3)

    def test_partition(self):
        assert standardize([[3, 6], [4]], {3, 4, 6}) == P("13/2")

    def test_identity_on_ground_set(self):
        pi = P("14/2/356")
        assert standardize(pi, range(1, 7)) == pi
        assert standardize([2, 1, 2, 3], range(1, 4)) == (2, 1, 2, 3)

    def test_label_outside(self):
        with pytest.raises(DomainError):
            standardize([4, 5], {3, 4, 6})


class TestRGF:
    def test_running_example(self):
        assert to_rgf(P("14/2/356")) == (1, 2, 3, 1, 3, 3)

    def test_empty(self):
        assert to_rgf(SetPartition.empty()) == ()
        assert str(SetPartition.empty()) == "ε"

    @pytest.mark.parametrize("n", range(1, 8))
    def test_singletons(self, n):
        assert to_rgf(SetPartition.min_pattern(n)) == tuple(range(1, n + 1))

    def test_inverse(self):
        assert from_rgf((1, 2, 3, 1, 3, 3)) == P("14/2/356")
        assert from_rgf((1, 1, 1)).blocks == ((1, 2, 3),)

    def test_1212(self):
        pi = from_rgf((1, 2, 1, 2))
        assert pi.blocks == ((1, 3), (2, 4))
        assert to_rgf(pi) == (1, 2, 1, 2)

    def test_rejects_non_rgf(self):
        assert not is_rgf((1, 2, 3, 1, 5, 3))
        with pytest.raises(RGFError):
            from_rgf((1, 2, 3, 1, 5, 3))
        with pytest.raises(RGFError):
            from_rgf((2, 1))

    @pytest.mark.parametrize("n", range(10))
    def test_round_trip(self, n):
        for pi in enumerate_partitions(n):
            assert from_rgf(to_rgf(pi)) == pi
            assert SetPartition.from_blocks(pi.blocks, n) == pi

    def test_round_trip_against_block_oracle(self):
        for n in range(8):
            assert {p.blocks for p in all_partitions(n)} == {p.blocks for p in enumerate_partitions(n)}

    def test_block_index(self):
        pi = P("14/2/356")
        assert pi.block_index({3, 6}) == 3
        assert [pi.block_index({i}) for i in range(1, 7)] == [1, 2, 3, 1, 3, 3]
        with pytest.raises(DomainError):
            pi.block_index({1, 2})


class TestComplement:
    def test_running_example(self):
        c = complement(P("14/2/356"))
        assert c == P("63/5/421")
        assert c.compact() == "124/36/5"

    @pytest.mark.parametrize("n", range(6))
    def test_fixed_points(self, n):
        assert complement(SetPartition.min_pattern(n)) == SetPartition.min_pattern(n)
        assert complement(SetPartition.max_pattern(n)) == SetPartition.max_pattern(n)

    @pytest.mark.parametrize("n", range(10))
    def test_involution(self, n):
        for pi in enumerate_partitions(n):
            assert complement(complement(pi)) == pi


class TestRestrict:
    def test_running_example(self):
        assert restrict(P("14/2/356"), {3, 4, 6}) == ((3, 6), (4,))
        assert subpartition(P("14/2/356"), {3, 4, 6}) == P("13/2")

    def test_empty_subset(self):
        assert restrict(P("14/2/356"), ()) == ()
        assert subpartition(P("14/2/356"), ()) == SetPartition.empty()

    def test_initial_segment(self):
        assert restrict(P("14/2/356"), range(1, 4)) == ((1,), (2,), (3,))

    def test_full_set(self):
        pi = P("14/2/356")
        assert restrict(pi, range(1, 7)) == pi.blocks

    def test_outside(self):
        with pytest.raises(DomainError):
            restrict(P("12"), {3})

    @pytest.mark.parametrize("n", range(6))
    def test_subpartitions_are_restrictions(self, n):
        # build every subpartition from the definition: pick a subset of each block
        from itertools import product

        for sigma in enumerate_partitions(n):
            choices = []
            for b in sigma.blocks:
                subsets = [()]
                for x in b:
                    subsets += [s + (x,) for s in subsets]
                choices.append(subsets)
            from_definition = {canonical_blocks(c) for c in product(*choices)}
            from_restriction = set()
            for mask in range(1 << n):
                T = [i + 1 for i in range(n) if mask >> i & 1]
                from_restriction.add(restrict(sigma, T))
            assert from_definition == from_restriction


class TestText:
    @pytest.mark.parametrize(
        "text, blocks",
        [
            ("14/2/356", ((1, 4), (2,), (3, 5, 6))),
            ("1,4/2/3,5,6", ((1, 4), (2,), (3, 5, 6))),
            ("3/12", ((1, 2), (3,))),
            ("21/3", ((1, 2), (3,))),
            ("ε", ()),
            ("1,10/2/3/4/5/6/7/8/9", ((1, 10),) + tuple((i,) for i in range(2, 10))),
        ],
    )
    def test_parse(self, text, blocks):
        assert parse_partition(text).blocks == blocks

    @pytest.mark.parametrize("text, pos", [("1//2", 2), ("12/3/12", 5), ("1a/2", 1), ("13", 1), ("0/1", 0)])
    def test_syntax_errors(self, text, pos):
        with pytest.raises(PartitionSyntaxError) as e:
            parse_partition(text)
        assert e.value.position == pos

    def test_canonical_print(self):
        assert str(P("356/2/41")) == "1,4/2/3,5,6"

    @given(rgf_words())
    def test_print_parse_round_trip(self, word):
        pi = SetPartition(word)
        assert parse_partition(str(pi)) == pi
        if pi.n <= 9:
            assert parse_partition(pi.compact()) == pi

    @given(rgf_words())
    def test_canonicalization_idempotent(self, word):
        pi = SetPartition(word)
        assert canonical_blocks(pi.blocks) == pi.blocks
        assert SetPartition.from_blocks(reversed(pi.blocks), pi.n) == pi

    def test_immutable(self):
        pi = P("12/3")
        with pytest.raises(Exception):
            pi.rgf = (1, 1, 1)
