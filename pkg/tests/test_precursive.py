import json
import random
from fractions import Fraction
from math import factorial

import pytest
import sympy

from partpat.errors import IntegrityError
from partpat.formulas import closed_form_counts, matching_count
from partpat.generate import bell
from partpat.precursive import (
    GuessReport,
    PRecurrence,
    PreconditionError,
    SingularIndexError,
    extend,
    guess,
    nullspace,
    required_length,
    seed_length,
    verify,
)

from oracles import brute_avoider_count
from partpat.core import SetPartition

FACT = PRecurrence(((1, 1), (-1,)))  # (n+1) a(n) - a(n+1)
INVOLUTION = PRecurrence(((1, 1), (1,), (-1,)))  # (n+1) a(n) + a(n+1) - a(n+2)


class TestGuess:
    def test_factorial(self):
        rep = guess([1, 1, 2, 6, 24, 120, 720, 5040], 1, 1)
        assert rep.found and rep.outcome == "found"
        assert rep.recurrence == FACT
        assert str(rep.recurrence) == "(n + 1)*a(n) - a(n+1) = 0"
        assert rep.held_out == 3

    def test_matchings(self):
        a = [matching_count(n) for n in range(21)]
        assert a[:9] == [brute_avoider_count(n, [SetPartition.parse("123")], "sub") for n in range(9)]
        rep = guess(a, 2, 1)
        assert rep.recurrence == INVOLUTION
        assert verify(INVOLUTION, a).ok

    def test_bell_exhausts(self):
        rep = guess([bell(n) for n in range(26)], 3, 3)
        assert rep.outcome == "exhausted-bounds"
        assert rep.recurrence is None
        assert len(rep.searched) == 16

    def test_too_short(self):
        with pytest.raises(PreconditionError, match=str(required_length(2, 2))):
            guess([1, 2, 3], 2, 2)

    def test_required_length(self):
        assert required_length(1, 1) == 8
        assert required_length(3, 3) == 22

    def test_scaling_invariance(self):
        a = [matching_count(n) for n in range(16)]
        base = guess(a, 2, 2).recurrence
        for c in (-3, 2, 7):
            assert guess([c * x for x in a], 2, 2).recurrence == base

    def test_lexicographic_first_cell(self):
        # 2^n satisfies order 1 degree 0, so no larger cell is reached
        rep = guess([2**n for n in range(14)], 2, 2)
        assert rep.searched == [(0, 0), (0, 1), (0, 2), (1, 0)]
        assert rep.recurrence == PRecurrence(((2,), (-1,)))

    def test_zero_sequence(self):
        rep = guess([0] * 10, 1, 1)
        assert rep.recurrence.order == 0

    @pytest.mark.parametrize(
        "x, notion, K, D",
        [(x, n, 3, 2) for x in ["1/2/3", "123", "12/3", "1/23", "13/2"] for n in ("sub", "rgf")]
        + [("1/2/3/4", "sub", 3, 2), ("1234", "sub", 3, 2), ("12/3/4", "sub", 3, 2)]
        + [("1/2/3/4/5", "sub", 4, 3), ("12345", "sub", 4, 3), ("12/3/4/5", "sub", 4, 3)],
    )
    def test_round_trip(self, x, notion, K, D):
        a = closed_form_counts(x, notion, 29)
        rep = guess(a, K, D)
        assert rep.found
        assert verify(rep.recurrence, a).ok
        k = seed_length(rep.recurrence)
        assert extend(rep.recurrence, a[:k], 30) == a

    def test_report_dict_is_json(self):
        rep = guess([1, 1, 2, 6, 24, 120, 720, 5040], 1, 1)
        data = json.loads(json.dumps(rep.to_dict()))
        assert data["outcome"] == "found"
        assert PRecurrence.from_dict(data["recurrence"]) == rep.recurrence
        assert isinstance(GuessReport(0, 0, 0).to_dict()["recurrence"], type(None))


class TestVerify:
    def test_factorial(self):
        assert verify(FACT, [1, 1, 2, 6, 24]) == (True, None)

    def test_perturbed(self):
        assert verify(FACT, [1, 1, 2, 6, 25]) == (False, 3)

    def test_vacuous(self):
        assert verify(INVOLUTION, [1, 1]).ok
        assert verify(FACT, []).ok


class TestExtend:
    def test_factorial(self):
        assert extend(FACT, [1, 1], 6) == [1, 1, 2, 6, 24, 120]
        assert extend(FACT, [1], 10) == [factorial(n) for n in range(10)]

    def test_involutions(self):
        assert extend(INVOLUTION, [1, 1], 16) == [matching_count(n) for n in range(16)]

    def test_order_zero(self):
        assert extend(PRecurrence(((1,),)), [], 5) == [0] * 5

    def test_singular(self):
        rec = PRecurrence(((1,), (0, 1)))  # a(n) + n a(n+1) = 0, leading vanishes at n=0
        with pytest.raises(SingularIndexError) as e:
            extend(rec, [1], 3)
        assert e.value.index == 1
        assert seed_length(rec) == 2

    def test_non_integral(self):
        rec = PRecurrence(((1,), (-2,)))
        with pytest.raises(IntegrityError) as e:
            extend(rec, [1], 3)
        assert e.value.index == 1


class TestPRecurrence:
    def test_normalization(self):
        rec = PRecurrence.normalized([[Fraction(-1, 2), Fraction(-1, 2)], [Fraction(1, 2)]])
        assert rec == FACT

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            PRecurrence(((), (0,)))

    def test_dict_round_trip(self):
        for rec in (FACT, INVOLUTION):
            assert PRecurrence.from_dict(json.loads(json.dumps(rec.to_dict()))) == rec


class TestNullspace:
    @pytest.mark.parametrize("seed", range(25))
    def test_against_sympy(self, seed):
        rng = random.Random(seed)
        rows, cols = rng.randint(1, 6), rng.randint(1, 7)
        m = [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
        if seed % 5 == 0 and rows > 1:
            m[-1] = [2 * x - y for x, y in zip(m[0], m[1 % rows])]
        ours = nullspace(m, cols)
        theirs = sympy.Matrix(m).nullspace()
        assert len(ours) == len(theirs)
        M = sympy.Matrix(m)
        for v in ours:
            assert all(x == 0 for x in M * sympy.Matrix(v))
        if ours:
            assert sympy.Matrix.hstack(*[sympy.Matrix(v) for v in ours]).rank() == len(ours)

    def test_kernel_vectors_solve_guess_system(self):
        a = [matching_count(n) for n in range(20)]
        k, d = 2, 1
        rows = [[n**j * a[n + i] for i in range(k + 1) for j in range(d + 1)] for n in range(17 - k)]
        for v in nullspace(rows, (k + 1) * (d + 1)):
            assert all(sum(r * x for r, x in zip(row, v)) == 0 for row in rows)
