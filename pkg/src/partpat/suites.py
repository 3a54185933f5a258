"""Named verification suites: closed forms and characterizations against brute force."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable

from .core import SetPartition, complement
from .formulas import (
    bell_counts,
    char_12_3,
    char_coatom,
    char_pi3,
    char_r,
    closed_form_counts,
    count_12_3_etc,
    count_max_pattern,
    count_min_pattern,
    max_pattern_rhs,
    min_pattern_rhs,
)
from .generate import SizeSet, count_by_block_sizes, enumerate_partitions
from .patterns import Notion, avoidance_profile, contains_as, iter_avoiders
from .series import bell_egf, block_count_series, max_pattern_egf, min_pattern_egf

PI3 = ("1/2/3", "123", "12/3", "1/23", "13/2")


@dataclass
class Check:
    name: str
    ok: bool
    counterexample: str | None = None

    def line(self) -> str:
        tail = f"  first counterexample: {self.counterexample}" if self.counterexample else ""
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}{tail}"

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "counterexample": self.counterexample}


@lru_cache(maxsize=256)
def _profile(pi: SetPartition, notion: Notion, max_n: int) -> tuple[int, ...]:
    # profiles are pure, and several suites ask for the same ones
    return avoidance_profile(pi, notion, max_n).counts


def compare_sequences(name: str, got, want) -> Check:
    for n, (g, w) in enumerate(zip(got, want)):
        if g != w:
            return Check(name, False, f"n={n}: brute force {g}, formula {w}")
    return Check(name, True)


def compare_predicate(
    name: str, pred: Callable[[SetPartition], bool], pi: SetPartition, notion: Notion, max_n: int
) -> Check:
    """Extensional equality of ``pred`` and avoidance of ``pi`` on every partition of [n], n <= max_n."""
    for n in range(max_n + 1):
        for s in enumerate_partitions(n):
            if pred(s) == contains_as(s, pi, notion):
                return Check(name, False, f"{s} (predicate {pred(s)})")
    return Check(name, True)


def pi3_suite(max_n: int = 10, char_n: int | None = None) -> list[Check]:
    char_n = max_n if char_n is None else char_n
    out = []
    for x in PI3:
        pi = SetPartition.parse(x)
        out.append(compare_predicate(f"Pi_n({x}) characterization, n<={char_n}",
                                     lambda s, x=x: char_pi3(s, x), pi, Notion.SUB, char_n))
        brute = _profile(pi, Notion.SUB, max_n)
        out.append(compare_sequences(f"#Pi_n({x}) closed form, n<={max_n}", brute,
                                     closed_form_counts(pi, Notion.SUB, max_n)))
    return out


def r3_suite(max_n: int = 9, char_n: int | None = None) -> list[Check]:
    char_n = max_n if char_n is None else char_n
    out = []
    for x in PI3:
        pi = SetPartition.parse(x)
        out.append(compare_predicate(f"R_n({x}) characterization, n<={char_n}",
                                     lambda s, x=x: char_r(s, x), pi, Notion.RGF, char_n))
        brute = _profile(pi, Notion.RGF, max_n)
        out.append(compare_sequences(f"#R_n({x}) closed form, n<={max_n}", brute,
                                     closed_form_counts(pi, Notion.RGF, max_n)))
    return out


def thm01_suite(max_n: int = 9, m: int = 5, notion: Notion = Notion.SUB) -> list[Check]:
    out = []
    for k in range(1, m + 1):
        lo, hi = SetPartition.min_pattern(k), SetPartition.max_pattern(k)
        out.append(compare_predicate(f"avoid {lo.compact()} <=> fewer than {k} blocks",
                                     lambda s, k=k: min_pattern_rhs(s, k), lo, notion, max_n))
        out.append(compare_predicate(f"avoid {hi.compact()} <=> all blocks smaller than {k}",
                                     lambda s, k=k: max_pattern_rhs(s, k), hi, notion, max_n))
        out.append(compare_sequences(f"#avoiders of {lo.compact()}", _profile(lo, notion, max_n),
                                     [count_min_pattern(n, k) for n in range(max_n + 1)]))
        out.append(compare_sequences(f"#avoiders of {hi.compact()}", _profile(hi, notion, max_n),
                                     [count_max_pattern(n, k) for n in range(max_n + 1)]))
    return out


def twelve_suite(max_n: int = 10, m: int = 5, char_n: int = 9) -> list[Check]:
    out = []
    for k in range(3, m + 1):
        pi = SetPartition((1, 1) + tuple(range(2, k)))
        out.append(compare_predicate(f"avoid {pi.compact()} characterization, n<={char_n}",
                                     lambda s, k=k: char_12_3(s, k), pi, Notion.SUB, char_n))
        formula = [count_12_3_etc(n, k) for n in range(max_n + 1)]
        out.append(compare_sequences(f"#Pi_n({pi.compact()}) triple sum, n<={max_n}",
                                     _profile(pi, Notion.SUB, max_n), formula))
        c = complement(pi)
        out.append(compare_sequences(f"#Pi_n({c.compact()}) equals triple sum, n<={max_n}",
                                     _profile(c, Notion.SUB, max_n), formula))
    return out


def coatom_suite(max_n: int = 9, m: int = 5) -> list[Check]:
    out = []
    for k in range(2, m + 1):
        pi = SetPartition((1,) + (2,) * (k - 1))
        out.append(compare_predicate(f"avoid {pi.compact()} <=> coatom characterization",
                                     lambda s, k=k: char_coatom(s, k), pi, Notion.SUB, max_n))
    return out


def complement_suite(max_n: int = 9, m: int = 4) -> list[Check]:
    out = []
    for k in range(m + 1):
        for pi in enumerate_partitions(k):
            pc = complement(pi)
            bad = None
            for n in range(max_n + 1):
                left = {complement(s) for s in iter_avoiders(n, pi, Notion.SUB)}
                right = set(iter_avoiders(n, pc, Notion.SUB))
                if left != right:
                    bad = f"n={n}"
                    break
            out.append(Check(f"Pi_n({pc}) = complements of Pi_n({pi})", bad is None, bad))
    return out


def egf_suite(max_n: int = 12, m: int = 5, size_max: int = 6, l_max: int = 4, sizes_n: int = 10) -> list[Check]:
    out = []
    bad = None
    for r in range(1, size_max + 1):
        for I in combinations(range(1, size_max + 1), r):
            sizes = SizeSet.of(I)
            for l in range(l_max + 1):
                coeffs = block_count_series(sizes, l, sizes_n).egf_counts()
                for n in range(sizes_n + 1):
                    if coeffs[n] != count_by_block_sizes(n, l, sizes):
                        bad = bad or f"I={set(I)}, l={l}, n={n}"
    out.append(Check(f"n![x^n] F_I^l/l! = a_(n,l)^I, I in [1,{size_max}], l<={l_max}, n<={sizes_n}", bad is None, bad))
    for k in range(1, m + 1):
        lo, hi = SetPartition.min_pattern(k), SetPartition.max_pattern(k)
        out.append(compare_sequences(f"exp_{k - 1}(e^x-1) vs avoiders of {lo.compact()}, n<={max_n}",
                                     _profile(lo, Notion.SUB, max_n),
                                     min_pattern_egf(k, max_n).egf_counts()))
        out.append(compare_sequences(f"exp(exp_{k - 1}(x)-1) vs avoiders of {hi.compact()}, n<={max_n}",
                                     _profile(hi, Notion.SUB, max_n),
                                     max_pattern_egf(k, max_n).egf_counts()))
    enum_bell = [sum(1 for _ in enumerate_partitions(n)) for n in range(max_n + 1)]
    out.append(compare_sequences(f"exp(e^x-1) vs enumeration, n<={max_n}", enum_bell, bell_egf(max_n).egf_counts()))
    out.append(compare_sequences("Bell triangle vs enumeration", enum_bell, bell_counts(max_n)))
    return out


SUITES: dict[str, Callable[..., list[Check]]] = {
    "pi3": lambda max_n, m: pi3_suite(max_n),
    "r3": lambda max_n, m: r3_suite(max_n),
    "thm01": lambda max_n, m: thm01_suite(max_n, m),
    "12sum": lambda max_n, m: twelve_suite(max_n, m, min(max_n, 9)),
    "coatom": lambda max_n, m: coatom_suite(max_n, m),
    "complement": lambda max_n, m: complement_suite(max_n, min(m, 4)),
    "egf": lambda max_n, m: egf_suite(max_n, m, sizes_n=min(max_n, 10)),
}


def run_suite(name: str, max_n: int, m: int = 5) -> list[Check]:
    if name == "all":
        return [c for key in SUITES for c in SUITES[key](max_n, m)]
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(list(SUITES) + ['all'])}") from None
    return fn(max_n, m)
