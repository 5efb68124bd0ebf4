import dataclasses
import functools
import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import mixed_tail
from gencounter.automaton import NONZERO, ZERO, Transition
from gencounter.core import NOOP, inc
from gencounter.machines import LGenParams, build_lgen
from gencounter.oracle import (
    Corpus,
    Decomposition,
    Outcome,
    aw_product_check,
    aw_vector,
    count_blocks,
    counter_census,
    differential_test,
    interchange_test,
    largest_generator,
    oracle_lgen,
    oracle_lpal,
    oracle_lpat,
)

L11 = LGenParams(3, (1, 1))
L12 = LGenParams(3, (1, 2))


@pytest.mark.parametrize(
    "params, word, expected",
    [(L11, "aabbcc", True), (L11, "aabbbcc", False), (L12, "abcc", True), (L11, "", True), (L11, "ba", False)],
)
def test_oracle_lgen(params, word, expected):
    assert oracle_lgen(params, word) is expected


@pytest.mark.parametrize(
    "word, expected",
    [("01#01#", True), ("01#", False), ("#0#", False), ("##", True), ("1#0#1#", True), ("0#0", False), ("", False)],
)
def test_oracle_lpat(word, expected):
    assert oracle_lpat(word) is expected


@pytest.mark.parametrize("word, expected", [("01#10", True), ("0110", False), ("#", True), ("#1#", False)])
def test_oracle_lpal(word, expected):
    assert oracle_lpal(word) is expected


def test_count_blocks():
    assert [count_blocks(x) for x in ("", "01#", "01#10#", "0#1", "##")] == [1, 1, 2, 2, 2]


# -- matrix words -------------------------------------------------------------


def test_aw_examples():
    assert aw_product_check("AB", "AB")
    assert not aw_product_check("A", "B")
    assert aw_vector("A", "B") == [Fraction(16, 25), Fraction(-3, 5), Fraction(12, 25)]


def test_aw_length_mismatch():
    with pytest.raises(ValueError):
        aw_product_check("A", "AB")


@pytest.mark.parametrize("n", range(0, 5))
def test_aw_equivalence_exhaustive(n):
    words = ["".join(w) for w in itertools.product("AB", repeat=n)]
    for x in words:
        for y in words:
            assert aw_product_check(x, y) == (x == y)


# -- corpora and differential tests ---------------------------------------------


def test_corpus_enumeration_order():
    assert list(Corpus(("b", "a"), 2)) == ["", "a", "b", "aa", "ab", "ba", "bb"]
    assert list(Corpus(("a",), 0)) == [""]
    sample = list(Corpus(("a", "b"), 5, count=20, seed=7))
    assert sample == list(Corpus(("a", "b"), 5, count=20, seed=7)) and len(sample) == 20


def test_differential_lgen_clean(lgen):
    report = differential_test(lgen, functools.partial(oracle_lgen, L11), Corpus(("a", "b", "c"), 7))
    assert report.ok and report.total == sum(3**n for n in range(8))
    assert report.max_head_reversals == 0
    assert max(report.max_counter_reversals.values()) == 1


def test_differential_catches_mutation(lgen):
    table = dict(lgen.transitions)
    # pop sqrt3 instead of sqrt2 on the first b
    table[("q0", "b", ZERO)] = table[("q0", "b", NONZERO)] = Transition("q1", 1, table[("q0", "c", ZERO)].op)
    broken = dataclasses.replace(lgen, transitions=table)
    report = differential_test(broken, functools.partial(oracle_lgen, L11), Corpus(("a", "b", "c"), 6))
    assert not report.ok
    for line in report.to_lines():
        d = json.loads(line)
        assert d["expected"] is not (d["verdict"] == "accept")


def test_differential_empty_corpus(lgen):
    report = differential_test(lgen, functools.partial(oracle_lgen, L11), [])
    assert report.total == 0 and report.ok and report.to_lines() == []


def test_differential_parallel_matches_serial(lpat):
    corpus = Corpus(("0", "1", "#"), 6)
    serial = differential_test(lpat, oracle_lpat, corpus)
    parallel = differential_test(lpat, oracle_lpat, corpus, workers=2, chunk_size=97)
    assert serial == parallel


def test_reversal_bound_violations_reported(lpat):
    report = differential_test(lpat, oracle_lpat, ["01#10#"], reversal_bound=lambda x: 0)
    assert report.bound_violations == [("01#10#", 2)] and not report.ok


# -- interchange ----------------------------------------------------------------


def test_decomposition_parts_roundtrip():
    d = Decomposition.from_parts(["aa", "", "b"], ["x", "yz"])
    assert d.x == "aaxyzb" and d.cuts == (2, 3, 3, 5)
    assert d.vs == ["aa", "", "b"] and d.ws == ["x", "yz"]
    assert d.swapped(0, 1) == "aayzxb"


def test_decomposition_rejects_empty_w():
    with pytest.raises(ValueError):
        Decomposition("abc", (1, 1))
    with pytest.raises(ValueError):
        Decomposition("abc", (2, 1))


@given(st.integers(0, 10), st.integers(1, 6), st.integers(0, 30), st.randoms(use_true_random=False))
def test_random_decomposition_is_valid(v1, r, extra, rng):
    x = "a" * (v1 + r + extra)
    d = Decomposition.random(x, r, v1, rng)
    assert d.r == r and d.cuts[0] == v1 and all(d.ws)


def test_largest_generator(lgen):
    assert largest_generator(lgen.counter) == (1, 1)


def _anbn_decomposition(n, r, t, rng):
    return Decomposition.random("a" * n + "b" * n, r, n + t, rng)


def test_interchange_lgen_two_classes():
    spec = build_lgen(LGenParams(2))
    r = len(spec.states) ** 2 + 1
    rng = random.Random(0)
    d = _anbn_decomposition(r + 3, r, 2, rng)
    report = interchange_test(spec, d)
    assert report.outcome is Outcome.PASS
    assert report.pairs[report.l] == report.pairs[report.m]


def test_interchange_mixed_tail_nontrivial_swap():
    spec = mixed_tail()
    r = len(spec.states) ** 2 + 1
    rng = random.Random(5)
    n = r + 4
    tail = "".join(rng.choice("bc") for _ in range(n))
    d = Decomposition.random("a" * n + tail, r, n, rng)
    report = interchange_test(spec, d)
    assert report.outcome is Outcome.PASS
    assert report.swapped is not None


def test_interchange_not_accepted_is_inconclusive():
    spec = build_lgen(LGenParams(2))
    r = len(spec.states) ** 2 + 1
    x = "a" * r + "b" * (r + 1)
    d = Decomposition.random(x, r, r, random.Random(1))
    assert interchange_test(spec, d).outcome is Outcome.INCONCLUSIVE


def test_interchange_precondition_unmet_is_inconclusive():
    spec = build_lgen(LGenParams(2))
    r = len(spec.states) ** 2 + 1
    n = r + 2
    d = Decomposition.random("a" * n + "b" * n, r, n - 1, random.Random(2))
    report = interchange_test(spec, d)
    assert report.outcome is Outcome.INCONCLUSIVE and "precondition" in report.reason


def test_interchange_wrong_piece_count():
    spec = build_lgen(LGenParams(2))
    with pytest.raises(ValueError):
        interchange_test(spec, Decomposition("aabb", (2, 3)))


# -- bounded counters -----------------------------------------------------------


def test_census_flags_bounded_counter(lgen):
    # a machine that pushes and immediately pops on every symbol
    table = {}
    for s in (ZERO, NONZERO):
        table[("start", "¢", s)] = Transition("up", 1, NOOP)
        table[("up", "a", s)] = Transition("down", 0, inc(1))
        table[("down", "a", s)] = Transition("up", 1, inc(1).inverse())
        table[("up", "$", s)] = Transition("acc", 0, NOOP)
    spec = dataclasses.replace(
        lgen, states=("start", "up", "down", "acc"), alphabet=("a",), transitions=table
    )
    assert counter_census(spec, 6).possibly_regular
    assert not counter_census(lgen, 5).possibly_regular
