import dataclasses
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import anbn_integer, mixed_tail
from gencounter.automaton import Visibility
from gencounter.core import integer_counter, matrix_counter, real_counter
from gencounter.counters import RationalMatrix
from gencounter.machine_file import ParseError, dump, emit, load, parse, parse_value, render_value
from gencounter.machines import LGenParams, build_lgen, build_lpal, build_lpat, real_to_matrix

BUILDERS = [
    lambda: build_lgen(LGenParams(3)),
    lambda: build_lgen(LGenParams(4, (2, 1, 3), (3, 5, 11))),
    build_lpat,
    build_lpal,
    lambda: build_lpal(Visibility.PARTIALLY_BLIND),
    lambda: real_to_matrix(build_lgen(LGenParams(3, (2, 1)))),
    anbn_integer,
    lambda: anbn_integer(Visibility.BLIND),
    mixed_tail,
]


@pytest.mark.parametrize("make", BUILDERS)
def test_roundtrip(make):
    spec = make()
    text = emit(spec)
    back = parse(text)
    assert back == spec
    assert emit(back) == text


def test_dump_load(tmp_path, lpat):
    path = tmp_path / "lpat.machine"
    dump(lpat, path)
    assert load(path) == lpat


@given(st.lists(st.integers(-10**9, 10**9), min_size=3, max_size=3))
def test_real_value_roundtrip(coeffs):
    spec = real_counter((2, 3, 5))
    assert parse_value(spec, render_value(spec, tuple(coeffs))) == tuple(coeffs)


rationals = st.fractions(max_denominator=1000).filter(lambda f: abs(f) < 10**6)


@given(st.lists(rationals, min_size=4, max_size=4))
def test_matrix_value_roundtrip(entries):
    spec = matrix_counter([[[2, 0], [0, 2]]])
    m = RationalMatrix.from_rows([entries[:2], entries[2:]])
    assert parse_value(spec, render_value(spec, m)) == m


def test_value_examples():
    spec = real_counter((2, 3))
    assert render_value(spec, (1, -2)) == "1√2 - 2√3"
    assert render_value(spec, (0, 0)) == "0"
    assert parse_value(spec, "-1√3") == (0, -1)
    assert render_value(integer_counter(), -4) == "-4"
    m = RationalMatrix.from_rows([[Fraction(1, 2), 0], [0, 1]])
    assert render_value(matrix_counter([[[2, 0], [0, 2]]]), m) == "[[1/2, 0], [0, 1]]"
    with pytest.raises(ValueError):
        parse_value(spec, "1√7")


def _lines(spec):
    return emit(spec).splitlines()


@pytest.mark.parametrize(
    "old, new, fragment",
    [
        ("q0 a * q0 +1 inc:0", "q0 a * q0 +2 inc:0", "move"),
        ("q0 a * q0 +1 inc:0", "q0 a * q0 +1 inc:9", "generator"),
        ("q0 a * q0 +1 inc:0", "q0 z * q0 +1 inc:0", "symbol"),
        ("q0 a * q0 +1 inc:0", "q0 a 0 q0 +1 inc:0", "blind"),
        ("q0 a * q0 +1 inc:0", "q0 a * nowhere +1 inc:0", "state"),
        ("primes = 2 3", "primes = 2 4", "prime"),
        ("[alphabet]", "[bogus]", "section"),
    ],
)
def test_parse_errors_carry_line_numbers(lgen, old, new, fragment):
    lines = _lines(lgen)
    idx = lines.index(old) if old in lines else [i for i, s in enumerate(lines) if s.startswith(old)][0]
    lines[idx] = new
    with pytest.raises(ParseError) as info:
        parse("\n".join(lines))
    assert fragment in str(info.value).lower()
    if info.value.line:
        assert info.value.line == idx + 1


def test_comments_and_blank_lines_ignored(lgen):
    text = "; header comment\n\n" + emit(lgen).replace("[states]", "; mid\n[states]")
    assert parse(text) == lgen


def test_trailing_comments_ignored(lgen):
    text = emit(lgen).replace("q0 a * q0 +1 inc:0", "q0 a * q0 +1 inc:0   ; push")
    assert parse(text) == lgen


def test_emit_rejects_unwritable_names(lgen):
    with pytest.raises(ValueError):
        emit(dataclasses.replace(lgen, name="a;b"))
