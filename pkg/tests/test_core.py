from hypothesis import given
from hypothesis import strategies as st

import pytest

from gencounter.core import (
    NOOP,
    CounterOp,
    Direction,
    Mode,
    ReversalTracker,
    SpecError,
    apply,
    dec,
    identity,
    inc,
    integer_counter,
    is_identity,
    is_negative,
    matrix_counter,
    real_counter,
    record_op,
)
from gencounter.counters import RationalMatrix, matrix_inverse

A = RationalMatrix.from_rows([[4, 3, 0], [-3, 4, 0], [0, 0, 5]])
B = RationalMatrix.from_rows([[4, 0, 3], [0, 5, 0], [-3, 0, 4]])

INT = integer_counter()
REAL = real_counter((2, 3), [(1, 0), (0, 1)])
MAT = matrix_counter([A, B])


def test_identity_per_kind():
    assert identity(INT) == 0
    assert identity(REAL) == (0, 0)
    assert identity(MAT) == RationalMatrix.identity(3)
    for spec in (INT, REAL, MAT):
        assert is_identity(spec, identity(spec))


def test_apply_examples():
    assert apply(INT, 2, inc(0)) == 3
    assert apply(REAL, (1, 0), dec(1)) == (1, -1)
    assert apply(MAT, identity(MAT), inc(0)) == A


def test_apply_is_left_multiplication():
    assert apply(MAT, A, inc(1)) == B @ A
    assert apply(MAT, A, inc(1)) != A @ B


def test_noop_and_range():
    assert apply(MAT, A, NOOP) is A
    with pytest.raises(SpecError):
        apply(REAL, (0, 0), inc(2))


def test_is_identity_examples():
    assert is_identity(INT, 0)
    assert not is_identity(REAL, (2, -2))
    assert is_identity(MAT, A @ matrix_inverse(A))


def test_is_negative_examples():
    assert is_negative(INT, -1)
    assert is_negative(REAL, (1, -1))
    assert not is_negative(MAT, A)
    assert not is_negative(REAL, (0, 0))


def test_record_op_examples():
    t = record_op(ReversalTracker(), inc(0))
    assert t == ReversalTracker(Mode.INCREMENTING, 0)
    t = record_op(t, dec(0))
    assert t == ReversalTracker(Mode.DECREMENTING, 1)
    assert record_op(t, NOOP) == t


ops = st.builds(
    CounterOp, st.sampled_from(list(Direction)), st.integers(0, 1)
)


def _value(spec, draw_ops):
    v = identity(spec)
    for op in draw_ops:
        v = apply(spec, v, op)
    return v


@given(st.sampled_from([INT, REAL, MAT]), st.lists(ops, max_size=8), ops)
def test_group_inverse_law(spec, prefix, op):
    if spec is INT:
        prefix = [CounterOp(o.direction, 0) for o in prefix]
        op = CounterOp(op.direction, 0)
    v = _value(spec, prefix)
    assert apply(spec, apply(spec, v, op), op.inverse()) == v


@given(st.lists(ops, max_size=40))
def test_tracker_matches_direct_scan(seq):
    tracker = ReversalTracker()
    for op in seq:
        tracker = record_op(tracker, op)
    dirs = [o.direction for o in seq if o.direction is not Direction.NOOP]
    assert tracker.count == sum(1 for a, b in zip(dirs, dirs[1:]) if a != b)


@given(st.lists(ops, max_size=6))
def test_apply_does_not_mutate(seq):
    v = _value(REAL, seq)
    snapshot = tuple(v)
    apply(REAL, v, inc(0))
    assert v == snapshot
    m = _value(MAT, seq)
    before = (m.num, m.den)
    apply(MAT, m, inc(1))
    assert (m.num, m.den) == before
