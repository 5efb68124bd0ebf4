import pytest

from gencounter.automaton import NONZERO, ZERO, HeadMode, MachineSpec, Transition, Visibility
from gencounter.core import NOOP, dec, inc, integer_counter, real_counter
from gencounter.machines import LGenParams, build_lgen, build_lpal, build_lpat


def table_of(rows):
    """``(q, a, status, target, move, op)`` rows; status ``None`` means both."""
    table = {}
    for q, a, status, target, move, op in rows:
        for s in (ZERO, NONZERO) if status is None else (status,):
            table[(q, a, s)] = Transition(target, move, op)
    return table


def anbn_integer(visibility=Visibility.PARTIALLY_BLIND):
    """a^n b^n on the conventional integer counter."""
    rows = [
        ("s", "¢", None, "A", 1, NOOP),
        ("A", "a", None, "A", 1, inc(0)),
        ("A", "b", None, "B", 1, dec(0)),
        ("B", "b", None, "B", 1, dec(0)),
        ("A", "$", None, "acc", 0, NOOP),
        ("B", "$", None, "acc", 0, NOOP),
    ]
    return MachineSpec(
        "anbn", ("s", "A", "B", "acc"), "s", frozenset({"acc"}), ("a", "b"),
        HeadMode.ONE_WAY, visibility, integer_counter(), table_of(rows),
    )


def mixed_tail():
    """a^n w with w in {b, c}^n: one sqrt(2) generator popped by both b and c."""
    rows = [
        ("s", "¢", None, "A", 1, NOOP),
        ("A", "a", None, "A", 1, inc(0)),
        ("A", "b", None, "B", 1, dec(0)),
        ("A", "c", None, "B", 1, dec(0)),
        ("B", "b", None, "B", 1, dec(0)),
        ("B", "c", None, "B", 1, dec(0)),
        ("A", "$", None, "acc", 0, NOOP),
        ("B", "$", None, "acc", 0, NOOP),
    ]
    return MachineSpec(
        "mixed-tail", ("s", "A", "B", "acc"), "s", frozenset({"acc"}), ("a", "b", "c"),
        HeadMode.ONE_WAY, Visibility.PARTIALLY_BLIND, real_counter((2,), [(1,)]), table_of(rows),
    )


@pytest.fixture(scope="session")
def lgen():
    return build_lgen(LGenParams(3))


@pytest.fixture(scope="session")
def lpat():
    return build_lpat()


@pytest.fixture(scope="session")
def lpal():
    return build_lpal()
