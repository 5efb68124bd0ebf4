"""Machine builders for the recognizers, plus the real-to-matrix transform."""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .automaton import (
    LEFT_END,
    NONZERO,
    RIGHT_END,
    ZERO,
    HeadMode,
    MachineSpec,
    Transition,
    Visibility,
)
from .core import NOOP, CounterKind, CounterSpec, SpecError, dec, inc, matrix_counter, real_counter
from .counters import RationalMatrix, first_primes, is_prime

# the rotation-scaling pair whose words separate under u -> u[2]^2 + u[3]^2
AW_A = RationalMatrix.from_rows([[4, 3, 0], [-3, 4, 0], [0, 0, 5]])
AW_B = RationalMatrix.from_rows([[4, 0, 3], [0, 5, 0], [-3, 0, 4]])


def aw_counter() -> CounterSpec:
    return matrix_counter([AW_A, AW_B])


@dataclass(frozen=True)
class LGenParams:
    """``a0^n a1^(l1 n) ... a_{k-1}^(l_{k-1} n)`` for a chosen ``k``."""

    k: int
    multipliers: tuple[int, ...] = ()
    primes: tuple[int, ...] = ()
    symbols: str = field(default="")

    def __post_init__(self):
        if self.k < 2:
            raise SpecError("k must be at least 2")
        if not self.multipliers:
            object.__setattr__(self, "multipliers", (1,) * (self.k - 1))
        if not self.primes:
            object.__setattr__(self, "primes", first_primes(self.k - 1))
        if not self.symbols:
            if self.k > 26:
                raise SpecError("at most 26 symbol classes have default names")
            object.__setattr__(self, "symbols", string.ascii_lowercase[: self.k])
        object.__setattr__(self, "multipliers", tuple(int(x) for x in self.multipliers))
        object.__setattr__(self, "primes", tuple(int(p) for p in self.primes))
        if len(self.multipliers) != self.k - 1:
            raise SpecError(f"need {self.k - 1} multipliers, got {len(self.multipliers)}")
        if any(m < 1 for m in self.multipliers):
            raise SpecError("multipliers must be positive")
        if len(self.primes) != self.k - 1:
            raise SpecError(f"need {self.k - 1} primes, got {len(self.primes)}")
        if len(set(self.primes)) != len(self.primes):
            raise SpecError(f"duplicate primes in {self.primes}")
        bad = [p for p in self.primes if not is_prime(p)]
        if bad:
            raise SpecError(f"not prime: {bad}")
        if len(self.symbols) != self.k or len(set(self.symbols)) != self.k:
            raise SpecError(f"need {self.k} distinct symbols")


def _both(table, q, a, t):
    table[(q, a, ZERO)] = t
    table[(q, a, NONZERO)] = t


def build_lgen(params: LGenParams) -> MachineSpec:
    """One-way partially blind real-counter recognizer for the ``L_gen`` family.

    Generator 0 is the composite ``sum(l_i sqrt(p_i))`` pushed on every ``a0``;
    generator ``i`` is ``sqrt(p_i)``, popped on every ``a_i``.
    """
    k = params.k
    composite = params.multipliers
    units = [tuple(int(i == j) for j in range(k - 1)) for i in range(k - 1)]
    counter = real_counter(params.primes, [composite, *units])
    blocks = [f"q{i}" for i in range(k)]
    table: dict = {}
    _both(table, "start", LEFT_END, Transition("q0", 1, NOOP))
    for i, q in enumerate(blocks):
        for j in range(i, k):
            op = inc(0) if j == 0 else dec(j)
            _both(table, q, params.symbols[j], Transition(blocks[j], 1, op))
        _both(table, q, RIGHT_END, Transition("acc", 0, NOOP))
    name = "lgen-k%d-l%s" % (k, ",".join(map(str, params.multipliers)))
    return MachineSpec(
        name=name,
        states=("start", *blocks, "acc"),
        start="start",
        accept=frozenset({"acc"}),
        alphabet=tuple(params.symbols),
        head_mode=HeadMode.ONE_WAY,
        visibility=Visibility.PARTIALLY_BLIND,
        counter=counter,
        transitions=table,
    )


def build_lpat() -> MachineSpec:
    """Two-way status-visible recognizer for ``x0#x1#...#xk#`` with some ``xi == x0``.

    ``x0`` is pushed left to right. Each later block is first skipped, then
    popped right to left; if the counter is back at the identity the rest of
    the input is checked for shape and the machine accepts, otherwise the block
    is pushed again left to right and the head moves on.
    """
    table: dict = {}
    push = {"0": inc(0), "1": inc(1)}
    pop = {"0": dec(0), "1": dec(1)}
    _both(table, "start", LEFT_END, Transition("push0", 1, NOOP))
    for a in "01":
        # first block
        _both(table, "push0", a, Transition("push0", 1, push[a]))
        # walk to the right delimiter of the current block
        _both(table, "seek", a, Transition("seek", 1, NOOP))
        # pop the block right to left
        _both(table, "pop", a, Transition("pop", -1, pop[a]))
        # no match: push it back left to right
        _both(table, "undo", a, Transition("undo", 1, push[a]))
        # matched: make sure the input ends with '#'
        _both(table, "tail_hash", a, Transition("tail_sym", 1, NOOP))
        _both(table, "tail_sym", a, Transition("tail_sym", 1, NOOP))
    _both(table, "push0", "#", Transition("seek", 1, NOOP))
    _both(table, "seek", "#", Transition("pop", -1, NOOP))
    table[("pop", "#", ZERO)] = Transition("tail_hash", 1, NOOP)
    table[("pop", "#", NONZERO)] = Transition("undo", 1, NOOP)
    _both(table, "undo", "#", Transition("seek", 1, NOOP))
    _both(table, "tail_hash", "#", Transition("tail_hash", 1, NOOP))
    _both(table, "tail_sym", "#", Transition("tail_hash", 1, NOOP))
    _both(table, "tail_hash", RIGHT_END, Transition("acc", 0, NOOP))
    return MachineSpec(
        name="lpat",
        states=("start", "push0", "seek", "pop", "undo", "tail_hash", "tail_sym", "acc"),
        start="start",
        accept=frozenset({"acc"}),
        alphabet=("0", "1", "#"),
        head_mode=HeadMode.TWO_WAY,
        visibility=Visibility.DETERMINISTIC,
        counter=aw_counter(),
        transitions=table,
    )


def build_lpal(visibility: Visibility = Visibility.DETERMINISTIC) -> MachineSpec:
    """One-way recognizer for ``x#reverse(x)`` over ``{0, 1}``.

    The status-visible variant consults the counter only on ``$``. The
    partially blind variant relies on acceptance by empty store instead;
    over this generating set an excess of pops drives the norm below one, so
    it crashes exactly when more symbols follow ``#`` than precede it.
    """
    table: dict = {}
    _both(table, "start", LEFT_END, Transition("left", 1, NOOP))
    for a, g in (("0", 0), ("1", 1)):
        _both(table, "left", a, Transition("left", 1, inc(g)))
        _both(table, "right", a, Transition("right", 1, dec(g)))
    _both(table, "left", "#", Transition("right", 1, NOOP))
    if visibility is Visibility.DETERMINISTIC:
        table[("right", RIGHT_END, ZERO)] = Transition("acc", 0, NOOP)
    else:
        _both(table, "right", RIGHT_END, Transition("acc", 0, NOOP))
    return MachineSpec(
        name="lpal" if visibility is Visibility.DETERMINISTIC else f"lpal-{visibility.value}",
        states=("start", "left", "right", "acc"),
        start="start",
        accept=frozenset({"acc"}),
        alphabet=("0", "1", "#"),
        head_mode=HeadMode.ONE_WAY,
        visibility=visibility,
        counter=aw_counter(),
        transitions=table,
    )


def prime_power_matrix(primes: Sequence[int], coeffs: Sequence[int]) -> RationalMatrix:
    """``[prod p_i ** c_i]`` as a 1x1 matrix."""
    value = Fraction(1)
    for p, c in zip(primes, coeffs):
        value *= Fraction(p) ** c
    return RationalMatrix.scalar(value)


def real_to_matrix(spec: MachineSpec) -> MachineSpec:
    """Same control over the 1x1 matrix counter ``[p]`` per ``sqrt(p)``.

    A coefficient vector maps to the corresponding product of prime powers,
    so the real counter is zero exactly when the matrix counter is ``[1]``
    (unique factorization). Generator indices, and hence the transition
    table, carry over unchanged.
    """
    if spec.counter.kind is not CounterKind.REAL_SQRT:
        raise SpecError(f"expected a real-sqrt counter, got {spec.counter.kind.value}")
    primes = spec.counter.primes
    counter = matrix_counter([prime_power_matrix(primes, g) for g in spec.counter.generators])
    return MachineSpec(
        name=spec.name + "-matrix",
        states=spec.states,
        start=spec.start,
        accept=spec.accept,
        alphabet=spec.alphabet,
        head_mode=spec.head_mode,
        visibility=spec.visibility,
        counter=counter,
        transitions=dict(spec.transitions),
    )

