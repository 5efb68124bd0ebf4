"""Generalized counters: a group, a finite generating set and a "negative" set.

A counter value is one of

* ``int`` for the integer counter,
* ``tuple[int, ...]`` (coefficients over the sqrt-prime basis) for the real counter,
* :class:`~gencounter.counters.RationalMatrix` for the matrix counter.

Values are immutable; every operation here returns a new value.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence, Union

from .counters import (
    RationalMatrix,
    Sign,
    SpecError,
    determinant,
    is_prime,
    matrix_inverse,
    matrix_is_negative,
    real_is_negative,
    real_sign,
)

CounterValue = Union[int, tuple, RationalMatrix]


class CounterKind(str, enum.Enum):
    INTEGER = "integer"
    REAL_SQRT = "real-sqrt"
    MATRIX = "matrix"


class Direction(str, enum.Enum):
    INC = "inc"
    DEC = "dec"
    NOOP = "noop"


@dataclass(frozen=True)
class CounterOp:
    direction: Direction
    index: int = 0

    def __str__(self) -> str:
        if self.direction is Direction.NOOP:
            return "noop"
        return f"{self.direction.value}:{self.index}"

    def inverse(self) -> "CounterOp":
        if self.direction is Direction.INC:
            return CounterOp(Direction.DEC, self.index)
        if self.direction is Direction.DEC:
            return CounterOp(Direction.INC, self.index)
        return self


NOOP = CounterOp(Direction.NOOP)


def inc(index: int) -> CounterOp:
    return CounterOp(Direction.INC, index)


def dec(index: int) -> CounterOp:
    return CounterOp(Direction.DEC, index)


@dataclass(frozen=True)
class CounterSpec:
    """One counter instantiation ``(U, G, F-)``.

    ``generators`` holds positive ints (integer kind), integer coefficient
    tuples over ``primes`` (real-sqrt kind) or square matrices (matrix kind).
    """

    kind: CounterKind
    generators: tuple
    primes: tuple[int, ...] = ()
    dimension: int = 0

    def __post_init__(self):
        if not self.generators:
            raise SpecError("generating set must be non-empty")
        if self.kind is CounterKind.REAL_SQRT:
            for g in self.generators:
                if len(g) != len(self.primes):
                    raise SpecError(
                        f"generator {g} has {len(g)} coefficients, basis has {len(self.primes)}"
                    )
        elif self.kind is CounterKind.MATRIX:
            for g in self.generators:
                if not isinstance(g, RationalMatrix) or g.n != self.dimension:
                    raise SpecError(f"generator is not a {self.dimension}x{self.dimension} matrix")

    @cached_property
    def inverses(self) -> tuple:
        if self.kind is CounterKind.MATRIX:
            return tuple(matrix_inverse(g) for g in self.generators)
        if self.kind is CounterKind.REAL_SQRT:
            return tuple(tuple(-c for c in g) for g in self.generators)
        return tuple(-g for g in self.generators)


def integer_counter(generators: Sequence[int] = (1,)) -> CounterSpec:
    return CounterSpec(CounterKind.INTEGER, tuple(int(g) for g in generators))


def real_counter(primes: Sequence[int], generators: Sequence[Sequence[int]] | None = None) -> CounterSpec:
    """Real counter over ``sqrt(p)`` for each prime; unit generators by default."""
    primes = tuple(int(p) for p in primes)
    if generators is None:
        generators = [tuple(int(i == j) for j in range(len(primes))) for i in range(len(primes))]
    return CounterSpec(
        CounterKind.REAL_SQRT, tuple(tuple(int(c) for c in g) for g in generators), primes
    )


def matrix_counter(generators: Sequence) -> CounterSpec:
    mats = tuple(g if isinstance(g, RationalMatrix) else RationalMatrix.from_rows(g) for g in generators)
    if not mats:
        raise SpecError("generating set must be non-empty")
    return CounterSpec(CounterKind.MATRIX, mats, dimension=mats[0].n)


# ---------------------------------------------------------------------------
# the counter contract
# ---------------------------------------------------------------------------


def identity(spec: CounterSpec) -> CounterValue:
    if spec.kind is CounterKind.INTEGER:
        return 0
    if spec.kind is CounterKind.REAL_SQRT:
        return (0,) * len(spec.primes)
    return RationalMatrix.identity(spec.dimension)


def apply(spec: CounterSpec, value: CounterValue, op: CounterOp) -> CounterValue:
    """Left-apply generator ``op.index`` (or its inverse) to ``value``."""
    d = op.direction
    if d is Direction.NOOP:
        return value
    if not 0 <= op.index < len(spec.generators):
        raise SpecError(f"generator index {op.index} out of range (|G| = {len(spec.generators)})")
    x = spec.generators[op.index] if d is Direction.INC else spec.inverses[op.index]
    kind = spec.kind
    if kind is CounterKind.INTEGER:
        return x + value
    if kind is CounterKind.REAL_SQRT:
        return tuple(a + b for a, b in zip(x, value))
    return x @ value


def is_identity(spec: CounterSpec, value: CounterValue) -> bool:
    kind = spec.kind
    if kind is CounterKind.INTEGER:
        return value == 0
    if kind is CounterKind.REAL_SQRT:
        return not any(value)
    return value.is_identity()


def is_negative(spec: CounterSpec, value: CounterValue) -> bool:
    """Membership of ``value`` in the negative set of ``spec``."""
    kind = spec.kind
    if kind is CounterKind.INTEGER:
        return value < 0
    if kind is CounterKind.REAL_SQRT:
        return real_is_negative(spec.primes, value)
    return matrix_is_negative(value)


def check_value(spec: CounterSpec, value: CounterValue) -> None:
    kind = spec.kind
    if kind is CounterKind.INTEGER:
        ok = isinstance(value, int)
    elif kind is CounterKind.REAL_SQRT:
        ok = isinstance(value, tuple) and len(value) == len(spec.primes)
    else:
        ok = isinstance(value, RationalMatrix) and value.n == spec.dimension
    if not ok:
        raise SpecError(f"{value!r} is not a value of a {kind.value} counter")


# ---------------------------------------------------------------------------
# counter reversals
# ---------------------------------------------------------------------------


class Mode(str, enum.Enum):
    NONE_YET = "none-yet"
    INCREMENTING = "incrementing"
    DECREMENTING = "decrementing"


@dataclass(frozen=True)
class ReversalTracker:
    mode: Mode = Mode.NONE_YET
    count: int = 0


def record_op(tracker: ReversalTracker, op: CounterOp) -> ReversalTracker:
    if op.direction is Direction.NOOP:
        return tracker
    mode = Mode.INCREMENTING if op.direction is Direction.INC else Mode.DECREMENTING
    if tracker.mode is Mode.NONE_YET:
        return ReversalTracker(mode, 0)
    if tracker.mode is mode:
        return tracker
    return ReversalTracker(mode, tracker.count + 1)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def raise_if_invalid(self) -> None:
        if self.violations:
            raise SpecError("; ".join(self.violations))


DEFAULT_SEARCH_DEPTH = 6


def validate_spec(spec: CounterSpec, search_depth: int = DEFAULT_SEARCH_DEPTH) -> ValidationReport:
    """Check the side conditions on a generating set.

    For matrix counters the disjointness of the generated and inverse-generated
    monoids is undecidable in general; words up to ``search_depth`` are
    enumerated and any collision, or any word landing on the wrong side of the
    negative set, is reported. ``search_depth=0`` skips the search.
    """
    report = ValidationReport()
    v = report.violations
    if spec.kind is CounterKind.INTEGER:
        for i, g in enumerate(spec.generators):
            if g <= 0:
                v.append(f"generator {i} = {g} is not positive")
    elif spec.kind is CounterKind.REAL_SQRT:
        if not spec.primes:
            v.append("empty sqrt-prime basis")
        for p in spec.primes:
            if not is_prime(p):
                v.append(f"basis entry {p} is not prime")
        seen = set()
        for p in spec.primes:
            if p in seen:
                v.append(f"duplicate prime {p}")
            seen.add(p)
        for i, g in enumerate(spec.generators):
            if not any(g):
                v.append(f"generator {i} is the zero vector")
            elif real_sign(spec.primes, g) is not Sign.POSITIVE:
                v.append(f"generator {i} = {g} does not denote a positive real")
    else:
        singular = False
        for i, g in enumerate(spec.generators):
            if determinant(g) == 0:
                v.append(f"generator {i} is singular")
                singular = True
        if not singular and search_depth > 0:
            _search_words(spec, search_depth, report)
    return report


def _search_words(spec: CounterSpec, depth: int, report: ValidationReport) -> None:
    # Words are non-empty: the empty word is the identity, which can never
    # lie in both the generated set and the negative set.
    def products(gens):
        found = {}
        frontier = {RationalMatrix.identity(spec.dimension): ()}
        for _ in range(depth):
            nxt = {}
            for value, word in frontier.items():
                for i, g in enumerate(gens):
                    p = g @ value
                    if p not in found and p not in nxt:
                        nxt[p] = word + (i,)
            found.update(nxt)
            frontier = nxt
        return found

    pos = products(spec.generators)
    neg = products(spec.inverses)
    for value, word in itertools.islice(
        ((val, w) for val, w in pos.items() if val in neg), 5
    ):
        report.violations.append(
            f"generated word {list(word)} equals inverse word {list(neg[value])}"
        )
    for value, word in pos.items():
        if matrix_is_negative(value):
            report.violations.append(f"generated word {list(word)} lies in the negative set")
            break
    for value, word in neg.items():
        if not matrix_is_negative(value):
            report.violations.append(f"inverse word {list(word)} lies outside the negative set")
            break
