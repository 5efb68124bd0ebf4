"""Deterministic one-counter machines over a generalized counter.

The input is laid out as ``¢ x $`` on a read-only tape. At each step the
finite control sees its state, the symbol under the head, and (for
status-visible machines) whether the counter holds the identity.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Optional, Union

from . import core
from .core import CounterOp, CounterSpec, CounterValue, ReversalTracker, ValidationReport

LEFT_END = "¢"
RIGHT_END = "$"
ENDMARKERS = (LEFT_END, RIGHT_END)
# "^" is how the left endmarker is spelled in machine files
RESERVED = frozenset({LEFT_END, RIGHT_END, "^", "*"})

ZERO, NONZERO = 0, 1

DEFAULT_MAX_STEPS = 10**6


class HeadMode(str, enum.Enum):
    ONE_WAY = "one-way"
    TWO_WAY = "two-way"


class Visibility(str, enum.Enum):
    DETERMINISTIC = "deterministic"
    BLIND = "blind"
    PARTIALLY_BLIND = "partially-blind"

    @property
    def sees_counter(self) -> bool:
        return self is Visibility.DETERMINISTIC


class Verdict(str, enum.Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    CRASH = "crash"
    STEP_LIMIT = "step-limit"


class Halt(enum.Enum):
    NO_TRANSITION = "halt"
    CRASH = "crash"


class EngineError(RuntimeError):
    pass


class InputError(ValueError):
    pass


class Transition(NamedTuple):
    target: str
    move: int
    op: CounterOp


class Configuration(NamedTuple):
    state: str
    head: int
    counter: CounterValue


class TraceEntry(NamedTuple):
    config: Configuration
    transition: Transition


@dataclass(frozen=True, eq=True)
class MachineSpec:
    name: str
    states: tuple[str, ...]
    start: str
    accept: frozenset
    alphabet: tuple[str, ...]
    head_mode: HeadMode
    visibility: Visibility
    counter: CounterSpec
    transitions: Mapping[tuple[str, str, int], Transition]

    __hash__ = None  # transitions is a dict


@dataclass
class RunResult:
    verdict: Verdict
    steps: int
    head_reversals: int
    counter_reversals: int
    final: Configuration
    trace: Optional[list[TraceEntry]] = field(default=None, repr=False)

    @property
    def accepted(self) -> bool:
        return self.verdict is Verdict.ACCEPT


def tape_of(spec: MachineSpec, word: str) -> tuple[str, ...]:
    alphabet = set(spec.alphabet)
    for i, ch in enumerate(word):
        if ch not in alphabet:
            raise InputError(f"unknown symbol {ch!r} at position {i}")
    return (LEFT_END, *word, RIGHT_END)


def validate_machine(spec: MachineSpec) -> ValidationReport:
    report = core.validate_spec(spec.counter, search_depth=0)
    v = report.violations
    states = set(spec.states)
    if len(states) != len(spec.states):
        v.append("duplicate state names")
    if spec.start not in states:
        v.append(f"start state {spec.start!r} is not a state")
    for q in sorted(spec.accept - states):
        v.append(f"accept state {q!r} is not a state")
    for a in spec.alphabet:
        if len(a) != 1:
            v.append(f"symbol {a!r} is not a single character")
        if a in RESERVED or a.isspace():
            v.append(f"symbol {a!r} is reserved")
    symbols = set(spec.alphabet) | set(ENDMARKERS)
    ngen = len(spec.counter.generators)
    for key, t in spec.transitions.items():
        q, a, status = key
        where = f"({q}, {a}, {status})"
        if q not in states or t.target not in states:
            v.append(f"{where}: unknown state")
        if a not in symbols:
            v.append(f"{where}: unknown symbol")
        if status not in (ZERO, NONZERO):
            v.append(f"{where}: status must be 0 or 1")
        if t.move not in (-1, 0, 1):
            v.append(f"{where}: head move {t.move} not in -1/0/+1")
        if spec.head_mode is HeadMode.ONE_WAY and t.move == -1:
            v.append(f"{where}: one-way machine moves left")
        if a == LEFT_END and t.move == -1:
            v.append(f"{where}: moves left off the left endmarker")
        if a == RIGHT_END and t.move == 1:
            v.append(f"{where}: moves right off the right endmarker")
        if t.op.direction is not core.Direction.NOOP and not 0 <= t.op.index < ngen:
            v.append(f"{where}: generator index {t.op.index} out of range")
    if not spec.visibility.sees_counter:
        for (q, a, status), t in spec.transitions.items():
            if status == ZERO and spec.transitions.get((q, a, NONZERO)) != t:
                v.append(f"({q}, {a}): zero and nonzero rows differ (blindness)")
            if status == NONZERO and (q, a, ZERO) not in spec.transitions:
                v.append(f"({q}, {a}): zero and nonzero rows differ (blindness)")
    # reachability in the control graph, ignoring the counter
    succ: dict[str, set[str]] = {}
    for (q, _, _), t in spec.transitions.items():
        succ.setdefault(q, set()).add(t.target)
    seen = {spec.start}
    todo = deque([spec.start])
    while todo:
        q = todo.popleft()
        for r in succ.get(q, ()):
            if r not in seen:
                seen.add(r)
                todo.append(r)
    for q in spec.states:
        if q not in seen:
            report.warnings.append(f"state {q!r} is unreachable")
    return report


def initial_configuration(spec: MachineSpec) -> Configuration:
    return Configuration(spec.start, 0, core.identity(spec.counter))


def lookup(spec: MachineSpec, tape: tuple[str, ...], config: Configuration) -> Optional[Transition]:
    if not 0 <= config.head < len(tape):
        raise EngineError(f"head position {config.head} outside tape of length {len(tape)}")
    if spec.visibility.sees_counter:
        status = ZERO if core.is_identity(spec.counter, config.counter) else NONZERO
    else:
        # blind control: the status row is irrelevant by construction
        status = NONZERO
    return spec.transitions.get((config.state, tape[config.head], status))


def step(spec: MachineSpec, tape: tuple[str, ...], config: Configuration) -> Union[Configuration, Halt]:
    """One move; returns the next configuration or a halt signal."""
    t = lookup(spec, tape, config)
    if t is None:
        return Halt.NO_TRANSITION
    value = core.apply(spec.counter, config.counter, t.op)
    if spec.visibility is Visibility.PARTIALLY_BLIND and core.is_negative(spec.counter, value):
        return Halt.CRASH
    return Configuration(t.target, config.head + t.move, value)


def run(
    spec: MachineSpec,
    word: str,
    max_steps: int = DEFAULT_MAX_STEPS,
    *,
    keep_trace: bool = False,
    check_blindness: bool = False,
) -> RunResult:
    """Run ``spec`` on ``word`` until it halts, crashes or exceeds ``max_steps``.

    A run accepts iff the machine halts (no applicable transition) in an
    accepting state with the counter at the identity; one-way machines must
    in addition halt on the right endmarker.
    """
    tape = tape_of(spec, word)
    counter = spec.counter
    table = spec.transitions
    sees = spec.visibility.sees_counter
    pb = spec.visibility is Visibility.PARTIALLY_BLIND
    apply, is_identity, is_negative = core.apply, core.is_identity, core.is_negative
    noop = core.Direction.NOOP

    state, head, value = spec.start, 0, core.identity(counter)
    trace: Optional[list[TraceEntry]] = [] if keep_trace else None
    steps = head_rev = ctr_rev = 0
    last_move = 0
    last_dir = None
    last = len(tape) - 1

    while True:
        sym = tape[head]
        if sees:
            status = ZERO if is_identity(counter, value) else NONZERO
        else:
            status = NONZERO
            if check_blindness and table.get((state, sym, ZERO)) != table.get((state, sym, NONZERO)):
                raise EngineError(f"blindness violated at ({state}, {sym})")
        t = table.get((state, sym, status))
        if t is None:
            if state in spec.accept and is_identity(counter, value) and (
                spec.head_mode is HeadMode.TWO_WAY or head == last
            ):
                verdict = Verdict.ACCEPT
            else:
                verdict = Verdict.REJECT
            break
        if steps >= max_steps:
            verdict = Verdict.STEP_LIMIT
            break
        steps += 1
        if trace is not None:
            trace.append(TraceEntry(Configuration(state, head, value), t))
        op = t.op
        if op.direction is not noop:
            value = apply(counter, value, op)
            if last_dir is not None and op.direction is not last_dir:
                ctr_rev += 1
            last_dir = op.direction
            if pb and is_negative(counter, value):
                verdict = Verdict.CRASH
                break
        move = t.move
        if move:
            if last_move and move != last_move:
                head_rev += 1
            last_move = move
            head += move
            if not 0 <= head <= last:
                raise EngineError(f"head left the tape at ({state}, {sym})")
        state = t.target

    return RunResult(verdict, steps, head_rev, ctr_rev, Configuration(state, head, value), trace)


def trace(spec: MachineSpec, word: str, max_steps: int = DEFAULT_MAX_STEPS) -> RunResult:
    return run(spec, word, max_steps, keep_trace=True)


def accepts(spec: MachineSpec, word: str, max_steps: int = DEFAULT_MAX_STEPS) -> bool:
    return run(spec, word, max_steps).verdict is Verdict.ACCEPT


def reversal_count(ops) -> int:
    """Counter reversals of an op sequence, via :func:`core.record_op`."""
    tracker = ReversalTracker()
    for op in ops:
        tracker = core.record_op(tracker, op)
    return tracker.count
