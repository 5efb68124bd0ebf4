"""Deterministic automata with a group-valued counter."""

from .automaton import (
    Configuration,
    HeadMode,
    MachineSpec,
    RunResult,
    Transition,
    Verdict,
    Visibility,
    run,
    step,
    trace,
    validate_machine,
)
from .core import (
    NOOP,
    CounterKind,
    CounterOp,
    CounterSpec,
    Direction,
    ReversalTracker,
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
    validate_spec,
)
from .counters import RationalMatrix, Sign, SpecError, real_sign
from .machines import LGenParams, build_lgen, build_lpal, build_lpat, real_to_matrix

__version__ = "0.1.0"
