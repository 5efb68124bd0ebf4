"""Ground truth and test harnesses.

The language predicates and the matrix-word check below deliberately avoid
the machine engine and the counter classes: they are the independent side
of every differential comparison.
"""

from __future__ import annotations

import enum
import itertools
import json
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence

from . import automaton, core
from .automaton import DEFAULT_MAX_STEPS, MachineSpec, RunResult, Verdict
from .core import CounterKind
from .counters import Sign, real_sign

# ---------------------------------------------------------------------------
# language predicates
# ---------------------------------------------------------------------------


def oracle_lgen(params, x: str) -> bool:
    """``x == a0^n a1^(l1 n) ... a_{k-1}^(l_{k-1} n)`` for some ``n >= 0``."""
    runs = []
    i = 0
    for sym in params.symbols:
        j = i
        while j < len(x) and x[j] == sym:
            j += 1
        runs.append(j - i)
        i = j
    if i != len(x):
        return False
    n = runs[0]
    return all(runs[t + 1] == l * n for t, l in enumerate(params.multipliers))


def oracle_lpat(x: str) -> bool:
    if not x.endswith("#"):
        return False
    blocks = x[:-1].split("#")
    if len(blocks) < 2 or any(set(b) - {"0", "1"} for b in blocks):
        return False
    return blocks[0] in blocks[1:]


def oracle_lpal(x: str) -> bool:
    if x.count("#") != 1:
        return False
    left, right = x.split("#")
    return set(left + right) <= {"0", "1"} and right == left[::-1]


def count_blocks(x: str) -> int:
    """Number of '#'-delimited blocks, not counting the empty tail after a final '#'."""
    pieces = x.split("#")
    return len(pieces) - 1 if x.endswith("#") else len(pieces)


def lpat_reversal_bound(x: str) -> int:
    """Two counter reversals per block."""
    return 2 * count_blocks(x)


# ---------------------------------------------------------------------------
# the two 3x3 matrices and their printed inverses, as plain Fractions
# ---------------------------------------------------------------------------

_F = Fraction
_AW = {
    "A": [[4, 3, 0], [-3, 4, 0], [0, 0, 5]],
    "B": [[4, 0, 3], [0, 5, 0], [-3, 0, 4]],
}
_AW_INV = {
    "A": [[_F(x, 25) for x in row] for row in [[4, -3, 0], [3, 4, 0], [0, 0, 5]]],
    "B": [[_F(x, 25) for x in row] for row in [[4, 0, -3], [0, 5, 0], [3, 0, 4]]],
}


def _mv(m, v):
    return [sum(m[i][j] * v[j] for j in range(3)) for i in range(3)]


def aw_vector(x: str, y: str) -> list[Fraction]:
    """``Y1^-1 ... Yn^-1 Xn ... X1 (1, 0, 0)^T``."""
    v = [_F(1), _F(0), _F(0)]
    for s in x:
        v = _mv(_AW[s], v)
    for s in reversed(y):
        v = _mv(_AW_INV[s], v)
    return v


def aw_product_check(x: str, y: str) -> bool:
    """True iff the second and third components of :func:`aw_vector` vanish."""
    if len(x) != len(y):
        raise ValueError(f"words differ in length: {len(x)} vs {len(y)}")
    if set(x + y) - {"A", "B"}:
        raise ValueError("words must be over {A, B}")
    u = aw_vector(x, y)
    return u[1] ** 2 + u[2] ** 2 == 0


# ---------------------------------------------------------------------------
# corpora and differential testing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Corpus:
    """Length-lexicographic enumeration, or a seeded random sample when ``count`` is set."""

    alphabet: tuple[str, ...]
    max_length: int
    count: Optional[int] = None
    seed: int = 0
    min_length: int = 0

    def __iter__(self) -> Iterator[str]:
        alphabet = sorted(self.alphabet)
        if self.count is None:
            for n in range(self.min_length, self.max_length + 1):
                for letters in itertools.product(alphabet, repeat=n):
                    yield "".join(letters)
        else:
            rng = random.Random(self.seed)
            for _ in range(self.count):
                n = rng.randint(self.min_length, self.max_length)
                yield "".join(rng.choice(alphabet) for _ in range(n))


@dataclass
class Disagreement:
    index: int
    input: str
    verdict: str
    expected: bool

    def to_json(self) -> str:
        return json.dumps(
            {"index": self.index, "input": self.input, "verdict": self.verdict, "expected": self.expected},
            sort_keys=True,
        )


@dataclass
class DiffReport:
    total: int = 0
    disagreements: list[Disagreement] = field(default_factory=list)
    verdicts: Counter = field(default_factory=Counter)
    max_counter_reversals: dict = field(default_factory=dict)
    max_head_reversals: int = 0
    bound_violations: list[tuple[str, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements and not self.bound_violations

    def merge(self, other: "DiffReport") -> "DiffReport":
        out = DiffReport(
            self.total + other.total,
            self.disagreements + other.disagreements,
            self.verdicts + other.verdicts,
            dict(self.max_counter_reversals),
            max(self.max_head_reversals, other.max_head_reversals),
            self.bound_violations + other.bound_violations,
        )
        for k, v in other.max_counter_reversals.items():
            out.max_counter_reversals[k] = max(v, out.max_counter_reversals.get(k, 0))
        return out

    def summary(self) -> str:
        verdicts = ", ".join(f"{v}={self.verdicts[v]}" for v in sorted(self.verdicts))
        return (
            f"{self.total} inputs, {len(self.disagreements)} disagreements, "
            f"{len(self.bound_violations)} reversal-bound violations; verdicts: {verdicts or 'none'}; "
            f"max head reversals {self.max_head_reversals}"
        )

    def to_lines(self) -> list[str]:
        return [d.to_json() for d in self.disagreements]


def _diff_chunk(args) -> DiffReport:
    spec, oracle, words, start, max_steps, shape, bound = args
    report = DiffReport()
    for offset, x in enumerate(words):
        res = automaton.run(spec, x, max_steps)
        expected = bool(oracle(x))
        report.total += 1
        report.verdicts[res.verdict.value] += 1
        if res.accepted != expected:
            report.disagreements.append(Disagreement(start + offset, x, res.verdict.value, expected))
        key = shape(x)
        if res.counter_reversals > report.max_counter_reversals.get(key, -1):
            report.max_counter_reversals[key] = res.counter_reversals
        report.max_head_reversals = max(report.max_head_reversals, res.head_reversals)
        if bound is not None and res.counter_reversals > bound(x):
            report.bound_violations.append((x, res.counter_reversals))
    return report


def differential_test(
    spec: MachineSpec,
    oracle: Callable[[str], bool],
    corpus,
    max_steps: int = DEFAULT_MAX_STEPS,
    *,
    shape: Callable[[str], object] = len,
    reversal_bound: Optional[Callable[[str], int]] = None,
    workers: int = 1,
    chunk_size: int = 20000,
) -> DiffReport:
    """Run ``spec`` on every corpus string and compare with ``oracle``.

    Crash and step-limit verdicts count as rejection; they stay visible in
    ``report.verdicts``. With ``workers > 1`` the corpus is split into chunks
    evaluated in worker processes and merged in enumeration order, so the
    report does not depend on scheduling. ``shape``, ``oracle`` and
    ``reversal_bound`` must then be picklable.
    """
    words = list(corpus)
    chunks = [
        (spec, oracle, words[i : i + chunk_size], i, max_steps, shape, reversal_bound)
        for i in range(0, len(words), chunk_size)
    ]
    report = DiffReport()
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_diff_chunk, chunks))
    else:
        parts = [_diff_chunk(c) for c in chunks]
    for part in parts:
        report = report.merge(part)
    return report


# ---------------------------------------------------------------------------
# real -> matrix lockstep
# ---------------------------------------------------------------------------


def lockstep_identity(original: MachineSpec, transformed: MachineSpec, x: str, max_steps: int = DEFAULT_MAX_STEPS) -> Optional[int]:
    """First step at which control or identity status differ, else ``None``.

    Comparison stops when the shorter run ends; a crash on one side alone is
    not a mismatch because the two negative sets are not the same set.
    """
    a = automaton.trace(original, x, max_steps)
    b = automaton.trace(transformed, x, max_steps)
    for i, (ea, eb) in enumerate(zip(a.trace, b.trace)):
        ca, cb = ea.config, eb.config
        if ca.state != cb.state or ca.head != cb.head:
            return i
        if core.is_identity(original.counter, ca.counter) != core.is_identity(transformed.counter, cb.counter):
            return i
    if a.verdict is b.verdict and a.steps == b.steps:
        fa, fb = a.final, b.final
        if core.is_identity(original.counter, fa.counter) != core.is_identity(transformed.counter, fb.counter):
            return a.steps
    return None


# ---------------------------------------------------------------------------
# bounded counters (diagnostic)
# ---------------------------------------------------------------------------


@dataclass
class CensusReport:
    distinct_by_length: list[int]

    @property
    def possibly_regular(self) -> bool:
        d = self.distinct_by_length
        return len(d) >= 2 and d[-1] == d[-2]


def counter_census(spec: MachineSpec, max_length: int, max_steps: int = DEFAULT_MAX_STEPS) -> CensusReport:
    """Distinct counter values seen over all inputs up to each length.

    If the count stops growing the machine is flagged ``possibly_regular``:
    a counter that takes finitely many values can be folded into the finite
    control. This is a heuristic, not a decision procedure.
    """
    seen: set = set()
    counts = []
    for n in range(max_length + 1):
        for x in Corpus(spec.alphabet, n, min_length=n):
            res = automaton.trace(spec, x, max_steps)
            seen.update(e.config.counter for e in res.trace)
            seen.add(res.final.counter)
        counts.append(len(seen))
    return CensusReport(counts)


# ---------------------------------------------------------------------------
# interchange property for one-way partially blind real-counter machines
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """``x = v1 w1 v2 w2 ... vr wr v(r+1)`` given by ``2r`` cut points.

    ``cuts[2i]`` and ``cuts[2i+1]`` delimit ``w(i+1)``; the ``v`` pieces may
    be empty, so cuts are non-decreasing, while every ``w`` is non-empty.
    """

    x: str
    cuts: tuple[int, ...]

    def __post_init__(self):
        c = self.cuts
        if len(c) % 2 or not c:
            raise ValueError("need an even, non-zero number of cut points")
        if c[0] < 0 or c[-1] > len(self.x) or any(a > b for a, b in zip(c, c[1:])):
            raise ValueError("cut points must be non-decreasing and inside the input")
        for i in range(0, len(c), 2):
            if c[i] == c[i + 1]:
                raise ValueError(f"w{i // 2 + 1} is empty")

    @property
    def r(self) -> int:
        return len(self.cuts) // 2

    @property
    def vs(self) -> list[str]:
        edges = (0, *self.cuts, len(self.x))
        return [self.x[edges[i] : edges[i + 1]] for i in range(0, len(edges), 2)]

    @property
    def ws(self) -> list[str]:
        c = self.cuts
        return [self.x[c[i] : c[i + 1]] for i in range(0, len(c), 2)]

    @classmethod
    def from_parts(cls, vs: Sequence[str], ws: Sequence[str]) -> "Decomposition":
        if len(vs) != len(ws) + 1:
            raise ValueError("need one more v piece than w pieces")
        cuts = []
        pos = 0
        for v, w in zip(vs, ws):
            pos += len(v)
            cuts.append(pos)
            pos += len(w)
            cuts.append(pos)
        return cls("".join(itertools.chain.from_iterable(zip(vs, ws))) + vs[-1], tuple(cuts))

    @classmethod
    def random(cls, x: str, r: int, v1_length: int, rng: random.Random) -> "Decomposition":
        """Random split of ``x[v1_length:]`` into ``r`` non-empty w's and ``r`` v's."""
        rest = len(x) - v1_length
        if rest < r:
            raise ValueError(f"{rest} symbols cannot hold {r} non-empty pieces")
        # 2r pieces; w pieces get one symbol up front
        extra = rest - r
        bars = sorted(rng.randint(0, extra) for _ in range(2 * r - 1))
        sizes = [b - a for a, b in zip([0, *bars], [*bars, extra])]
        cuts = []
        pos = v1_length
        for i in range(r):
            w = sizes[2 * i] + 1
            v = sizes[2 * i + 1]
            cuts += [pos, pos + w]
            pos += w + v
        return cls(x, tuple(cuts))

    def swapped(self, l: int, m: int) -> str:
        vs, ws = self.vs, self.ws
        ws[l], ws[m] = ws[m], ws[l]
        return "".join(itertools.chain.from_iterable(zip(vs, ws))) + vs[-1]


class Outcome(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass
class InterchangeReport:
    outcome: Outcome
    reason: str = ""
    l: Optional[int] = None
    m: Optional[int] = None
    swapped: Optional[str] = None
    pairs: list = field(default_factory=list)


def largest_generator(spec: core.CounterSpec) -> tuple[int, ...]:
    best = spec.generators[0]
    for g in spec.generators[1:]:
        if real_sign(spec.primes, [a - b for a, b in zip(g, best)]) is Sign.POSITIVE:
            best = g
    return best


def interchange_test(spec: MachineSpec, d: Decomposition, max_steps: int = DEFAULT_MAX_STEPS) -> InterchangeReport:
    """Swap two ``w`` pieces whose surrounding control states coincide.

    Requires ``r == |Q|**2 + 1`` pieces. Cases where ``x`` is not accepted or
    the counter after ``v1`` is below ``(len(x) - len(v1))`` times the largest
    generator are inconclusive.
    """
    if spec.counter.kind is not CounterKind.REAL_SQRT:
        raise ValueError("interchange test needs a real-sqrt counter")
    if spec.head_mode is not automaton.HeadMode.ONE_WAY or spec.visibility is not automaton.Visibility.PARTIALLY_BLIND:
        raise ValueError("interchange test needs a one-way partially blind machine")
    r = len(spec.states) ** 2 + 1
    if d.r != r:
        raise ValueError(f"decomposition has {d.r} w pieces, machine needs r = {r}")
    res = automaton.trace(spec, d.x, max_steps)
    if not res.accepted:
        return InterchangeReport(Outcome.INCONCLUSIVE, f"input not accepted ({res.verdict.value})")

    # state and counter when the head first reaches each tape cell
    arrival: dict[int, tuple[str, tuple]] = {}
    for e in res.trace:
        arrival.setdefault(e.config.head, (e.config.state, e.config.counter))
    arrival.setdefault(res.final.head, (res.final.state, res.final.counter))

    v1 = d.cuts[0]
    omega_v1 = arrival[1 + v1][1]
    budget = len(d.x) - v1
    g = largest_generator(spec.counter)
    slack = [o - budget * c for o, c in zip(omega_v1, g)]
    if real_sign(spec.counter.primes, slack) is Sign.NEGATIVE:
        return InterchangeReport(Outcome.INCONCLUSIVE, "counter after v1 below the precondition bound")

    pairs = [(arrival[1 + d.cuts[2 * i]][0], arrival[1 + d.cuts[2 * i + 1]][0]) for i in range(r)]
    first: dict = {}
    for i, p in enumerate(pairs):
        if p in first:
            l, m = first[p], i
            break
        first[p] = i
    else:  # pragma: no cover - pigeonhole
        raise AssertionError("no repeated state pair among r > |Q|^2 pieces")
    x2 = d.swapped(l, m)
    res2 = automaton.run(spec, x2, max_steps)
    outcome = Outcome.PASS if res2.accepted else Outcome.FAIL
    return InterchangeReport(outcome, res2.verdict.value, l, m, x2, pairs)
