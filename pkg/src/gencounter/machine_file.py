"""Text format for machine descriptions and counter values.

::

    ; ';' starts a comment, on its own line or after content
    [machine]
    name = lpal
    head_mode = one-way
    visibility = deterministic

    [counter]
    kind = matrix
    dimension = 3
    generator = 4 3 0 | -3 4 0 | 0 0 5
    generator = 4 0 3 | 0 5 0 | -3 0 4

    [states]
    states = start left right acc
    start = start
    accept = acc

    [alphabet]
    symbols = 0 1 #

    [transitions]
    ; state symbol status -> target move op
    start ^ * left +1 noop
    left 0 * left +1 inc:0
    right $ 0 acc 0 noop

``^`` stands for the left endmarker, status ``*`` for both counter statuses.
Rationals are written ``p/q`` in lowest terms.
"""

from __future__ import annotations

import re
from fractions import Fraction

from . import core
from .automaton import (
    LEFT_END,
    NONZERO,
    RIGHT_END,
    ZERO,
    HeadMode,
    MachineSpec,
    Transition,
    Visibility,
    validate_machine,
)
from .core import CounterKind, CounterOp, CounterSpec, CounterValue, Direction
from .counters import RationalMatrix

SECTIONS = ("machine", "counter", "states", "alphabet", "transitions")


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


# ---------------------------------------------------------------------------
# values
# ---------------------------------------------------------------------------


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise ValueError(f"bad rational {text!r}")
    return Fraction(text)


def render_value(spec: CounterSpec, value: CounterValue) -> str:
    if spec.kind is CounterKind.INTEGER:
        return str(value)
    if spec.kind is CounterKind.REAL_SQRT:
        terms = [(c, p) for c, p in zip(value, spec.primes) if c]
        if not terms:
            return "0"
        out = ""
        for i, (c, p) in enumerate(terms):
            if i == 0:
                out += f"{c}√{p}"
            else:
                out += f" {'-' if c < 0 else '+'} {abs(c)}√{p}"
        return out
    rows = value.rows()
    return "[" + ", ".join("[" + ", ".join(format_rational(x) for x in r) + "]" for r in rows) + "]"


_TERM = re.compile(r"([+-]\d+)√(\d+)")


def parse_value(spec: CounterSpec, text: str) -> CounterValue:
    text = text.strip()
    if spec.kind is CounterKind.INTEGER:
        return int(text)
    if spec.kind is CounterKind.REAL_SQRT:
        coeffs = [0] * len(spec.primes)
        compact = text.replace(" ", "")
        if compact == "0":
            return tuple(coeffs)
        if compact[0] not in "+-":
            compact = "+" + compact
        pos = 0
        for m in _TERM.finditer(compact):
            if m.start() != pos:
                raise ValueError(f"cannot parse {text!r}")
            p = int(m.group(2))
            if p not in spec.primes:
                raise ValueError(f"√{p} is not in the basis {spec.primes}")
            coeffs[spec.primes.index(p)] += int(m.group(1))
            pos = m.end()
        if pos != len(compact):
            raise ValueError(f"cannot parse {text!r}")
        return tuple(coeffs)
    inner = text.replace(" ", "")
    if not (inner.startswith("[[") and inner.endswith("]]")):
        raise ValueError(f"cannot parse matrix {text!r}")
    rows = [[parse_rational(x) for x in r.split(",")] for r in inner[2:-2].split("],[")]
    value = RationalMatrix.from_rows(rows)
    core.check_value(spec, value)
    return value


def _format_matrix_row_major(m: RationalMatrix) -> str:
    return " | ".join(" ".join(format_rational(x) for x in row) for row in m.rows())


def _parse_matrix_row_major(text: str, dim: int) -> RationalMatrix:
    rows = [r.split() for r in text.split("|")]
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise ValueError(f"expected a {dim}x{dim} matrix")
    return RationalMatrix.from_rows([[parse_rational(x) for x in r] for r in rows])


# ---------------------------------------------------------------------------
# machines
# ---------------------------------------------------------------------------


def _file_symbol(sym: str) -> str:
    return "^" if sym == LEFT_END else sym


def _format_move(move: int) -> str:
    return "+1" if move == 1 else str(move)


def emit(spec: MachineSpec) -> str:
    for token in (spec.name, *spec.states, *spec.alphabet):
        if ";" in token or (token != spec.name and token.split() != [token]):
            raise ValueError(f"{token!r} cannot be written: no ';' or whitespace allowed")
    c = spec.counter
    out = [
        "[machine]",
        f"name = {spec.name}",
        f"head_mode = {spec.head_mode.value}",
        f"visibility = {spec.visibility.value}",
        "",
        "[counter]",
        f"kind = {c.kind.value}",
    ]
    if c.kind is CounterKind.INTEGER:
        out += [f"generator = {g}" for g in c.generators]
    elif c.kind is CounterKind.REAL_SQRT:
        out.append("primes = " + " ".join(map(str, c.primes)))
        out += ["generator = " + " ".join(map(str, g)) for g in c.generators]
    else:
        out.append(f"dimension = {c.dimension}")
        out += ["generator = " + _format_matrix_row_major(g) for g in c.generators]
    out += [
        "",
        "[states]",
        "states = " + " ".join(spec.states),
        f"start = {spec.start}",
        "accept = " + " ".join(q for q in spec.states if q in spec.accept),
        "",
        "[alphabet]",
        "symbols = " + " ".join(spec.alphabet),
        "",
        "[transitions]",
    ]
    state_order = {q: i for i, q in enumerate(spec.states)}
    sym_order = {s: i for i, s in enumerate((LEFT_END, *spec.alphabet, RIGHT_END))}
    keys = sorted(spec.transitions, key=lambda k: (state_order.get(k[0], 0), sym_order.get(k[1], 0), k[2]))
    done = set()
    for key in keys:
        if key in done:
            continue
        q, a, status = key
        t = spec.transitions[key]
        other = (q, a, 1 - status)
        if status == ZERO and spec.transitions.get(other) == t:
            done.add(other)
            mark = "*"
        else:
            mark = str(status)
        out.append(f"{q} {_file_symbol(a)} {mark} {t.target} {_format_move(t.move)} {t.op}")
    return "\n".join(out) + "\n"


def _parse_op(text: str) -> CounterOp:
    if text == "noop":
        return core.NOOP
    m = re.fullmatch(r"(inc|dec):(\d+)", text)
    if not m:
        raise ValueError(f"bad counter op {text!r}, expected inc:<j>, dec:<j> or noop")
    return CounterOp(Direction(m.group(1)), int(m.group(2)))


def _parse_enum(enum_cls, text, what):
    try:
        return enum_cls(text)
    except ValueError:
        choices = ", ".join(e.value for e in enum_cls)
        raise ValueError(f"unknown {what} {text!r} (expected one of {choices})") from None


def parse(text: str) -> MachineSpec:
    """Parse and validate a machine description; errors carry line numbers."""
    section = None
    keys: dict[str, dict[str, tuple[int, str]]] = {s: {} for s in SECTIONS}
    generators: list[tuple[int, str]] = []
    rows: list[tuple[int, list[str]]] = []
    seen_sections = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"\[(\w+)\]", line)
        if m:
            section = m.group(1)
            if section not in SECTIONS:
                raise ParseError(lineno, f"unknown section [{section}]")
            if section in seen_sections:
                raise ParseError(lineno, f"duplicate section [{section}]")
            seen_sections.add(section)
            continue
        if section is None:
            raise ParseError(lineno, "content before the first section")
        if section == "transitions":
            rows.append((lineno, line.split()))
            continue
        if "=" not in line:
            raise ParseError(lineno, "expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if section == "counter" and key == "generator":
            generators.append((lineno, value))
        elif key in keys[section]:
            raise ParseError(lineno, f"duplicate key {key!r}")
        else:
            keys[section][key] = (lineno, value)
    for s in SECTIONS:
        if s not in seen_sections:
            raise ParseError(0, f"missing section [{s}]")

    def need(sec, key):
        if key not in keys[sec]:
            raise ParseError(0, f"[{sec}] is missing {key!r}")
        return keys[sec][key]

    def guarded(lineno, fn, *args):
        try:
            return fn(*args)
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(lineno, str(e)) from None

    name = need("machine", "name")[1]
    ln, v = need("machine", "head_mode")
    head_mode = guarded(ln, _parse_enum, HeadMode, v, "head mode")
    ln, v = need("machine", "visibility")
    visibility = guarded(ln, _parse_enum, Visibility, v, "visibility")

    ln, v = need("counter", "kind")
    kind = guarded(ln, _parse_enum, CounterKind, v, "counter kind")
    if not generators:
        raise ParseError(ln, "counter has no generators")
    if kind is CounterKind.INTEGER:
        gens = tuple(guarded(l, int, g) for l, g in generators)
        counter = guarded(ln, CounterSpec, kind, gens)
    elif kind is CounterKind.REAL_SQRT:
        pl, pv = need("counter", "primes")
        primes = tuple(guarded(pl, int, p) for p in pv.split())
        gens = tuple(tuple(guarded(l, int, c) for c in g.split()) for l, g in generators)
        for l, g in zip((l for l, _ in generators), gens):
            if len(g) != len(primes):
                raise ParseError(l, f"generator has {len(g)} coefficients, basis has {len(primes)}")
        counter = CounterSpec(kind, gens, primes)
    else:
        dl, dv = need("counter", "dimension")
        dim = guarded(dl, int, dv)
        gens = tuple(guarded(l, _parse_matrix_row_major, g, dim) for l, g in generators)
        counter = guarded(dl, CounterSpec, kind, gens, (), dim)

    states = tuple(need("states", "states")[1].split())
    start = need("states", "start")[1]
    accept = frozenset(keys["states"].get("accept", (0, ""))[1].split())
    alphabet = tuple(need("alphabet", "symbols")[1].split())

    table: dict = {}
    for lineno, parts in rows:
        if len(parts) != 6:
            raise ParseError(lineno, "transition needs: state symbol status target move op")
        q, a, status, target, move, op = parts
        if a == "^":
            a = LEFT_END
        elif a != RIGHT_END and a not in alphabet:
            raise ParseError(lineno, f"unknown symbol {a!r}")
        if status == "*":
            statuses = (ZERO, NONZERO)
        elif status in ("0", "1"):
            if not visibility.sees_counter:
                raise ParseError(lineno, f"{visibility.value} machines must use status '*'")
            statuses = (int(status),)
        else:
            raise ParseError(lineno, f"bad status {status!r}, expected 0, 1 or *")
        if move not in ("-1", "0", "+1", "1"):
            raise ParseError(lineno, f"bad head move {move!r}")
        t = Transition(target, int(move), guarded(lineno, _parse_op, op))
        for s in statuses:
            if (q, a, s) in table:
                raise ParseError(lineno, f"duplicate transition for ({q}, {parts[1]}, {s})")
            table[(q, a, s)] = t

    spec = MachineSpec(name, states, start, accept, alphabet, head_mode, visibility, counter, table)
    report = validate_machine(spec)
    if report.violations:
        raise ParseError(0, "invalid machine: " + "; ".join(report.violations))
    return spec


def load(path) -> MachineSpec:
    with open(path, encoding="utf-8") as f:
        return parse(f.read())


def dump(spec: MachineSpec, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(emit(spec))
