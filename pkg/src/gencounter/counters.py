"""Concrete counter arithmetic.

Real counter values are integer coefficient vectors over a basis of square
roots of distinct primes; matrix counter values are exact rational matrices.
Nothing in here touches floating point.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


class SpecError(ValueError):
    """A counter or machine description is malformed."""


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def first_primes(count: int) -> tuple[int, ...]:
    out: list[int] = []
    n = 2
    while len(out) < count:
        if is_prime(n):
            out.append(n)
        n += 1
    return tuple(out)


# ---------------------------------------------------------------------------
# real counter: sums of integer multiples of square roots of primes
# ---------------------------------------------------------------------------

START_BITS = 64


@lru_cache(maxsize=4096)
def _sqrt_enclosure(p: int, bits: int) -> tuple[int, int]:
    # floor and ceil of sqrt(p) * 2**bits
    lo = math.isqrt(p << (2 * bits))
    hi = lo if lo * lo == p << (2 * bits) else lo + 1
    return lo, hi


def sqrt_sum_interval(primes: Sequence[int], coeffs: Sequence[int], bits: int) -> tuple[int, int]:
    """Integer bounds ``lo <= 2**bits * sum(c*sqrt(p)) <= hi``."""
    lo = hi = 0
    for p, c in zip(primes, coeffs):
        if not c:
            continue
        s_lo, s_hi = _sqrt_enclosure(p, bits)
        if c > 0:
            lo += c * s_lo
            hi += c * s_hi
        else:
            lo += c * s_hi
            hi += c * s_lo
    return lo, hi


def real_sign(primes: Sequence[int], coeffs: Sequence[int]) -> Sign:
    """Exact sign of ``sum(c_i * sqrt(p_i))`` for distinct primes ``p_i``.

    The square roots of distinct primes are linearly independent over the
    rationals, so the sum is zero only when every coefficient is zero. For
    any other vector the enclosing interval is refined (doubling the number
    of fractional bits) until it excludes zero, which must happen.
    """
    if len(primes) != len(coeffs):
        raise SpecError(f"expected {len(primes)} coefficients, got {len(coeffs)}")
    has_pos = has_neg = False
    for c in coeffs:
        if c > 0:
            has_pos = True
        elif c < 0:
            has_neg = True
    if not has_pos and not has_neg:
        return Sign.ZERO
    if not has_neg:
        return Sign.POSITIVE
    if not has_pos:
        return Sign.NEGATIVE
    bits = START_BITS
    while True:
        lo, hi = sqrt_sum_interval(primes, coeffs, bits)
        if lo > 0:
            return Sign.POSITIVE
        if hi < 0:
            return Sign.NEGATIVE
        bits *= 2


def real_is_negative(primes: Sequence[int], coeffs: Sequence[int]) -> bool:
    return real_sign(primes, coeffs) is Sign.NEGATIVE


def real_compare(primes: Sequence[int], left: Sequence[int], right: Sequence[int]) -> Sign:
    """Sign of ``left - right`` where both are coefficient vectors."""
    return real_sign(primes, [a - b for a, b in zip(left, right)])


# ---------------------------------------------------------------------------
# matrix counter: exact rational square matrices
# ---------------------------------------------------------------------------


class RationalMatrix:
    """Immutable square matrix with exact rational entries.

    Stored as an integer matrix over one positive common denominator, kept
    in lowest terms, so equality and hashing are plain tuple operations.
    """

    __slots__ = ("n", "num", "den", "_hash")

    def __init__(self, n: int, num: Sequence[int], den: int = 1):
        if den == 0:
            raise ZeroDivisionError("matrix denominator is zero")
        if len(num) != n * n:
            raise SpecError(f"expected {n * n} entries, got {len(num)}")
        if den < 0:
            den = -den
            num = [-x for x in num]
        g = math.gcd(den, *num)
        if g > 1:
            num = [x // g for x in num]
            den //= g
        self.n = n
        self.num = tuple(num)
        self.den = den
        self._hash = hash((n, self.num, den))

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int | Fraction | str]]) -> "RationalMatrix":
        rows = [[Fraction(x) for x in row] for row in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise SpecError("matrix must be square and non-empty")
        den = 1
        for row in rows:
            for x in row:
                den = den * x.denominator // math.gcd(den, x.denominator)
        num = [int(x * den) for row in rows for x in row]
        return cls(n, num, den)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, [1 if i == j else 0 for i in range(n) for j in range(n)], 1)

    @classmethod
    def scalar(cls, value: int | Fraction) -> "RationalMatrix":
        value = Fraction(value)
        return cls(1, [value.numerator], value.denominator)

    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        n, d = self.n, self.den
        return tuple(
            tuple(Fraction(self.num[i * n + j], d) for j in range(n)) for i in range(n)
        )

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return Fraction(self.num[i * self.n + j], self.den)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        n = self.n
        if other.n != n:
            raise SpecError(f"dimension mismatch: {n} vs {other.n}")
        a, b = self.num, other.num
        out = [0] * (n * n)
        for i in range(n):
            base = i * n
            for j in range(n):
                s = 0
                for k in range(n):
                    s += a[base + k] * b[k * n + j]
                out[base + j] = s
        return RationalMatrix(n, out, self.den * other.den)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.n == other.n and self.den == other.den and self.num == other.num

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"RationalMatrix({[list(map(str, r)) for r in self.rows()]})"

    def is_identity(self) -> bool:
        return self.den == 1 and self.num == _identity_entries(self.n)


@lru_cache(maxsize=None)
def _identity_entries(n: int) -> tuple[int, ...]:
    return tuple(int(i == j) for i in range(n) for j in range(n))


def frobenius_norm_sq(matrix: RationalMatrix) -> Fraction:
    """Squared Frobenius norm, exact."""
    return Fraction(sum(x * x for x in matrix.num), matrix.den * matrix.den)


def matrix_is_negative(matrix: RationalMatrix) -> bool:
    # |X| < 1  <=>  sum(num^2) < den^2
    return sum(x * x for x in matrix.num) < matrix.den * matrix.den


def determinant(matrix: RationalMatrix) -> Fraction:
    m = [list(r) for r in matrix.rows()]
    n = matrix.n
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def matrix_inverse(matrix: RationalMatrix) -> RationalMatrix:
    """Exact inverse by Gauss-Jordan elimination."""
    n = matrix.n
    m = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(matrix.rows())]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise SpecError("matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return RationalMatrix.from_rows(row[n:] for row in m)
