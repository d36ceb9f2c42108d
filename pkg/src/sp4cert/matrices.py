"""Exact scalar and fixed-size matrix kernel.

Every group element in this package lives in one of two carriers:

* ``Mat2`` -- 2x2 matrices over arbitrary-precision integers (all the
  SL(2) work is integer-only);
* ``Mat4`` -- 4x4 matrices over exact rationals (``fractions.Fraction``,
  which keeps every entry reduced with a positive denominator).

There is no floating point anywhere in this module: divisibility
patterns such as ``p^2 | x`` or ``x in (1/p)Z`` are meaningless after
rounding.  Both matrix types are immutable values; all operations
return fresh objects, so certificate replay is deterministic and the
types are safe to share between threads.

The interchange format for matrices is a row-major list of lists of
strings, each string a base-10 integer or a reduced ``num/den``
fraction with positive denominator.  Round-trips are bit-exact.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import BothZero, NotUnimodular, ParseError, SingularMatrix

Scalar = int | Fraction


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: return ``(g, x, y)`` with ``g = gcd(a,b) > 0``
    and ``a*x + b*y = g``.  Raises :class:`BothZero` on ``(0, 0)``."""
    if a == 0 and b == 0:
        raise BothZero("ext_gcd(0, 0) is undefined")
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    assert a * old_s + b * old_t == old_r
    return old_r, old_s, old_t


@dataclass(frozen=True)
class Mat2:
    """Immutable 2x2 integer matrix."""

    rows: tuple[tuple[int, int], tuple[int, int]]

    @staticmethod
    def of(a: int, b: int, c: int, d: int) -> "Mat2":
        return Mat2(((int(a), int(b)), (int(c), int(d))))

    @staticmethod
    def from_rows(rows) -> "Mat2":
        (a, b), (c, d) = rows
        return Mat2.of(a, b, c, d)

    @staticmethod
    def identity() -> "Mat2":
        return Mat2.of(1, 0, 0, 1)

    def __getitem__(self, i: int) -> tuple[int, int]:
        return self.rows[i]

    def __mul__(self, other: "Mat2") -> "Mat2":
        (a, b), (c, d) = self.rows
        (e, f), (g, h) = other.rows
        return Mat2.of(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __neg__(self) -> "Mat2":
        (a, b), (c, d) = self.rows
        return Mat2.of(-a, -b, -c, -d)

    def det(self) -> int:
        (a, b), (c, d) = self.rows
        return a * d - b * c

    def transpose(self) -> "Mat2":
        (a, b), (c, d) = self.rows
        return Mat2.of(a, c, b, d)

    def inv(self) -> "Mat2":
        """Exact inverse.  Only determinant +-1 has an integer inverse."""
        det = self.det()
        if det == 0:
            raise SingularMatrix("2x2 determinant is zero")
        if det not in (1, -1):
            raise NotUnimodular(f"2x2 determinant {det} has no integer inverse")
        (a, b), (c, d) = self.rows
        return Mat2.of(d * det, -b * det, -c * det, a * det)

    def __pow__(self, n: int) -> "Mat2":
        base = self if n >= 0 else self.inv()
        n = abs(n)
        acc = Mat2.identity()
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def is_identity(self) -> bool:
        return self.rows == ((1, 0), (0, 1))


def _frac(x: Scalar) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Mat4:
    """Immutable 4x4 matrix over exact rationals."""

    rows: tuple[tuple[Fraction, ...], ...]

    @staticmethod
    def from_rows(rows) -> "Mat4":
        out = tuple(tuple(_frac(x) for x in row) for row in rows)
        if len(out) != 4 or any(len(r) != 4 for r in out):
            raise ValueError("Mat4 needs 4 rows of 4 entries")
        return Mat4(out)

    @staticmethod
    def identity() -> "Mat4":
        return Mat4.from_rows(
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
        )

    @staticmethod
    def diagonal(d1, d2, d3, d4) -> "Mat4":
        return Mat4.from_rows(
            [[d1, 0, 0, 0], [0, d2, 0, 0], [0, 0, d3, 0], [0, 0, 0, d4]]
        )

    def __getitem__(self, i: int) -> tuple[Fraction, ...]:
        return self.rows[i]

    def __mul__(self, other: "Mat4") -> "Mat4":
        a, b = self.rows, other.rows
        out = []
        for i in range(4):
            ai = a[i]
            row = []
            for j in range(4):
                row.append(
                    ai[0] * b[0][j] + ai[1] * b[1][j] + ai[2] * b[2][j] + ai[3] * b[3][j]
                )
            out.append(tuple(row))
        return Mat4(tuple(out))

    def __add__(self, other: "Mat4") -> "Mat4":
        return Mat4(
            tuple(
                tuple(x + y for x, y in zip(r, s))
                for r, s in zip(self.rows, other.rows)
            )
        )

    def __sub__(self, other: "Mat4") -> "Mat4":
        return Mat4(
            tuple(
                tuple(x - y for x, y in zip(r, s))
                for r, s in zip(self.rows, other.rows)
            )
        )

    def __neg__(self) -> "Mat4":
        return Mat4(tuple(tuple(-x for x in r) for r in self.rows))

    def transpose(self) -> "Mat4":
        return Mat4(tuple(tuple(self.rows[j][i] for j in range(4)) for i in range(4)))

    def det(self) -> Fraction:
        # cofactor expansion along the first row; exact at any magnitude
        def det3(m):
            return (
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            )

        total = Fraction(0)
        sign = 1
        for j in range(4):
            minor = [
                [self.rows[i][k] for k in range(4) if k != j] for i in range(1, 4)
            ]
            total += sign * self.rows[0][j] * det3(minor)
            sign = -sign
        return total

    def inv(self) -> "Mat4":
        """Exact inverse via Gauss-Jordan elimination over the rationals."""
        m = [list(r) for r in self.rows]
        inv = [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]
        for col in range(4):
            pivot = next((r for r in range(col, 4) if m[r][col] != 0), None)
            if pivot is None:
                raise SingularMatrix("4x4 determinant is zero")
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                inv[col], inv[pivot] = inv[pivot], inv[col]
            scale = m[col][col]
            m[col] = [x / scale for x in m[col]]
            inv[col] = [x / scale for x in inv[col]]
            for r in range(4):
                if r != col and m[r][col] != 0:
                    f = m[r][col]
                    m[r] = [x - f * y for x, y in zip(m[r], m[col])]
                    inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
        return Mat4(tuple(tuple(row) for row in inv))

    def __pow__(self, n: int) -> "Mat4":
        base = self if n >= 0 else self.inv()
        n = abs(n)
        acc = Mat4.identity()
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def is_identity(self) -> bool:
        return self == Mat4.identity()

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.rows for x in r)

    def entry_is_integral(self, i: int, j: int) -> bool:
        return self.rows[i][j].denominator == 1


# ---------------------------------------------------------------------------
# interchange format: strings "n" or "num/den", reduced, positive denominator
# ---------------------------------------------------------------------------

_ENTRY_RE = re.compile(r"^(-?(?:0|[1-9][0-9]*))(?:/([1-9][0-9]*))?$")


def scalar_to_str(x: Scalar) -> str:
    x = _frac(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def scalar_from_str(s: str, where: str = "") -> Fraction:
    if not isinstance(s, str):
        raise ParseError(f"entry {where or s!r} must be a string")
    m = _ENTRY_RE.match(s)
    if not m:
        raise ParseError(f"bad scalar {s!r} {where}".rstrip())
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den != 1 and math.gcd(abs(num), den) != 1:
        raise ParseError(f"scalar {s!r} is not reduced {where}".rstrip())
    return Fraction(num, den)


def mat4_to_lists(m: Mat4) -> list[list[str]]:
    return [[scalar_to_str(x) for x in row] for row in m.rows]


def mat4_from_lists(obj) -> Mat4:
    if not isinstance(obj, list) or len(obj) != 4:
        raise ParseError("matrix must be a list of 4 rows")
    rows = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != 4:
            raise ParseError(f"row {i} must be a list of 4 entries")
        rows.append(
            tuple(scalar_from_str(x, where=f"at ({i},{j})") for j, x in enumerate(row))
        )
    return Mat4(tuple(rows))


def mat2_to_lists(m: Mat2) -> list[list[str]]:
    return [[str(x) for x in row] for row in m.rows]


def mat2_from_lists(obj) -> Mat2:
    if not isinstance(obj, list) or len(obj) != 2:
        raise ParseError("matrix must be a list of 2 rows")
    rows = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != 2:
            raise ParseError(f"row {i} must be a list of 2 entries")
        entries = []
        for j, x in enumerate(row):
            v = scalar_from_str(x, where=f"at ({i},{j})")
            if v.denominator != 1:
                raise ParseError(f"entry at ({i},{j}) must be an integer")
            entries.append(int(v))
        rows.append(tuple(entries))
    return Mat2(tuple(rows))
