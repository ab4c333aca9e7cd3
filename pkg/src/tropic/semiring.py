"""Exact max-plus scalars, vectors and matrices.

A tropical scalar is either a :class:`fractions.Fraction` or the singleton
:data:`BOTTOM` standing for -inf.  Ordinary ``+`` on scalars is the tropical
product and ``max`` is the tropical sum; ``BOTTOM`` absorbs under ``+`` and
is neutral under ``max``.  Vectors are plain tuples of scalars.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union


class TropicError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(TropicError, ValueError):
    """Operands have incompatible shapes."""


class _Bottom:
    """The tropical zero, -inf.

    Behaves like -inf under ``+``, ``-`` (on the left) and comparisons with
    rationals, so that ``max``/``min``/``+`` work unchanged on scalars.
    """

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __reduce__(self):
        return (_Bottom, ())

    def __repr__(self):
        return "BOTTOM"

    def __str__(self):
        return "-inf"

    def __hash__(self):
        return hash("tropic.BOTTOM")

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        if other is self:
            return False
        if isinstance(other, numbers.Rational):
            return True
        return NotImplemented

    def __le__(self, other):
        if other is self or isinstance(other, numbers.Rational):
            return True
        return NotImplemented

    def __gt__(self, other):
        if other is self or isinstance(other, numbers.Rational):
            return False
        return NotImplemented

    def __ge__(self, other):
        if other is self:
            return True
        if isinstance(other, numbers.Rational):
            return False
        return NotImplemented

    def __add__(self, other):
        if other is self or isinstance(other, numbers.Rational):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("-inf - (-inf) is undefined")
        if isinstance(other, numbers.Rational):
            return self
        return NotImplemented

    def __rsub__(self, other):
        raise ArithmeticError("subtracting -inf leaves the max-plus semiring")

    def __neg__(self):
        raise ArithmeticError("-(-inf) is not in the max-plus semiring")


BOTTOM = _Bottom()
ONE = Fraction(0)

Scalar = Union[Fraction, _Bottom]
Vector = tuple


def scalar(value) -> Scalar:
    """Coerce ``value`` to an exact tropical scalar.

    Accepts ints, Fractions, :data:`BOTTOM`, ``float('-inf')`` and the string
    tokens ``'-inf'``, ``'7'``, ``'-3/2'``.  Other floats are rejected.
    """
    if value is BOTTOM:
        return BOTTOM
    if isinstance(value, bool):
        raise TypeError("booleans are not tropical scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, float):
        if value == float("-inf"):
            return BOTTOM
        raise TypeError("floating-point values are not accepted; use int, Fraction or 'a/b'")
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot interpret {value!r} as a tropical scalar")


def parse_scalar(token: str) -> Scalar:
    token = token.strip()
    if token in ("-inf", "-Inf", "-INF"):
        return BOTTOM
    num, sep, den = token.partition("/")
    try:
        if sep:
            if "." in num or "." in den:
                raise ValueError
            return Fraction(int(num), int(den))
        if "." in num or "e" in num.lower():
            raise ValueError
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad scalar token {token!r}") from None


def format_scalar(x: Scalar) -> str:
    if x is BOTTOM:
        return "-inf"
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def is_finite(x: Scalar) -> bool:
    return x is not BOTTOM


def vector(values: Iterable) -> Vector:
    return tuple(scalar(v) for v in values)


def bottom_vector(n: int) -> Vector:
    return (BOTTOM,) * n


def unit_vector(n: int, i: int) -> Vector:
    """The canonical basis vector e^i (0-based)."""
    if not 0 <= i < n:
        raise DimensionError(f"index {i} out of range for dimension {n}")
    return tuple(ONE if k == i else BOTTOM for k in range(n))


def is_bottom_vector(x: Sequence[Scalar]) -> bool:
    return all(v is BOTTOM for v in x)


def support(x: Sequence[Scalar]) -> frozenset:
    return frozenset(k for k, v in enumerate(x) if v is not BOTTOM)


def oplus(x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
    _check_len(x, y)
    return tuple(max(a, b) for a, b in zip(x, y))


def trop_dot(x: Sequence[Scalar], y: Sequence[Scalar]) -> Scalar:
    """max_i (x_i + y_i), BOTTOM when every term is BOTTOM."""
    _check_len(x, y)
    best = BOTTOM
    for a, b in zip(x, y):
        if a is BOTTOM or b is BOTTOM:
            continue
        s = a + b
        if best is BOTTOM or s > best:
            best = s
    return best


def argmax_terms(x: Sequence[Scalar], y: Sequence[Scalar]) -> frozenset:
    """Indices attaining the finite maximum of x_i + y_i (empty if none)."""
    value = trop_dot(x, y)
    if value is BOTTOM:
        return frozenset()
    return frozenset(
        k for k, (a, b) in enumerate(zip(x, y))
        if a is not BOTTOM and b is not BOTTOM and a + b == value
    )


def scalar_mul(lam: Scalar, x: Sequence[Scalar]) -> Vector:
    return tuple(lam + v for v in x)


def vector_leq(x: Sequence[Scalar], y: Sequence[Scalar]) -> bool:
    _check_len(x, y)
    return all(a <= b for a, b in zip(x, y))


def proportional(x: Sequence[Scalar], y: Sequence[Scalar]) -> bool:
    """True iff y = lam + x for some finite lam (or both are all-BOTTOM)."""
    _check_len(x, y)
    if support(x) != support(y):
        return False
    shifts = {b - a for a, b in zip(x, y) if a is not BOTTOM}
    return len(shifts) <= 1


def _check_len(x, y):
    if len(x) != len(y):
        raise DimensionError(f"length mismatch: {len(x)} vs {len(y)}")


@dataclass(frozen=True)
class TropMatrix:
    """A p x n max-plus matrix stored row-major."""

    rows: tuple
    ncols: int

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(vector(r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionError("cannot infer the column count of an empty matrix")
            ncols = len(rows[0])
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise DimensionError(f"row {r} has {len(row)} entries, expected {ncols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @property
    def p(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return self.ncols

    @property
    def shape(self) -> tuple:
        return (self.p, self.n)

    def __getitem__(self, rc):
        r, c = rc
        return self.rows[r][c]

    def row(self, r: int) -> Vector:
        return self.rows[r]

    def col(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> "TropMatrix":
        return TropMatrix([self.col(j) for j in range(self.n)], self.p)

    def matvec(self, x: Sequence[Scalar]) -> Vector:
        if len(x) != self.n:
            raise DimensionError(f"vector of length {len(x)} for a {self.p}x{self.n} matrix")
        return tuple(trop_dot(row, x) for row in self.rows)

    def drop_rows(self, indices) -> "TropMatrix":
        drop = set(indices)
        return TropMatrix([row for r, row in enumerate(self.rows) if r not in drop], self.n)

    def keep_cols(self, cols: Sequence[int]) -> "TropMatrix":
        return TropMatrix([[row[j] for j in cols] for row in self.rows], len(cols))

    def stack(self, other: "TropMatrix") -> "TropMatrix":
        if other.n != self.n:
            raise DimensionError("cannot stack matrices with different column counts")
        return TropMatrix(self.rows + other.rows, self.n)

    def finite_values(self):
        return [v for row in self.rows for v in row if v is not BOTTOM]


def identity(n: int) -> TropMatrix:
    return TropMatrix([unit_vector(n, i) for i in range(n)], n)


def trop_matmul(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    if a.n != b.p:
        raise DimensionError(f"inner dimensions differ: {a.shape} x {b.shape}")
    cols = [b.col(j) for j in range(b.n)]
    return TropMatrix([[trop_dot(row, col) for col in cols] for row in a.rows], b.n)


def denominator_lcm(values: Iterable[Scalar]) -> int:
    """LCM of the denominators of the finite values (1 if there are none)."""
    from math import lcm

    out = 1
    for v in values:
        if v is not BOTTOM:
            out = lcm(out, v.denominator)
    return out
