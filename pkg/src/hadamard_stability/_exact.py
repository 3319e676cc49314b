"""Integer and rational kernels shared by the stability and invariant modules."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence


def format_rational(x: Fraction) -> str:
    """Canonical text form: ``"p"`` for integers, ``"p/q"`` otherwise."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(token) -> Fraction:
    """Parse an integer, ``"p/q"`` or decimal token exactly.

    Python floats are accepted and converted exactly (they are dyadic).
    """
    if isinstance(token, Fraction):
        return token
    if isinstance(token, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(token, (int, float)):
        return Fraction(token)
    if isinstance(token, str):
        return Fraction(token.strip())
    raise TypeError(f"cannot interpret {token!r} as a rational")


def common_denominator(values: Iterable[Fraction]) -> int:
    lcm = 1
    for v in values:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    return lcm


def bareiss_leading_minors(matrix: Sequence[Sequence[int]], stop_at_nonpositive: bool = False) -> list[int]:
    """Leading principal minors of an integer matrix by fraction-free elimination.

    The k-th pivot of Bareiss elimination without row exchanges is exactly the
    k-th leading principal minor, and every division is exact. When a zero
    pivot shows up the remaining minors are computed one block at a time.
    With ``stop_at_nonpositive`` the list ends at the first minor <= 0.
    """
    a = [list(row) for row in matrix]
    n = len(a)
    minors: list[int] = []
    prev = 1
    for k in range(n):
        piv = a[k][k]
        minors.append(piv)
        if stop_at_nonpositive and piv <= 0:
            return minors
        if piv == 0:
            for size in range(k + 2, n + 1):
                block = [row[:size] for row in matrix[:size]]
                d = bareiss_det(block)
                minors.append(d)
                if stop_at_nonpositive and d <= 0:
                    return minors
            return minors
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * piv - aik * row_k[j]) // prev
        prev = piv
    return minors


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss with row pivoting)."""
    n = len(matrix)
    if n == 0:
        return 1
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    a = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - aik * a[k][j]) // prev
        prev = piv
    return sign * a[n - 1][n - 1]


def rational_det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a rational matrix via denominator clearing."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    scale = common_denominator(x for row in matrix for x in row)
    ints = [[int(x * scale) for x in row] for row in matrix]
    return Fraction(bareiss_det(ints), scale**n)


def is_square_rational(x: Fraction) -> bool:
    if x < 0:
        return False
    p, q = x.numerator, x.denominator
    return math.isqrt(p) ** 2 == p and math.isqrt(q) ** 2 == q


def sqrt_bounds(x: Fraction, bits: int = 128) -> tuple[Fraction, Fraction]:
    """Lower and upper rational bounds on sqrt(x), tight to about 2**-bits relative.

    Exact squares return a degenerate interval.
    """
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative input")
    if is_square_rational(x):
        r = Fraction(math.isqrt(x.numerator), math.isqrt(x.denominator))
        return r, r
    p, q = x.numerator, x.denominator
    scale = 1 << bits
    t = math.isqrt(p * q * scale * scale)
    return Fraction(t, q * scale), Fraction(t + 1, q * scale)


def decimal_floor(x: Fraction, digits: int) -> str:
    return _decimal(x, digits, down=True)


def decimal_ceil(x: Fraction, digits: int) -> str:
    return _decimal(x, digits, down=False)


def _decimal(x: Fraction, digits: int, down: bool) -> str:
    scale = 10**digits
    scaled = x * scale
    k = math.floor(scaled) if down else math.ceil(scaled)
    sign = "-" if k < 0 else ""
    k = abs(k)
    whole, frac = divmod(k, scale)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def dyadic(x: float, bits: int = 30) -> Fraction:
    """Round a positive float to ``bits`` significant bits, returned exactly."""
    if not (x > 0 and math.isfinite(x)):
        raise ValueError(f"expected a positive finite float, got {x!r}")
    m, e = math.frexp(x)
    mant = round(m * (1 << bits))
    return Fraction(mant) * Fraction(2) ** (e - bits)
