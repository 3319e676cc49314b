"""Positive-coefficient polynomials with exact rational coefficients.

Coefficients are stored in ascending order, ``a0, a1, ..., an``, both in memory
and in every serialized form.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ._exact import common_denominator, dyadic, format_rational, parse_rational
from .errors import DegreeMismatch, InvalidPolynomial

# sampled root parameters are snapped to this many fractional bits
_GRID_BITS = 30


@dataclass(frozen=True)
class PositivePolynomial:
    """Degree-n polynomial ``a0 + a1 s + ... + an s^n`` with every ``ak > 0``.

    >>> PositivePolynomial([1, 2, 1]).degree
    2
    """

    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients: Iterable):
        try:
            coeffs = tuple(parse_rational(c) for c in coefficients)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise InvalidPolynomial(f"bad coefficient: {exc}") from None
        if len(coeffs) < 2:
            raise InvalidPolynomial(f"need degree >= 1, got {len(coeffs)} coefficient(s)")
        for k, c in enumerate(coeffs):
            if c <= 0:
                raise InvalidPolynomial(f"coefficient a{k} = {format_rational(c)} is not positive")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k]

    def __iter__(self):
        return iter(self.coefficients)

    def coeff(self, k: int) -> Fraction:
        """``ak`` with the convention ``ak = 0`` outside ``0..n``."""
        if 0 <= k <= self.degree:
            return self.coefficients[k]
        return Fraction(0)

    def scaled(self, c) -> PositivePolynomial:
        c = parse_rational(c)
        return PositivePolynomial(a * c for a in self.coefficients)

    def integer_coefficients(self) -> tuple[int, list[int]]:
        """``(L, [L*a0, ..., L*an])`` with ``L`` the lcm of the denominators."""
        scale = common_denominator(self.coefficients)
        return scale, [int(a * scale) for a in self.coefficients]

    def to_floats(self) -> np.ndarray:
        return np.array([float(a) for a in self.coefficients])

    def __repr__(self) -> str:
        body = ", ".join(format_rational(a) for a in self.coefficients)
        return f"PositivePolynomial([{body}])"

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "coefficients": [format_rational(a) for a in self.coefficients],
        }


def ones(n: int) -> PositivePolynomial:
    """The all-ones polynomial of degree n, identity of the Hadamard product."""
    return PositivePolynomial([1] * (n + 1))


def _check_degrees(f: PositivePolynomial, g: PositivePolynomial) -> None:
    if f.degree != g.degree:
        raise DegreeMismatch(f"degrees differ: {f.degree} != {g.degree}")


def hadamard_product(f: PositivePolynomial, g: PositivePolynomial) -> PositivePolynomial:
    """Coefficient-wise product ``(a0 b0, a1 b1, ..., an bn)``."""
    _check_degrees(f, g)
    return PositivePolynomial(a * b for a, b in zip(f, g))


def hadamard_quotient(f: PositivePolynomial, g: PositivePolynomial) -> PositivePolynomial:
    """Coefficient-wise quotient ``(a0/b0, ..., an/bn)``; inverse of the product in ``f``."""
    _check_degrees(f, g)
    return PositivePolynomial(a / b for a, b in zip(f, g))


def evaluate(f: PositivePolynomial, s: complex) -> complex:
    """Horner evaluation in double precision."""
    acc = 0j
    for a in reversed(f.to_floats()):
        acc = acc * s + a
    return acc


def expand(factors: Iterable[Sequence[Fraction]]) -> list[Fraction]:
    """Exact product of ascending coefficient lists."""
    result = [Fraction(1)]
    for fac in factors:
        out = [Fraction(0)] * (len(result) + len(fac) - 1)
        for i, x in enumerate(result):
            for j, y in enumerate(fac):
                out[i + j] += x * y
        result = out
    return result


def _grid(x: float) -> Fraction:
    k = round(x * (1 << _GRID_BITS))
    return Fraction(max(k, 1), 1 << _GRID_BITS)


def _root_factors(n: int, rng: np.random.Generator, root_scale: float):
    """Sample ``n // 2`` quadratic factors and ``n % 2`` linear ones.

    Each factor is returned as ``(kind, alpha, beta)`` with exact grid values:
    the roots are ``-alpha +- i beta`` (quadratic) or ``-alpha`` (linear).
    """
    factors = []
    for _ in range(n // 2):
        alpha = _grid(rng.uniform(0.0, root_scale))
        beta = _grid(rng.uniform(0.0, root_scale))
        factors.append(("pair", alpha, beta))
    for _ in range(n % 2):
        factors.append(("real", _grid(rng.uniform(0.0, root_scale)), Fraction(0)))
    return factors


def _factor_coefficients(kind: str, alpha: Fraction, beta: Fraction) -> list[Fraction]:
    # alpha is the negated real part, so alpha > 0 means a left-half-plane root
    if kind == "pair":
        return [alpha * alpha + beta * beta, 2 * alpha, Fraction(1)]
    return [alpha, Fraction(1)]


def random_stable(n: int, rng_seed: int = 0, root_scale: float = 1.0) -> PositivePolynomial:
    """Exact expansion of randomly drawn left-half-plane root factors.

    Real parts are uniform on ``(-root_scale, 0)``, imaginary parts on
    ``(0, root_scale)``. Root parameters are snapped to a dyadic grid before
    expansion, so the result is stable by construction. Deterministic in
    ``(n, rng_seed, root_scale)``.
    """
    if n < 1:
        raise InvalidPolynomial("degree must be at least 1")
    rng = np.random.default_rng(rng_seed)
    factors = _root_factors(n, rng, root_scale)
    return PositivePolynomial(expand(_factor_coefficients(*fac) for fac in factors))


def random_unstable(n: int, rng_seed: int = 0, root_scale: float = 1.0, max_tries: int = 10_000) -> PositivePolynomial:
    """Positive-coefficient polynomial with at least one right-half-plane root.

    Draws a root multiset as in :func:`random_stable`, mirrors the real part of
    one randomly chosen factor, and redraws until every coefficient of the
    expansion is positive. Needs ``n >= 3``: positive polynomials of degree one
    or two are always stable.
    """
    if n < 3:
        raise InvalidPolynomial("no unstable positive polynomial exists for n < 3")
    rng = np.random.default_rng(rng_seed)
    for _ in range(max_tries):
        factors = _root_factors(n, rng, root_scale)
        pairs = [i for i, fac in enumerate(factors) if fac[0] == "pair"]
        flip = pairs[int(rng.integers(len(pairs)))]
        coeff_lists = []
        for i, (kind, alpha, beta) in enumerate(factors):
            if i == flip:
                alpha = -alpha
            coeff_lists.append(_factor_coefficients(kind, alpha, beta))
        coeffs = expand(coeff_lists)
        if all(c > 0 for c in coeffs):
            return PositivePolynomial(coeffs)
    raise RuntimeError(f"no positive unstable sample after {max_tries} tries")


def random_positive(n: int, rng_seed: int = 0, spread: float = 3.0) -> PositivePolynomial:
    """Coefficients log-uniform on ``[e^-spread, e^spread]``, snapped to 30 bits."""
    if n < 1:
        raise InvalidPolynomial("degree must be at least 1")
    rng = np.random.default_rng(rng_seed)
    logs = rng.uniform(-spread, spread, size=n + 1)
    return PositivePolynomial(dyadic(float(np.exp(x))) for x in logs)


def from_log_coefficients(x: Sequence[float], bits: int = 30) -> PositivePolynomial:
    """Exact polynomial whose coefficients are ``exp(x)`` rounded to ``bits`` bits."""
    return PositivePolynomial(dyadic(float(np.exp(v)), bits) for v in x)


# ---------------------------------------------------------------- file formats


def to_json(f: PositivePolynomial) -> str:
    return json.dumps(f.to_dict())


def from_dict(obj: dict) -> PositivePolynomial:
    try:
        coeffs = obj["coefficients"]
    except (KeyError, TypeError):
        raise InvalidPolynomial("polynomial object needs a 'coefficients' list") from None
    f = PositivePolynomial(coeffs)
    if "degree" in obj and int(obj["degree"]) != f.degree:
        raise InvalidPolynomial(f"declared degree {obj['degree']} but {len(f)} coefficients given")
    return f


def from_json(text: str) -> PositivePolynomial:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidPolynomial(f"malformed JSON: {exc}") from None
    return from_dict(obj)


def to_csv(f: PositivePolynomial) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(format_rational(a) for a in f)
    return buf.getvalue()


def from_csv(text: str) -> PositivePolynomial:
    rows = [row for row in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in row)]
    if len(rows) != 1:
        raise InvalidPolynomial(f"CSV polynomial must be a single row, found {len(rows)}")
    return PositivePolynomial(cell for cell in rows[0] if cell.strip())


def parse(text: str) -> PositivePolynomial:
    """Read either format; JSON is recognised by a leading ``{``."""
    if text.lstrip().startswith("{"):
        return from_json(text)
    return from_csv(text)
