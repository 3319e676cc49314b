"""Hurwitz matrices, exact and floating-point stability tests, minor audits.

The Hurwitz matrix of ``f = a0 + a1 s + ... + an s^n`` is the n x n matrix with
1-based entry ``(i, j) = a_{n - 2i + j}``, where ``ak = 0`` outside ``0..n``.
Its top-left entry is ``a_{n-1}`` and its bottom-right entry is ``a0``;
each row is the one above shifted two places to the right. For n = 4::

    a3 a4 0  0
    a1 a2 a3 a4
    0  a0 a1 a2
    0  0  0  a0
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._exact import bareiss_det, bareiss_leading_minors, format_rational
from ._parallel import chunked, derive_seed, pool_map
from .errors import BadIndex, ConvergenceFailure, DegreeTooSmall, NotStable
from .polynomial import PositivePolynomial, random_stable, random_unstable


@dataclass(frozen=True)
class HurwitzMatrix:
    order: int
    entries: tuple[tuple[Fraction, ...], ...]

    def entry(self, i: int, j: int) -> Fraction:
        """1-based access."""
        return self.entries[i - 1][j - 1]

    def rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def to_dict(self) -> dict:
        return {"order": self.order, "entries": [[format_rational(x) for x in r] for r in self.entries]}


def _hurwitz_rows(coeffs: Sequence, n: int, zero) -> list[list]:
    def a(k):
        return coeffs[k] if 0 <= k <= n else zero

    return [[a(n - 2 * i + j) for j in range(1, n + 1)] for i in range(1, n + 1)]


def hurwitz_matrix(f: PositivePolynomial) -> HurwitzMatrix:
    rows = _hurwitz_rows(f.coefficients, f.degree, Fraction(0))
    return HurwitzMatrix(f.degree, tuple(tuple(r) for r in rows))


def _integer_hurwitz(f: PositivePolynomial) -> tuple[int, list[list[int]]]:
    # scaling every coefficient by L > 0 scales a k x k minor by L**k
    scale, ints = f.integer_coefficients()
    return scale, _hurwitz_rows(ints, f.degree, 0)


def leading_minors(f: PositivePolynomial) -> list[Fraction]:
    """All n leading principal minors of the Hurwitz matrix, exactly."""
    scale, h = _integer_hurwitz(f)
    return [Fraction(m, scale ** (k + 1)) for k, m in enumerate(bareiss_leading_minors(h))]


def is_stable_exact(f: PositivePolynomial) -> bool:
    """Hurwitz criterion: every leading principal minor is strictly positive.

    Exact integer arithmetic throughout; there is no tolerance.
    """
    _, h = _integer_hurwitz(f)
    minors = bareiss_leading_minors(h, stop_at_nonpositive=True)
    return len(minors) == f.degree and minors[-1] > 0


@dataclass(frozen=True)
class StabilityCertificate:
    """Leading minors as evidence for (or against) stability."""

    polynomial: PositivePolynomial
    stable: bool
    leading_minors: tuple[Fraction, ...]


def stability_certificate(f: PositivePolynomial) -> StabilityCertificate:
    minors = leading_minors(f)
    return StabilityCertificate(f, all(m > 0 for m in minors), tuple(minors))


def float_roots(f: PositivePolynomial) -> np.ndarray:
    """Companion-matrix eigenvalues (via ``numpy.roots``)."""
    c = f.to_floats()
    if not np.all(np.isfinite(c)):
        raise ConvergenceFailure("coefficients overflow double precision")
    # normalise to a monic polynomial to keep the companion matrix well scaled
    try:
        r = np.roots((c / c[-1])[::-1])
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from None
    if r.size != f.degree or not np.all(np.isfinite(r)):
        raise ConvergenceFailure("eigenvalue solver returned non-finite roots")
    return r


def is_stable_float(f: PositivePolynomial, margin: float = 1e-9) -> bool:
    """Numerical oracle: every root has real part below ``-margin``.

    For cross-checks and diagnostics only; never used as a certificate.
    """
    if not margin > 0:
        raise ValueError("margin must be positive")
    return bool(np.all(float_roots(f).real < -margin))


@dataclass(frozen=True)
class MinorReport:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    determinant: Fraction
    diagonal_all_positive: bool


def _check_selection(n: int, rows: Sequence[int], cols: Sequence[int]) -> None:
    if len(rows) == 0 or len(rows) != len(cols):
        raise BadIndex(f"need equal, non-empty selections (got {len(rows)} rows, {len(cols)} cols)")
    for name, idx in (("rows", rows), ("cols", cols)):
        if any(not isinstance(i, (int, np.integer)) or isinstance(i, bool) for i in idx):
            raise BadIndex(f"{name} must be integers")
        if idx[0] < 1 or idx[-1] > n:
            raise BadIndex(f"{name} {tuple(idx)} outside 1..{n}")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise BadIndex(f"{name} {tuple(idx)} not strictly increasing")


def submatrix(h: HurwitzMatrix, rows: Sequence[int], cols: Sequence[int]) -> MinorReport:
    """Determinant of an arbitrary (possibly non-contiguous) square selection.

    Indices are 1-based. The diagonal flag refers to the selected submatrix's
    own diagonal, ``h[rows[t], cols[t]]``.
    """
    rows, cols = tuple(rows), tuple(cols)
    _check_selection(h.order, rows, cols)
    sel = [[h.entry(i, j) for j in cols] for i in rows]
    scale = math.lcm(*(x.denominator for r in sel for x in r))
    det = Fraction(bareiss_det([[int(x * scale) for x in r] for r in sel]), scale ** len(rows))
    diag = all(sel[t][t] > 0 for t in range(len(rows)))
    return MinorReport(rows, cols, det, diag)


# ---------------------------------------------------------------- minor audit


@dataclass(frozen=True)
class KempermanAudit:
    """Outcome of checking ``det > 0  <=>  diagonal > 0`` over square submatrices.

    ``violations`` counts selections where a positive diagonal meets
    ``det <= 0`` or a diagonal containing zero meets ``det > 0``.
    """

    polynomial: PositivePolynomial
    max_minor_size: int
    exhaustive: bool
    checked: int
    positive_diagonal: int
    zero_diagonal: int
    violations: int
    first_violation: MinorReport | None
    rng_seed: int


def _count_selections(n: int, max_size: int) -> list[int]:
    return [math.comb(n, k) ** 2 for k in range(1, max_size + 1)]


def _unrank_combination(n: int, k: int, rank: int) -> tuple[int, ...]:
    """Lexicographic ``rank``-th k-subset of ``1..n``."""
    out = []
    x = 1
    for slot in range(k, 0, -1):
        while True:
            c = math.comb(n - x, slot - 1)
            if rank < c:
                break
            rank -= c
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def _unrank_selection(n: int, blocks: list[int], index: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    for k, count in enumerate(blocks, start=1):
        if index < count:
            per_side = math.comb(n, k)
            r, c = divmod(index, per_side)
            return _unrank_combination(n, k, r), _unrank_combination(n, k, c)
        index -= count
    raise BadIndex("selection index out of range")


def _audit_chunk(args):
    coeffs, n, max_size, indices = args
    h = _hurwitz_rows(coeffs, n, 0)
    blocks = _count_selections(n, max_size)
    checked = pos = zero = 0
    bad = []
    for idx in indices:
        rows, cols = _unrank_selection(n, blocks, idx)
        sel = [[h[i - 1][j - 1] for j in cols] for i in rows]
        diag = all(sel[t][t] > 0 for t in range(len(rows)))
        det = bareiss_det(sel)
        checked += 1
        if diag:
            pos += 1
            if det <= 0:
                bad.append((idx, rows, cols, det, diag))
        else:
            zero += 1
            if det > 0:
                bad.append((idx, rows, cols, det, diag))
    return checked, pos, zero, bad


def kemperman_audit(
    f: PositivePolynomial,
    max_minor_size: int = 3,
    sample_budget: int = 20_000,
    rng_seed: int = 0,
    workers: int = 1,
) -> KempermanAudit:
    """Check the diagonal/determinant biconditional on square submatrices of H_f.

    All selections of size ``<= max_minor_size`` are enumerated when there are
    at most ``sample_budget`` of them; otherwise ``sample_budget`` distinct
    selections are drawn with a seeded generator. Selections are evaluated in
    lexicographic (size, rows, cols) order, so the reported first violation does
    not depend on ``workers``.
    """
    if not is_stable_exact(f):
        raise NotStable("audit requires a stable polynomial")
    n = f.degree
    if max_minor_size < 1:
        raise BadIndex("max_minor_size must be at least 1")
    max_size = min(max_minor_size, n)
    blocks = _count_selections(n, max_size)
    total = sum(blocks)
    if total <= sample_budget:
        indices = list(range(total))
        exhaustive = True
    else:
        rng = np.random.default_rng(rng_seed)
        indices = sorted(int(i) for i in rng.choice(total, size=sample_budget, replace=False))
        exhaustive = False
    scale, ints = f.integer_coefficients()
    # chunking is fixed so the work split is identical for any worker count
    tasks = [(ints, n, max_size, chunk) for chunk in chunked(indices, 32)]
    with pool_map(workers) as pmap:
        results = pmap(_audit_chunk, tasks)
    checked = sum(r[0] for r in results)
    pos = sum(r[1] for r in results)
    zero = sum(r[2] for r in results)
    bad = sorted((b for r in results for b in r[3]), key=lambda b: b[0])
    first = None
    if bad:
        _, rows, cols, det, diag = bad[0]
        first = MinorReport(rows, cols, Fraction(det, scale ** len(rows)), diag)
    return KempermanAudit(f, max_size, exhaustive, checked, pos, zero, len(bad), first, rng_seed)


# ------------------------------------------------- three-coefficient margins


@dataclass(frozen=True)
class NecessaryMargins:
    """Exact margins that are all positive for any stable polynomial of degree >= 4.

    ``m1 = a3 a2 - a1 a4``, ``m2 = a_{n-3} a2 - a_{n-1} a0``,
    ``m3 = a_{n-3} a3 a2 - a_{n-3} a4 a1 - a_{n-1} a3 a0``.
    """

    m1: Fraction
    m2: Fraction
    m3: Fraction

    @property
    def all_positive(self) -> bool:
        return self.m1 > 0 and self.m2 > 0 and self.m3 > 0


def necessary_inequalities(f: PositivePolynomial) -> NecessaryMargins:
    n = f.degree
    if n < 4:
        raise DegreeTooSmall(f"needs degree >= 4, got {n}")
    a = f.coefficients
    m1 = a[3] * a[2] - a[1] * a[4]
    m2 = a[n - 3] * a[2] - a[n - 1] * a[0]
    m3 = a[n - 3] * a[3] * a[2] - a[n - 3] * a[4] * a[1] - a[n - 1] * a[3] * a[0]
    return NecessaryMargins(m1, m2, m3)


def locate_margin_submatrix(n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Rows and columns of H_f holding ``[[a3, a4, 0], [a1, a2, a_{n-1}], [0, a0, a_{n-3}]]``.

    Its determinant is the margin ``m3`` of :func:`necessary_inequalities`.
    From the entry rule ``a_{n-2i+j}``: for even n take columns
    ``(1, 2, n-1)`` and rows ``(n/2 - 1, n/2, n/2 + 1)``; for odd n take
    columns ``(2, 3, n)`` and rows ``((n-1)/2, (n+1)/2, (n+3)/2)``. In both
    cases the last column meets the first row at index ``n + 1``, giving the 0.
    """
    if n < 4:
        raise DegreeTooSmall(f"needs degree >= 4, got {n}")
    if n % 2 == 0:
        return ((n - 2) // 2, n // 2, (n + 2) // 2), (1, 2, n - 1)
    return ((n - 1) // 2, (n + 1) // 2, (n + 3) // 2), (2, 3, n)


# ------------------------------------------------------ dual-oracle survey


@dataclass(frozen=True)
class AgreementSurvey:
    """Exact criterion versus root oracle over a seeded corpus."""

    rng_seed: int
    degrees: tuple[int, ...]
    samples: int
    compared: int
    skipped_near_axis: int
    stable_samples: int
    agreements: int
    disagreements: tuple[dict, ...] = field(default=())


def _survey_case(args):
    seed, index, n, want_stable, axis_gap, margin = args
    s = derive_seed(seed, index)
    f = random_stable(n, s) if want_stable else random_unstable(n, s)
    roots = float_roots(f)
    near = bool(np.min(np.abs(roots.real)) < axis_gap)
    exact = is_stable_exact(f)
    floaty = bool(np.all(roots.real < -margin))
    return index, n, want_stable, near, exact, floaty, f


def stability_agreement_survey(
    samples: int = 1000,
    degrees: Sequence[int] = (3, 4, 5, 6, 7, 8, 9, 10),
    rng_seed: int = 0,
    axis_gap: float = 1e-6,
    margin: float = 1e-9,
    workers: int = 1,
) -> AgreementSurvey:
    """Compare :func:`is_stable_exact` with :func:`is_stable_float`.

    Sample ``i`` has degree ``degrees[i % len(degrees)]`` and is stable by root
    construction for even ``i``, unstable (one mirrored pair) for odd ``i``.
    Samples with a float root closer than ``axis_gap`` to the imaginary axis
    are skipped.
    """
    degrees = tuple(degrees)
    if any(d < 3 for d in degrees):
        raise DegreeTooSmall("survey degrees must be >= 3 to admit unstable samples")
    tasks = [(rng_seed, i, degrees[i % len(degrees)], i % 2 == 0, axis_gap, margin) for i in range(samples)]
    with pool_map(workers) as pmap:
        results = pmap(_survey_case, tasks)
    compared = skipped = agree = stable = 0
    bad = []
    for index, n, want_stable, near, exact, floaty, f in results:
        stable += exact
        if near:
            skipped += 1
            continue
        compared += 1
        if exact == floaty:
            agree += 1
        else:
            bad.append({"index": index, "degree": n, "exact": exact, "float": floaty, "polynomial": f})
    return AgreementSurvey(rng_seed, degrees, samples, compared, skipped, stable, agree, tuple(bad))
