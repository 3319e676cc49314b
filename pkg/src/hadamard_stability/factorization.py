"""Hadamard factorization: verification, seeded search, counterexample hunting, quotient chains.

A stable ``f`` factorizes when ``f = g1 o g2`` with both factors stable,
equivalently when some stable ``g`` makes the Hadamard quotient ``f / g``
stable. Floating point only ever proposes candidates; every accepted claim is
backed by exact Hurwitz minors.

Chain length bound
------------------
In a quotient chain ``g0, g1, ...`` with every ``g_i / g_{i+1}`` stable, each
step satisfies ``d1(g_i)/d1(g_{i+1}) + d2(g_i)/d2(g_{i+1}) < 1``, so at least
one ratio is below 1/2 and the corresponding invariant more than doubles.
Both invariants stay below 1 along the chain, so a chain of ``k`` steps needs
``2**k * d1(g0) * d2(g0) < 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from ._exact import decimal_floor
from ._parallel import derive_seed, pool_map
from .delta import DeltaPair, Obstruction, deltas, obstruction_value
from .errors import DegreeMismatch, DegreeTooSmall, InvariantViolation, NotStable
from .hurwitz import StabilityCertificate, float_roots, is_stable_exact, stability_certificate
from .polynomial import (
    PositivePolynomial,
    expand,
    from_log_coefficients,
    hadamard_product,
    hadamard_quotient,
    ones,
    random_stable,
)

# candidates per synchronous round; fixed so results ignore the worker count
BATCH_SIZE = 16
# share of search proposals drawn fresh from random_stable instead of the local walk
FRESH_RATE = 0.25
# proposals (prefilter rejections included) allowed per unit of exact budget
PROPOSAL_FACTOR = 10
LOW_DEGREE_RETRIES = 200


class Status(str, Enum):
    FOUND = "Found"
    CERTIFIED_IMPOSSIBLE = "CertifiedImpossible"
    BUDGET_EXHAUSTED = "BudgetExhausted"


@dataclass(frozen=True)
class FactorizationCheck:
    valid: bool
    product_matches: bool
    first: StabilityCertificate
    second: StabilityCertificate


def verify_factorization(f: PositivePolynomial, g1: PositivePolynomial, g2: PositivePolynomial) -> FactorizationCheck:
    """Exact check of ``f = g1 o g2`` with both factors certified stable."""
    if not (f.degree == g1.degree == g2.degree):
        raise DegreeMismatch(f"degrees differ: {f.degree}, {g1.degree}, {g2.degree}")
    matches = hadamard_product(g1, g2) == f
    c1, c2 = stability_certificate(g1), stability_certificate(g2)
    return FactorizationCheck(matches and c1.stable and c2.stable, matches, c1, c2)


@dataclass(frozen=True)
class SearchStats:
    rng_seed: int
    budget: int
    evaluations: int
    prefilter_rejections: int
    proposals: int


@dataclass(frozen=True)
class FactorizationOutcome:
    """``witness`` is ``(g, f / g)``; for ``Found`` both are certified stable."""

    status: Status
    polynomial: PositivePolynomial
    witness: tuple[PositivePolynomial, PositivePolynomial] | None
    verification: FactorizationCheck | None
    certificate: Obstruction | None
    stats: SearchStats


def _angle_score(p: PositivePolynomial) -> float:
    """``max Re(z)/|z|`` over the roots: negative iff stable, invariant under ``s -> cs``."""
    try:
        r = float_roots(p)
    except Exception:
        return math.inf
    mag = np.abs(r)
    if not np.all(mag > 0):
        return math.inf
    return float(np.max(r.real / mag))


def _evaluate_candidate(args):
    f, g = args
    q = hadamard_quotient(f, g)
    score = max(_angle_score(g), _angle_score(q))
    dg = deltas(g)
    dq = deltas(f) / dg
    # necessary for stability of g and of f/g; rejects before the exact test
    if not (dg.delta1 < 1 and dg.delta2 < 1 and dg.total < 1 and dq.delta1 < 1 and dq.delta2 < 1 and dq.total < 1):
        return "prefilter", score, False
    return "exact", score, is_stable_exact(g) and is_stable_exact(q)


def _gauge(x: np.ndarray, anchor0: float, anchorn: float) -> np.ndarray:
    # g -> c g(ts) leaves stability of g and of f/g unchanged; pin both ends
    n = len(x) - 1
    lam = anchor0 - x[0]
    mu = (anchorn - x[-1] - lam) / n
    return x + lam + mu * np.arange(n + 1)


def _low_degree_split(f: PositivePolynomial, rng_seed: int, budget: int) -> FactorizationOutcome:
    """Constructive splits for degrees one to three.

    Degrees 1 and 2 use ``f = f o ones`` (``s + 1`` and ``s**2 + s + 1`` are
    stable). Degree 3 uses ``h = (1, q, q, 1)`` with ``q = 1 + 2**(1-k)``,
    shrinking ``q`` towards 1 until ``f / h`` is stable.
    """
    n = f.degree
    evaluations = 0
    if n <= 2:
        candidates = [ones(n)]
    else:
        candidates = [
            PositivePolynomial([1, q, q, 1])
            for q in (1 + Fraction(2, 2**k) for k in range(LOW_DEGREE_RETRIES))
        ]
    for h in candidates:
        q = hadamard_quotient(f, h)
        evaluations += 1
        if is_stable_exact(h) and is_stable_exact(q):
            check = verify_factorization(f, q, h)
            stats = SearchStats(rng_seed, budget, evaluations, 0, evaluations)
            return FactorizationOutcome(Status.FOUND, f, (h, q), check, None, stats)
        if n == 3 and not is_stable_exact(f):
            break
    stats = SearchStats(rng_seed, budget, evaluations, 0, evaluations)
    return FactorizationOutcome(Status.BUDGET_EXHAUSTED, f, None, None, None, stats)


def search_factorization(
    f: PositivePolynomial,
    budget: int = 10_000,
    rng_seed: int = 0,
    workers: int = 1,
    *,
    use_certificate: bool = True,
) -> FactorizationOutcome:
    """Look for a stable ``g`` with ``f / g`` stable.

    Order of work: the obstruction certificate first (no budget used), then
    rounds of ``BATCH_SIZE`` candidates. The first candidate is the geometric
    half ``g = sqrt(f)`` coefficient-wise; later ones are either fresh
    :func:`random_stable` draws or Gaussian steps around the best point so far
    in log-coefficient space, scored by the worst root angle of ``g`` and
    ``f / g``. Each candidate passes a cheap exact prefilter on the ratios
    (both ``g`` and ``f / g`` must satisfy the stability bounds) before the
    exact Hurwitz test; one exact test of the pair is one evaluation.

    ``use_certificate=False`` skips the obstruction short-circuit; it exists so
    the soundness of the certificate can be tested against the search itself.
    """
    n = f.degree
    if n <= 3:
        return _low_degree_split(f, rng_seed, budget)
    ob = obstruction_value(f)
    if ob.certified and use_certificate:
        return FactorizationOutcome(
            Status.CERTIFIED_IMPOSSIBLE, f, None, None, ob, SearchStats(rng_seed, budget, 0, 0, 0)
        )
    rng = np.random.default_rng(rng_seed)
    log_f = np.log(f.to_floats())
    anchor0, anchorn = log_f[0] / 2, log_f[-1] / 2
    center = log_f / 2
    center_score = math.inf
    step = 0.5
    evaluations = prefilter = proposals = 0
    max_proposals = PROPOSAL_FACTOR * budget
    with pool_map(workers) as pmap:
        while evaluations < budget and proposals < max_proposals:
            points, cands = [], []
            for _ in range(BATCH_SIZE):
                if proposals == 0 and not points:
                    x = center.copy()
                    g = from_log_coefficients(x)
                elif rng.random() < FRESH_RATE:
                    g = random_stable(n, int(rng.integers(2**63)))
                    x = _gauge(np.log(g.to_floats()), anchor0, anchorn)
                else:
                    x = _gauge(center + step * rng.standard_normal(n + 1), anchor0, anchorn)
                    g = from_log_coefficients(np.clip(x, -600, 600))
                points.append(x)
                cands.append(g)
            results = pmap(_evaluate_candidate, [(f, g) for g in cands])
            for g, (kind, _, ok) in zip(cands, results):
                proposals += 1
                if kind == "prefilter":
                    prefilter += 1
                else:
                    evaluations += 1
                    if ok:
                        q = hadamard_quotient(f, g)
                        check = verify_factorization(f, q, g)
                        if not check.valid:
                            raise InvariantViolation("accepted witness failed verification")
                        stats = SearchStats(rng_seed, budget, evaluations, prefilter, proposals)
                        return FactorizationOutcome(Status.FOUND, f, (g, q), check, None, stats)
                if evaluations >= budget or proposals >= max_proposals:
                    break
            scores = [r[1] for r in results]
            best = int(np.argmin(scores))
            if scores[best] < center_score:
                center, center_score = points[best], scores[best]
                step = min(step * 1.3, 2.0)
            else:
                step *= 0.8
                if step < 1e-3:
                    center, center_score, step = points[best], scores[best], 0.5
    stats = SearchStats(rng_seed, budget, evaluations, prefilter, proposals)
    return FactorizationOutcome(Status.BUDGET_EXHAUSTED, f, None, None, None, stats)


# ------------------------------------------------------------ counterexample hunt


def binomial_polynomial(n: int) -> PositivePolynomial:
    """``(s + 1)**n``."""
    return PositivePolynomial(expand([[1, 1]] * n))


def _normalize(x: np.ndarray) -> np.ndarray:
    # omega and stability are invariant under f -> c f(ts); pin a0 = an = 1
    return _gauge(x, 0.0, 0.0)


@dataclass(frozen=True)
class HuntImprovement:
    evaluation: int
    omega_lower: Fraction


@dataclass(frozen=True)
class HuntRestart:
    restart: int
    start: PositivePolynomial
    best: PositivePolynomial | None
    obstruction: Obstruction | None
    evaluations: int
    prefilter_rejections: int
    improvements: tuple[HuntImprovement, ...]


@dataclass(frozen=True)
class HuntReport:
    degree: int
    budget: int
    restarts: int
    rng_seed: int
    best: PositivePolynomial | None
    best_restart: int | None
    obstruction: Obstruction | None
    deltas: DeltaPair | None
    certified: bool
    evaluations: int
    prefilter_rejections: int
    per_restart: tuple[HuntRestart, ...] = field(default=())

    def trace_rows(self):
        """Best-so-far lower bound on omega after every exact evaluation.

        Yields ``(global_index, restart, local_index, omega_lower)`` in strictly
        increasing ``global_index``.
        """
        offset = 0
        for r in self.per_restart:
            marks = list(r.improvements)
            k = 0
            current = None
            for local in range(1, r.evaluations + 1):
                while k < len(marks) and marks[k].evaluation <= local:
                    current = marks[k].omega_lower
                    k += 1
                yield offset + local, r.restart, local, current
            offset += r.evaluations


def _omega_key(f: PositivePolynomial) -> tuple[Fraction, Obstruction]:
    ob = obstruction_value(f, bits=64)
    return ob.lower, ob


def _hunt_restart(args) -> HuntRestart:
    n, budget, restart, seed = args
    start = binomial_polynomial(n) if restart == 0 else random_stable(n, derive_seed(seed, restart, 1))
    if budget <= 0:
        return HuntRestart(restart, start, None, None, 0, 0, ())
    rng = np.random.default_rng(derive_seed(seed, restart, 2))
    evaluations = 1
    prefilter = 0
    if not is_stable_exact(start):
        raise InvariantViolation("hunt start point is not stable")
    best = start
    best_score, best_ob = _omega_key(start)
    improvements = [HuntImprovement(1, best_score)]
    x = _normalize(np.log(start.to_floats()))
    step = 0.3
    proposals = 0
    while evaluations < budget and proposals < PROPOSAL_FACTOR * budget:
        proposals += 1
        y = x.copy()
        y[1:-1] += step * rng.standard_normal(n - 1)
        g = from_log_coefficients(np.clip(y, -600, 600))
        d = deltas(g)
        if not (d.delta1 < 1 and d.delta2 < 1 and d.total < 1):
            prefilter += 1
            step = max(step * 0.95, 1e-4)
            continue
        evaluations += 1
        improved = False
        if is_stable_exact(g):
            score, ob = _omega_key(g)
            if score > best_score or (score == best_score and tuple(g) < tuple(best)):
                improved = score > best_score
                best, best_score, best_ob, x = g, score, ob, y
                if improved:
                    improvements.append(HuntImprovement(evaluations, score))
        step = min(step * 1.5, 3.0) if improved else max(step * 0.95, 1e-4)
        if step <= 1e-4:
            step = 0.3
    return HuntRestart(restart, start, best, best_ob, evaluations, prefilter, tuple(improvements))


def hunt_counterexample(
    n: int,
    budget: int = 100_000,
    restarts: int = 8,
    rng_seed: int = 0,
    workers: int = 1,
) -> HuntReport:
    """Maximise ``omega`` over exactly certified stable polynomials of degree ``n``.

    ``budget`` counts exact stability tests across all restarts and is split
    evenly (remainder to the lowest restart indices). Restart 0 starts from
    ``(s + 1)**n``; the others from seeded :func:`random_stable` draws. Each
    restart is a (1+1) random walk on the interior log-coefficients with the
    ends pinned to 1. Ties go to the lowest restart index, then the
    lexicographically smallest coefficient vector.
    """
    if n < 4:
        raise DegreeTooSmall(f"needs degree >= 4, got {n}")
    restarts = max(1, restarts)
    share, extra = divmod(max(budget, 0), restarts)
    tasks = [(n, share + (1 if r < extra else 0), r, rng_seed) for r in range(restarts)]
    with pool_map(workers) as pmap:
        runs = pmap(_hunt_restart, tasks)
    best_run = None
    for run in runs:
        if run.best is None:
            continue
        if best_run is None:
            best_run = run
            continue
        # runs arrive in restart order, so a strict comparison keeps the lowest index on ties
        if run.obstruction.lower > best_run.obstruction.lower:
            best_run = run
    evaluations = sum(r.evaluations for r in runs)
    prefilter = sum(r.prefilter_rejections for r in runs)
    if best_run is None:
        return HuntReport(n, budget, restarts, rng_seed, None, None, None, None, False, evaluations, prefilter, tuple(runs))
    full = obstruction_value(best_run.best)
    return HuntReport(
        n, budget, restarts, rng_seed, best_run.best, best_run.restart, full,
        full.deltas, full.certified, evaluations, prefilter, tuple(runs),
    )


# ------------------------------------------------------------------ quotient chain


class ChainEnd(str, Enum):
    CERTIFIED_IMPOSSIBLE = "CertifiedImpossible"
    BUDGET_EXHAUSTED = "BudgetExhausted"
    MAX_STEPS = "MaxSteps"


@dataclass(frozen=True)
class ChainRecord:
    """``chain[i] / chain[i+1]`` is certified stable for every recorded step.

    ``ratio_sums[i] = d1(g_i)/d1(g_{i+1}) + d2(g_i)/d2(g_{i+1})``.
    """

    rng_seed: int
    step_budget: int
    max_steps: int
    chain: tuple[PositivePolynomial, ...]
    deltas: tuple[DeltaPair, ...]
    ratio_sums: tuple[Fraction, ...]
    quotients: tuple[PositivePolynomial, ...]
    step_stats: tuple[SearchStats, ...]
    termination: ChainEnd
    final_obstruction: Obstruction

    @property
    def length(self) -> int:
        return len(self.chain) - 1

    @property
    def length_bound(self) -> float:
        """``log2(1/d1(g0)) + log2(1/d2(g0))``; the length stays strictly below it."""
        d = self.deltas[0]
        return -math.log2(d.delta1) - math.log2(d.delta2)

    @property
    def within_bound(self) -> bool:
        d = self.deltas[0]
        return 2**self.length * d.delta1 * d.delta2 < 1


def build_chain(
    g0: PositivePolynomial,
    max_steps: int = 10,
    step_budget: int = 10_000,
    rng_seed: int = 0,
    workers: int = 1,
) -> ChainRecord:
    """Extend ``g0`` by repeated factorization search: ``g_{i+1}`` is the stable
    factor ``g`` found for ``g_i``, so ``g_i / g_{i+1}`` is stable.

    Stops at the first obstruction certificate, exhausted step budget, or
    ``max_steps``. Every recorded step is re-checked exactly: strict growth of
    both invariants and ratio sum below 1.
    """
    if g0.degree < 4:
        raise DegreeTooSmall(f"needs degree >= 4, got {g0.degree}")
    if not is_stable_exact(g0):
        raise NotStable("chain start must be stable")
    chain = [g0]
    ds = [deltas(g0)]
    sums: list[Fraction] = []
    quotients: list[PositivePolynomial] = []
    stats: list[SearchStats] = []
    end = ChainEnd.MAX_STEPS
    for i in range(max_steps):
        out = search_factorization(chain[-1], step_budget, derive_seed(rng_seed, i), workers)
        stats.append(out.stats)
        if out.status is Status.CERTIFIED_IMPOSSIBLE:
            end = ChainEnd.CERTIFIED_IMPOSSIBLE
            break
        if out.status is Status.BUDGET_EXHAUSTED:
            end = ChainEnd.BUDGET_EXHAUSTED
            break
        nxt, quotient = out.witness
        d_prev, d_next = ds[-1], deltas(nxt)
        ratio = d_prev / d_next
        r = ratio.delta1 + ratio.delta2
        if not (is_stable_exact(nxt) and is_stable_exact(quotient)):
            raise InvariantViolation(f"step {i}: witness not certified stable")
        if not (d_prev.delta1 < d_next.delta1 and d_prev.delta2 < d_next.delta2):
            raise InvariantViolation(f"step {i}: invariants did not strictly increase")
        if not r < 1:
            raise InvariantViolation(f"step {i}: ratio sum {r} is not below 1")
        chain.append(nxt)
        ds.append(d_next)
        sums.append(r)
        quotients.append(quotient)
    else:
        if obstruction_value(chain[-1]).certified:
            end = ChainEnd.CERTIFIED_IMPOSSIBLE
    record = ChainRecord(
        rng_seed, step_budget, max_steps, tuple(chain), tuple(ds), tuple(sums),
        tuple(quotients), tuple(stats), end, obstruction_value(chain[-1]),
    )
    if not record.within_bound:
        raise InvariantViolation("chain exceeded the doubling bound")
    return record


def omega_floor_text(x: Fraction | None, digits: int = 12) -> str:
    return "" if x is None else decimal_floor(x, digits)
