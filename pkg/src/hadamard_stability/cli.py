"""Command-line front end.

Every subcommand reads polynomials in the canonical JSON or CSV format and
writes one report (JSON by default) to standard output or ``--output``.

Exit status: 0 success, 1 domain error (a JSON error object is written),
2 usage error, and 3 for ``stable`` on an unstable input.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass, field
from typing import Sequence

from . import __version__
from ._exact import decimal_floor, format_rational
from .delta import delta_bounds, delta_report, quotient_delta_growth, quotient_delta_identity
from .errors import HadamardError
from .factorization import build_chain, hunt_counterexample, search_factorization, verify_factorization
from .hurwitz import (
    hurwitz_matrix,
    is_stable_float,
    kemperman_audit,
    leading_minors,
    submatrix,
)
from .polynomial import PositivePolynomial, hadamard_product, hadamard_quotient, parse, random_stable, to_csv
from .reports import dumps, to_jsonable

TOOL = "hadamard-stability"
COMMANDS = (
    "stable", "hurwitz", "minors", "kemperman", "delta", "lemma1", "lemma2",
    "product", "quotient", "factorize", "hunt", "chain", "gen",
)
EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_UNSTABLE = 0, 1, 2, 3


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    output: str | None = None
    degree: int | None = None
    seed: int = 0
    budget: int | None = None
    restarts: int = 8
    max_steps: int = 10
    format: str = "json"
    workers: int = 1
    margin: float | None = None
    precision: int = 12
    rows: tuple[int, ...] | None = None
    cols: tuple[int, ...] | None = None
    max_size: int = 3


def _index_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append", default=[], metavar="PATH", help="polynomial file; repeat for two-operand commands; '-' is stdin")
    common.add_argument("--output", metavar="PATH")
    common.add_argument("--degree", type=_positive, metavar="N")
    common.add_argument("--seed", type=_u64, default=0, metavar="U64")
    common.add_argument("--budget", type=_nonneg, metavar="N")
    common.add_argument("--restarts", type=_positive, default=8, metavar="N")
    common.add_argument("--max-steps", type=_nonneg, default=10, metavar="N")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--workers", type=_positive, default=1, metavar="N")
    common.add_argument("--margin", type=float, metavar="DECIMAL", help="float root oracle margin (stable only)")
    common.add_argument("--precision", type=_nonneg, default=12, metavar="DIGITS")
    common.add_argument("--rows", type=_index_list, metavar="I,J,...")
    common.add_argument("--cols", type=_index_list, metavar="I,J,...")
    common.add_argument("--max-size", type=_positive, default=3, metavar="K")

    parser = argparse.ArgumentParser(prog=TOOL, description="Hurwitz stability and Hadamard factorization toolkit")
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    helps = {
        "stable": "exact stability test with leading Hurwitz minors",
        "hurwitz": "Hurwitz matrix and its leading minors",
        "minors": "determinant of a row/column selection (--rows, --cols)",
        "kemperman": "audit det > 0 <=> positive diagonal over small submatrices",
        "delta": "delta invariants and obstruction value",
        "lemma1": "delta bounds of a stable polynomial",
        "lemma2": "delta growth under a stable Hadamard quotient (two inputs)",
        "product": "Hadamard product of two inputs",
        "quotient": "Hadamard quotient of two inputs",
        "factorize": "search for (one input) or verify (three inputs) a factorization",
        "hunt": "search for stable polynomials with a non-factorizability certificate",
        "chain": "build a Hadamard quotient chain from a stable start",
        "gen": "random stable polynomial",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command, inputs=list(ns.input), output=ns.output, degree=ns.degree,
        seed=ns.seed, budget=ns.budget, restarts=ns.restarts, max_steps=ns.max_steps,
        format=ns.format, workers=ns.workers, margin=ns.margin, precision=ns.precision,
        rows=ns.rows, cols=ns.cols, max_size=ns.max_size,
    )


def _read(path: str) -> PositivePolynomial:
    if path == "-":
        return parse(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            return parse(fh.read())
    except OSError as exc:
        raise UsageError("--input", f"cannot read {path}: {exc.strerror}") from None


def _inputs(cfg: RunConfig, *counts: int) -> list[PositivePolynomial]:
    if len(cfg.inputs) not in counts:
        want = " or ".join(str(c) for c in counts)
        raise UsageError("--input", f"'{cfg.command}' takes {want} input(s), got {len(cfg.inputs)}")
    return [_read(p) for p in cfg.inputs]


def _need_degree(cfg: RunConfig) -> int:
    if cfg.degree is None:
        raise UsageError("--degree", f"'{cfg.command}' requires --degree")
    return cfg.degree


def _json_only(cfg: RunConfig) -> None:
    if cfg.format != "json":
        raise UsageError("--format", f"'{cfg.command}' only writes json")


def _header(cfg: RunConfig) -> dict:
    return {"tool": TOOL, "version": __version__, "command": cfg.command, "seed": cfg.seed}


def _polynomial_output(cfg: RunConfig, f: PositivePolynomial) -> str:
    if cfg.format == "csv":
        return to_csv(f)
    return dumps({**_header(cfg), **f.to_dict()}, cfg.precision)


def _csv(rows: Sequence[Sequence], header: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def execute(cfg: RunConfig) -> tuple[int, str]:
    """Run one command; returns ``(exit_status, text)``. Domain errors propagate."""
    cmd = cfg.command
    out = _header(cfg)
    status = EXIT_OK
    if cfg.margin is not None and cmd != "stable":
        raise UsageError("--margin", "only applies to 'stable'")
    if cmd in ("product", "quotient", "gen"):
        if cmd == "gen":
            f = random_stable(_need_degree(cfg), cfg.seed)
        else:
            f, g = _inputs(cfg, 2)
            f = hadamard_product(f, g) if cmd == "product" else hadamard_quotient(f, g)
        return EXIT_OK, _polynomial_output(cfg, f)

    if cmd == "hunt":
        n = _need_degree(cfg)
        budget = 100_000 if cfg.budget is None else cfg.budget
        report = hunt_counterexample(n, budget, cfg.restarts, cfg.seed, cfg.workers)
        if cfg.format == "csv":
            rows = [
                (i, r, k, "" if w is None else decimal_floor(w, cfg.precision))
                for i, r, k, w in report.trace_rows()
            ]
            return EXIT_OK, _csv(rows, ("evaluation", "restart", "restart_evaluation", "best_omega_lower"))
        out.update(budget=budget, restarts=cfg.restarts, report=to_jsonable(report, cfg.precision))
        return EXIT_OK, dumps(out, cfg.precision)

    if cmd == "chain":
        (g0,) = _inputs(cfg, 1)
        budget = 10_000 if cfg.budget is None else cfg.budget
        rec = build_chain(g0, cfg.max_steps, budget, cfg.seed, cfg.workers)
        if cfg.format == "csv":
            rows = []
            for i, d in enumerate(rec.deltas):
                r = format_rational(rec.ratio_sums[i - 1]) if i > 0 else ""
                rows.append((i, format_rational(d.delta1), format_rational(d.delta2), r))
            return EXIT_OK, _csv(rows, ("index", "delta1", "delta2", "ratio_sum"))
        out.update(
            budget=budget, max_steps=cfg.max_steps, length=rec.length,
            length_bound=f"{rec.length_bound:.6f}", within_bound=rec.within_bound,
            report=to_jsonable(rec, cfg.precision),
        )
        return EXIT_OK, dumps(out, cfg.precision)

    _json_only(cfg)
    if cmd == "stable":
        (f,) = _inputs(cfg, 1)
        minors = leading_minors(f)
        stable = all(m > 0 for m in minors)
        out.update(polynomial=f.to_dict(), stable=stable, leading_minors=[format_rational(m) for m in minors])
        if cfg.margin is not None:
            out["float_oracle"] = {"margin": repr(cfg.margin), "stable": is_stable_float(f, cfg.margin)}
        status = EXIT_OK if stable else EXIT_UNSTABLE
    elif cmd == "hurwitz":
        (f,) = _inputs(cfg, 1)
        out.update(polynomial=f.to_dict(), matrix=hurwitz_matrix(f).to_dict()["entries"],
                   leading_minors=[format_rational(m) for m in leading_minors(f)])
    elif cmd == "minors":
        (f,) = _inputs(cfg, 1)
        if cfg.rows is None or cfg.cols is None:
            raise UsageError("--rows" if cfg.rows is None else "--cols", "'minors' requires --rows and --cols")
        out.update(minor=to_jsonable(submatrix(hurwitz_matrix(f), cfg.rows, cfg.cols)))
    elif cmd == "kemperman":
        (f,) = _inputs(cfg, 1)
        budget = 20_000 if cfg.budget is None else cfg.budget
        audit = kemperman_audit(f, cfg.max_size, budget, cfg.seed, cfg.workers)
        out.update(sample_budget=budget, audit=to_jsonable(audit))
    elif cmd == "delta":
        (f,) = _inputs(cfg, 1)
        out.update(polynomial=f.to_dict(), **delta_report(f, cfg.precision))
    elif cmd == "lemma1":
        (f,) = _inputs(cfg, 1)
        out.update(polynomial=f.to_dict(), bounds=to_jsonable(delta_bounds(f)))
    elif cmd == "lemma2":
        f, g = _inputs(cfg, 2)
        ident = quotient_delta_identity(f, g)
        growth = quotient_delta_growth(f, g)
        out.update(
            identity={"holds": ident.holds, **to_jsonable(ident)},
            growth={"both": growth.both, **to_jsonable(growth)},
        )
    elif cmd == "factorize":
        polys = _inputs(cfg, 1, 3)
        if len(polys) == 3:
            check = verify_factorization(*polys)
            out.update(mode="verify", verification=to_jsonable(check))
        else:
            budget = 10_000 if cfg.budget is None else cfg.budget
            outcome = search_factorization(polys[0], budget, cfg.seed, cfg.workers)
            out.update(mode="search", outcome=to_jsonable(outcome, cfg.precision))
    return status, dumps(out, cfg.precision)


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    cfg = _config(ns)
    try:
        status, text = execute(cfg)
    except UsageError as exc:
        print(f"{TOOL} {cfg.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HadamardError as exc:
        err = {**_header(cfg), "error": type(exc).__name__, "message": str(exc)}
        _emit(dumps(err), cfg.output)
        return EXIT_DOMAIN
    _emit(text, cfg.output)
    return status


def run(config: RunConfig) -> tuple[int, str]:
    """Programmatic entry point mirroring :func:`main` without argument parsing."""
    try:
        return execute(config)
    except HadamardError as exc:
        return EXIT_DOMAIN, dumps({**_header(config), "error": type(exc).__name__, "message": str(exc)})


if __name__ == "__main__":
    sys.exit(main())
