"""Order-preserving map over a process pool; results never depend on worker count."""

from __future__ import annotations

import contextlib
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator

import numpy as np


@contextlib.contextmanager
def pool_map(workers: int = 1) -> Iterator[Callable]:
    """Yield a ``map``-like callable backed by ``workers`` processes.

    ``workers <= 1`` runs in-process. Results are returned in input order.
    """
    if workers is None or workers <= 1:
        yield lambda fn, items: list(map(fn, items))
        return
    ctx = multiprocessing.get_context("fork") if "fork" in multiprocessing.get_all_start_methods() else None
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as ex:
        def _map(fn: Callable, items: Iterable) -> list:
            items = list(items)
            chunk = max(1, len(items) // (4 * workers))
            return list(ex.map(fn, items, chunksize=chunk))

        yield _map


def chunked(seq: list, parts: int) -> list[list]:
    """Split into ``parts`` contiguous chunks (fixed, independent of worker count)."""
    parts = max(1, min(parts, len(seq)))
    size, extra = divmod(len(seq), parts)
    out, start = [], 0
    for i in range(parts):
        stop = start + size + (1 if i < extra else 0)
        out.append(seq[start:stop])
        start = stop
    return out


def derive_seed(*parts: int) -> int:
    """Deterministic 64-bit child seed for a path of non-negative integers."""
    return int(np.random.SeedSequence([int(p) for p in parts]).generate_state(1, dtype=np.uint64)[0])
