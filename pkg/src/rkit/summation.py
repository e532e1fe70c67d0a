"""Compensated summation helpers with a deterministic reduction order.

Serial and parallel evaluations must produce identical bits, so sums are
always taken over a fixed partition of the index range: each chunk is
accumulated with Kahan compensation, then chunk totals are merged in
ascending order with another Kahan pass.  Workers may compute chunks in any
order; the merge order is what pins the result.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence

CHUNK = 1024


class KahanSum:
    """Kahan compensated accumulator."""

    __slots__ = ("total", "_comp")

    def __init__(self) -> None:
        self.total = 0.0
        self._comp = 0.0

    def add(self, term: float) -> None:
        y = term - self._comp
        t = self.total + y
        self._comp = (t - self.total) - y
        self.total = t


def kahan_sum(terms: Iterable[float]) -> float:
    acc = KahanSum()
    for t in terms:
        acc.add(t)
    return acc.total


def worker_count() -> int:
    """Worker cap from the RKIT_THREADS environment variable (default 1)."""
    try:
        return max(1, int(os.environ.get("RKIT_THREADS", "1")))
    except ValueError:
        return 1


def chunk_bounds(start: int, stop: int, checkpoints: Sequence[int] = ()) -> list[tuple[int, int]]:
    """Fixed partition of [start, stop] into half-open index chunks.

    Boundaries fall on multiples of CHUNK and on every checkpoint, so prefix
    sums at checkpoints are a by-product of the ordered merge.
    """
    cuts = {stop}
    cuts.update(c for c in checkpoints if start <= c <= stop)
    cuts.update(range(start - 1 + CHUNK, stop, CHUNK))
    ordered = sorted(cuts)
    bounds = []
    lo = start
    for hi in ordered:
        bounds.append((lo, hi))
        lo = hi + 1
    return bounds


def reduce_range(
    term: Callable[[int], float],
    start: int,
    stop: int,
    checkpoints: Sequence[int] = (),
    workers: int | None = None,
) -> tuple[float, dict[int, float]]:
    """Sum term(i) for i in [start, stop] under the deterministic order.

    Returns (total, prefix) where prefix[c] is the partial sum through each
    requested checkpoint.  With workers > 1 the chunks are evaluated on a
    thread pool; the merge stays in ascending chunk order, so the bits match
    the serial path exactly.
    """
    if stop < start:
        return 0.0, {c: 0.0 for c in checkpoints}
    bounds = chunk_bounds(start, stop, checkpoints)
    workers = worker_count() if workers is None else max(1, workers)

    def chunk_total(bound: tuple[int, int]) -> float:
        lo, hi = bound
        acc = KahanSum()
        for i in range(lo, hi + 1):
            acc.add(term(i))
        return acc.total

    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            totals = list(pool.map(chunk_total, bounds))
    else:
        totals = [chunk_total(b) for b in bounds]

    merged = KahanSum()
    prefix: dict[int, float] = {}
    wanted = set(checkpoints)
    for (lo, hi), t in zip(bounds, totals):
        merged.add(t)
        if hi in wanted:
            prefix[hi] = merged.total
    for c in wanted:
        if c not in prefix:
            prefix[c] = 0.0 if c < start else merged.total
    return merged.total, prefix
