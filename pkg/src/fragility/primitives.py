"""Comparison-count-bounded building blocks.

Sorting uses Batcher's odd-even mergesort network, whose depth bounds the
number of comparisons any single element participates in.  The remaining
primitives (tournament minimum, galloping merge, deterministic selection) are
shared by the search, selection and adaptive modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import EmptyInput, RankOutOfRange
from .ledger import ComparisonLedger, ElementId, Ordering


def ceil_log2(m: int) -> int:
    if m <= 1:
        return 0
    return (m - 1).bit_length()


def network_depth_bound(m: int) -> int:
    """Depth of the odd-even mergesort network on m wires."""
    t = ceil_log2(m)
    return t * (t + 1) // 2


@dataclass(frozen=True)
class ComparatorSchedule:
    """Layered comparator network; pairs within a layer are disjoint."""

    length: int
    layers: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def depth(self) -> int:
        return len(self.layers)

    def to_text(self) -> str:
        lines = []
        for layer in self.layers:
            lines.append(" ".join(f"{i}-{j}" for i, j in layer))
        return "\n".join(lines) + "\n"

    def apply_plain(self, values: list) -> list:
        """Apply the network to plain comparable values (no ledger); test aid."""
        out = list(values)
        for layer in self.layers:
            for i, j in layer:
                if out[i] > out[j]:
                    out[i], out[j] = out[j], out[i]
        return out


def _batcher_layers(n: int) -> list[list[tuple[int, int]]]:
    # Knuth's iterative odd-even merge sort; n must be a power of two.
    layers: list[list[tuple[int, int]]] = []
    p = 1
    while p < n:
        k = p
        while k >= 1:
            layer = []
            for j in range(k % p, n - k, 2 * k):
                for i in range(min(k, n - j - k)):
                    if (i + j) // (2 * p) == (i + j + k) // (2 * p):
                        layer.append((i + j, i + j + k))
            layers.append(layer)
            k //= 2
        p *= 2
    return layers


@lru_cache(maxsize=None)
def build_schedule(m: int) -> ComparatorSchedule:
    """Schedule for m wires; non-power-of-two sizes are padded virtually.

    Positions >= m are imagined to hold plus-infinity sentinels, which never
    move below the real wires, so comparators touching them are dropped.
    """
    if m < 2:
        return ComparatorSchedule(length=m, layers=())
    n = 1 << ceil_log2(m)
    layers = []
    for layer in _batcher_layers(n):
        kept = tuple((i, j) for i, j in layer if i < m and j < m)
        if kept:
            layers.append(kept)
    return ComparatorSchedule(length=m, layers=tuple(layers))


@lru_cache(maxsize=None)
def _schedule_arrays(m: int) -> list[tuple[np.ndarray, np.ndarray]]:
    sched = build_schedule(m)
    out = []
    for layer in sched.layers:
        ai = np.fromiter((i for i, _ in layer), dtype=np.intp, count=len(layer))
        bi = np.fromiter((j for _, j in layer), dtype=np.intp, count=len(layer))
        out.append((ai, bi))
    return out


def network_sort(ledger: ComparisonLedger, ids: Sequence[ElementId]) -> list[ElementId]:
    """Sort via the Batcher network; per-element comparisons <= network depth."""
    m = len(ids)
    if m < 2:
        return list(ids)
    arr = np.fromiter((e.index for e in ids), dtype=np.intp, count=m)
    for pos_a, pos_b in _schedule_arrays(m):
        ia = arr[pos_a]
        ib = arr[pos_b]
        signs = ledger.compare_batch(ia, ib)
        swap = (signs > 0) | ((signs == 0) & (ia > ib))
        if swap.any():
            sa = pos_a[swap]
            sb = pos_b[swap]
            arr[sa], arr[sb] = ib[swap], ia[swap]
    return [ElementId(int(i)) for i in arr]


def tournament_min(ledger: ComparisonLedger, ids: Sequence[ElementId]) -> ElementId:
    """Knockout minimum; every participant plays <= ceil(log2 m) rounds."""
    alive = list(ids)
    if not alive:
        raise EmptyInput("tournament over no elements")
    while len(alive) > 1:
        nxt = []
        for i in range(0, len(alive) - 1, 2):
            a, b = alive[i], alive[i + 1]
            nxt.append(a if ledger.less(a, b) else b)
        if len(alive) % 2:
            nxt.append(alive[-1])
        alive = nxt
    return alive[0]


def _gallop(
    ledger: ComparisonLedger,
    key: ElementId,
    xs: Sequence[ElementId],
    start: int,
) -> int:
    """Number of leading elements of xs[start:] strictly below key.

    Probes at doubling offsets, then binary-searches the bracketed gap, so the
    cost scales with the logarithm of the returned count.
    """
    n = len(xs)
    prev = -1
    off = 0
    while True:
        pos = start + off
        if pos >= n:
            hi = n - start
            break
        if ledger.less(xs[pos], key):
            prev = off
            off = off * 2 + 1
        else:
            hi = off
            break
    lo = prev + 1
    while lo < hi:
        mid = (lo + hi) // 2
        if ledger.less(xs[start + mid], key):
            lo = mid + 1
        else:
            hi = mid
    return lo


def exponential_merge(
    ledger: ComparisonLedger,
    a: Sequence[ElementId],
    b: Sequence[ElementId],
) -> list[ElementId]:
    """Merge two ascending sequences by alternating galloping runs.

    Ascending means the session's canonical strict order (payload, then
    element index), so equal payloads merge deterministically in index order.
    """
    out: list[ElementId] = []
    i = j = 0
    while i < len(a) and j < len(b):
        c = _gallop(ledger, b[j], a, i)
        out.extend(a[i : i + c])
        i += c
        if i >= len(a):
            break
        c = _gallop(ledger, a[i], b, j)
        out.extend(b[j : j + c])
        j += c
    out.extend(a[i:])
    out.extend(b[j:])
    return out


def mom_select(ledger: ComparisonLedger, ids: Sequence[ElementId], k: int) -> ElementId:
    """Deterministic rank-k selection (median of medians, group size 5)."""
    pool = list(ids)
    if not (0 <= k < len(pool)):
        raise RankOutOfRange(f"k={k} outside [0, {len(pool)})")
    while True:
        m = len(pool)
        if m <= 10:
            return network_sort(ledger, pool)[k]
        medians = []
        for g in range(0, m, 5):
            group = pool[g : g + 5]
            medians.append(network_sort(ledger, group)[(len(group) - 1) // 2])
        pivot = mom_select(ledger, medians, (len(medians) - 1) // 2)
        lower = []
        upper = []
        for x in pool:
            if x == pivot:
                continue
            if ledger.less(x, pivot):
                lower.append(x)
            else:
                upper.append(x)
        r = len(lower)
        if k < r:
            pool = lower
        elif k == r:
            return pivot
        else:
            pool = upper
            k -= r + 1


def small_median(ledger: ComparisonLedger, ids: Sequence[ElementId]) -> ElementId:
    """Lower median via a full network sort; per-element cost <= depth."""
    pool = list(ids)
    if not pool:
        raise EmptyInput("median of no elements")
    return network_sort(ledger, pool)[(len(pool) - 1) // 2]
