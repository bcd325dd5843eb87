"""Rank-k selection that protects the selected element.

The recursive half-sampling filter shrinks the candidate set around the rank-k
element before any full pass over the input, so the element eventually
returned participates in O(1) expected comparisons until the final backend
stage.  The final stage is pluggable; the default sorts the filtered set with
the comparator network.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ConfigError, RankOutOfRange
from .ledger import ComparisonLedger, ElementId
from .primitives import mom_select, network_sort

Backend = Callable[[ComparisonLedger, Sequence[ElementId], int], ElementId]

PHASE_PRE = "select:pre"  # sampling, recursive filtering, pivot choice
PHASE_FILTER = "select:filter"  # building {x <= z} over the whole input
PHASE_BACKEND = "select:backend"


@dataclass
class SampleChain:
    """Level sizes of the half-sampling recursion, outermost first."""

    level_sizes: list[int]
    back_sizes: list[int]


@dataclass
class CandidateSet:
    """Everything at or below the pivot z; contains the rank-k element."""

    ids: list[ElementId]
    z: ElementId
    chain: SampleChain


def _filter_indices(
    ledger: ComparisonLedger, pool_idx: np.ndarray, z_idx: int
) -> np.ndarray:
    """Counted filter {x in pool : x <= z} on raw indices; z is kept for free."""
    others = pool_idx[pool_idx != z_idx]
    if others.size == 0:
        return np.array([z_idx], dtype=np.intp)
    signs = ledger.compare_batch(others, np.full(others.size, z_idx, dtype=np.intp))
    keep = (signs < 0) | ((signs == 0) & (others < z_idx))
    return np.append(others[keep], z_idx)


def _filter_at_most(
    ledger: ComparisonLedger, pool: Sequence[ElementId], z: ElementId
) -> list[ElementId]:
    """Counted filter {x in pool : x <= z}; z itself is kept for free."""
    pool_idx = np.fromiter((x.index for x in pool), dtype=np.intp, count=len(pool))
    kept = _filter_indices(ledger, pool_idx, z.index)
    return [ElementId(int(i)) for i in kept]


def reset(
    ledger: ComparisonLedger,
    xs: Sequence[ElementId],
    k: int,
    rng: np.random.Generator,
) -> CandidateSet:
    """Recursive half-sampling filter around the rank-k element.

    Samples half (floor) of the pool per level until k >= |pool|/2 - 1, then
    filters back up through pivots, returning a candidate set of expected size
    about 2(k+1) that always contains the rank-k element of the input.
    """
    n = len(xs)
    if not (0 <= k < n):
        raise RankOutOfRange(f"k={k} outside [0, {n})")
    # levels are raw index arrays; ElementIds are materialized only for the
    # small back-sets handed to mom_select
    levels = [np.fromiter((x.index for x in xs), dtype=np.intp, count=n)]
    while len(levels[-1]) > 2 * k + 2:  # recurse until k >= |A|/2 - 1
        cur = levels[-1]
        levels.append(rng.permutation(cur)[: len(cur) // 2])
    back = levels[-1]
    back_sizes = [len(back)]
    z_idx = int(back[0])
    for level in reversed(levels):
        back_ids = [ElementId(int(i)) for i in back]
        z_idx = mom_select(ledger, back_ids, min(k, len(back_ids) - 1)).index
        # threshold filters get their own phase tag: they are candidate-set
        # construction, same role as building the final filtered set
        with ledger.in_phase(PHASE_FILTER):
            back = _filter_indices(ledger, level, z_idx)
        back_sizes.append(len(back))
    chain = SampleChain(level_sizes=[len(l) for l in levels], back_sizes=back_sizes)
    return CandidateSet(
        ids=[ElementId(int(i)) for i in back], z=ElementId(z_idx), chain=chain
    )


def backend_network(ledger: ComparisonLedger, ids: Sequence[ElementId], k: int) -> ElementId:
    return network_sort(ledger, list(ids))[k]


def backend_mom(ledger: ComparisonLedger, ids: Sequence[ElementId], k: int) -> ElementId:
    return mom_select(ledger, list(ids), k)

BACKENDS: dict[str, Backend] = {
    "network": backend_network,
    "mom": backend_mom,
}


def select_kth(
    ledger: ComparisonLedger,
    xs: Sequence[ElementId],
    k: int,
    rng: np.random.Generator,
    backend: Backend = backend_network,
    epsilon: float = 0.01,
    info: Optional[dict] = None,
) -> ElementId:
    """Return the rank-k element of xs.

    For k <= n^epsilon, a uniform sample of size floor(n/max(k,1)) is filtered
    down to a pivot z, and only {x <= z} reaches the backend; otherwise the
    backend runs on the whole input.  Comparison counts are tagged with
    pre-filter and backend phases.  If `info` is given it is filled with the
    branch taken and intermediate set sizes.
    """
    pool = list(xs)
    n = len(pool)
    if not (0 <= k < n):
        raise RankOutOfRange(f"k={k} outside [0, {n})")
    if n == 1:
        if info is not None:
            info.update(branch="trivial", sample_size=0, candidate_size=0, filtered_size=1)
        return pool[0]
    if k <= n**epsilon:
        with ledger.in_phase(PHASE_PRE):
            size = max(1, n // max(k, 1))
            picks = rng.permutation(n)[:size]
            sample = [pool[int(i)] for i in picks]
            cand = reset(ledger, sample, min(k, len(sample) - 1), rng)
            z = mom_select(ledger, cand.ids, min(k, len(cand.ids) - 1))
        with ledger.in_phase(PHASE_FILTER):
            filtered = _filter_at_most(ledger, pool, z)
        if info is not None:
            info.update(
                branch="sampled",
                sample_size=size,
                candidate_size=len(cand.ids),
                filtered_size=len(filtered),
            )
        with ledger.in_phase(PHASE_BACKEND):
            return backend(ledger, filtered, k)
    if info is not None:
        info.update(branch="direct", sample_size=0, candidate_size=0, filtered_size=n)
    with ledger.in_phase(PHASE_BACKEND):
        return backend(ledger, pool, k)


@dataclass
class SelectionStats:
    trials: int
    pre_mean: float
    pre_max: int
    backend_mean: float
    backend_max: int


def selected_fragility_report(rows: Sequence[dict]) -> SelectionStats:
    """Aggregate per-trial comparison loads on the returned element.

    Each row carries 'fragility_of_selected_pre' and
    'fragility_of_selected_backend'.
    """
    if len(rows) < 100:
        raise ConfigError(f"need >= 100 trials, got {len(rows)}")
    pre = [r["fragility_of_selected_pre"] for r in rows]
    backend = [r["fragility_of_selected_backend"] for r in rows]
    return SelectionStats(
        trials=len(rows),
        pre_mean=sum(pre) / len(pre),
        pre_max=max(pre),
        backend_mean=sum(backend) / len(backend),
        backend_max=max(backend),
    )
