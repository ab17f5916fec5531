"""Ginibre sampling of random states and inertia censuses of their partial transposes."""
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .. import _core
from ..errors import BadRank
from ..ptrans import DEFAULT_ZERO_TOL, BipartiteDims, Inertia, classify
from ._parallel import run_ordered

CENSUS_CHUNK = 512


def task_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream for task ``index`` of a run seeded with ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(int(index),)))


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def ginibre(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def sample_state(dims: BipartiteDims, rank: int, seed=0) -> np.ndarray:
    """Trace-one ``G G^dag`` with ``G`` a complex Gaussian ``(m*n) x rank`` draw."""
    d = dims.order
    if not 1 <= rank <= d:
        raise BadRank(f"rank must lie in [1, {d}], got {rank}")
    g = ginibre(_rng(seed), (d, rank))
    m = g @ g.conj().T
    m = (m + m.conj().T) / 2
    return m / np.trace(m).real


def default_ranks(dims: BipartiteDims) -> Tuple[int, ...]:
    d = dims.order
    return tuple(r for r in (d, d - 1, d - 2) if r >= 1)


@dataclass
class Census:
    dims: BipartiteDims
    samples: int
    ranks: Tuple[int, ...]
    seed: int
    zero_tol: float
    counts: Dict[Inertia, int] = field(default_factory=dict)
    # smallest positive count seen among NPT samples (None if no NPT sample)
    min_npt_pos: Optional[int] = None

    @property
    def npt(self) -> int:
        return sum(c for k, c in self.counts.items() if k.neg >= 1)

    def rows(self):
        return [(k.neg, k.zero, k.pos, c) for k, c in sorted(self.counts.items())]


def _census_chunk(dims, ranks, seed, zero_tol, start, stop):
    rng = task_rng(seed, start // CENSUS_CHUNK)
    d = dims.order
    idx = np.arange(start, stop)
    sched = np.asarray(ranks)[idx % len(ranks)]
    counts = Counter()
    min_pos = None
    for r in ranks:
        k = int(np.sum(sched == r))
        if k == 0:
            continue
        g = ginibre(rng, (k, d, r))
        m = g @ g.conj().transpose(0, 2, 1)
        m /= np.trace(m, axis1=1, axis2=2).real[:, None, None]
        h = m.reshape(k, dims.m, dims.n, dims.m, dims.n).transpose(0, 3, 2, 1, 4).reshape(k, d, d)
        h = np.ascontiguousarray((h + h.conj().transpose(0, 2, 1)) / 2)
        w = _core.eigvalsh_batch(h)
        norms = np.linalg.norm(h, axis=(1, 2))
        for i in range(k):
            inn = classify(w[i], zero_tol * max(1.0, norms[i]))
            counts[inn] += 1
            if inn.neg >= 1 and (min_pos is None or inn.pos < min_pos):
                min_pos = inn.pos
    return counts, min_pos


def inertia_census(
    dims: BipartiteDims,
    samples: int,
    ranks: Optional[Sequence[int]] = None,
    seed: int = 0,
    zero_tol: float = DEFAULT_ZERO_TOL,
    threads: Optional[int] = None,
) -> Census:
    """Histogram of ``inertia(sample^Gamma)`` over random states.

    Sample ``i`` has rank ``ranks[i % len(ranks)]``. Samples are drawn in
    fixed chunks, each with its own stream, so the histogram does not depend
    on the thread count.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    ranks = tuple(int(r) for r in (ranks or default_ranks(dims)))
    for r in ranks:
        if not 1 <= r <= dims.order:
            raise BadRank(f"rank must lie in [1, {dims.order}], got {r}")
    bounds = [(s, min(s + CENSUS_CHUNK, samples)) for s in range(0, samples, CENSUS_CHUNK)]
    parts = run_ordered(
        lambda i: _census_chunk(dims, ranks, seed, zero_tol, *bounds[i]), len(bounds), threads=threads
    )
    total = Counter()
    min_pos = None
    for counts, mp in parts:
        total.update(counts)
        if mp is not None and (min_pos is None or mp < min_pos):
            min_pos = mp
    return Census(dims, samples, ranks, int(seed), zero_tol, dict(sorted(total.items())), min_pos)
