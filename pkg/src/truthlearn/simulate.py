"""Learning-rate estimation: Monte Carlo trials and exact enumeration.

Reproducibility contract: a report depends only on (graph, strategy,
model, trials, seed, resample_ordering), never on worker count or chunk
boundaries. Fixed orderings use counter-based Philox blocks (one aligned
block range per trial); resampled orderings derive one child stream per
trial from the master seed.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from .decision import (
    BAYESIAN,
    MAJORITY,
    MAX_BAYES_VERTICES,
    ActionVector,
    BayesCapacityError,
    BayesTable,
    ModelConfig,
    SignalVector,
    build_bayes_table,
    run_cascade,
    sample_signals,
)
from .graph import Graph
from .ordering import Ordering

__all__ = [
    "TrialOutcome",
    "LearningReport",
    "OrderingStrategy",
    "estimate_learning",
    "exact_learning_rate",
    "cascade_stats",
]

OrderingStrategy = Union[Ordering, Callable[[Graph, np.random.Generator], Ordering]]

_QUANTILE_KEYS = ("min", "q25", "median", "q75", "max")
_QUANTILE_LEVELS = (0.0, 0.25, 0.5, 0.75, 1.0)

# Philox yields 4 uint64 words per counter increment; each trial consumes
# an aligned block range so chunk boundaries cannot shift any trial's draw.
_WORDS_PER_BLOCK = 4


@dataclass(frozen=True)
class TrialOutcome:
    """One sampled cascade."""

    theta: int
    signals: SignalVector
    actions: ActionVector
    correct: tuple[int, ...]  # rank-indexed, aligned with actions
    fraction_correct: float


@dataclass(frozen=True, eq=False)
class LearningReport:
    """Per-node and network learning-rate estimates with provenance."""

    per_node_rate: np.ndarray = field(repr=False)
    network_rate: float
    std_error: float
    distribution: dict[str, float]
    trials: int
    seed: Optional[int]
    resample_ordering: bool
    trial_fractions: Optional[np.ndarray] = field(default=None, repr=False)
    outcomes: Optional[tuple[TrialOutcome, ...]] = field(default=None, repr=False)


def _earlier_rank_lists(g: Graph, sigma: Ordering) -> list[np.ndarray]:
    pos = sigma.position
    return [
        np.array(sorted(pos[u] for u in g.adj[v] if pos[u] < r), dtype=np.int64)
        for r, v in enumerate(sigma.sequence)
    ]


def _vector_cascade(
    g: Graph,
    sigma: Ordering,
    model: ModelConfig,
    signals: np.ndarray,
    table: Optional[BayesTable] = None,
) -> np.ndarray:
    """Run many cascades at once: signals is (T, n) vertex-indexed bits;
    returns (T, n) rank-indexed actions. Same semantics as run_cascade."""
    own = signals[:, list(sigma.sequence)].astype(np.int8)
    t = own.shape[0]
    actions = np.zeros_like(own)
    if model.model == MAJORITY:
        earlier = _earlier_rank_lists(g, sigma)
        for r in range(g.n):
            nbrs = earlier[r]
            if nbrs.size == 0:
                actions[:, r] = own[:, r]
                continue
            ones = actions[:, nbrs].sum(axis=1, dtype=np.int32) + own[:, r]
            total = nbrs.size + 1
            up = 2 * ones > total
            down = 2 * ones < total
            actions[:, r] = np.where(up, 1, np.where(down, 0, own[:, r]))
    else:
        if table is None or not table.matches(g, sigma, model.q):
            raise ValueError("Bayesian cascade needs a matching BayesTable")
        prefix = np.zeros(t, dtype=np.int64)
        for r in range(g.n):
            prefix |= own[:, r].astype(np.int64) << r
            actions[:, r] = table.rank_actions[r][prefix]
    return actions


def _trial_block_draws(seed: int, n: int, start: int, count: int) -> np.ndarray:
    """uint64 draws for trials [start, start+count), (count, words) shaped.

    Trial t owns Philox blocks [t*B, (t+1)*B), B = ceil((n+1)/4), so any
    chunking reproduces the same per-trial words.
    """
    words_needed = n + 1
    blocks_per_trial = -(-words_needed // _WORDS_PER_BLOCK)
    bitgen = np.random.Philox(key=seed, counter=start * blocks_per_trial)
    raw = bitgen.random_raw(_WORDS_PER_BLOCK * blocks_per_trial * count)
    return raw.reshape(count, _WORDS_PER_BLOCK * blocks_per_trial)


def _uniform01(words: np.ndarray) -> np.ndarray:
    return (words >> np.uint64(11)).astype(np.float64) * (2.0**-53)


def _fixed_sigma_chunk(args):
    """Worker: trials [start, start+count) for one fixed ordering.

    Returns (per-vertex correct counts, per-trial fractions, outcomes).
    """
    g, sigma, model, table, seed, start, count, want_outcomes = args
    raw = _trial_block_draws(seed, g.n, start, count)
    theta = (raw[:, 0] & np.uint64(1)).astype(np.int8)
    match = _uniform01(raw[:, 1 : g.n + 1]) < model.q
    signals = np.where(match, theta[:, None], 1 - theta[:, None]).astype(np.int8)
    actions = _vector_cascade(g, sigma, model, signals, table)
    correct = actions == theta[:, None]
    counts_by_rank = correct.sum(axis=0, dtype=np.int64)
    counts = np.zeros(g.n, dtype=np.int64)
    counts[list(sigma.sequence)] = counts_by_rank
    fractions = correct.mean(axis=1)
    outcomes: list[TrialOutcome] = []
    if want_outcomes:
        for i in range(count):
            outcomes.append(
                TrialOutcome(
                    theta=int(theta[i]),
                    signals=SignalVector(
                        theta=int(theta[i]),
                        signals=tuple(int(s) for s in signals[i]),
                    ),
                    actions=ActionVector(tuple(int(x) for x in actions[i])),
                    correct=tuple(int(c) for c in correct[i]),
                    fraction_correct=float(fractions[i]),
                )
            )
    return counts, fractions, outcomes


def _per_trial_chunk(args):
    """Worker: trials [start, start+count) with a fresh ordering per trial."""
    g, strategy, model, seed, start, count, want_outcomes = args
    counts = np.zeros(g.n, dtype=np.int64)
    fractions = np.zeros(count, dtype=np.float64)
    outcomes: list[TrialOutcome] = []
    for i in range(count):
        t = start + i
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(t,)))
        sigma = strategy(g, rng)
        theta = int(rng.integers(2))
        sv = sample_signals(g.n, model.q, theta, rng)
        table = (
            build_bayes_table(g, sigma, model.q) if model.model == BAYESIAN else None
        )
        av = run_cascade(g, sigma, model, sv, table)
        correct = tuple(int(a == theta) for a in av.actions)
        for r, v in enumerate(sigma.sequence):
            counts[v] += correct[r]
        frac = sum(correct) / g.n
        fractions[i] = frac
        if want_outcomes:
            outcomes.append(
                TrialOutcome(
                    theta=theta,
                    signals=sv,
                    actions=av,
                    correct=correct,
                    fraction_correct=frac,
                )
            )
    return counts, fractions, outcomes


def _chunk_ranges(trials: int, pieces: int) -> list[tuple[int, int]]:
    pieces = max(1, min(pieces, trials))
    base, extra = divmod(trials, pieces)
    ranges = []
    start = 0
    for i in range(pieces):
        count = base + (1 if i < extra else 0)
        ranges.append((start, count))
        start += count
    return ranges


def _quantile_dict(fractions: np.ndarray) -> dict[str, float]:
    qs = np.quantile(fractions, _QUANTILE_LEVELS)
    return {k: float(v) for k, v in zip(_QUANTILE_KEYS, qs)}


def estimate_learning(
    g: Graph,
    ordering_strategy: OrderingStrategy,
    model: ModelConfig,
    trials: int,
    seed: int,
    resample_ordering: Optional[bool] = None,
    workers: int = 1,
    keep_outcomes: bool = False,
) -> LearningReport:
    """Monte Carlo learning-rate estimate over independent trials.

    Each trial draws theta uniformly, samples private signals, and plays
    one cascade. ``ordering_strategy`` is either a fixed Ordering or a
    callable ``(graph, rng) -> Ordering``; with ``resample_ordering`` a
    callable strategy is re-invoked on every trial (the default for
    callables), otherwise one ordering is built once from the master seed.
    Reports are bit-identical across worker counts for fixed inputs.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if seed < 0:
        raise ValueError("seed must be a nonnegative integer")
    is_fixed = isinstance(ordering_strategy, Ordering)
    if resample_ordering is None:
        resample_ordering = not is_fixed
    if resample_ordering and is_fixed:
        raise ValueError("cannot resample a fixed Ordering; pass a strategy callable")

    if not resample_ordering:
        if is_fixed:
            sigma = ordering_strategy
        else:
            setup_rng = np.random.default_rng(np.random.SeedSequence(seed))
            sigma = ordering_strategy(g, setup_rng)
        if len(sigma) != g.n:
            raise ValueError("ordering does not match graph size")
        table = (
            build_bayes_table(g, sigma, model.q) if model.model == BAYESIAN else None
        )
        jobs = [
            (g, sigma, model, table, seed, start, count, keep_outcomes)
            for start, count in _chunk_ranges(trials, workers)
        ]
        results = _run_jobs(_fixed_sigma_chunk, jobs, workers)
    else:
        jobs = [
            (g, ordering_strategy, model, seed, start, count, keep_outcomes)
            for start, count in _chunk_ranges(trials, workers)
        ]
        results = _run_jobs(_per_trial_chunk, jobs, workers)

    counts = np.zeros(g.n, dtype=np.int64)
    fractions = np.concatenate([r[1] for r in results])
    for r in results:
        counts += r[0]
    outcomes = tuple(o for r in results for o in r[2]) if keep_outcomes else None

    per_node = counts / trials
    std_error = (
        float(fractions.std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    )
    return LearningReport(
        per_node_rate=per_node,
        network_rate=float(per_node.mean()),
        std_error=std_error,
        distribution=_quantile_dict(fractions),
        trials=trials,
        seed=seed,
        resample_ordering=resample_ordering,
        trial_fractions=fractions,
        outcomes=outcomes,
    )


def _run_jobs(fn, jobs, workers: int):
    if workers <= 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


def exact_learning_rate(
    g: Graph, sigma: Ordering, model: ModelConfig
) -> LearningReport:
    """Exact learning rates by full enumeration of the probability space:
    every signal assignment and both ground-truth values, weighted by
    likelihood. Cost O(2^n); capped like the Bayesian table."""
    if g.n > MAX_BAYES_VERTICES:
        raise BayesCapacityError(
            f"exact enumeration capped at {MAX_BAYES_VERTICES} vertices, graph has {g.n}"
        )
    if len(sigma) != g.n:
        raise ValueError("ordering does not match graph size")
    n = g.n
    q = model.q
    table = build_bayes_table(g, sigma, q) if model.model == BAYESIAN else None

    codes = np.arange(1 << n, dtype=np.int64)
    signals = ((codes[:, None] >> np.arange(n)) & 1).astype(np.int8)
    actions = _vector_cascade(g, sigma, model, signals, table)

    ones = signals.sum(axis=1, dtype=np.int64)
    p_theta1 = q**ones * (1.0 - q) ** (n - ones)
    p_theta0 = q ** (n - ones) * (1.0 - q) ** ones

    # l(rank r) = 1/2 * sum_sv [ P(sv|1)*[a_r=1] + P(sv|0)*[a_r=0] ]
    a = actions.astype(np.float64)
    rate_by_rank = 0.5 * (p_theta1 @ a + p_theta0 @ (1.0 - a))
    per_node = np.zeros(n, dtype=np.float64)
    per_node[list(sigma.sequence)] = rate_by_rank

    frac1 = a.mean(axis=1)
    values = np.concatenate([frac1, 1.0 - frac1])
    weights = np.concatenate([0.5 * p_theta1, 0.5 * p_theta0])
    dist = _weighted_quantiles(values, weights)

    return LearningReport(
        per_node_rate=per_node,
        network_rate=float(per_node.mean()),
        std_error=0.0,
        distribution=dist,
        trials=0,
        seed=None,
        resample_ordering=False,
    )


def _weighted_quantiles(values: np.ndarray, weights: np.ndarray) -> dict[str, float]:
    order = np.argsort(values, kind="stable")
    v = values[order]
    cum = np.cumsum(weights[order])
    cum /= cum[-1]
    out = {}
    for key, level in zip(_QUANTILE_KEYS, _QUANTILE_LEVELS):
        idx = int(np.searchsorted(cum, level, side="left"))
        idx = min(idx, len(v) - 1)
        out[key] = float(v[idx])
    return out


def cascade_stats(
    outcomes: Union[Sequence[TrialOutcome], Sequence[float], np.ndarray],
    threshold: float,
) -> tuple[float, float]:
    """(herding frequency, wrong-cascade frequency) at a consensus threshold.

    A trial herds when its correct fraction is >= threshold or
    <= 1 - threshold; it is a wrong cascade in the latter case. Accepts
    TrialOutcome sequences or raw correct-fraction values.
    """
    if not 0.5 < threshold <= 1.0:
        raise ValueError("threshold must lie in (0.5, 1]")
    fractions = np.array(
        [
            o.fraction_correct if isinstance(o, TrialOutcome) else float(o)
            for o in outcomes
        ],
        dtype=np.float64,
    )
    if fractions.size == 0:
        raise ValueError("no outcomes given")
    herd = np.mean((fractions >= threshold) | (fractions <= 1.0 - threshold))
    wrong = np.mean(fractions <= 1.0 - threshold)
    return float(herd), float(wrong)
