"""Agent decision rules: private signals, majority vote, exact Bayes.

The Bayesian model enumerates prefix signal vectors, so it is capped at
MAX_BAYES_VERTICES vertices; beyond that only the majority model is
offered (no sampled approximation).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .graph import Graph
from .ordering import Ordering

__all__ = [
    "MAJORITY",
    "BAYESIAN",
    "MAX_BAYES_VERTICES",
    "ModelConfig",
    "SignalVector",
    "ActionVector",
    "BayesTable",
    "BayesCapacityError",
    "sample_signals",
    "majority_decide",
    "build_bayes_table",
    "run_cascade",
]

MAJORITY = "majority"
BAYESIAN = "bayesian"

# Table construction is O(n * 2^n); past this it stops being interactive.
MAX_BAYES_VERTICES = 20


class BayesCapacityError(ValueError):
    """Graph too large for exact Bayesian enumeration."""


def _check_accuracy(q: float) -> None:
    if not 0.5 < q < 1.0:
        raise ValueError(f"signal accuracy q must lie in (1/2, 1), got {q}")


@dataclass(frozen=True)
class ModelConfig:
    """Decision model selector plus the shared private-signal accuracy."""

    model: str
    q: float

    def __post_init__(self):
        if self.model not in (MAJORITY, BAYESIAN):
            raise ValueError(f"unknown model {self.model!r}")
        _check_accuracy(self.q)


@dataclass(frozen=True)
class SignalVector:
    """Ground truth plus one private signal per vertex (vertex-indexed)."""

    theta: int
    signals: tuple[int, ...]


@dataclass(frozen=True)
class ActionVector:
    """Published actions, indexed by decision rank."""

    actions: tuple[int, ...]


def sample_signals(
    n: int, q: float, theta: int, rng: np.random.Generator
) -> SignalVector:
    """Independent private signals: each matches theta with probability q."""
    _check_accuracy(q)
    if theta not in (0, 1):
        raise ValueError("theta must be a bit")
    match = rng.random(n) < q
    signals = np.where(match, theta, 1 - theta)
    return SignalVector(theta=theta, signals=tuple(int(s) for s in signals))


def majority_decide(own_signal: int, neighbor_actions: Sequence[int]) -> int:
    """Majority over the agent's own signal and its visible neighbor actions;
    ties follow the own signal."""
    ones = own_signal + sum(neighbor_actions)
    total = 1 + len(neighbor_actions)
    if 2 * ones > total:
        return 1
    if 2 * ones < total:
        return 0
    return own_signal


def _earlier_neighbors(g: Graph, sigma: Ordering) -> list[list[int]]:
    """For each rank r, the ranks (< r) of the decider's visible neighbors."""
    pos = sigma.position
    out: list[list[int]] = []
    for r, v in enumerate(sigma.sequence):
        out.append(sorted(pos[u] for u in g.adj[v] if pos[u] < r))
    return out


@dataclass(frozen=True)
class BayesTable:
    """Exact Bayesian actions, one dense lookup per rank.

    rank_actions[r] maps every prefix signal vector (bit j = signal of the
    rank-j decider, r+1 bits total) to the rank-r agent's action. Built
    inductively: an agent's evidence is its own signal plus the actions of
    its earlier neighbors, and its action maximizes the posterior over the
    ground truth, enumerating all prefix signal vectors consistent with
    that evidence. Posterior ties follow the own signal, which keeps the
    table symmetric under complementing every signal.
    """

    n: int
    q: float
    sequence: tuple[int, ...]
    rank_actions: tuple[np.ndarray, ...] = field(repr=False)

    def matches(self, g: Graph, sigma: Ordering, q: float) -> bool:
        return self.n == g.n and self.sequence == sigma.sequence and self.q == q

    def table_bytes(self) -> int:
        return sum(a.nbytes for a in self.rank_actions)


def _popcounts(m: int) -> np.ndarray:
    """Popcount of every integer in [0, 2^m)."""
    pc = np.zeros(1 << m, dtype=np.int64)
    for b in range(m):
        pc[1 << b : 1 << (b + 1)] = pc[: 1 << b] + 1
    return pc


def build_bayes_table(
    g: Graph, sigma: Ordering, q: float, max_n: int = MAX_BAYES_VERTICES
) -> BayesTable:
    """Enumerate exact Bayesian play for every rank of (g, sigma, q).

    For the rank-r agent, group the 2^(r+1) prefix signal vectors by the
    evidence they induce (earlier-neighbor actions, from the already-built
    ranks, plus the own signal). The score of a group under truth 1 is the
    summed likelihood of its vectors; by signal symmetry the score under
    truth 0 equals the truth-1 score of the bit-complemented group, so a
    single score array decides every comparison. Summing likelihood terms
    in popcount order makes genuinely symmetric evidence tie bit-exactly,
    and ties follow the own signal.
    """
    _check_accuracy(q)
    if g.n > max_n:
        raise BayesCapacityError(
            f"exact Bayesian model capped at {max_n} vertices, graph has {g.n}"
        )
    if len(sigma) != g.n:
        raise ValueError("ordering does not match graph size")

    earlier = _earlier_neighbors(g, sigma)
    tables: list[np.ndarray] = []
    for r in range(g.n):
        m = r + 1
        size = 1 << m
        prefixes = np.arange(size, dtype=np.int64)
        own = (prefixes >> r) & 1

        nbr_ranks = earlier[r]
        d = len(nbr_ranks)
        key = own << d
        for t, j in enumerate(nbr_ranks):
            key = key | (tables[j][prefixes & ((1 << (j + 1)) - 1)].astype(np.int64) << t)

        width = 1 << (d + 1)
        pc = _popcounts(m)
        score1 = np.zeros(width, dtype=np.float64)
        for c in range(m + 1):
            sel = key[pc == c]
            if sel.size:
                term = q**c * (1.0 - q) ** (m - c)
                score1 += np.bincount(sel, minlength=width) * term

        key_c = key ^ (width - 1)
        s_here = score1[key]
        s_flip = score1[key_c]
        actions = np.where(s_here > s_flip, 1, np.where(s_here < s_flip, 0, own))
        tables.append(actions.astype(np.uint8))

    return BayesTable(
        n=g.n, q=q, sequence=sigma.sequence, rank_actions=tuple(tables)
    )


def run_cascade(
    g: Graph,
    sigma: Ordering,
    model: ModelConfig,
    sv: SignalVector,
    table: Optional[BayesTable] = None,
) -> ActionVector:
    """Play one full cascade: rank r sees exactly the actions of its
    earlier neighbors plus its own signal. Deterministic given sv."""
    if len(sv.signals) != g.n:
        raise ValueError("signal vector does not match graph size")
    pos = sigma.position
    actions = [0] * g.n

    if model.model == MAJORITY:
        for r, v in enumerate(sigma.sequence):
            visible = [actions[pos[u]] for u in g.adj[v] if pos[u] < r]
            actions[r] = majority_decide(sv.signals[v], visible)
    else:
        if table is None or not table.matches(g, sigma, model.q):
            raise ValueError("Bayesian cascade needs a matching BayesTable")
        prefix = 0
        for r, v in enumerate(sigma.sequence):
            prefix |= sv.signals[v] << r
            actions[r] = int(table.rank_actions[r][prefix])
    return ActionVector(actions=tuple(actions))
