"""Decision orderings: the sequence in which agents act.

Constructive orderings (aggregator, grid log-log) realize the
guinea-pig-then-propagate scheme; heuristic orderings (two neighbors,
high value) approximate it without global search; random, arrival,
bottom-up and spiral orderings cover the baseline protocols.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Optional

import numpy as np

from .graph import Graph, greedy_independent_neighbors

__all__ = [
    "Ordering",
    "OrderingCertificate",
    "random_ordering",
    "arrival_ordering",
    "bottom_up_ordering",
    "spiral_ordering",
    "grid_loglog_ordering",
    "two_neighbors_ordering",
    "two_neighbors_high_value_ordering",
    "aggregator_ordering",
]


@dataclass(frozen=True)
class Ordering:
    """A permutation of vertex indices; sequence[r] decides at rank r."""

    sequence: tuple[int, ...]
    meta: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.sequence)
        if sorted(self.sequence) != list(range(n)):
            raise ValueError("sequence is not a permutation of [0, n)")

    @cached_property
    def position(self) -> tuple[int, ...]:
        """Inverse map: position[v] is the rank at which vertex v decides."""
        pos = [0] * len(self.sequence)
        for r, v in enumerate(self.sequence):
            pos[v] = r
        return tuple(pos)

    def __len__(self) -> int:
        return len(self.sequence)

    def to_line(self) -> str:
        return " ".join(str(v) for v in self.sequence)

    @staticmethod
    def from_line(line: str) -> "Ordering":
        return Ordering(tuple(int(t) for t in line.split()))


@dataclass(frozen=True)
class OrderingCertificate:
    """Witness for the aggregator construction: hub v, guinea-pig set S,
    and how much of the graph stays reachable from v once S is removed."""

    aggregator: int
    guinea_pigs: tuple[int, ...]
    coverage: int


def random_ordering(g: Graph, rng: np.random.Generator) -> Ordering:
    """Uniform permutation (unbiased shuffle)."""
    return Ordering(tuple(int(v) for v in rng.permutation(g.n)))


def arrival_ordering(g: Graph) -> Ordering:
    """Vertex insertion order of a preferential-attachment graph."""
    if g.family != "preferential_attachment":
        raise ValueError("arrival ordering needs a graph with arrival metadata")
    return Ordering(tuple(range(g.n)))


def bottom_up_ordering(g: Graph) -> Ordering:
    """Butterfly ranks in increasing depth, ascending position within a rank."""
    if g.family != "butterfly":
        raise ValueError("bottom-up ordering needs a butterfly graph")
    # Vertex index is rank-major, so the identity sequence is rank-by-rank.
    return Ordering(tuple(range(g.n)))


def _grid_side(g: Graph) -> int:
    if g.family != "grid":
        raise ValueError("this ordering needs a grid graph")
    return int(g.params["side"])


def spiral_ordering(g: Graph) -> Ordering:
    """Peel boundary layers clockwise, outermost first.

    Each layer starts at its top-left corner: across the top row, down the
    right column, back along the bottom row, up the left column.
    """
    side = _grid_side(g)

    def idx(i: int, j: int) -> int:  # 1-based lattice point
        return (i - 1) * side + (j - 1)

    seq: list[int] = []
    for layer in range((side + 1) // 2):
        lo = layer + 1
        hi = side - layer
        if lo == hi:
            seq.append(idx(lo, lo))
            continue
        seq.extend(idx(lo, j) for j in range(lo, hi + 1))
        seq.extend(idx(i, hi) for i in range(lo + 1, hi + 1))
        seq.extend(idx(hi, j) for j in range(hi - 1, lo - 1, -1))
        seq.extend(idx(i, lo) for i in range(hi - 1, lo, -1))
    return Ordering(tuple(seq))


def grid_loglog_aggregation_sites(side: int) -> list[tuple[int, list[tuple[int, int]]]]:
    """Row-wise aggregation sequences in the grid's corner region.

    For each row a = 1, 2, ... with 2^(a+1) <= floor(log2(n)), and each
    h in [1, 2^kk] where kk = max{x >= 0 : 2^(x+1+a) <= floor(log2(n))},
    the sequence around the midpoint m = (2h-1)*2^a is

        (m - 2^(a-1), a), ..., (m-1, a), (m + 2^(a-1), a), ..., (m+1, a), (m, a)

    walked inward from both flanks so (m, a) aggregates two independently
    built signals. Returns [(a, [(x, y), ...]), ...] in emission order;
    coordinates are 1-based lattice points. Sequences are pairwise disjoint
    and confined to x <= log2(n), y <= loglog-scale rows.
    """
    n = side * side
    log_n = int(np.floor(np.log2(n)))
    sites: list[tuple[int, list[tuple[int, int]]]] = []
    a = 1
    while 2 ** (a + 1) <= log_n:
        kk = 0
        while 2 ** (kk + 2 + a) <= log_n:
            kk += 1
        half = 2 ** (a - 1)
        for h in range(1, 2**kk + 1):
            m = (2 * h - 1) * 2**a
            seq = [(x, a) for x in range(m - half, m)]
            seq += [(x, a) for x in range(m + half, m, -1)]
            seq.append((m, a))
            sites.append((a, seq))
        a += 1
    return sites


def grid_loglog_ordering(g: Graph) -> Ordering:
    """Aggregate a high-quality signal in a logarithmic corner region of the
    grid, then flood it outward.

    Step 1 emits the row-wise aggregation sequences (increasing row a);
    step 2 removes the step-1 vertices except the final one (the best
    aggregate, alpha) and breadth-first traverses the remainder from alpha;
    any unreached vertices are appended in ascending index and flagged.
    Grids too small for step 1 fall back to the spiral ordering with
    ``meta["fallback"] == "spiral"``.
    """
    side = _grid_side(g)
    sites = grid_loglog_aggregation_sites(side)
    if not sites:
        base = spiral_ordering(g)
        return Ordering(base.sequence, meta={"fallback": "spiral"})

    def idx(x: int, y: int) -> int:  # (x, y): column x, row y, 1-based
        return (y - 1) * side + (x - 1)

    step1: list[int] = []
    for _, seq in sites:
        step1.extend(idx(x, y) for x, y in seq)
    alpha = step1[-1]

    placed = [False] * g.n
    for v in step1:
        placed[v] = True
    order = list(step1)
    queue = deque([alpha])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if not placed[w]:
                placed[w] = True
                order.append(w)
                queue.append(w)
    leftovers = [v for v in range(g.n) if not placed[v]]
    order.extend(leftovers)
    return Ordering(
        tuple(order),
        meta={
            "aggregation_vertices": tuple(step1),
            "alpha": alpha,
            "leftovers": tuple(leftovers),
        },
    )


def two_neighbors_ordering(g: Graph, rng: np.random.Generator) -> Ordering:
    """Seed a random vertex behind its neighborhood, then let every vertex
    with two or more already-decided neighbors follow (FIFO frontier).
    When the frontier stalls, reseed among undecided vertices.
    """
    placed = [False] * g.n
    count = [0] * g.n  # decided neighbors
    enqueued = [False] * g.n
    queue: deque[int] = deque()
    order: list[int] = []
    seeded: list[int] = []
    restarts = -1  # first seed phase is not a restart

    def place(v: int) -> None:
        placed[v] = True
        order.append(v)
        for u in g.adj[v]:
            if not placed[u]:
                count[u] += 1
                if count[u] >= 2 and not enqueued[u]:
                    enqueued[u] = True
                    queue.append(u)

    while len(order) < g.n:
        undecided = [v for v in range(g.n) if not placed[v]]
        seed = undecided[int(rng.integers(len(undecided)))]
        restarts += 1
        for u in g.adj[seed]:
            if not placed[u]:
                seeded.append(u)
                place(u)
        if not placed[seed]:
            seeded.append(seed)
            place(seed)
        while queue:
            v = queue.popleft()
            if not placed[v]:
                place(v)

    return Ordering(
        tuple(order),
        meta={"seeded": tuple(seeded), "restarts": restarts},
    )


def two_neighbors_high_value_ordering(
    g: Graph, m: int, rng: np.random.Generator
) -> Ordering:
    """Guinea pigs + aggregating hubs, then frontier growth gated on
    high-value majorities.

    Each of the two highest-degree hubs (ties to the lower index) first
    receives a greedy independent set of guinea pigs: undecided neighbors
    that are not the other hub and that have no decided neighbor yet, so
    their actions stay independent. The hub then decides and is labeled
    high-value. The frontier then grows in synchronous rounds: every
    vertex with >= 2 decided neighbors, at least half of them high-value,
    decides (ascending index within a round) and inherits the label.
    Requiring a strict majority instead starves the frontier on hub-and-
    spoke graphs, where early deciders sit next to one hub and one guinea
    pig. When no vertex qualifies, the remainder is appended in uniform
    random order and flagged.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    degs = g.degrees()
    hubs = sorted(range(g.n), key=lambda v: (-degs[v], v))[:2]

    placed = [False] * g.n
    n_dec = [0] * g.n  # decided neighbors
    n_hv = [0] * g.n  # decided high-value neighbors
    order: list[int] = []
    guinea_pigs: list[int] = []

    def place(v: int, hv: bool) -> None:
        placed[v] = True
        order.append(v)
        for u in g.adj[v]:
            if not placed[u]:
                n_dec[u] += 1
                if hv:
                    n_hv[u] += 1

    hub_set = set(hubs)
    for hub in hubs:
        if placed[hub]:
            continue
        cap = min(m, degs[hub] - 1)
        chosen: list[int] = []
        for u in g.adj[hub]:
            if len(chosen) >= cap:
                break
            if placed[u] or u in hub_set or n_dec[u] > 0:
                continue
            if all(not g.has_edge(u, w) for w in chosen):
                chosen.append(u)
        for u in chosen:
            guinea_pigs.append(u)
            place(u, hv=False)
        place(hub, hv=True)

    while True:
        wave = [
            v
            for v in range(g.n)
            if not placed[v] and n_dec[v] >= 2 and 2 * n_hv[v] >= n_dec[v]
        ]
        if not wave:
            break
        for v in wave:
            place(v, hv=True)

    remaining = [v for v in range(g.n) if not placed[v]]
    tail = [remaining[int(i)] for i in rng.permutation(len(remaining))]
    order.extend(tail)
    return Ordering(
        tuple(order),
        meta={
            "hubs": tuple(hubs),
            "guinea_pigs": tuple(guinea_pigs),
            "fallback": tuple(tail),
        },
    )


def aggregator_ordering(
    g: Graph,
    m_target: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
) -> tuple[Ordering, OrderingCertificate]:
    """Independent guinea pigs first, then the maximum-degree hub, then a
    traversal of the graph minus the guinea pigs starting from the hub.

    ``m_target`` defaults to ceil(sqrt(deg(hub))): large enough to sharpen
    the hub's aggregate, small enough that greedy independence usually
    reaches it. The traversal pops the frontier vertex with the most
    already-decided neighbors (ties to the lower index): under majority
    voting a single decided neighbor conveys nothing (the two-vote tie
    falls back to the own signal), so maximizing vote counts is what
    actually carries the hub's aggregate outward; a plain breadth-first
    order measurably loses most of the ordering's edge. The certificate
    reports how many vertices stay reachable from the hub once the guinea
    pigs are removed; the construction only propagates well when that
    coverage is nearly everything. ``rng`` is accepted for interface
    uniformity; every step is deterministic.
    """
    if g.n < 1:
        raise ValueError("graph must be nonempty")
    degs = g.degrees()
    v = min(range(g.n), key=lambda u: (-degs[u], u))
    if m_target is None:
        m_target = int(np.ceil(np.sqrt(degs[v]))) if degs[v] > 0 else 0
    s = greedy_independent_neighbors(g, v, m_target)
    s_set = set(s)

    placed = [False] * g.n
    for u in s:
        placed[u] = True
    order = sorted(s)
    order.append(v)
    placed[v] = True
    coverage = 1

    # Traversal expands only along G - S edges so coverage equals the size
    # of v's component there; priority counts decided traversal neighbors.
    decided_nbrs = [0] * g.n
    heap: list[tuple[int, int]] = []

    def expand(u: int) -> None:
        for x in g.adj[u]:
            if not placed[x] and x not in s_set:
                decided_nbrs[x] += 1
                heapq.heappush(heap, (-decided_nbrs[x], x))

    expand(v)
    while heap:
        neg, w = heapq.heappop(heap)
        if placed[w] or -neg != decided_nbrs[w]:
            continue  # stale entry; a fresher one is in the heap
        placed[w] = True
        coverage += 1
        order.append(w)
        expand(w)
    order.extend(u for u in range(g.n) if not placed[u])
    cert = OrderingCertificate(aggregator=v, guinea_pigs=tuple(sorted(s)), coverage=coverage)
    return Ordering(tuple(order), meta={"certificate": cert}), cert
