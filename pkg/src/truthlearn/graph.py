"""Immutable undirected simple graphs: generators, file ingestion, queries.

All graphs use dense vertex indices 0..n-1 and sorted adjacency lists.
Generator-specific structure (grid side, butterfly rank layout, arrival
order) is carried in ``family``/``params`` so ordering constructors can
validate their inputs.
"""

from __future__ import annotations

from bisect import bisect_left
from collections import Counter, deque
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

__all__ = [
    "Graph",
    "ComponentPartition",
    "EdgeListParseError",
    "from_edges",
    "gen_erdos_renyi",
    "gen_preferential_attachment",
    "gen_grid",
    "gen_butterfly",
    "load_edge_list",
    "to_edge_list",
    "connected_components",
    "greedy_independent_neighbors",
    "degree_stats",
]


class EdgeListParseError(ValueError):
    """Malformed edge-list input; carries the 1-based offending line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with sorted adjacency lists.

    Invariants (enforced by the constructors in this module):
      - no self-loops, no duplicate edges
      - u in adj[v]  iff  v in adj[u]
      - all indices in [0, n)
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    labels: Optional[tuple[str, ...]] = None
    family: Optional[str] = None
    params: Mapping[str, object] = field(default_factory=dict)

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        # adjacency lists are sorted, so binary search is enough
        a = self.adj[u]
        i = bisect_left(a, v)
        return i < len(a) and a[i] == v

    def edges(self) -> Iterable[tuple[int, int]]:
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u < v:
                    yield (u, v)


@dataclass(frozen=True)
class ComponentPartition:
    """Connected-component labelling: ids partition [0, n) by reachability."""

    component_id: tuple[int, ...]
    sizes: tuple[int, ...]

    @property
    def num_components(self) -> int:
        return len(self.sizes)

    @property
    def largest_size(self) -> int:
        return max(self.sizes) if self.sizes else 0


def from_edges(
    n: int,
    edges: Iterable[tuple[int, int]],
    labels: Optional[Sequence[str]] = None,
    family: Optional[str] = None,
    params: Optional[Mapping[str, object]] = None,
) -> Graph:
    """Build a Graph from an edge iterable, enforcing simplicity and symmetry.

    Self-loops and duplicate edges raise ValueError here; use load_edge_list
    for tolerant ingestion of real-world files.
    """
    if n < 1:
        raise ValueError("graph needs at least one vertex")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if v in nbrs[u]:
            raise ValueError(f"duplicate edge ({u}, {v})")
        nbrs[u].add(v)
        nbrs[v].add(u)
    adj = tuple(tuple(sorted(s)) for s in nbrs)
    return Graph(
        n=n,
        adj=adj,
        labels=tuple(labels) if labels is not None else None,
        family=family,
        params=dict(params) if params else {},
    )


def gen_erdos_renyi(n: int, p: float, rng: np.random.Generator) -> Graph:
    """G(n, p): every unordered vertex pair is an edge independently with prob p."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    edges: list[tuple[int, int]] = []
    if p > 0.0 and n > 1:
        # One uniform per pair, row by row; vectorized per source vertex.
        for u in range(n - 1):
            hits = np.nonzero(rng.random(n - 1 - u) < p)[0]
            edges.extend((u, u + 1 + int(h)) for h in hits)
    return from_edges(n, edges, family="erdos_renyi", params={"n": n, "p": p})


def gen_preferential_attachment(n: int, k: int, rng: np.random.Generator) -> Graph:
    """Growing network: seed clique on k+1 vertices, then each newcomer
    attaches k edges to distinct earlier vertices chosen with probability
    proportional to degree.

    Degree weights are frozen at the state before the newcomer's batch, and
    targets within a batch are distinct (rejection sampling), which keeps
    the graph simple. Vertex index equals arrival order.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if n <= k:
        raise ValueError(f"need n >= k+1, got n={n}, k={k}")
    deg = np.zeros(n, dtype=np.int64)
    edges: list[tuple[int, int]] = []
    for u in range(k + 1):
        for v in range(u + 1, k + 1):
            edges.append((u, v))
    deg[: k + 1] = k
    for v in range(k + 1, n):
        cum = np.cumsum(deg[:v], dtype=np.float64)
        total = float(cum[-1])
        chosen: set[int] = set()
        while len(chosen) < k:
            r = rng.random() * total
            target = int(np.searchsorted(cum, r, side="right"))
            target = min(target, v - 1)
            if target not in chosen:
                chosen.add(target)
        for u in sorted(chosen):
            edges.append((u, v))
            deg[u] += 1
        deg[v] = k
    return from_edges(
        n, edges, family="preferential_attachment", params={"n": n, "k": k}
    )


def gen_grid(side: int) -> Graph:
    """side x side lattice; (i, j) ~ (i', j') when |i-i'| + |j-j'| = 1.

    Lattice point (i, j), 1-based, maps to index (i-1)*side + (j-1).
    """
    if side < 1:
        raise ValueError("side must be >= 1")
    n = side * side
    edges = []
    for i in range(side):
        for j in range(side):
            v = i * side + j
            if j + 1 < side:
                edges.append((v, v + 1))
            if i + 1 < side:
                edges.append((v, v + side))
    return from_edges(n, edges, family="grid", params={"side": side})


def gen_butterfly(k: int) -> Graph:
    """Layered constant-degree network on (k+1)*2^k vertices.

    Vertex (rank i in [0, k], position j in [0, 2^k)) has index i*2^k + j.
    For i > 0, (i, j) connects to (i-1, j) and (i-1, j ^ (1 << (k-i))),
    i.e. to the position with the i-th most significant of the k bits
    flipped. The structure packs 2^k complete binary trees that share
    their lower layers.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    width = 1 << k
    n = (k + 1) * width
    edges = []
    for i in range(1, k + 1):
        flip = 1 << (k - i)
        for j in range(width):
            v = i * width + j
            edges.append((v, (i - 1) * width + j))
            edges.append((v, (i - 1) * width + (j ^ flip)))
    return from_edges(n, edges, family="butterfly", params={"k": k, "width": width})


def load_edge_list(text: str) -> Graph:
    """Parse whitespace-separated edge pairs into a Graph.

    Lines starting with '#' or '%' and blank lines are skipped. Arbitrary
    labels are remapped to dense indices in first-appearance order.
    Self-loops and duplicate edges are dropped silently; the drop counts
    and the raw line count are reported in ``params``.
    """
    index: dict[str, int] = {}
    labels: list[str] = []
    nbrs: list[set[int]] = []
    self_loops = 0
    duplicates = 0
    edge_lines = 0

    def vertex(token: str) -> int:
        if token not in index:
            index[token] = len(labels)
            labels.append(token)
            nbrs.append(set())
        return index[token]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListParseError(
                f"expected 2 vertex tokens, found {len(tokens)}", lineno
            )
        edge_lines += 1
        u, v = vertex(tokens[0]), vertex(tokens[1])
        if u == v:
            self_loops += 1
            continue
        if v in nbrs[u]:
            duplicates += 1
            continue
        nbrs[u].add(v)
        nbrs[v].add(u)

    if not labels:
        raise EdgeListParseError("no vertices found in input", 0)
    adj = tuple(tuple(sorted(s)) for s in nbrs)
    return Graph(
        n=len(labels),
        adj=adj,
        labels=tuple(labels),
        family="edge_list",
        params={
            "edge_lines": edge_lines,
            "self_loops_dropped": self_loops,
            "duplicate_edges_dropped": duplicates,
        },
    )


def to_edge_list(g: Graph) -> str:
    """Serialize as one 'u v' line per edge, using labels when present."""
    name = (lambda v: g.labels[v]) if g.labels is not None else str
    lines = [f"{name(u)} {name(v)}" for u, v in g.edges()]
    return "\n".join(lines) + ("\n" if lines else "")


def connected_components(g: Graph) -> ComponentPartition:
    """Label components by BFS reachability; ids in discovery order."""
    comp = [-1] * g.n
    sizes: list[int] = []
    for start in range(g.n):
        if comp[start] != -1:
            continue
        cid = len(sizes)
        comp[start] = cid
        size = 1
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if comp[w] == -1:
                    comp[w] = cid
                    size += 1
                    queue.append(w)
        sizes.append(size)
    return ComponentPartition(component_id=tuple(comp), sizes=tuple(sizes))


def greedy_independent_neighbors(g: Graph, v: int, m: int) -> tuple[int, ...]:
    """Greedy pairwise-non-adjacent subset of N(v), scanning ascending index.

    Stops at size m; returns a smaller set when the greedy scan cannot
    reach m. Deterministic by construction.
    """
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    if m < 0:
        raise ValueError("m must be >= 0")
    chosen: list[int] = []
    for u in g.adj[v]:
        if len(chosen) >= m:
            break
        if all(not g.has_edge(u, w) for w in chosen):
            chosen.append(u)
    return tuple(chosen)


def degree_stats(g: Graph) -> tuple[float, int, dict[int, int]]:
    """(average degree, max degree, degree histogram)."""
    degs = g.degrees()
    avg = sum(degs) / g.n
    hist = dict(sorted(Counter(degs).items()))
    return avg, max(degs), hist
