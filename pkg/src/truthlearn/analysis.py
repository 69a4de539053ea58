"""Closed-form reference quantities for validating simulation output:
binomial tail bounds, the layered-network recurrence, the sparse-graph
ceiling under random orderings, and Erdős–Rényi regime diagnostics.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Mapping

__all__ = [
    "BoundReport",
    "chernoff_tails",
    "aggregation_success_bound",
    "butterfly_recurrence",
    "sparse_ceiling",
    "giant_component_fraction",
    "expected_isolated",
]


@dataclass(frozen=True)
class BoundReport:
    """A named closed-form quantity with its inputs, for report emission."""

    name: str
    inputs: Mapping[str, float]
    value: float
    kind: str  # upper-bound | lower-bound | exact | fixed-point


def chernoff_tails(n: int, p: float, delta: float) -> tuple[float, float]:
    """Multiplicative Chernoff bounds for X ~ Bin(n, p), mu = np:

        P(X >= (1+delta) mu) <= exp(-delta^2 mu / 3)   (upper tail)
        P(X <= (1-delta) mu) <= exp(-delta^2 mu / 2)   (lower tail)
    """
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    mu = n * p
    upper = math.exp(-(delta**2) * mu / 3.0)
    lower = math.exp(-(delta**2) * mu / 2.0)
    return upper, lower


def aggregation_success_bound(s: int, q: float) -> float:
    """Lower bound on the probability that an aggregator deciding after s
    independent guinea pigs (plus its own signal) is correct:

        1 - exp(-(2q-1)^2 (s+1) / (8q))

    Derived from the lower Chernoff tail of Bin(s+1, q) at (s+1)/2.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    if not 0.5 < q < 1.0:
        raise ValueError("q must lie in (1/2, 1)")
    return 1.0 - math.exp(-((2.0 * q - 1.0) ** 2) * (s + 1) / (8.0 * q))


def butterfly_recurrence(q: float, depth: int) -> tuple[list[float], float]:
    """Per-depth learning rates of the layered network under a bottom-up
    ordering, plus the closed-form network lower bound.

    Depth 1 decides from signals alone (rate q); a depth-i vertex is
    correct when both depth-(i-1) aggregates agree and are right, or they
    disagree and its own signal is right:

        q_i = q_{i-1}^2 + q * 2 q_{i-1} (1 - q_{i-1})

    The error shrinks geometrically with factor (2q+1)(1-q), giving for a
    network of `depth` layers (rank parameter k = depth - 1):

        L >= 1 - (1-q)/(1+k) * (1 - [(2q+1)(1-q)]^(k+1)) / (1 - (2q+1)(1-q))
    """
    if not 0.5 < q < 1.0:
        raise ValueError("q must lie in (1/2, 1)")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    rates = [q]
    for _ in range(depth - 1):
        prev = rates[-1]
        rates.append(prev * prev + q * 2.0 * prev * (1.0 - prev))
    k = depth - 1
    rho = (2.0 * q + 1.0) * (1.0 - q)
    bound = 1.0 - (1.0 - q) / (1.0 + k) * (1.0 - rho ** (k + 1)) / (1.0 - rho)
    return rates, bound


def sparse_ceiling(avg_degree: float, q: float) -> float:
    """Upper bound on the network learning rate under a uniformly random
    ordering for any graph of the given average degree:

        L <= 1 - (1-q) / (2 (2*avg_degree + 1))

    At least half the vertices have degree <= 2*avg_degree, and each is
    first among its neighbors with probability >= 1/(deg+1), in which case
    it can do no better than q.
    """
    if avg_degree < 0:
        raise ValueError("average degree must be >= 0")
    if not 0.5 < q < 1.0:
        raise ValueError("q must lie in (1/2, 1)")
    return 1.0 - (1.0 - q) / (2.0 * (2.0 * avg_degree + 1.0))


def giant_component_fraction(
    n: int, p: float, tol: float = 1e-12, max_iter: int = 10_000
) -> tuple[float, float]:
    """Solve eta = exp(p*n*(eta - 1)) for the non-giant vertex fraction of
    G(n, p) with p*n > 1; returns (eta_p, giant fraction 1 - eta_p).

    Damped fixed-point iteration from eta = 0.5; falls back to bisection
    if the iteration stalls.
    """
    c = p * n
    if c <= 1.0:
        raise ValueError("pn must exceed 1 for a nontrivial fixed point")

    def f(eta: float) -> float:
        return math.exp(c * (eta - 1.0))

    eta = 0.5
    for _ in range(max_iter):
        nxt = 0.5 * eta + 0.5 * f(eta)
        if abs(nxt - eta) <= tol:
            eta = nxt
            break
        eta = nxt
    if abs(eta - f(eta)) > 100 * tol:
        # g(eta) = eta - f(eta): negative at 0, positive just below 1
        lo, hi = 0.0, 1.0 - 1e-12
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if mid - f(mid) < 0.0:
                lo = mid
            else:
                hi = mid
        eta = 0.5 * (lo + hi)
    return eta, 1.0 - eta


def expected_isolated(n: int, p: float) -> float:
    """Leading term n * exp(-p*n) of the expected isolated-vertex count in
    G(n, p). Stated validity range 1/(2n) <= p <= 1/2; outside it a
    warning is issued and the plug-in value is still returned. The
    multiplicative correction is 1 + Theta(p^2 n) with an unspecified
    constant, so treat the value as a leading-order estimate.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not (1.0 / (2 * n) <= p <= 0.5):
        warnings.warn(
            f"p={p} outside stated validity range [{1.0/(2*n)}, 0.5]; "
            "returning leading term anyway",
            stacklevel=2,
        )
    return n * math.exp(-p * n)
